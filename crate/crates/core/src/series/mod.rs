//! Laurent polynomials in x, y and truncated series in t over them.

pub mod laurent;
pub mod ops;
pub mod render;
pub mod tseries;

pub use laurent::{Bounds, Exp, LaurentPoly, Vars};
pub use ops::{
    constant_term_xbar, eval_bivariate, negative_part, newton_root, positive_part, sqrt_series, substitute, Affine,
    DegreeBound, Substitution,
};
pub use render::{PolyJson, PolyTermJson, SeriesJson, TermJson};
pub use tseries::TSeries;
