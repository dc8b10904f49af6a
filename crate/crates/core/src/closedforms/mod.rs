//! Exact closed-form counts and the solution of the Kreweras model.

mod kreweras;
mod lattice;

pub use kreweras::{
    kreweras_axis_count, kreweras_axis_count_by_length, kreweras_full_count, kreweras_parameter,
    qx0_from_sqrt_form, quadratic_equation_residual, solve_kreweras, KrewerasSolution,
};
pub use lattice::{
    diagonal_count, diagonal_total, square_count, square_kernel_expansions, square_shuffle_total,
    square_total,
};
