use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("coefficient of t^{requested} requested but the series is only known through t^{order}")]
    Truncation { requested: i32, order: i32 },

    #[error("cannot guarantee the requested order: {0}")]
    OrderLoss(String),

    #[error("expected a univariate series in x, found bivariate input")]
    Bivariate,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("Newton iteration failed: {0}")]
    Newton(String),

    #[error("non-integral value where an integer was required: {0}")]
    NonIntegral(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("could not decide series equality: {0}")]
    Indecision(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown model `{0}`")]
    UnknownModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
