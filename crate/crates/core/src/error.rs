use thiserror::Error;

/// Errors produced by model validation and the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A model specification or argument failed validation.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// A seasonal fractional order is outside the stationary band.
    #[error("D out of [0, 0.5): season {season} has D = {value}")]
    OrderOutOfRange { season: usize, value: f64 },

    /// The periodic AR part has a determinantal root on or outside the unit circle.
    #[error("nonstationary AR part: max root modulus {max_modulus}")]
    Nonstationary { max_modulus: f64 },

    /// `Phi(1)` could not be inverted.
    #[error("Phi(1) is singular (unit root at z = 1)")]
    SingularAtUnity,

    /// Not enough observations for the requested lag range.
    #[error("insufficient data: need at least {required} observations, got {actual}")]
    InsufficientData { required: usize, actual: usize },

    /// A log-log fit hit a value that is not strictly positive.
    #[error("nonpositive autocovariance at season {season}, lag {lag}: {value}")]
    NonPositive {
        season: usize,
        lag: usize,
        value: f64,
    },

    /// The requested composition order is too large for exhaustive enumeration.
    #[error("composition order {order} exceeds the limit of {limit}")]
    OrderTooLarge { order: usize, limit: usize },
}

impl Error {
    /// True for errors caused by numerics rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Nonstationary { .. } | Error::SingularAtUnity | Error::NonPositive { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
