use thiserror::Error;

/// Errors raised by the solver, special functions and oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A denominator or Gamma argument hit a singularity.
    #[error("pole at {location}")]
    Pole { location: String },

    #[error("series or integral diverges: {0}")]
    Divergence(String),

    #[error("degenerate Nikiforov-Uvarov problem: {0}")]
    Degenerate(String),

    #[error("unsupported sigma polynomial (only s - s^2 is handled)")]
    UnsupportedSigma,

    /// A bound-state existence condition does not hold; carries the inequality.
    #[error("condition violated: {condition}")]
    ConditionViolated { condition: String },

    #[error("no level passes the spectrum filters")]
    EmptySpectrum,

    #[error("state is not normalizable: {0}")]
    NonNormalizable(String),

    #[error("quadrature failed: estimated error {estimate:e} exceeds {tolerance:e}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("no sign change of the shooting mismatch in [{e_min}, {e_max}]")]
    NoBracket { e_min: f64, e_max: f64 },

    #[error("integrator unstable: {0}")]
    Stiffness(String),
}

impl Error {
    pub(crate) fn pole(location: impl std::fmt::Display) -> Self {
        Error::Pole {
            location: location.to_string(),
        }
    }

    pub(crate) fn violated(condition: impl Into<String>) -> Self {
        Error::ConditionViolated {
            condition: condition.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
