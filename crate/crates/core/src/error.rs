use thiserror::Error;

/// Errors raised by model evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// An input lies outside the range the model is defined on.
    #[error("{field} = {value} outside {range}")]
    Domain {
        field: &'static str,
        value: f64,
        range: &'static str,
    },

    /// The AI-gradient of the premium contains `G^(phi-1)` and is singular at zero.
    #[error("gradient undefined at G=0")]
    GradientUndefinedAtZeroAi,

    /// An intermediate power left the finite, strictly positive range of `f64`.
    #[error("non-finite or vanishing intermediate in {subexpression} ({value})")]
    NumericRange {
        subexpression: &'static str,
        value: f64,
    },

    #[error("reduction inadmissible: 2^γ β ≥ 1 (2^γ β = {0})")]
    ReductionInadmissible(f64),
}

impl ModelError {
    /// Short machine-readable category used by front ends.
    pub fn kind(&self) -> &'static str {
        match self {
            ModelError::Domain { .. } => "domain",
            ModelError::GradientUndefinedAtZeroAi => "domain",
            ModelError::NumericRange { .. } => "numeric",
            ModelError::ReductionInadmissible(_) => "domain",
        }
    }
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

/// Checks that an intermediate is finite and strictly positive.
pub(crate) fn positive_finite(subexpression: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ModelError::NumericRange {
            subexpression,
            value,
        })
    }
}

/// Checks that an intermediate is finite (any sign).
pub(crate) fn finite(subexpression: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ModelError::NumericRange {
            subexpression,
            value,
        })
    }
}
