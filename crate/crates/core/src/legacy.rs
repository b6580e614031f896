//! Two-skill benchmark model without AI.
//!
//! ```text
//! Y = [ (1−β)·L_s^γ + β·(P + L_u)^γ ]^((1−α)/γ) · K^α
//! ```
//!
//! Robots enter additively with low-skill labor, so `P` is measured in
//! worker-equivalents here. It is not unit-comparable with the dollar robot
//! stock of the nested model.

use serde::{Deserialize, Serialize};

use crate::error::{finite, positive_finite, ModelError, Result};
use crate::params::{FactorBundle, TechnologyParameters};

/// Constants of the benchmark model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegacyParameters {
    pub alpha: f64,
    /// Weight of low-skill workers.
    pub beta: f64,
    /// Substitution parameter in (−∞, 1], nonzero.
    pub gamma: f64,
}

impl LegacyParameters {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(ModelError::Domain {
                field: "alpha",
                value: self.alpha,
                range: "(0, 1)",
            });
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(ModelError::Domain {
                field: "beta",
                value: self.beta,
                range: "(0, 1)",
            });
        }
        if !(self.gamma <= 1.0 && self.gamma != 0.0 && self.gamma.is_finite()) {
            return Err(ModelError::Domain {
                field: "gamma",
                value: self.gamma,
                range: "(-inf, 0) U (0, 1]",
            });
        }
        Ok(())
    }
}

/// Factor quantities of the benchmark model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegacyBundle {
    #[serde(rename = "K")]
    pub capital: f64,
    #[serde(rename = "L_u")]
    pub low_skill: f64,
    #[serde(rename = "L_s")]
    pub high_skill: f64,
    /// Robots in worker-equivalents.
    #[serde(rename = "P")]
    pub robots: f64,
}

impl LegacyBundle {
    pub fn new(capital: f64, low_skill: f64, high_skill: f64, robots: f64) -> Self {
        LegacyBundle {
            capital,
            low_skill,
            high_skill,
            robots,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("K", self.capital),
            ("L_u", self.low_skill),
            ("L_s", self.high_skill),
            ("P", self.robots),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(ModelError::Domain {
                    field,
                    value,
                    range: "(0, inf)",
                });
            }
        }
        Ok(())
    }

    /// The nested-model bundle with the same quantities and no AI.
    pub fn to_factor_bundle(&self) -> FactorBundle {
        FactorBundle::new(
            self.capital,
            self.low_skill,
            self.high_skill,
            self.robots,
            0.0,
        )
    }
}

struct LegacyTerms {
    output: f64,
    /// `(1−β)·L_s^γ + β·(P+L_u)^γ`
    aggregate: f64,
}

fn terms(lp: &LegacyParameters, b: &LegacyBundle) -> Result<LegacyTerms> {
    lp.validate()?;
    b.validate()?;
    let aggregate = positive_finite(
        "(1-beta)*L_s^gamma + beta*(P+L_u)^gamma",
        (1.0 - lp.beta) * b.high_skill.powf(lp.gamma)
            + lp.beta * (b.robots + b.low_skill).powf(lp.gamma),
    )?;
    let output = positive_finite(
        "legacy output",
        aggregate.powf((1.0 - lp.alpha) / lp.gamma) * b.capital.powf(lp.alpha),
    )?;
    Ok(LegacyTerms { output, aggregate })
}

pub fn legacy_output(lp: &LegacyParameters, b: &LegacyBundle) -> Result<f64> {
    Ok(terms(lp, b)?.output)
}

/// `∂Y/∂L_s = (1−α)·Y·(1−β)·L_s^(γ−1) / aggregate`
pub fn legacy_high_skill_wage(lp: &LegacyParameters, b: &LegacyBundle) -> Result<f64> {
    let t = terms(lp, b)?;
    positive_finite(
        "legacy high-skill wage",
        (1.0 - lp.alpha) * t.output * (1.0 - lp.beta) * b.high_skill.powf(lp.gamma - 1.0)
            / t.aggregate,
    )
}

/// Effect of robots on the high-skill wage, `∂w_s/∂P`:
///
/// ```text
/// (1−α)·Y·(1−β)β·L_s^γ / (L_s·(P+L_u)^(1−γ)) · (1−α−γ) / aggregate²
/// ```
///
/// Nonnegative iff `1 − α ≥ γ`.
pub fn legacy_ws_robot_gradient(lp: &LegacyParameters, b: &LegacyBundle) -> Result<f64> {
    let t = terms(lp, b)?;
    let magnitude = robot_gradient_magnitude(lp, b, &t)?;
    finite(
        "legacy robot gradient",
        magnitude * (1.0 - lp.alpha - lp.gamma),
    )
}

/// The robot gradient without its `(1−α−γ)` factor; always positive.
pub fn legacy_robot_gradient_scale(lp: &LegacyParameters, b: &LegacyBundle) -> Result<f64> {
    let t = terms(lp, b)?;
    robot_gradient_magnitude(lp, b, &t)
}

fn robot_gradient_magnitude(
    lp: &LegacyParameters,
    b: &LegacyBundle,
    t: &LegacyTerms,
) -> Result<f64> {
    let numerator =
        (1.0 - lp.alpha) * t.output * (1.0 - lp.beta) * lp.beta * b.high_skill.powf(lp.gamma);
    let denominator =
        b.high_skill * (b.robots + b.low_skill).powf(1.0 - lp.gamma) * t.aggregate * t.aggregate;
    positive_finite("legacy robot gradient magnitude", numerator / denominator)
}

/// Sign of the robot effect on high-skill wages: `sign(1 − α − γ)`.
pub fn legacy_robot_effect_sign(lp: &LegacyParameters) -> Result<i8> {
    lp.validate()?;
    let s = 1.0 - lp.alpha - lp.gamma;
    Ok(if s > 0.0 {
        1
    } else if s < 0.0 {
        -1
    } else {
        0
    })
}

/// Nested-model parameters under which the benchmark is a special case (`G = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReductionMap {
    pub theta: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
}

impl ReductionMap {
    /// Full nested parameter set; requires relaxed validation since `beta2 > 1`.
    pub fn to_parameters(&self, alpha: f64, gamma: f64, phi: f64) -> TechnologyParameters {
        TechnologyParameters {
            alpha,
            gamma,
            theta: self.theta,
            phi,
            beta1: self.beta1,
            beta2: self.beta2,
            beta3: self.beta3,
        }
    }
}

/// Maps the benchmark onto the nested model: `θ = 1`, `β1 = 1/2`,
/// `β3 = 2^γ·β` and `β2 = ((1−β)/(1−2^γ·β))^(φ/γ)`.
///
/// The `β2` base is written `(1−β)`; with `(β−1)` it would be negative for
/// every `β ∈ (0, 1)`.
pub fn apply_reduction(beta: f64, gamma: f64, phi: f64) -> Result<ReductionMap> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(ModelError::Domain {
            field: "beta",
            value: beta,
            range: "(0, 1)",
        });
    }
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(ModelError::Domain {
            field: "gamma",
            value: gamma,
            range: "(0, 1]",
        });
    }
    if !(phi > 0.0 && phi <= 1.0) {
        return Err(ModelError::Domain {
            field: "phi",
            value: phi,
            range: "(0, 1]",
        });
    }
    let beta3 = 2f64.powf(gamma) * beta;
    if beta3 >= 1.0 {
        return Err(ModelError::ReductionInadmissible(beta3));
    }
    let beta2 = positive_finite(
        "((1-beta)/(1-2^gamma*beta))^(phi/gamma)",
        ((1.0 - beta) / (1.0 - beta3)).powf(phi / gamma),
    )?;
    Ok(ReductionMap {
        theta: 1.0,
        beta1: 0.5,
        beta2,
        beta3,
    })
}
