//! Closed-form evaluation of the nested CES economy.
//!
//! Output is
//!
//! ```text
//! Y = K^α · [ β3·(β1·L_u^θ + (1−β1)·P^θ)^(γ/θ) + (1−β3)·(β2·L_s^φ + (1−β2)·G^φ)^(γ/φ) ]^((1−α)/γ)
//! ```
//!
//! Robots `P` sit in the low-skill nest and AI `G` in the high-skill nest.
//! Wages are the marginal products of the two labor inputs under perfect
//! competition with the output price normalized to one.
//!
//! [`Evaluation`] computes the inner aggregates once per point and derives
//! every reported quantity from those shared intermediates, so the closed-form
//! premium and the quotient of the two wages agree to a few ulps.

use serde::{Deserialize, Serialize};

use crate::error::{finite, positive_finite, ModelError, Result};
use crate::params::{FactorBundle, TechnologyParameters, Validation};

/// Everything reported for one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WageReport {
    pub output: f64,
    pub low_skill_wage: f64,
    pub high_skill_wage: f64,
    pub premium: f64,
    /// `∂(w_s/w_u)/∂G`; `None` at `G = 0`, where it is singular.
    pub premium_gradient_ai: Option<f64>,
}

/// Direction in which more AI moves the skill premium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AiEffect {
    PremiumDecreasing,
    PremiumNeutral,
    PremiumIncreasing,
}

impl AiEffect {
    pub fn as_str(self) -> &'static str {
        match self {
            AiEffect::PremiumDecreasing => "PremiumDecreasing",
            AiEffect::PremiumNeutral => "PremiumNeutral",
            AiEffect::PremiumIncreasing => "PremiumIncreasing",
        }
    }

    /// -1, 0 or +1, matching the sign of the premium's AI-gradient.
    pub fn signum(self) -> i8 {
        match self {
            AiEffect::PremiumDecreasing => -1,
            AiEffect::PremiumNeutral => 0,
            AiEffect::PremiumIncreasing => 1,
        }
    }
}

impl std::fmt::Display for AiEffect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Shared intermediates of the nested CES at one point.
#[derive(Debug, Clone, Copy)]
pub struct Evaluation {
    params: TechnologyParameters,
    factors: FactorBundle,
    /// `K^α`
    capital_term: f64,
    /// `β1·L_u^θ + (1−β1)·P^θ`
    low_nest: f64,
    /// `β2·L_s^φ + (1−β2)·G^φ`
    high_nest: f64,
    /// `β3·low_nest^(γ/θ) + (1−β3)·high_nest^(γ/φ)`
    bracket: f64,
    /// `L_u^(θ−1)`
    low_labor_power: f64,
    /// `L_s^(φ−1)`
    high_labor_power: f64,
    /// `low_nest^(γ/θ−1)`
    low_nest_power: f64,
    /// `high_nest^(γ/φ−1)`
    high_nest_power: f64,
}

impl Evaluation {
    pub fn new(params: &TechnologyParameters, factors: &FactorBundle) -> Result<Self> {
        Self::with_validation(params, factors, Validation::Strict)
    }

    pub fn with_validation(
        params: &TechnologyParameters,
        factors: &FactorBundle,
        mode: Validation,
    ) -> Result<Self> {
        params.validate_with(mode)?;
        factors.validate()?;

        let TechnologyParameters {
            alpha,
            gamma,
            theta,
            phi,
            beta1,
            beta2,
            beta3,
        } = *params;
        let FactorBundle {
            capital,
            low_skill_labor,
            high_skill_labor,
            robot_stock,
            ai_stock,
        } = *factors;

        let capital_term = positive_finite("K^alpha", capital.powf(alpha))?;
        let low_nest = positive_finite(
            "beta1*L_u^theta + (1-beta1)*P^theta",
            beta1 * low_skill_labor.powf(theta) + (1.0 - beta1) * robot_stock.powf(theta),
        )?;
        let high_nest = positive_finite(
            "beta2*L_s^phi + (1-beta2)*G^phi",
            beta2 * high_skill_labor.powf(phi) + (1.0 - beta2) * ai_stock.powf(phi),
        )?;
        let bracket = positive_finite(
            "outer CES bracket",
            beta3 * low_nest.powf(gamma / theta) + (1.0 - beta3) * high_nest.powf(gamma / phi),
        )?;

        Ok(Evaluation {
            params: *params,
            factors: *factors,
            capital_term,
            low_nest,
            high_nest,
            bracket,
            low_labor_power: positive_finite("L_u^(theta-1)", low_skill_labor.powf(theta - 1.0))?,
            high_labor_power: positive_finite("L_s^(phi-1)", high_skill_labor.powf(phi - 1.0))?,
            low_nest_power: positive_finite(
                "low-skill nest^(gamma/theta-1)",
                low_nest.powf(gamma / theta - 1.0),
            )?,
            high_nest_power: positive_finite(
                "high-skill nest^(gamma/phi-1)",
                high_nest.powf(gamma / phi - 1.0),
            )?,
        })
    }

    pub fn params(&self) -> &TechnologyParameters {
        &self.params
    }

    pub fn factors(&self) -> &FactorBundle {
        &self.factors
    }

    /// `β1·L_u^θ + (1−β1)·P^θ`
    pub fn low_skill_nest(&self) -> f64 {
        self.low_nest
    }

    /// `β2·L_s^φ + (1−β2)·G^φ`
    pub fn high_skill_nest(&self) -> f64 {
        self.high_nest
    }

    pub fn output(&self) -> Result<f64> {
        let alpha = self.params.alpha;
        let gamma = self.params.gamma;
        let aggregate = positive_finite(
            "bracket^((1-alpha)/gamma)",
            self.bracket.powf((1.0 - alpha) / gamma),
        )?;
        positive_finite("output", self.capital_term * aggregate)
    }

    /// `(1−α)·K^α · bracket^((1−α−γ)/γ)`, common to both wages.
    fn wage_scale(&self) -> Result<f64> {
        let alpha = self.params.alpha;
        let gamma = self.params.gamma;
        let outer = positive_finite(
            "bracket^((1-alpha-gamma)/gamma)",
            self.bracket.powf((1.0 - alpha - gamma) / gamma),
        )?;
        Ok((1.0 - alpha) * self.capital_term * outer)
    }

    /// Marginal product of low-skill labor, `∂Y/∂L_u`.
    pub fn low_skill_wage(&self) -> Result<f64> {
        let p = &self.params;
        positive_finite(
            "low-skill wage",
            self.wage_scale()? * p.beta1 * p.beta3 * self.low_labor_power * self.low_nest_power,
        )
    }

    /// Marginal product of high-skill labor, `∂Y/∂L_s`.
    pub fn high_skill_wage(&self) -> Result<f64> {
        let p = &self.params;
        positive_finite(
            "high-skill wage",
            self.wage_scale()?
                * p.beta2
                * (1.0 - p.beta3)
                * self.high_labor_power
                * self.high_nest_power,
        )
    }

    /// `β2(1−β3)/(β1β3) · L_s^(φ−1) · L_u^(1−θ) · low_nest^(1−γ/θ) · high_nest^(γ/φ−1)`
    ///
    /// Independent of `K`, and finite at `G = 0`.
    pub fn skill_premium(&self) -> Result<f64> {
        positive_finite(
            "skill premium",
            self.premium_coefficient()
                * (self.high_labor_power / self.low_labor_power)
                * (self.high_nest_power / self.low_nest_power),
        )
    }

    fn premium_coefficient(&self) -> f64 {
        let p = &self.params;
        p.beta2 * (1.0 - p.beta3) / (p.beta1 * p.beta3)
    }

    /// `∂(w_s/w_u)/∂G`
    ///
    /// ```text
    /// φ·β2(1−β2)(1−β3)·(γ/φ − 1) / (β1β3) · G^(φ−1) · L_s^(φ−1) · L_u^(1−θ)
    ///     · low_nest^(1−γ/θ) · high_nest^(γ/φ−2)
    /// ```
    ///
    /// The sign is the sign of `γ/φ − 1`; it is exactly zero when `γ = φ`.
    pub fn premium_gradient_ai(&self) -> Result<f64> {
        let p = &self.params;
        let ai = self.factors.ai_stock;
        if ai == 0.0 {
            return Err(ModelError::GradientUndefinedAtZeroAi);
        }
        let ai_power = positive_finite("G^(phi-1)", ai.powf(p.phi - 1.0))?;
        let coefficient =
            p.phi * p.beta2 * (1.0 - p.beta2) * (1.0 - p.beta3) * (p.gamma / p.phi - 1.0)
                / (p.beta1 * p.beta3);
        finite(
            "premium gradient",
            coefficient
                * ai_power
                * (self.high_labor_power / self.low_labor_power)
                * (self.high_nest_power / self.low_nest_power)
                / self.high_nest,
        )
    }

    pub fn report(&self) -> Result<WageReport> {
        let premium_gradient_ai = match self.premium_gradient_ai() {
            Ok(g) => Some(g),
            Err(ModelError::GradientUndefinedAtZeroAi) => None,
            Err(e) => return Err(e),
        };
        Ok(WageReport {
            output: self.output()?,
            low_skill_wage: self.low_skill_wage()?,
            high_skill_wage: self.high_skill_wage()?,
            premium: self.skill_premium()?,
            premium_gradient_ai,
        })
    }
}

/// Aggregate output `Y`.
pub fn output(params: &TechnologyParameters, factors: &FactorBundle) -> Result<f64> {
    Evaluation::new(params, factors)?.output()
}

/// Low-skill wage `w_u = ∂Y/∂L_u`.
pub fn low_skill_wage(params: &TechnologyParameters, factors: &FactorBundle) -> Result<f64> {
    Evaluation::new(params, factors)?.low_skill_wage()
}

/// High-skill wage `w_s = ∂Y/∂L_s`.
pub fn high_skill_wage(params: &TechnologyParameters, factors: &FactorBundle) -> Result<f64> {
    Evaluation::new(params, factors)?.high_skill_wage()
}

/// Skill premium `w_s / w_u`.
pub fn skill_premium(params: &TechnologyParameters, factors: &FactorBundle) -> Result<f64> {
    Evaluation::new(params, factors)?.skill_premium()
}

/// `∂(w_s/w_u)/∂G`. Fails with [`ModelError::GradientUndefinedAtZeroAi`] at `G = 0`.
pub fn premium_gradient_ai(params: &TechnologyParameters, factors: &FactorBundle) -> Result<f64> {
    Evaluation::new(params, factors)?.premium_gradient_ai()
}

pub fn wage_report(params: &TechnologyParameters, factors: &FactorBundle) -> Result<WageReport> {
    Evaluation::new(params, factors)?.report()
}

/// Qualitative effect of more AI on the premium, from `γ` and `φ` alone.
///
/// Neutrality uses exact equality of the stored values.
pub fn classify_ai_effect(params: &TechnologyParameters) -> Result<AiEffect> {
    params.validate()?;
    Ok(if params.gamma < params.phi {
        AiEffect::PremiumDecreasing
    } else if params.gamma == params.phi {
        AiEffect::PremiumNeutral
    } else {
        AiEffect::PremiumIncreasing
    })
}

/// Elasticity of substitution implied by a CES substitution parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Elasticity {
    Finite(f64),
    /// Parameter equal to one: the inputs are perfect substitutes.
    PerfectSubstitutes,
}

impl Elasticity {
    pub fn finite(self) -> Option<f64> {
        match self {
            Elasticity::Finite(s) => Some(s),
            Elasticity::PerfectSubstitutes => None,
        }
    }
}

impl std::fmt::Display for Elasticity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Elasticity::Finite(s) => write!(f, "{s}"),
            Elasticity::PerfectSubstitutes => f.write_str("perfect-substitutes"),
        }
    }
}

/// `σ = 1/(1 − ρ)` for a substitution parameter `ρ ∈ (0, 1]`.
pub fn elasticity_from_param(substitution_param: f64) -> Result<Elasticity> {
    if !(substitution_param > 0.0 && substitution_param <= 1.0) {
        return Err(ModelError::Domain {
            field: "substitution parameter",
            value: substitution_param,
            range: "(0, 1]",
        });
    }
    if substitution_param == 1.0 {
        return Ok(Elasticity::PerfectSubstitutes);
    }
    Ok(Elasticity::Finite(1.0 / (1.0 - substitution_param)))
}

/// `ρ = 1 − 1/σ` for a finite elasticity `σ > 1`.
pub fn param_from_elasticity(sigma: f64) -> Result<f64> {
    if !(sigma > 1.0 && sigma.is_finite()) {
        return Err(ModelError::Domain {
            field: "elasticity",
            value: sigma,
            range: "(1, inf)",
        });
    }
    Ok(1.0 - 1.0 / sigma)
}
