//! Model constants and factor quantities.
//!
//! All quantities are in raw units: dollars for the capital, robot and AI
//! stocks, persons for the two labor inputs. The scaled figures of the
//! published calibration (trillions, billions, millions) are expanded by the
//! scenario loader before they reach this module.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

const OPEN_UNIT: &str = "(0, 1)";
const HALF_OPEN_UNIT: &str = "(0, 1]";
const POSITIVE: &str = "(0, inf)";
const NONNEGATIVE: &str = "[0, inf)";

/// How strictly [`TechnologyParameters::validate_with`] checks the share weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    /// Every invariant of the model: shares in (0, 1), substitution parameters in (0, 1].
    #[default]
    Strict,
    /// `beta1` and `beta2` only need to be positive and finite.
    ///
    /// The no-AI reduction maps onto `beta2 > 1` for every admissible input,
    /// so the equivalence checks evaluate the nested model in this mode.
    RelaxedInnerShares,
}

/// The seven technology constants of the nested CES economy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TechnologyParameters {
    /// Output elasticity of traditional capital.
    pub alpha: f64,
    /// Substitution between the low-skill and high-skill task bundles.
    pub gamma: f64,
    /// Substitution between low-skill labor and robots.
    pub theta: f64,
    /// Substitution between high-skill labor and AI.
    pub phi: f64,
    /// Weight of low-skill labor inside the low-skill bundle.
    pub beta1: f64,
    /// Weight of high-skill labor inside the high-skill bundle.
    pub beta2: f64,
    /// Weight of the low-skill bundle in the outer nest.
    pub beta3: f64,
}

impl TechnologyParameters {
    /// The published baseline calibration.
    pub const fn table1() -> Self {
        TechnologyParameters {
            alpha: 1.0 / 3.0,
            gamma: 1.0 / 3.0,
            theta: 0.75,
            phi: 0.5,
            beta1: 0.9,
            beta2: 0.95,
            beta3: 2.0 / 3.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with(Validation::Strict)
    }

    pub fn validate_with(&self, mode: Validation) -> Result<()> {
        open_unit("alpha", self.alpha)?;
        half_open_unit("gamma", self.gamma)?;
        half_open_unit("theta", self.theta)?;
        half_open_unit("phi", self.phi)?;
        match mode {
            Validation::Strict => {
                open_unit("beta1", self.beta1)?;
                open_unit("beta2", self.beta2)?;
            }
            Validation::RelaxedInnerShares => {
                positive("beta1", self.beta1)?;
                positive("beta2", self.beta2)?;
            }
        }
        open_unit("beta3", self.beta3)?;
        Ok(())
    }

    /// Looks a parameter up by its field name.
    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "alpha" => self.alpha,
            "gamma" => self.gamma,
            "theta" => self.theta,
            "phi" => self.phi,
            "beta1" => self.beta1,
            "beta2" => self.beta2,
            "beta3" => self.beta3,
            _ => return None,
        })
    }

    /// Overwrites a parameter by field name. Returns `false` for unknown names.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "alpha" => &mut self.alpha,
            "gamma" => &mut self.gamma,
            "theta" => &mut self.theta,
            "phi" => &mut self.phi,
            "beta1" => &mut self.beta1,
            "beta2" => &mut self.beta2,
            "beta3" => &mut self.beta3,
            _ => return false,
        };
        *slot = value;
        true
    }

    pub const NAMES: [&'static str; 7] =
        ["alpha", "gamma", "theta", "phi", "beta1", "beta2", "beta3"];
}

/// The five factor quantities at one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorBundle {
    /// Traditional capital K, dollars.
    #[serde(rename = "K")]
    pub capital: f64,
    /// Low-skill employment L_u, persons.
    #[serde(rename = "L_u")]
    pub low_skill_labor: f64,
    /// High-skill employment L_s, persons.
    #[serde(rename = "L_s")]
    pub high_skill_labor: f64,
    /// Robot stock P, dollars.
    #[serde(rename = "P")]
    pub robot_stock: f64,
    /// AI stock G, dollars. Zero is allowed.
    #[serde(rename = "G")]
    pub ai_stock: f64,
}

impl FactorBundle {
    pub const fn new(
        capital: f64,
        low_skill_labor: f64,
        high_skill_labor: f64,
        robot_stock: f64,
        ai_stock: f64,
    ) -> Self {
        FactorBundle {
            capital,
            low_skill_labor,
            high_skill_labor,
            robot_stock,
            ai_stock,
        }
    }

    /// The published 2019 US levels, expanded to dollars and persons, with no AI.
    pub const fn table1() -> Self {
        FactorBundle::new(6.9e13, 9.83e7, 5.84e7, 1.73e10, 0.0)
    }

    pub const fn ones() -> Self {
        FactorBundle::new(1.0, 1.0, 1.0, 1.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        for factor in Factor::ALL {
            factor.check(factor.get(self))?;
        }
        Ok(())
    }

    pub fn get(&self, factor: Factor) -> f64 {
        factor.get(self)
    }

    /// Copy of the bundle with one factor replaced.
    pub fn with(mut self, factor: Factor, value: f64) -> Self {
        *factor.slot(&mut self) = value;
        self
    }

    /// Multiplies every factor by `lambda`.
    pub fn scaled(self, lambda: f64) -> Self {
        FactorBundle::new(
            self.capital * lambda,
            self.low_skill_labor * lambda,
            self.high_skill_labor * lambda,
            self.robot_stock * lambda,
            self.ai_stock * lambda,
        )
    }

    pub fn as_array(&self) -> [f64; 5] {
        Factor::ALL.map(|f| f.get(self))
    }
}

/// Selector for one field of a [`FactorBundle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    #[serde(rename = "K")]
    Capital,
    #[serde(rename = "L_u")]
    LowSkillLabor,
    #[serde(rename = "L_s")]
    HighSkillLabor,
    #[serde(rename = "P")]
    RobotStock,
    #[serde(rename = "G")]
    AiStock,
}

impl Factor {
    pub const ALL: [Factor; 5] = [
        Factor::Capital,
        Factor::LowSkillLabor,
        Factor::HighSkillLabor,
        Factor::RobotStock,
        Factor::AiStock,
    ];

    /// Short symbol used in files and column headers.
    pub fn key(self) -> &'static str {
        match self {
            Factor::Capital => "K",
            Factor::LowSkillLabor => "L_u",
            Factor::HighSkillLabor => "L_s",
            Factor::RobotStock => "P",
            Factor::AiStock => "G",
        }
    }

    pub fn get(self, bundle: &FactorBundle) -> f64 {
        match self {
            Factor::Capital => bundle.capital,
            Factor::LowSkillLabor => bundle.low_skill_labor,
            Factor::HighSkillLabor => bundle.high_skill_labor,
            Factor::RobotStock => bundle.robot_stock,
            Factor::AiStock => bundle.ai_stock,
        }
    }

    fn slot(self, bundle: &mut FactorBundle) -> &mut f64 {
        match self {
            Factor::Capital => &mut bundle.capital,
            Factor::LowSkillLabor => &mut bundle.low_skill_labor,
            Factor::HighSkillLabor => &mut bundle.high_skill_labor,
            Factor::RobotStock => &mut bundle.robot_stock,
            Factor::AiStock => &mut bundle.ai_stock,
        }
    }

    /// Whether zero is a valid value for this factor.
    pub fn allows_zero(self) -> bool {
        matches!(self, Factor::AiStock)
    }

    /// Validates a single value for this factor.
    pub fn check(self, value: f64) -> Result<()> {
        if self.allows_zero() {
            if value.is_finite() && value >= 0.0 {
                return Ok(());
            }
            return Err(ModelError::Domain {
                field: self.key(),
                value,
                range: NONNEGATIVE,
            });
        }
        positive(self.key(), value)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Factor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "K" => Ok(Factor::Capital),
            "L_u" => Ok(Factor::LowSkillLabor),
            "L_s" => Ok(Factor::HighSkillLabor),
            "P" => Ok(Factor::RobotStock),
            "G" => Ok(Factor::AiStock),
            other => Err(format!(
                "unknown factor `{other}` (expected one of K, L_u, L_s, P, G)"
            )),
        }
    }
}

fn open_unit(field: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(ModelError::Domain {
            field,
            value,
            range: OPEN_UNIT,
        })
    }
}

fn half_open_unit(field: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value <= 1.0 {
        Ok(())
    } else {
        Err(ModelError::Domain {
            field,
            value,
            range: HALF_OPEN_UNIT,
        })
    }
}

fn positive(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ModelError::Domain {
            field,
            value,
            range: POSITIVE,
        })
    }
}
