//! Scenario files: model inputs as strict JSON.
//!
//! ```json
//! {
//!   "units": "scaled",
//!   "parameters": { "alpha": 0.333, "gamma": 0.333, "theta": 0.75, "phi": 0.5,
//!                   "beta1": 0.9, "beta2": 0.95, "beta3": 0.667 },
//!   "factors": { "K": 69.0, "L_u": 98.3, "L_s": 58.4, "P": 17.3, "G": 0 },
//!   "sweep": { "axis1": { "factor": "G", "grid": { "linear": { "lo": 0, "hi": 34.6, "n": 101 } } },
//!              "outputs": ["premium"] }
//! }
//! ```
//!
//! With `"units": "scaled"` capital is in trillions of dollars, labor in
//! millions of persons, and the robot and AI stocks in billions of dollars.
//! `"raw"` means dollars and persons. The model always runs in raw units.

use std::path::Path;

use autoces_core::{Axis, Factor, FactorBundle, Grid, OutputKind, SweepSpec, TechnologyParameters};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const BUILTIN_TABLE1: &str = "table1";

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{origin}: {source}")]
    Parse {
        origin: String,
        source: serde_json::Error,
    },
    #[error("{origin}: unknown units `{tag}` (expected raw or scaled)")]
    Units { origin: String, tag: String },
    #[error("{origin}: {source}")]
    Invalid {
        origin: String,
        source: autoces_core::ModelError,
    },
    #[error("{origin}: {source}")]
    Sweep {
        origin: String,
        source: autoces_core::SweepError,
    },
    #[error("--set {0}: expected KEY=VALUE")]
    SetSyntax(String),
    #[error("--set {0}: unknown key (expected a parameter name or one of K, L_u, L_s, P, G)")]
    SetKey(String),
    #[error("--set {key}: cannot parse `{value}` as a number")]
    SetValue { key: String, value: String },
}

impl ScenarioError {
    pub fn kind(&self) -> &'static str {
        match self {
            ScenarioError::Io { .. } => "io",
            ScenarioError::Parse { .. } => "parse",
            ScenarioError::Units { .. } => "units",
            ScenarioError::Invalid { .. } | ScenarioError::Sweep { .. } => "domain",
            ScenarioError::SetSyntax(_)
            | ScenarioError::SetKey(_)
            | ScenarioError::SetValue { .. } => "usage",
        }
    }
}

/// Unit convention of the `factors` block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Raw,
    Scaled,
}

impl Units {
    fn parse(tag: &str) -> Option<Units> {
        match tag {
            "raw" => Some(Units::Raw),
            "scaled" => Some(Units::Scaled),
            _ => None,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Units::Raw => "raw",
            Units::Scaled => "scaled",
        }
    }
}

/// Decimal exponent applied to a factor's figure under `"scaled"` units.
pub fn scale_exponent(factor: Factor) -> i32 {
    match factor {
        Factor::Capital => 12,
        Factor::LowSkillLabor | Factor::HighSkillLabor => 6,
        Factor::RobotStock | Factor::AiStock => 9,
    }
}

/// `value · 10^exponent`, rounded once from the decimal representation.
///
/// Multiplying by `1e6` in binary would round twice; shifting the decimal
/// exponent keeps `98.3 million` equal to the literal `9.83e7`.
pub fn expand_decimal(value: f64, exponent: i32) -> f64 {
    if !value.is_finite() {
        return value;
    }
    let text = format!("{value:e}");
    let (mantissa, exp) = text
        .split_once('e')
        .expect("LowerExp always has an exponent");
    let exp: i32 = exp.parse().expect("LowerExp exponent is an integer");
    format!("{mantissa}e{}", exp + exponent)
        .parse()
        .expect("shifted exponent is a valid float literal")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub axis1: Axis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis2: Option<Axis>,
    pub outputs: Vec<OutputKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    units: String,
    parameters: TechnologyParameters,
    factors: FactorBundle,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<SweepBlock>,
}

/// Validated model inputs in raw units.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub params: TechnologyParameters,
    pub factors: FactorBundle,
    pub sweep: Option<SweepBlock>,
}

impl Scenario {
    /// The published calibration, expanded from its scaled figures.
    pub fn table1() -> Scenario {
        parse_scenario(TABLE1_JSON, BUILTIN_TABLE1).expect("embedded calibration is valid")
    }

    pub fn sweep_spec(&self) -> Option<SweepSpec> {
        self.sweep.as_ref().map(|s| SweepSpec {
            params: self.params,
            baseline: self.factors,
            axis1: s.axis1.clone(),
            axis2: s.axis2.clone(),
            outputs: s.outputs.clone(),
        })
    }

    /// Applies `KEY=VALUE` overrides (raw units; `a/b` fractions accepted).
    pub fn apply_overrides<S: AsRef<str>>(&mut self, sets: &[S]) -> Result<(), ScenarioError> {
        for set in sets {
            let set = set.as_ref();
            let (key, value) = set
                .split_once('=')
                .ok_or_else(|| ScenarioError::SetSyntax(set.to_string()))?;
            let key = key.trim();
            let number = parse_number(value.trim()).ok_or_else(|| ScenarioError::SetValue {
                key: key.to_string(),
                value: value.to_string(),
            })?;
            if let Ok(factor) = key.parse::<Factor>() {
                self.factors = self.factors.with(factor, number);
            } else if !self.params.set(key, number) {
                return Err(ScenarioError::SetKey(key.to_string()));
            }
        }
        self.validate("--set")
    }

    fn validate(&self, origin: &str) -> Result<(), ScenarioError> {
        let invalid = |source| ScenarioError::Invalid {
            origin: origin.to_string(),
            source,
        };
        self.params.validate().map_err(invalid)?;
        self.factors.validate().map_err(invalid)?;
        if let Some(spec) = self.sweep_spec() {
            spec.validate().map_err(|source| ScenarioError::Sweep {
                origin: origin.to_string(),
                source,
            })?;
        }
        Ok(())
    }

    /// Raw-unit JSON that [`load_scenario`] reads back to identical values.
    pub fn to_json(&self) -> String {
        let file = ScenarioFile {
            units: Units::Raw.tag().to_string(),
            parameters: self.params,
            factors: self.factors,
            sweep: self.sweep.clone(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("scenario serializes");
        text.push('\n');
        text
    }
}

/// Accepts plain floats and `a/b` fractions such as `1/3`.
pub fn parse_number(text: &str) -> Option<f64> {
    if let Some((num, den)) = text.split_once('/') {
        let num: f64 = num.trim().parse().ok()?;
        let den: f64 = den.trim().parse().ok()?;
        return Some(num / den);
    }
    text.parse().ok()
}

/// Loads a scenario file, or the embedded calibration for `"table1"`.
pub fn load_scenario(source: &str) -> Result<Scenario, ScenarioError> {
    if source == BUILTIN_TABLE1 {
        return Ok(Scenario::table1());
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: source.to_string(),
        source: e,
    })?;
    parse_scenario(&text, source)
}

pub fn parse_scenario(text: &str, origin: &str) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        origin: origin.to_string(),
        source: e,
    })?;
    let units = Units::parse(&file.units).ok_or_else(|| ScenarioError::Units {
        origin: origin.to_string(),
        tag: file.units.clone(),
    })?;

    let mut factors = file.factors;
    let mut sweep = file.sweep;
    if units == Units::Scaled {
        for factor in Factor::ALL {
            let v = expand_decimal(factor.get(&factors), scale_exponent(factor));
            factors = factors.with(factor, v);
        }
        if let Some(block) = sweep.as_mut() {
            expand_axis(&mut block.axis1);
            if let Some(axis2) = block.axis2.as_mut() {
                expand_axis(axis2);
            }
        }
    }

    let scenario = Scenario {
        params: file.parameters,
        factors,
        sweep,
    };
    scenario.validate(origin)?;
    Ok(scenario)
}

fn expand_axis(axis: &mut Axis) {
    if let Grid::Linear { lo, hi, .. } = &mut axis.grid {
        let exponent = scale_exponent(axis.factor);
        *lo = expand_decimal(*lo, exponent);
        *hi = expand_decimal(*hi, exponent);
    }
}

/// The published calibration exactly as tabulated.
pub const TABLE1_JSON: &str = r#"{
  "units": "scaled",
  "parameters": {
    "alpha": 0.3333333333333333,
    "gamma": 0.3333333333333333,
    "theta": 0.75,
    "phi": 0.5,
    "beta1": 0.9,
    "beta2": 0.95,
    "beta3": 0.6666666666666666
  },
  "factors": { "K": 69.0, "L_u": 98.3, "L_s": 58.4, "P": 17.3, "G": 0.0 }
}
"#;
