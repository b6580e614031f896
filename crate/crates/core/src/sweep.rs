//! Comparative statics over grids of factor quantities.
//!
//! Grid points are evaluated independently (in parallel when allowed) and
//! assembled row-major over `(axis1, axis2)`, so results do not depend on the
//! number of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ces::Evaluation;
use crate::error::ModelError;
use crate::params::{Factor, FactorBundle, TechnologyParameters};

pub const ENGINE_VERSION: &str = concat!("autoces-core ", env!("CARGO_PKG_VERSION"));

/// Default number of points per axis for the figure grids.
pub const DEFAULT_POINTS: usize = 101;

/// One recorded quantity, in canonical column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OutputKind {
    #[serde(rename = "Y")]
    Output,
    #[serde(rename = "w_s")]
    HighSkillWage,
    #[serde(rename = "w_u")]
    LowSkillWage,
    #[serde(rename = "premium")]
    Premium,
    #[serde(rename = "premium_gradient_ai")]
    PremiumGradientAi,
}

impl OutputKind {
    pub const ALL: [OutputKind; 5] = [
        OutputKind::Output,
        OutputKind::HighSkillWage,
        OutputKind::LowSkillWage,
        OutputKind::Premium,
        OutputKind::PremiumGradientAi,
    ];

    pub fn column_name(self) -> &'static str {
        match self {
            OutputKind::Output => "Y",
            OutputKind::HighSkillWage => "w_s",
            OutputKind::LowSkillWage => "w_u",
            OutputKind::Premium => "premium",
            OutputKind::PremiumGradientAi => "premium_gradient_ai",
        }
    }
}

impl std::str::FromStr for OutputKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OutputKind::ALL
            .into_iter()
            .find(|k| k.column_name() == s)
            .ok_or_else(|| {
                format!("unknown output `{s}` (expected Y, w_s, w_u, premium, premium_gradient_ai)")
            })
    }
}

/// Values taken by one axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Grid {
    /// `n` evenly spaced points from `lo` to `hi` inclusive.
    Linear { lo: f64, hi: f64, n: usize },
    /// Multiples of the baseline robot stock `P₀`.
    MultiplesOfP(Vec<f64>),
}

impl Grid {
    pub fn points(&self, robot_base: f64) -> Vec<f64> {
        match self {
            Grid::Linear { lo, hi, n } => {
                let last = n - 1;
                (0..*n)
                    .map(|i| {
                        if i == last {
                            *hi
                        } else {
                            lo + (hi - lo) * (i as f64 / last as f64)
                        }
                    })
                    .collect()
            }
            Grid::MultiplesOfP(m) => m.iter().map(|k| k * robot_base).collect(),
        }
    }

    fn validate(&self) -> Result<(), SweepError> {
        match self {
            Grid::Linear { lo, hi, n } => {
                if *n < 2 {
                    return Err(SweepError::InvalidSpec(format!(
                        "linear grid needs n >= 2, got {n}"
                    )));
                }
                if !lo.is_finite() || !hi.is_finite() {
                    return Err(SweepError::InvalidSpec(format!(
                        "linear grid bounds must be finite, got [{lo}, {hi}]"
                    )));
                }
            }
            Grid::MultiplesOfP(m) => {
                if m.is_empty() {
                    return Err(SweepError::InvalidSpec(
                        "multiples-of-P grid is empty".into(),
                    ));
                }
                if let Some(bad) = m.iter().find(|k| !k.is_finite()) {
                    return Err(SweepError::InvalidSpec(format!(
                        "multiples-of-P grid has non-finite entry {bad}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub factor: Factor,
    pub grid: Grid,
}

/// A 1D or 2D grid over factor quantities around a baseline point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub params: TechnologyParameters,
    pub baseline: FactorBundle,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub outputs: Vec<OutputKind>,
}

impl SweepSpec {
    /// Premium along `G ∈ [0, 2P₀]`.
    pub fn ai_curve(params: TechnologyParameters, baseline: FactorBundle, n: usize) -> Self {
        SweepSpec {
            params,
            baseline,
            axis1: Axis {
                factor: Factor::AiStock,
                grid: Grid::Linear {
                    lo: 0.0,
                    hi: 2.0 * baseline.robot_stock,
                    n,
                },
            },
            axis2: None,
            outputs: vec![OutputKind::Premium],
        }
    }

    /// `w_s`, `w_u` and the premium over `G ∈ [0, 2P₀] × P ∈ [0.1P₀, 2P₀]`.
    pub fn ai_robot_surface(
        params: TechnologyParameters,
        baseline: FactorBundle,
        n: usize,
    ) -> Self {
        let p0 = baseline.robot_stock;
        SweepSpec {
            params,
            baseline,
            axis1: Axis {
                factor: Factor::AiStock,
                grid: Grid::Linear {
                    lo: 0.0,
                    hi: 2.0 * p0,
                    n,
                },
            },
            axis2: Some(Axis {
                factor: Factor::RobotStock,
                grid: Grid::Linear {
                    lo: 0.1 * p0,
                    hi: 2.0 * p0,
                    n,
                },
            }),
            outputs: vec![
                OutputKind::HighSkillWage,
                OutputKind::LowSkillWage,
                OutputKind::Premium,
            ],
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        self.axis1.grid.validate()?;
        if let Some(axis2) = &self.axis2 {
            axis2.grid.validate()?;
            if axis2.factor == self.axis1.factor {
                return Err(SweepError::InvalidSpec(format!(
                    "both axes sweep {}",
                    axis2.factor
                )));
            }
        }
        if self.outputs.is_empty() {
            return Err(SweepError::InvalidSpec("no outputs requested".into()));
        }
        Ok(())
    }

    /// Requested outputs, deduplicated, in canonical order.
    pub fn columns(&self) -> Vec<OutputKind> {
        let mut cols = self.outputs.clone();
        cols.sort();
        cols.dedup();
        cols
    }

    pub fn axes(&self) -> Vec<&Axis> {
        std::iter::once(&self.axis1)
            .chain(self.axis2.as_ref())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// One coordinate per axis.
    pub coords: Vec<f64>,
    /// One entry per column; `None` marks a value that does not exist at this point.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub engine_version: String,
    pub columns: Vec<OutputKind>,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn dimension(&self) -> usize {
        if self.spec.axis2.is_some() {
            2
        } else {
            1
        }
    }

    pub fn axis_factors(&self) -> Vec<Factor> {
        self.spec.axes().iter().map(|a| a.factor).collect()
    }

    pub fn column(&self, kind: OutputKind) -> Option<Vec<Option<f64>>> {
        let idx = self.columns.iter().position(|c| *c == kind)?;
        Some(self.rows.iter().map(|r| r.values[idx]).collect())
    }

    /// Bundle evaluated at a given row.
    pub fn bundle_at(&self, row: &SweepRow) -> FactorBundle {
        self.spec
            .axes()
            .iter()
            .zip(&row.coords)
            .fold(self.spec.baseline, |b, (axis, x)| b.with(axis.factor, *x))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid sweep: {0}")]
    InvalidSpec(String),
    #[error("at {}: {source}", format_coords(.coords))]
    Point {
        coords: Vec<(Factor, f64)>,
        source: ModelError,
    },
    #[error("monotonicity needs a 1D sweep, got {0} axes")]
    Dimension(usize),
    #[error("column {0} was not recorded")]
    MissingColumn(&'static str),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

fn format_coords(coords: &[(Factor, f64)]) -> String {
    coords
        .iter()
        .map(|(f, x)| format!("{f}={x:e}"))
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    run_sweep_with(spec, &SweepOptions::default())
}

pub fn run_sweep_with(spec: &SweepSpec, options: &SweepOptions) -> Result<SweepResult, SweepError> {
    spec.validate()?;
    let p0 = spec.baseline.robot_stock;
    let first = spec.axis1.grid.points(p0);
    let second = spec.axis2.as_ref().map(|a| a.grid.points(p0));
    let columns = spec.columns();

    let mut points: Vec<Vec<f64>> = Vec::new();
    for x in &first {
        match &second {
            Some(ys) => points.extend(ys.iter().map(|y| vec![*x, *y])),
            None => points.push(vec![*x]),
        }
    }

    let evaluate = || -> Vec<Result<SweepRow, SweepError>> {
        points
            .par_iter()
            .map(|coords| evaluate_row(spec, &columns, coords))
            .collect()
    };
    let evaluated = match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| SweepError::ThreadPool(e.to_string()))?
            .install(evaluate),
        None => evaluate(),
    };

    let rows = evaluated.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(SweepResult {
        spec: spec.clone(),
        engine_version: ENGINE_VERSION.to_string(),
        columns,
        rows,
    })
}

fn evaluate_row(
    spec: &SweepSpec,
    columns: &[OutputKind],
    coords: &[f64],
) -> Result<SweepRow, SweepError> {
    let axes = spec.axes();
    let bundle = axes
        .iter()
        .zip(coords)
        .fold(spec.baseline, |b, (axis, x)| b.with(axis.factor, *x));
    let fail = |source| SweepError::Point {
        coords: axes
            .iter()
            .map(|a| a.factor)
            .zip(coords.iter().copied())
            .collect(),
        source,
    };
    let eval = Evaluation::new(&spec.params, &bundle).map_err(fail)?;
    let values = columns
        .iter()
        .map(|kind| match kind {
            OutputKind::Output => eval.output().map(Some),
            OutputKind::HighSkillWage => eval.high_skill_wage().map(Some),
            OutputKind::LowSkillWage => eval.low_skill_wage().map(Some),
            OutputKind::Premium => eval.skill_premium().map(Some),
            OutputKind::PremiumGradientAi => match eval.premium_gradient_ai() {
                Err(ModelError::GradientUndefinedAtZeroAi) => Ok(None),
                other => other.map(Some),
            },
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(fail)?;
    Ok(SweepRow {
        coords: coords.to_vec(),
        values,
    })
}

/// Premium at `G ∈ {0, 0.5P, P, 2P}`, everything else held at the baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table2Row {
    pub multiplier: f64,
    pub ai_stock: f64,
    pub premium: f64,
}

pub const TABLE2_MULTIPLIERS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

pub fn table2_spec(params: TechnologyParameters, baseline: FactorBundle) -> SweepSpec {
    SweepSpec {
        params,
        baseline,
        axis1: Axis {
            factor: Factor::AiStock,
            grid: Grid::MultiplesOfP(TABLE2_MULTIPLIERS.to_vec()),
        },
        axis2: None,
        outputs: vec![OutputKind::Premium],
    }
}

pub fn table2_scenario(
    params: &TechnologyParameters,
    baseline: &FactorBundle,
) -> Result<Vec<Table2Row>, SweepError> {
    let result = run_sweep_with(
        &table2_spec(*params, *baseline),
        &SweepOptions { threads: Some(1) },
    )?;
    Ok(TABLE2_MULTIPLIERS
        .iter()
        .zip(&result.rows)
        .map(|(m, row)| Table2Row {
            multiplier: *m,
            ai_stock: row.coords[0],
            premium: row.values[0].expect("premium is always defined"),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Monotonicity {
    StrictlyIncreasing,
    StrictlyDecreasing,
    Constant,
    NonMonotone,
}

impl Monotonicity {
    pub fn as_str(self) -> &'static str {
        match self {
            Monotonicity::StrictlyIncreasing => "strictly-increasing",
            Monotonicity::StrictlyDecreasing => "strictly-decreasing",
            Monotonicity::Constant => "constant",
            Monotonicity::NonMonotone => "non-monotone",
        }
    }
}

/// Shape of one column along a 1D sweep. Missing values are skipped.
///
/// `Constant` means `max − min ≤ 1e-12·|mean|`; otherwise any tie breaks strictness.
pub fn monotonicity_report(
    result: &SweepResult,
    column: OutputKind,
) -> Result<Monotonicity, SweepError> {
    if result.dimension() != 1 {
        return Err(SweepError::Dimension(result.dimension()));
    }
    let values: Vec<f64> = result
        .column(column)
        .ok_or(SweepError::MissingColumn(column.column_name()))?
        .into_iter()
        .flatten()
        .collect();
    Ok(classify_sequence(&values))
}

pub fn classify_sequence(values: &[f64]) -> Monotonicity {
    if values.is_empty() {
        return Monotonicity::Constant;
    }
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if max - min <= 1e-12 * mean.abs() {
        return Monotonicity::Constant;
    }
    if values.windows(2).all(|w| w[1] > w[0]) {
        Monotonicity::StrictlyIncreasing
    } else if values.windows(2).all(|w| w[1] < w[0]) {
        Monotonicity::StrictlyDecreasing
    } else {
        Monotonicity::NonMonotone
    }
}
