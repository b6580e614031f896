//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;

use autoces_core::sweep::DEFAULT_POINTS;
use autoces_core::{
    apply_reduction, ces, classify_ai_effect, legacy, run_sweep_with, table2_scenario, Axis,
    Evaluation, Factor, FactorBundle, Grid, LegacyBundle, LegacyParameters, ModelError, OutputKind,
    SweepError, SweepOptions, SweepSpec, Validation,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::emit::{emit_sweep, emit_table, Cell, EmissionFormat, Table};
use crate::scenario::{load_scenario, parse_number, Scenario, ScenarioError, BUILTIN_TABLE1};
use crate::selftest;

pub const THREADS_ENV: &str = "AUTOCES_THREADS";

/// Largest relative gap accepted by `reduce` between the two models.
pub const REDUCTION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "autoces",
    version,
    about = "Wages and skill premium under robots and AI"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Scenario file, or `table1` for the built-in calibration.
    #[arg(long, default_value = BUILTIN_TABLE1)]
    scenario: String,
    /// Override a parameter or factor (raw units), e.g. `--set G=1.73e10`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    #[arg(long, value_enum, default_value_t = EmissionFormat::Csv)]
    format: EmissionFormat,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Output, both wages, premium and its AI gradient at one point.
    Eval(WithCommon),
    /// Skill premium at one point.
    Premium(WithCommon),
    /// Premium gradient with respect to AI, and its sign class.
    Gradient(WithCommon),
    /// Direction of AI's effect on the premium, from parameters alone.
    Classify(ClassifyArgs),
    /// Premium at G = 0, P/2, P and 2P.
    Table2(WithCommon),
    /// One- or two-dimensional sweep.
    Sweep(SweepArgs),
    /// Benchmark model without AI.
    Noai(NoaiArgs),
    /// Nested parameters that reproduce the benchmark, with an equivalence check.
    Reduce(ReduceArgs),
    /// Run the built-in invariant checks.
    Selftest(SelftestArgs),
    /// Print the resolved scenario as raw-unit JSON.
    Scenario(WithCommon),
}

#[derive(Debug, Args)]
struct WithCommon {
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, value_parser = number)]
    gamma: Option<f64>,
    #[arg(long, value_parser = number)]
    phi: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// Wages, premium and gradient over G from 0 to 2P.
    AiCurve,
    /// (G, P) grid with wages and premium.
    Surface,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, conflicts_with_all = ["axis", "axis2"])]
    preset: Option<Preset>,
    /// First swept factor (K, L_u, L_s, P or G).
    #[arg(long, value_parser = factor)]
    axis: Option<Factor>,
    /// `linear:LO:HI:N` or `multiples:M1,M2,...` (multiples of the baseline P).
    #[arg(long, value_parser = grid, requires = "axis")]
    grid: Option<Grid>,
    #[arg(long, value_parser = factor, requires = "axis")]
    axis2: Option<Factor>,
    #[arg(long, value_parser = grid, requires = "axis2")]
    grid2: Option<Grid>,
    /// Comma-separated columns from Y, w_s, w_u, premium, premium_gradient_ai.
    #[arg(long, value_delimiter = ',')]
    outputs: Option<Vec<OutputKind>>,
    /// Points per axis for default grids.
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    points: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct NoaiArgs {
    /// Capital share; defaults to the scenario's alpha.
    #[arg(long, value_parser = number)]
    alpha: Option<f64>,
    /// Weight of the low-skill-plus-robots aggregate.
    #[arg(long, value_parser = number)]
    beta: f64,
    /// Substitution parameter; defaults to the scenario's gamma.
    #[arg(long, value_parser = number)]
    gamma: Option<f64>,
    #[arg(long, value_parser = number)]
    capital: Option<f64>,
    #[arg(long, value_parser = number)]
    low_skill: Option<f64>,
    #[arg(long, value_parser = number)]
    high_skill: Option<f64>,
    #[arg(long, value_parser = number)]
    robots: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[arg(long, value_parser = number)]
    beta: f64,
    #[arg(long, value_parser = number)]
    gamma: Option<f64>,
    #[arg(long, value_parser = number)]
    phi: Option<f64>,
    #[arg(long, value_parser = number)]
    alpha: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 20_240_601)]
    seed: u64,
    /// Random points per property.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[command(flatten)]
    common: Common,
}

fn number(text: &str) -> Result<f64, String> {
    parse_number(text).ok_or_else(|| format!("cannot parse `{text}` as a number"))
}

fn factor(text: &str) -> Result<Factor, String> {
    text.parse::<Factor>().map_err(|e| e.to_string())
}

/// Parses `linear:LO:HI:N` or `multiples:M1,M2,...`.
pub fn grid(text: &str) -> Result<Grid, String> {
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| format!("grid `{text}`: expected linear:LO:HI:N or multiples:M1,M2,..."))?;
    match kind {
        "linear" => {
            let parts: Vec<&str> = rest.split(':').collect();
            let [lo, hi, n] = parts[..] else {
                return Err(format!("grid `{text}`: expected linear:LO:HI:N"));
            };
            Ok(Grid::Linear {
                lo: number(lo)?,
                hi: number(hi)?,
                n: n.parse()
                    .map_err(|_| format!("grid `{text}`: N must be a positive integer"))?,
            })
        }
        "multiples" => rest
            .split(',')
            .map(number)
            .collect::<Result<Vec<_>, _>>()
            .map(Grid::MultiplesOfP),
        _ => Err(format!("grid `{text}`: unknown kind `{kind}`")),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error("{THREADS_ENV}={0}: expected a positive integer")]
    Threads(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("reduction check failed: relative gap {gap:e} exceeds {REDUCTION_TOLERANCE:e}")]
    ReductionMismatch { gap: f64 },
    #[error("{0} selftest check(s) failed")]
    Selftest(usize),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Scenario(e) => e.kind(),
            CliError::Model(e) => e.kind(),
            CliError::Sweep(SweepError::Point { source, .. }) => source.kind(),
            CliError::Sweep(_) => "domain",
            CliError::Threads(_) => "usage",
            CliError::Write { .. } => "io",
            CliError::ReductionMismatch { .. } | CliError::Selftest(_) => "check",
        }
    }

    pub fn exit_status(&self) -> i32 {
        if self.kind() == "usage" {
            2
        } else {
            1
        }
    }
}

/// Exit status plus everything the process would print.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn cli_main<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let status = e.exit_code();
            return if e.use_stderr() {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let out = cli.command.common().out.clone();
    match run(cli.command) {
        Ok(text) => match out {
            Some(path) => match std::fs::write(&path, &text) {
                Ok(()) => Outcome::default(),
                Err(source) => failure(&CliError::Write { path, source }),
            },
            None => Outcome {
                status: 0,
                stdout: text,
                stderr: String::new(),
            },
        },
        Err(Failed { error, stdout }) => Outcome {
            stdout,
            ..failure(&error)
        },
    }
}

fn failure(error: &CliError) -> Outcome {
    Outcome {
        status: error.exit_status(),
        stdout: String::new(),
        stderr: format!(
            "error[{}]: {}\n",
            error.kind(),
            one_line(&error.to_string())
        ),
    }
}

fn one_line(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// An error, plus any report already produced (selftest and reduce print before failing).
struct Failed {
    error: CliError,
    stdout: String,
}

impl<E: Into<CliError>> From<E> for Failed {
    fn from(e: E) -> Self {
        Failed {
            error: e.into(),
            stdout: String::new(),
        }
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Eval(a)
            | Command::Premium(a)
            | Command::Gradient(a)
            | Command::Table2(a)
            | Command::Scenario(a) => &a.common,
            Command::Classify(a) => &a.common,
            Command::Sweep(a) => &a.common,
            Command::Noai(a) => &a.common,
            Command::Reduce(a) => &a.common,
            Command::Selftest(a) => &a.common,
        }
    }
}

fn resolve(common: &Common) -> Result<Scenario, ScenarioError> {
    let mut scenario = load_scenario(&common.scenario)?;
    scenario.apply_overrides(&common.sets)?;
    Ok(scenario)
}

#[derive(Serialize)]
struct Metadata<'a> {
    command: &'a str,
    engine_version: &'a str,
    parameters: autoces_core::TechnologyParameters,
    factors: FactorBundle,
}

fn metadata<'a>(command: &'a str, scenario: &Scenario) -> Metadata<'a> {
    Metadata {
        command,
        engine_version: autoces_core::sweep::ENGINE_VERSION,
        parameters: scenario.params,
        factors: scenario.factors,
    }
}

fn run(command: Command) -> Result<String, Failed> {
    let format = command.common().format;
    match command {
        Command::Eval(a) => {
            let s = resolve(&a.common)?;
            let r = ces::wage_report(&s.params, &s.factors)?;
            let mut t = Table::new(OutputKind::ALL.map(OutputKind::column_name));
            t.push(vec![
                r.output.into(),
                r.high_skill_wage.into(),
                r.low_skill_wage.into(),
                r.premium.into(),
                r.premium_gradient_ai.into(),
            ]);
            Ok(emit_table(&t, metadata("eval", &s), format))
        }
        Command::Premium(a) => {
            let s = resolve(&a.common)?;
            let mut t = Table::new(["premium"]);
            t.push(vec![ces::skill_premium(&s.params, &s.factors)?.into()]);
            Ok(emit_table(&t, metadata("premium", &s), format))
        }
        Command::Gradient(a) => {
            let s = resolve(&a.common)?;
            let g = ces::premium_gradient_ai(&s.params, &s.factors)?;
            let effect = classify_ai_effect(&s.params)?;
            let mut t = Table::new(["premium_gradient_ai", "effect"]);
            t.push(vec![g.into(), Cell::Text(effect.as_str().into())]);
            Ok(emit_table(&t, metadata("gradient", &s), format))
        }
        Command::Classify(a) => {
            let mut s = resolve(&a.common)?;
            if let Some(g) = a.gamma {
                s.params.gamma = g;
            }
            if let Some(p) = a.phi {
                s.params.phi = p;
            }
            let effect = classify_ai_effect(&s.params)?;
            Ok(match format {
                EmissionFormat::Json => {
                    crate::emit::to_machine_json(&serde_json::json!({ "effect": effect.as_str() }))
                }
                _ => format!("{}\n", effect.as_str()),
            })
        }
        Command::Table2(a) => {
            let s = resolve(&a.common)?;
            let rows = table2_scenario(&s.params, &s.factors)?;
            let mut t = Table::new(["multiplier", "G", "premium"]);
            for r in rows {
                t.push(vec![
                    r.multiplier.into(),
                    r.ai_stock.into(),
                    r.premium.into(),
                ]);
            }
            Ok(emit_table(&t, metadata("table2", &s), format))
        }
        Command::Sweep(a) => {
            let threads = threads_from_env()?;
            let s = resolve(&a.common)?;
            let spec = sweep_spec(&a, &s)?;
            let result = run_sweep_with(&spec, &SweepOptions { threads })?;
            Ok(emit_sweep(&result, format))
        }
        Command::Noai(a) => noai(&a, format),
        Command::Reduce(a) => reduce(&a, format),
        Command::Selftest(a) => {
            let s = resolve(&a.common)?;
            let report = selftest::run(&s, a.seed, a.samples);
            let text = report.render(format);
            match report.failures() {
                0 => Ok(text),
                n => Err(Failed {
                    error: CliError::Selftest(n),
                    stdout: text,
                }),
            }
        }
        Command::Scenario(a) => Ok(resolve(&a.common)?.to_json()),
    }
}

fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Threads(v)),
        },
    }
}

/// Grid used when an axis is given without `--grid`.
fn default_grid(factor: Factor, baseline: &FactorBundle, n: usize) -> Grid {
    let p0 = baseline.robot_stock;
    match factor {
        Factor::AiStock => Grid::Linear {
            lo: 0.0,
            hi: 2.0 * p0,
            n,
        },
        Factor::RobotStock => Grid::Linear {
            lo: 0.1 * p0,
            hi: 2.0 * p0,
            n,
        },
        other => {
            let x0 = other.get(baseline);
            Grid::Linear {
                lo: 0.1 * x0,
                hi: 2.0 * x0,
                n,
            }
        }
    }
}

fn sweep_spec(a: &SweepArgs, s: &Scenario) -> Result<SweepSpec, CliError> {
    let mut spec = match (a.preset, a.axis) {
        (Some(Preset::Surface), _) => SweepSpec::ai_robot_surface(s.params, s.factors, a.points),
        (Some(Preset::AiCurve), _) => SweepSpec::ai_curve(s.params, s.factors, a.points),
        (None, Some(f1)) => SweepSpec {
            params: s.params,
            baseline: s.factors,
            axis1: Axis {
                factor: f1,
                grid: a
                    .grid
                    .clone()
                    .unwrap_or_else(|| default_grid(f1, &s.factors, a.points)),
            },
            axis2: a.axis2.map(|f2| Axis {
                factor: f2,
                grid: a
                    .grid2
                    .clone()
                    .unwrap_or_else(|| default_grid(f2, &s.factors, a.points)),
            }),
            outputs: OutputKind::ALL.to_vec(),
        },
        (None, None) => s
            .sweep_spec()
            .unwrap_or_else(|| SweepSpec::ai_curve(s.params, s.factors, a.points)),
    };
    if let Some(outputs) = &a.outputs {
        spec.outputs = outputs.clone();
    }
    spec.validate()?;
    Ok(spec)
}

fn noai(a: &NoaiArgs, format: EmissionFormat) -> Result<String, Failed> {
    let s = resolve(&a.common)?;
    let lp = LegacyParameters {
        alpha: a.alpha.unwrap_or(s.params.alpha),
        beta: a.beta,
        gamma: a.gamma.unwrap_or(s.params.gamma),
    };
    let b = LegacyBundle::new(
        a.capital.unwrap_or(s.factors.capital),
        a.low_skill.unwrap_or(s.factors.low_skill_labor),
        a.high_skill.unwrap_or(s.factors.high_skill_labor),
        a.robots.unwrap_or(s.factors.robot_stock),
    );
    let y = legacy::legacy_output(&lp, &b)?;
    let ws = legacy::legacy_high_skill_wage(&lp, &b)?;
    let grad = legacy::legacy_ws_robot_gradient(&lp, &b)?;
    let sign = legacy::legacy_robot_effect_sign(&lp)?;
    let mut t = Table::new(["Y", "w_s", "dws_dP", "sign"]);
    t.push(vec![
        y.into(),
        ws.into(),
        grad.into(),
        f64::from(sign).into(),
    ]);
    #[derive(Serialize)]
    struct NoaiMeta {
        command: &'static str,
        parameters: LegacyParameters,
        factors: LegacyBundle,
    }
    let meta = NoaiMeta {
        command: "noai",
        parameters: lp,
        factors: b,
    };
    Ok(emit_table(&t, meta, format))
}

/// Largest relative gap in output and both wages between the benchmark and
/// its nested image, at `G = 0`.
pub fn reduction_gap(
    lp: &LegacyParameters,
    phi: f64,
    b: &LegacyBundle,
) -> autoces_core::Result<(autoces_core::ReductionMap, f64)> {
    let map = apply_reduction(lp.beta, lp.gamma, phi)?;
    let nested = map.to_parameters(lp.alpha, lp.gamma, phi);
    let e = Evaluation::with_validation(
        &nested,
        &b.to_factor_bundle(),
        Validation::RelaxedInnerShares,
    )?;
    let rel = |a: f64, r: f64| ((a - r) / r).abs();
    let y = legacy::legacy_output(lp, b)?;
    let ws = legacy::legacy_high_skill_wage(lp, b)?;
    let gap = rel(e.output()?, y).max(rel(e.high_skill_wage()?, ws));
    Ok((map, gap))
}

fn reduce(a: &ReduceArgs, format: EmissionFormat) -> Result<String, Failed> {
    let s = resolve(&a.common)?;
    let lp = LegacyParameters {
        alpha: a.alpha.unwrap_or(s.params.alpha),
        beta: a.beta,
        gamma: a.gamma.unwrap_or(s.params.gamma),
    };
    let phi = a.phi.unwrap_or(s.params.phi);
    let b = LegacyBundle::new(
        s.factors.capital,
        s.factors.low_skill_labor,
        s.factors.high_skill_labor,
        s.factors.robot_stock,
    );
    let (map, gap) = reduction_gap(&lp, phi, &b)?;
    let mut t = Table::new(["theta", "beta1", "beta2", "beta3", "max_rel_gap"]);
    t.push(vec![
        map.theta.into(),
        map.beta1.into(),
        map.beta2.into(),
        map.beta3.into(),
        gap.into(),
    ]);
    #[derive(Serialize)]
    struct ReduceMeta {
        command: &'static str,
        parameters: LegacyParameters,
        phi: f64,
        factors: LegacyBundle,
        tolerance: f64,
    }
    let meta = ReduceMeta {
        command: "reduce",
        parameters: lp,
        phi,
        factors: b,
        tolerance: REDUCTION_TOLERANCE,
    };
    let text = emit_table(&t, meta, format);
    if gap <= REDUCTION_TOLERANCE {
        Ok(text)
    } else {
        Err(Failed {
            error: CliError::ReductionMismatch { gap },
            stdout: text,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        cli_main(std::iter::once("autoces").chain(args.iter().copied()))
    }

    #[test]
    fn classify_neutral_is_bare_word() {
        let o = run(&["classify", "--gamma", "0.5", "--phi", "0.5"]);
        assert_eq!(o.status, 0, "{}", o.stderr);
        assert_eq!(o.stdout, "PremiumNeutral\n");
        assert_eq!(run(&["classify"]).stdout, "PremiumDecreasing\n");
        assert_eq!(
            run(&["classify", "--gamma", "3/4"]).stdout,
            "PremiumIncreasing\n"
        );
    }

    #[test]
    fn gradient_at_zero_ai_fails() {
        let o = run(&["gradient", "--scenario", "table1", "--set", "G=0"]);
        assert_eq!(o.status, 1);
        assert!(o.stdout.is_empty());
        assert_eq!(o.stderr, "error[domain]: gradient undefined at G=0\n");
    }

    #[test]
    fn gradient_with_ai_reports_class() {
        let o = run(&["gradient", "--set", "G=1.73e10"]);
        assert_eq!(o.status, 0, "{}", o.stderr);
        let row = o.stdout.lines().nth(1).unwrap();
        assert!(
            row.starts_with('-') && row.ends_with(",PremiumDecreasing"),
            "{row}"
        );
    }

    #[test]
    fn table2_rows() {
        let o = run(&["table2", "--scenario", "table1", "--format", "csv"]);
        assert_eq!(o.status, 0);
        let lines: Vec<_> = o.stdout.lines().collect();
        assert_eq!(lines[0], "multiplier,G,premium");
        assert_eq!(lines.len(), 5);
        let pretty = run(&["table2", "--format", "pretty"]).stdout;
        assert!(pretty.contains("1.6164"), "{pretty}");
    }

    #[test]
    fn usage_errors_exit_2() {
        for args in [
            &["frobnicate"][..],
            &["eval", "--bogus"],
            &["sweep", "--grid", "linear:0:1:3"],
        ] {
            let o = run(args);
            assert_eq!(o.status, 2, "{args:?}");
            assert!(o.stderr.contains("Usage"), "{}", o.stderr);
        }
        let o = run(&["eval", "--set", "zeta=1"]);
        assert_eq!(o.status, 2);
        assert!(o.stderr.starts_with("error[usage]: "));
    }

    #[test]
    fn domain_errors_exit_1_with_one_line() {
        let o = run(&["eval", "--set", "beta1=1.2"]);
        assert_eq!(o.status, 1);
        assert!(o.stderr.starts_with("error[domain]: "), "{}", o.stderr);
        assert!(o.stderr.contains("beta1"));
        assert_eq!(o.stderr.lines().count(), 1);
    }

    #[test]
    fn grid_syntax() {
        assert_eq!(
            grid("linear:0:2:3").unwrap(),
            Grid::Linear {
                lo: 0.0,
                hi: 2.0,
                n: 3
            }
        );
        assert_eq!(
            grid("multiples:0,1/2,1").unwrap(),
            Grid::MultiplesOfP(vec![0.0, 0.5, 1.0])
        );
        assert!(grid("linear:0:2").is_err());
        assert!(grid("log:1:2:3").is_err());
    }

    #[test]
    fn sweep_custom_axes() {
        let o = run(&[
            "sweep",
            "--axis",
            "G",
            "--grid",
            "multiples:0,1",
            "--axis2",
            "L_s",
            "--points",
            "3",
            "--outputs",
            "premium,w_s",
        ]);
        assert_eq!(o.status, 0, "{}", o.stderr);
        let lines: Vec<_> = o.stdout.lines().collect();
        assert_eq!(lines[0], "G,L_s,w_s,premium");
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn noai_and_reduce() {
        let o = run(&["noai", "--beta", "0.4"]);
        assert_eq!(o.status, 0, "{}", o.stderr);
        assert_eq!(o.stdout.lines().next().unwrap(), "Y,w_s,dws_dP,sign");
        assert!(o
            .stdout
            .lines()
            .nth(1)
            .unwrap()
            .ends_with(",1.0000000000000000e0"));
        let o = run(&["reduce", "--beta", "0.4"]);
        assert_eq!(o.status, 0, "{}", o.stderr);
        let o = run(&["reduce", "--beta", "0.8", "--gamma", "1"]);
        assert_eq!(o.status, 1);
        assert!(o.stderr.contains("reduction inadmissible"));
    }

    #[test]
    fn out_writes_file() {
        let dir = std::env::temp_dir().join(format!("autoces-out-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("p.csv");
        let o = run(&["premium", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status, 0);
        assert!(o.stdout.is_empty());
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            run(&["premium"]).stdout
        );
        std::fs::remove_dir_all(dir).unwrap();
    }
}
