//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use autoces_cli::cli::reduction_gap;
use autoces_cli::scenario::{load_scenario, Scenario};
use autoces_core::numdiff::{gradient, DiffSpec};
use autoces_core::sweep::classify_sequence;
use autoces_core::{
    ces, legacy, monotonicity_report, run_sweep, Evaluation, Factor, FactorBundle, Grid,
    LegacyBundle, LegacyParameters, Monotonicity, OutputKind, SweepSpec, TechnologyParameters,
};
use autoces_oracle as oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PUBLISHED_TABLE2: [f64; 4] = [2.0023, 1.6979, 1.6152, 1.5213];

type Verdict = Result<String, String>;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_autoces"))
}

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("AUTOCES_THREADS", t),
        None => cmd.env_remove("AUTOCES_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn share(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0.02..0.98)
}

fn substitution(rng: &mut ChaCha8Rng) -> f64 {
    if rng.random_bool(0.1) {
        1.0
    } else {
        rng.random_range(0.05..1.0)
    }
}

fn params(rng: &mut ChaCha8Rng) -> TechnologyParameters {
    TechnologyParameters {
        alpha: share(rng),
        gamma: substitution(rng),
        theta: substitution(rng),
        phi: substitution(rng),
        beta1: share(rng),
        beta2: share(rng),
        beta3: share(rng),
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo_exp: f64, hi_exp: f64) -> f64 {
    10f64.powf(rng.random_range(lo_exp..hi_exp))
}

fn bundle(rng: &mut ChaCha8Rng) -> FactorBundle {
    let mut q = || log_uniform(rng, 0.0, 13.0);
    FactorBundle::new(q(), q(), q(), q(), q())
}

fn table2() -> Verdict {
    let start = Instant::now();
    let out = run(&["table2", "--scenario", "table1", "--format", "csv"], None);
    let elapsed = start.elapsed();
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    let text = String::from_utf8(out.stdout).unwrap();
    let premiums: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    ensure(premiums.len() == 4, || format!("{} rows", premiums.len()))?;
    let worst = premiums
        .iter()
        .zip(PUBLISHED_TABLE2)
        .map(|(got, want)| rel(*got, want))
        .fold(0.0, f64::max);
    ensure(worst <= 5e-3, || format!("worst relative gap {worst:.3e}"))?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "premiums {:.4?}, worst gap {worst:.2e} (limit 5e-3), {} ms",
        premiums,
        elapsed.as_millis()
    ))
}

fn derivative_oracle() -> Verdict {
    const SAMPLES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let mut worst = [0.0f64; 3];
    let mut gradient_checked = 0;
    for i in 0..SAMPLES {
        let (p, b) = (params(&mut rng), bundle(&mut rng));
        let e = Evaluation::new(&p, &b).map_err(|e| e.to_string())?;
        let mut errs = vec![
            rel(
                e.low_skill_wage().unwrap(),
                oracle::output_partial(&p, &b, Factor::LowSkillLabor),
            ),
            rel(
                e.high_skill_wage().unwrap(),
                oracle::output_partial(&p, &b, Factor::HighSkillLabor),
            ),
        ];
        let g = e.premium_gradient_ai().unwrap();
        // neutral draws have an identically zero gradient; the sign-law criterion covers them
        if p.gamma != p.phi {
            errs.push(rel(g, oracle::premium_ai_partial(&p, &b)));
            gradient_checked += 1;
        } else {
            ensure(g == 0.0, || format!("neutral gradient {g:e}"))?;
            errs.push(0.0);
        }
        for (w, err) in worst.iter_mut().zip(&errs) {
            *w = w.max(*err);
        }
        ensure(errs.iter().all(|x| *x <= 1e-6), || {
            format!("sample {i}: errors {errs:?} at {p:?} {b:?}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{SAMPLES} samples ({gradient_checked} non-neutral gradients), worst w_u {:.1e}, w_s {:.1e}, dprem/dG {:.1e} (limit 1e-6), {:.1} s",
        worst[0],
        worst[1],
        worst[2],
        elapsed.as_secs_f64()
    ))
}

/// Parameters with the requested ordering of `gamma` and `phi`, separated by
/// at least 0.05 when unequal.
fn ordered_params(rng: &mut ChaCha8Rng, order: std::cmp::Ordering) -> TechnologyParameters {
    let mut p = params(rng);
    p.beta1 = rng.random_range(0.1..0.9);
    p.beta2 = rng.random_range(0.1..0.9);
    p.beta3 = rng.random_range(0.1..0.9);
    let (a, b) = loop {
        let a: f64 = rng.random_range(0.05..1.0);
        let b: f64 = rng.random_range(0.05..1.0);
        if (a - b).abs() >= 0.05 {
            break (f64::min(a, b), f64::max(a, b));
        }
    };
    match order {
        std::cmp::Ordering::Less => (p.gamma, p.phi) = (a, b),
        std::cmp::Ordering::Greater => (p.gamma, p.phi) = (b, a),
        std::cmp::Ordering::Equal => (p.gamma, p.phi) = (a, a),
    }
    p
}

fn ai_sign_law() -> Verdict {
    use std::cmp::Ordering::*;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (order, want) in [
        (Less, Monotonicity::StrictlyDecreasing),
        (Equal, Monotonicity::Constant),
        (Greater, Monotonicity::StrictlyIncreasing),
    ] {
        for i in 0..100 {
            let p = ordered_params(&mut rng, order);
            let mut q = |lo, hi| log_uniform(&mut rng, lo, hi);
            let b = FactorBundle::new(q(6.0, 13.0), q(3.0, 9.0), q(3.0, 9.0), q(3.0, 9.0), 0.0);
            let spec = SweepSpec {
                params: p,
                baseline: b,
                axis1: autoces_core::Axis {
                    factor: Factor::AiStock,
                    grid: Grid::Linear {
                        lo: 0.1 * b.robot_stock,
                        hi: 10.0 * b.robot_stock,
                        n: 50,
                    },
                },
                axis2: None,
                outputs: vec![OutputKind::Premium, OutputKind::PremiumGradientAi],
            };
            let result = run_sweep(&spec).map_err(|e| e.to_string())?;
            let shape = monotonicity_report(&result, OutputKind::Premium).unwrap();
            ensure(shape == want, || {
                format!("{order:?} #{i}: {} at {p:?} {b:?}", shape.as_str())
            })?;
            let expected = (p.gamma / p.phi - 1.0).signum();
            for g in result.column(OutputKind::PremiumGradientAi).unwrap() {
                let g = g.ok_or("missing gradient at G > 0")?;
                let ok = if order == Equal {
                    g == 0.0
                } else {
                    g.signum() == expected
                };
                ensure(ok, || format!("{order:?} #{i}: gradient {g:e} at {p:?}"))?;
            }
        }
    }
    Ok("300 parameterizations, 50-point G sweeps over [0.1P, 10P]: decreasing/constant/increasing and gradient signs as expected".into())
}

fn identities() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = [0.0f64; 4];
    for i in 0..100 {
        let p = params(&mut rng);
        let b = bundle(&mut rng);
        let lambda = rng.random_range(0.01..100.0);
        let k = log_uniform(&mut rng, 0.0, 13.0);
        let unit = (ces::output(&p, &FactorBundle::ones()).unwrap() - 1.0).abs();
        let y = ces::output(&p, &b).unwrap();
        let crs = rel(ces::output(&p, &b.scaled(lambda)).unwrap(), lambda * y);
        let base = ces::skill_premium(&p, &b).unwrap();
        let labor_scaled = FactorBundle {
            capital: b.capital,
            ..b.scaled(lambda)
        };
        let homog = rel(ces::skill_premium(&p, &labor_scaled).unwrap(), base).max(rel(
            ces::skill_premium(&p, &b.with(Factor::Capital, k)).unwrap(),
            base,
        ));
        let e = Evaluation::new(&p, &b).unwrap();
        let g = gradient(|x| ces::output(&p, x), &b, &DiffSpec::central())
            .map_err(|e| e.to_string())?;
        let total = g.capital * b.capital
            + e.low_skill_wage().unwrap() * b.low_skill_labor
            + e.high_skill_wage().unwrap() * b.high_skill_labor
            + g.robot_stock * b.robot_stock
            + g.ai_stock.unwrap_or(0.0) * b.ai_stock;
        let euler = rel(total, y);
        for (w, v) in worst.iter_mut().zip([unit, crs, homog, euler]) {
            *w = w.max(v);
        }
        ensure(
            unit <= 1e-12 && crs <= 1e-10 && homog <= 1e-10 && euler <= 1e-8,
            || {
                format!("point {i}: unit {unit:e} crs {crs:e} homog {homog:e} euler {euler:e} at {p:?} {b:?}")
            },
        )?;
    }
    Ok(format!(
        "100 points: unit output {:.1e} (1e-12 abs), scaling {:.1e}, premium degree-0/K {:.1e} (1e-10), Euler {:.1e} (1e-8)",
        worst[0], worst[1], worst[2], worst[3]
    ))
}

fn benchmark_and_reduction() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let lp = LegacyParameters {
            alpha: rng.random_range(0.05..0.95),
            beta: rng.random_range(0.05..0.95),
            gamma: if rng.random_bool(0.5) {
                rng.random_range(-3.0..-0.05)
            } else {
                rng.random_range(0.05..1.0)
            },
        };
        let mut q = || log_uniform(&mut rng, 0.0, 8.0);
        let b = LegacyBundle::new(q(), q(), q(), q());
        let g = legacy::legacy_ws_robot_gradient(&lp, &b).map_err(|e| e.to_string())?;
        let err = rel(g, oracle::legacy_ws_robot_partial(&lp, &b));
        worst = worst.max(err);
        ensure(err <= 1e-5, || {
            format!("point {i}: {err:e} at {lp:?} {b:?}")
        })?;
        ensure(g.signum() == (1.0 - lp.alpha - lp.gamma).signum(), || {
            format!("point {i}: sign of {g:e} at {lp:?}")
        })?;
    }
    for (alpha, gamma) in [(0.25, 0.75), (0.5, 0.5)] {
        let lp = LegacyParameters {
            alpha,
            beta: 0.4,
            gamma,
        };
        let b = LegacyBundle::new(6.9e13, 9.83e7, 5.84e7, 1.73e10);
        let g = legacy::legacy_ws_robot_gradient(&lp, &b).unwrap();
        ensure(g == 0.0, || format!("1-alpha=gamma gives {g:e}"))?;
        ensure(legacy::legacy_robot_effect_sign(&lp).unwrap() == 0, || {
            "sign not zero".into()
        })?;
    }
    let mut worst_gap = 0.0f64;
    for i in 0..100 {
        let gamma = rng.random_range(0.05..1.0);
        let limit = 2f64.powf(-gamma);
        let lp = LegacyParameters {
            alpha: rng.random_range(0.05..0.95),
            beta: rng.random_range(0.02 * limit..0.98 * limit),
            gamma,
        };
        let phi = rng.random_range(0.05..1.0);
        let mut q = |lo, hi| log_uniform(&mut rng, lo, hi);
        let b = LegacyBundle::new(q(6.0, 13.0), q(3.0, 9.0), q(3.0, 9.0), q(3.0, 11.0));
        let (_, gap) = reduction_gap(&lp, phi, &b).map_err(|e| format!("point {i}: {e}"))?;
        worst_gap = worst_gap.max(gap);
        ensure(gap <= 1e-10, || {
            format!("point {i}: gap {gap:e} at {lp:?} phi={phi}")
        })?;
    }
    Ok(format!(
        "200 legacy gradients worst {worst:.1e} (1e-5) with signs, exact zero at 1-alpha=gamma, 100 reductions worst {worst_gap:.1e} (1e-10)"
    ))
}

fn figures() -> Verdict {
    let s = Scenario::table1();
    let curve =
        run_sweep(&SweepSpec::ai_curve(s.params, s.factors, 101)).map_err(|e| e.to_string())?;
    let shape = monotonicity_report(&curve, OutputKind::Premium).unwrap();
    ensure(shape == Monotonicity::StrictlyDecreasing, || {
        format!("premium curve {}", shape.as_str())
    })?;

    let surface = run_sweep(&SweepSpec::ai_robot_surface(s.params, s.factors, 101))
        .map_err(|e| e.to_string())?;
    let col = |k| {
        surface
            .column(k)
            .unwrap()
            .into_iter()
            .map(Option::unwrap)
            .collect::<Vec<_>>()
    };
    let (premium, ws, wu) = (
        col(OutputKind::Premium),
        col(OutputKind::HighSkillWage),
        col(OutputKind::LowSkillWage),
    );
    let coords: Vec<(f64, f64)> = surface
        .rows
        .iter()
        .map(|r| (r.coords[0], r.coords[1]))
        .collect();
    let g_max = coords.iter().map(|c| c.0).fold(f64::MIN, f64::max);
    let p_max = coords.iter().map(|c| c.1).fold(f64::MIN, f64::max);
    let argmax = (0..premium.len())
        .max_by(|a, b| premium[*a].total_cmp(&premium[*b]))
        .unwrap();
    ensure(coords[argmax] == (0.0, p_max), || {
        format!("premium peaks at {:?}", coords[argmax])
    })?;
    let along: Vec<usize> = (0..coords.len())
        .filter(|i| coords[*i].1 == p_max)
        .collect();
    let ws_line: Vec<f64> = along.iter().map(|i| ws[*i]).collect();
    ensure(
        classify_sequence(&ws_line) == Monotonicity::StrictlyDecreasing,
        || "w_s not decreasing in G at max P".into(),
    )?;
    let at = |g: f64| along.iter().copied().find(|i| coords[*i].0 == g).unwrap();
    ensure(wu[at(g_max)] > wu[at(0.0)], || {
        "w_u does not rise with G at max P".into()
    })?;
    Ok(format!(
        "101-point premium curve strictly decreasing; 101x101 surface peaks at (G=0, P={p_max:.3e}), w_s falls along G at max P, w_u {:.4} -> {:.4}",
        wu[at(0.0)],
        wu[at(g_max)]
    ))
}

fn interface() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let tmp = dir.path();
    let cases: [&[&str]; 4] = [
        &[
            "sweep", "--preset", "surface", "--points", "41", "--format", "csv",
        ],
        &[
            "sweep", "--preset", "surface", "--points", "41", "--format", "json",
        ],
        &["sweep", "--format", "csv"],
        &["table2", "--format", "json"],
    ];
    for args in cases {
        let reference = run(args, None);
        ensure(reference.status.success(), || format!("{args:?} failed"))?;
        for threads in [None, Some("1"), Some("2"), Some("7")] {
            let again = run(args, threads);
            ensure(again.stdout == reference.stdout, || {
                format!("{args:?} differs with AUTOCES_THREADS={threads:?}")
            })?;
        }
    }

    let dumped = run(&["scenario", "--set", "G=1/3", "--set", "alpha=0.3"], None);
    ensure(dumped.status.success(), || "scenario dump failed".into())?;
    let path = tmp.join("roundtrip.json");
    std::fs::write(&path, &dumped.stdout).unwrap();
    let loaded = load_scenario(path.to_str().unwrap()).map_err(|e| e.to_string())?;
    let mut expected = Scenario::table1();
    expected.apply_overrides(&["G=1/3", "alpha=0.3"]).unwrap();
    ensure(loaded == expected, || "reloaded scenario differs".into())?;
    let redumped = run(&["scenario", "--scenario", path.to_str().unwrap()], None);
    ensure(redumped.stdout == dumped.stdout, || {
        "second dump differs".into()
    })?;

    let zero = run(&["gradient", "--scenario", "table1", "--set", "G=0"], None);
    ensure(zero.status.code() == Some(1), || {
        format!("G=0 gradient exit {:?}", zero.status.code())
    })?;
    ensure(
        String::from_utf8_lossy(&zero.stderr).trim_end()
            == "error[domain]: gradient undefined at G=0",
        || format!("G=0 message {:?}", String::from_utf8_lossy(&zero.stderr)),
    )?;
    let range = run(&["eval", "--set", "beta1=1.2"], None);
    let msg = String::from_utf8_lossy(&range.stderr);
    ensure(
        range.status.code() == Some(1)
            && msg.starts_with("error[domain]: ")
            && msg.contains("beta1"),
        || format!("out-of-range exit {:?}: {msg}", range.status.code()),
    )?;
    let usage = run(&["nonsense"], None);
    ensure(usage.status.code() == Some(2), || {
        "unknown subcommand did not exit 2".into()
    })?;
    Ok("byte-identical CSV/JSON across runs and AUTOCES_THREADS in {unset,1,2,7}; scenario round-trip exact; G=0 and range errors exit 1, usage exits 2".into())
}

type Criterion = fn() -> Verdict;

fn main() {
    let criteria: [(&str, Criterion); 7] = [
        ("1 table2-reproduction", table2),
        ("2 derivative-oracle", derivative_oracle),
        ("3 ai-sign-law", ai_sign_law),
        ("4 structural-identities", identities),
        ("5 benchmark-and-reduction", benchmark_and_reduction),
        ("6 figure-shapes", figures),
        ("7 interface-stability", interface),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
