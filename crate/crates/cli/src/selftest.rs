//! Invariant checks shipped inside the binary.
//!
//! Random draws come from a seeded ChaCha stream, so a given seed always
//! checks the same points.

use autoces_core::numdiff::{gradient, partial, DiffSpec};
use autoces_core::{
    ces, classify_ai_effect, legacy, table2_scenario, AiEffect, Evaluation, Factor, FactorBundle,
    LegacyBundle, LegacyParameters, ModelError, TechnologyParameters,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cli::{reduction_gap, REDUCTION_TOLERANCE};
use crate::emit::{to_machine_json, EmissionFormat};
use crate::scenario::Scenario;

/// Premium column as printed in the published table, for G = 0, P/2, P, 2P.
pub const PUBLISHED_TABLE2: [f64; 4] = [2.0023, 1.6979, 1.6152, 1.5213];
pub const TABLE2_TOLERANCE: f64 = 5e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn render(&self, format: EmissionFormat) -> String {
        if format == EmissionFormat::Json {
            return to_machine_json(self);
        }
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {}: {}\n", c.name, c.detail));
        }
        out.push_str(&format!(
            "{} passed, {} failed (seed {}, {} samples)\n",
            self.checks.len() - self.failures(),
            self.failures(),
            self.seed,
            self.samples
        ));
        out
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

fn random_params(rng: &mut ChaCha8Rng) -> TechnologyParameters {
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

/// Log-uniform in `[1, 1e13]`.
fn quantity(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.random_range(0.0..13.0))
}

fn random_bundle(rng: &mut ChaCha8Rng) -> FactorBundle {
    FactorBundle::new(
        quantity(rng),
        quantity(rng),
        quantity(rng),
        quantity(rng),
        quantity(rng),
    )
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Runs `samples` draws of `property`, which returns an error on violation.
fn property<F>(name: &'static str, rng: &mut ChaCha8Rng, samples: usize, mut property: F) -> Check
where
    F: FnMut(&mut ChaCha8Rng) -> Result<f64, String>,
{
    let mut worst = 0.0f64;
    for i in 0..samples {
        match property(rng) {
            Ok(err) => worst = worst.max(err),
            Err(why) => {
                return Check {
                    name,
                    passed: false,
                    detail: format!("sample {i}: {why}"),
                }
            }
        }
    }
    Check {
        name,
        passed: true,
        detail: format!("{samples} samples, worst {worst:.3e}"),
    }
}

fn within(err: f64, tol: f64, context: impl FnOnce() -> String) -> Result<f64, String> {
    if err <= tol {
        Ok(err)
    } else {
        Err(format!("{err:.3e} > {tol:.0e} at {}", context()))
    }
}

fn model<T>(r: autoces_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run(scenario: &Scenario, seed: u64, samples: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = vec![table2_check()];

    checks.push(property("unit-bundle-output", &mut rng, samples, |rng| {
        let p = random_params(rng);
        let y = model(ces::output(&p, &FactorBundle::ones()))?;
        within((y - 1.0).abs(), 1e-12, || format!("{p:?}"))
    }));

    checks.push(property("constant-returns", &mut rng, samples, |rng| {
        let (p, b) = (random_params(rng), random_bundle(rng));
        let lambda = rng.random_range(0.01..100.0);
        let y = model(ces::output(&p, &b))?;
        let scaled = model(ces::output(&p, &b.scaled(lambda)))?;
        within(rel(scaled, lambda * y), 1e-10, || {
            format!("{p:?} {b:?} λ={lambda}")
        })
    }));

    checks.push(property(
        "premium-homogeneous-degree-zero",
        &mut rng,
        samples,
        |rng| {
            let (p, b) = (random_params(rng), random_bundle(rng));
            let lambda = rng.random_range(0.01..100.0);
            let base = model(ces::skill_premium(&p, &b))?;
            let labor_scaled = FactorBundle {
                capital: b.capital,
                ..b.scaled(lambda)
            };
            let moved = model(ces::skill_premium(&p, &labor_scaled))?;
            let other_k = model(ces::skill_premium(
                &p,
                &b.with(Factor::Capital, quantity(rng)),
            ))?;
            within(rel(moved, base).max(rel(other_k, base)), 1e-10, || {
                format!("{p:?} {b:?}")
            })
        },
    ));

    checks.push(property(
        "premium-is-wage-ratio",
        &mut rng,
        samples,
        |rng| {
            let (p, b) = (random_params(rng), random_bundle(rng));
            let e = model(Evaluation::new(&p, &b))?;
            let ratio = model(e.high_skill_wage())? / model(e.low_skill_wage())?;
            within(rel(model(e.skill_premium())?, ratio), 1e-12, || {
                format!("{p:?} {b:?}")
            })
        },
    ));

    checks.push(property("euler-exhaustion", &mut rng, samples, |rng| {
        let (p, b) = (random_params(rng), random_bundle(rng));
        let e = model(Evaluation::new(&p, &b))?;
        let y = model(e.output())?;
        let g = gradient(|x| ces::output(&p, x), &b, &DiffSpec::central())
            .map_err(|e| e.to_string())?;
        let total = g.capital * b.capital
            + model(e.low_skill_wage())? * b.low_skill_labor
            + model(e.high_skill_wage())? * b.high_skill_labor
            + g.robot_stock * b.robot_stock
            + g.ai_stock.unwrap_or(0.0) * b.ai_stock;
        within(rel(total, y), 1e-8, || format!("{p:?} {b:?}"))
    }));

    checks.push(property("ai-sign-law", &mut rng, samples, |rng| {
        let (p, b) = (random_params(rng), random_bundle(rng));
        let g = model(ces::premium_gradient_ai(&p, &b))?;
        let effect = model(classify_ai_effect(&p))?;
        let expected = match effect {
            AiEffect::PremiumNeutral => g == 0.0,
            AiEffect::PremiumDecreasing => g < 0.0 && p.gamma < p.phi,
            AiEffect::PremiumIncreasing => g > 0.0 && p.gamma > p.phi,
        };
        if expected {
            Ok(0.0)
        } else {
            Err(format!("gradient {g:e} classified {effect} at {p:?}"))
        }
    }));

    checks.push(Check {
        name: "zero-ai-gradient-undefined",
        passed: matches!(
            ces::premium_gradient_ai(
                &scenario.params,
                &scenario.factors.with(Factor::AiStock, 0.0)
            ),
            Err(ModelError::GradientUndefinedAtZeroAi)
        ),
        detail: "gradient request at G=0 is rejected".into(),
    });

    checks.push(scenario_gradient_check(scenario));

    checks.push(property(
        "legacy-robot-sign-rule",
        &mut rng,
        samples,
        |rng| {
            let lp = LegacyParameters {
                alpha: rng.random_range(0.05..0.95),
                beta: rng.random_range(0.05..0.95),
                gamma: if rng.random_bool(0.5) {
                    rng.random_range(-3.0..-0.05)
                } else {
                    rng.random_range(0.05..1.0)
                },
            };
            let b = LegacyBundle::new(quantity(rng), quantity(rng), quantity(rng), quantity(rng));
            let g = model(legacy::legacy_ws_robot_gradient(&lp, &b))?;
            let want = (1.0 - lp.alpha - lp.gamma).signum();
            if g.signum() == want || g == 0.0 && want == 0.0 {
                Ok(0.0)
            } else {
                Err(format!("dw_s/dP = {g:e} at {lp:?}"))
            }
        },
    ));

    checks.push(property(
        "reduction-equivalence",
        &mut rng,
        samples,
        |rng| {
            let gamma = rng.random_range(0.05..1.0);
            let limit = 2f64.powf(-gamma);
            let lp = LegacyParameters {
                alpha: rng.random_range(0.05..0.95),
                beta: rng.random_range(0.02 * limit..0.98 * limit),
                gamma,
            };
            let phi = rng.random_range(0.05..1.0);
            let b = LegacyBundle::new(
                rng.random_range(1e6..1e13),
                rng.random_range(1e3..1e9),
                rng.random_range(1e3..1e9),
                rng.random_range(1e3..1e11),
            );
            let (_, gap) = model(reduction_gap(&lp, phi, &b))?;
            within(gap, REDUCTION_TOLERANCE, || {
                format!("{lp:?} phi={phi} {b:?}")
            })
        },
    ));

    Report {
        seed,
        samples,
        checks,
    }
}

fn table2_check() -> Check {
    let s = Scenario::table1();
    let name = "table2-published";
    match table2_scenario(&s.params, &s.factors) {
        Ok(rows) => {
            let worst = rows
                .iter()
                .zip(PUBLISHED_TABLE2)
                .map(|(r, published)| rel(r.premium, published))
                .fold(0.0, f64::max);
            Check {
                name,
                passed: worst <= TABLE2_TOLERANCE,
                detail: format!("worst relative gap {worst:.3e} (limit {TABLE2_TOLERANCE:.0e})"),
            }
        }
        Err(e) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

/// Closed-form AI gradient against a Richardson difference at the scenario
/// point, with `G` moved to the robot stock when it is zero.
fn scenario_gradient_check(scenario: &Scenario) -> Check {
    let name = "scenario-gradient-vs-difference";
    let mut b = scenario.factors;
    if b.ai_stock == 0.0 {
        b = b.with(Factor::AiStock, b.robot_stock);
    }
    let p = scenario.params;
    let closed = ces::premium_gradient_ai(&p, &b);
    let numeric = partial(
        |x| ces::skill_premium(&p, x),
        &b,
        Factor::AiStock,
        &DiffSpec::richardson(),
    );
    match (closed, numeric) {
        (Ok(g), Ok(d)) => {
            let err = if g == 0.0 { d.abs() } else { rel(g, d) };
            let tol = if g == 0.0 { 1e-12 } else { 1e-5 };
            Check {
                name,
                passed: err <= tol,
                detail: format!("closed {g:.6e}, difference {d:.6e}, gap {err:.3e}"),
            }
        }
        (Err(e), _) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
        (_, Err(e)) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}
