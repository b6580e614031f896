//! Closed-form derivatives against 256-bit finite differences of output.

mod common;

use autoces_core::numdiff::{partial, DiffSpec};
use autoces_core::{
    ces, legacy, Factor, FactorBundle, LegacyBundle, LegacyParameters, TechnologyParameters,
};
use autoces_oracle as oracle;
use common::{bundle, params, rel};
use proptest::prelude::*;

// 50-digit values (tests/oracle/table1_mpmath.py) at the baseline with G = P.
const BASELINE_PREMIUM_GRADIENT: f64 = -7.401_581_052_486_918e-12;
const INCREASING_PREMIUM_GRADIENT: f64 = 5.555_959_144_124_997e-12;

fn baseline_with_ai() -> FactorBundle {
    FactorBundle::table1().with(Factor::AiStock, 1.73e10)
}

#[test]
fn baseline_wages_match_f64_differences() {
    let p = TechnologyParameters::table1();
    let b = FactorBundle::table1();
    let y = |x: &FactorBundle| ces::output(&p, x);
    let du = partial(y, &b, Factor::LowSkillLabor, &DiffSpec::central()).unwrap();
    let ds = partial(y, &b, Factor::HighSkillLabor, &DiffSpec::central()).unwrap();
    assert!(rel(ces::low_skill_wage(&p, &b).unwrap(), du) < 1e-6);
    assert!(rel(ces::high_skill_wage(&p, &b).unwrap(), ds) < 1e-6);
}

#[test]
fn baseline_gradient_matches_reference() {
    let p = TechnologyParameters::table1();
    let b = baseline_with_ai();
    let g = ces::premium_gradient_ai(&p, &b).unwrap();
    assert!(g < 0.0);
    assert!(rel(g, BASELINE_PREMIUM_GRADIENT) < 1e-12);
    let fd = partial(
        |x| ces::skill_premium(&p, x),
        &b,
        Factor::AiStock,
        &DiffSpec::central(),
    )
    .unwrap();
    assert!(rel(g, fd) < 1e-6);
    assert!(rel(g, oracle::premium_ai_partial(&p, &b)) < 1e-6);
}

#[test]
fn increasing_case_gradient_is_positive() {
    let p = TechnologyParameters {
        gamma: 0.75,
        ..TechnologyParameters::table1()
    };
    let b = baseline_with_ai();
    let g = ces::premium_gradient_ai(&p, &b).unwrap();
    assert!(g > 0.0);
    assert!(rel(g, INCREASING_PREMIUM_GRADIENT) < 1e-12);
    let fd = partial(
        |x| ces::skill_premium(&p, x),
        &b,
        Factor::AiStock,
        &DiffSpec::richardson(),
    )
    .unwrap();
    assert!(fd > 0.0 && rel(g, fd) < 1e-6);
}

#[test]
fn high_skill_wage_falls_with_ai_at_high_robot_stock() {
    let p = TechnologyParameters::table1();
    let high_p = FactorBundle::table1().with(Factor::RobotStock, 2.0 * 1.73e10);
    let no_ai = ces::high_skill_wage(&p, &high_p).unwrap();
    let much_ai = ces::high_skill_wage(&p, &high_p.with(Factor::AiStock, 2.0 * 1.73e10)).unwrap();
    assert!(no_ai > much_ai);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wages_match_extended_differences(p in params(), b in bundle()) {
        let e = ces::Evaluation::new(&p, &b).unwrap();
        let w_u = oracle::output_partial(&p, &b, Factor::LowSkillLabor);
        let w_s = oracle::output_partial(&p, &b, Factor::HighSkillLabor);
        prop_assert!(rel(e.low_skill_wage().unwrap(), w_u) <= 1e-6);
        prop_assert!(rel(e.high_skill_wage().unwrap(), w_s) <= 1e-6);
    }

    #[test]
    fn premium_gradient_matches_extended_differences(p in params(), b in bundle()) {
        prop_assume!(p.gamma != p.phi);
        let g = ces::premium_gradient_ai(&p, &b).unwrap();
        prop_assert!(rel(g, oracle::premium_ai_partial(&p, &b)) <= 1e-6);
    }

    #[test]
    fn legacy_gradient_matches_nested_differences(
        alpha in 0.05f64..0.95,
        beta in 0.05f64..0.95,
        gamma in prop_oneof![-3.0f64..-0.05, 0.05f64..1.0],
        k in 1.0f64..1e10,
        lu in 1.0f64..1e8,
        ls in 1.0f64..1e8,
        robots in 1.0f64..1e8,
    ) {
        let lp = LegacyParameters { alpha, beta, gamma };
        let b = LegacyBundle::new(k, lu, ls, robots);
        let g = legacy::legacy_ws_robot_gradient(&lp, &b).unwrap();
        prop_assert!(rel(g, oracle::legacy_ws_robot_partial(&lp, &b)) <= 1e-5);
        prop_assert_eq!(g.signum(), (1.0 - alpha - gamma).signum());
    }
}
