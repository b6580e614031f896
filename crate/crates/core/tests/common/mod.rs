#![allow(dead_code)]

use autoces_core::{FactorBundle, TechnologyParameters};
use proptest::prelude::*;

/// Substitution parameters in (0, 1], with the closed end hit occasionally.
pub fn substitution() -> impl Strategy<Value = f64> {
    prop_oneof![9 => 0.05f64..1.0, 1 => Just(1.0)]
}

pub fn share() -> impl Strategy<Value = f64> {
    0.02f64..0.98
}

pub fn params() -> impl Strategy<Value = TechnologyParameters> {
    (
        share(),
        substitution(),
        substitution(),
        substitution(),
        share(),
        share(),
        share(),
    )
        .prop_map(
            |(alpha, gamma, theta, phi, beta1, beta2, beta3)| TechnologyParameters {
                alpha,
                gamma,
                theta,
                phi,
                beta1,
                beta2,
                beta3,
            },
        )
}

/// Log-uniform quantity in [1, 1e13].
pub fn quantity() -> impl Strategy<Value = f64> {
    (0.0f64..13.0).prop_map(|e| 10f64.powf(e))
}

/// Every factor log-uniform in [1, 1e13]; the AI stock is strictly positive.
pub fn bundle() -> impl Strategy<Value = FactorBundle> {
    (quantity(), quantity(), quantity(), quantity(), quantity())
        .prop_map(|(k, lu, ls, p, g)| FactorBundle::new(k, lu, ls, p, g))
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
