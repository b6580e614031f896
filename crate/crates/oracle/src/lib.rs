//! Reference values for the test suites.
//!
//! Every derivative here is a finite difference of a *production function*
//! evaluated at 256 bits, never a closed-form marginal product. At that
//! precision a central difference resolves factors whose share of output is
//! far below `f64` roundoff, which is where a plain `f64` oracle breaks down.

use std::ops::{Add, Div, Mul, Sub};

use autoces_core::numdiff::{derivative, DiffSpec, Real};
use autoces_core::{Factor, FactorBundle, LegacyBundle, LegacyParameters, TechnologyParameters};
use rug::ops::Pow;
use rug::Float;

const PRECISION: u32 = 256;

/// 256-bit binary float, correctly rounded (MPFR).
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct Ext(Float);

impl Ext {
    pub fn new(v: f64) -> Self {
        Ext(Float::with_val(PRECISION, v))
    }

    pub fn pow(&self, exponent: &Ext) -> Ext {
        Ext(Float::with_val(PRECISION, (&self.0).pow(&exponent.0)))
    }

    pub fn powf(&self, exponent: f64) -> Ext {
        self.pow(&Ext::new(exponent))
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }
}

impl std::fmt::Display for Ext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, o: Ext) -> Ext {
        Ext(self.0 + o.0)
    }
}

impl Sub for Ext {
    type Output = Ext;
    fn sub(self, o: Ext) -> Ext {
        Ext(self.0 - o.0)
    }
}

impl Mul for Ext {
    type Output = Ext;
    fn mul(self, o: Ext) -> Ext {
        Ext(self.0 * o.0)
    }
}

impl Div for Ext {
    type Output = Ext;
    fn div(self, o: Ext) -> Ext {
        Ext(self.0 / o.0)
    }
}

impl Real for Ext {
    fn from_f64(value: f64) -> Self {
        Ext::new(value)
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn epsilon() -> Self {
        Ext::new(2f64.powi(1 - PRECISION as i32))
    }

    fn abs(&self) -> Self {
        Ext(self.0.clone().abs())
    }

    fn sqrt(&self) -> Self {
        Ext(self.0.clone().sqrt())
    }

    fn cbrt(&self) -> Self {
        Ext(self.0.clone().cbrt())
    }
}

fn e(v: f64) -> Ext {
    Ext::new(v)
}

/// `[K, L_u, L_s, P, G]` in extended precision.
pub type ExtBundle = [Ext; 5];

pub fn ext_bundle(b: &FactorBundle) -> ExtBundle {
    b.as_array().map(Ext::new)
}

fn index(which: Factor) -> usize {
    Factor::ALL.iter().position(|f| *f == which).unwrap()
}

/// The nested production function, term by term, at 256 bits.
pub fn output(params: &TechnologyParameters, x: &ExtBundle) -> Ext {
    let [k, lu, ls, p, g] = x.clone();
    let one = e(1.0);
    let (alpha, gamma, theta, phi) = (params.alpha, params.gamma, params.theta, params.phi);
    let low = e(params.beta1) * lu.powf(theta) + (one.clone() - e(params.beta1)) * p.powf(theta);
    let high = e(params.beta2) * ls.powf(phi) + (one.clone() - e(params.beta2)) * g.powf(phi);
    let gamma_e = e(gamma);
    let bracket = e(params.beta3) * low.pow(&(gamma_e.clone() / e(theta)))
        + (one.clone() - e(params.beta3)) * high.pow(&(gamma_e.clone() / e(phi)));
    k.powf(alpha) * bracket.pow(&((one - e(alpha)) / gamma_e))
}

fn in_domain(x: &ExtBundle) -> bool {
    x[..4].iter().all(Ext::is_positive) && x[4].0 >= 0
}

fn partial_ext<F>(f: F, x: &ExtBundle, which: Factor, spec: &DiffSpec) -> Option<Ext>
where
    F: Fn(&ExtBundle) -> Option<Ext>,
{
    let i = index(which);
    let along = |v: &Ext| {
        let mut moved = x.clone();
        moved[i] = v.clone();
        if in_domain(&moved) {
            f(&moved)
        } else {
            None
        }
    };
    derivative(along, &x[i], spec).ok()
}

/// Step for the outer difference of a nested pair, `2^-56` relative.
///
/// The inner difference leaves noise near `ε^(2/3)` in its result, so the
/// outer one wants a wider step than `ε^(1/3)`: at `ε^(2/9)` the truncation
/// error is about `2^-112` and the amplified noise stays below `2^-110`
/// divided by the factor's elasticity.
fn outer_step(x: f64) -> DiffSpec {
    DiffSpec::fixed(x.abs().max(1.0) * 2f64.powi(-56))
}

/// `∂Y/∂which` by a central difference of [`output`].
pub fn output_partial(params: &TechnologyParameters, b: &FactorBundle, which: Factor) -> f64 {
    partial_ext(
        |x| Some(output(params, x)),
        &ext_bundle(b),
        which,
        &DiffSpec::central(),
    )
    .expect("interior point")
    .to_f64()
}

/// `w_s / w_u` as a quotient of two differences of [`output`].
pub fn premium(params: &TechnologyParameters, x: &ExtBundle) -> Option<Ext> {
    let y = |v: &ExtBundle| Some(output(params, v));
    let high = partial_ext(y, x, Factor::HighSkillLabor, &DiffSpec::central())?;
    let low = partial_ext(y, x, Factor::LowSkillLabor, &DiffSpec::central())?;
    Some(high / low)
}

/// `∂(w_s/w_u)/∂G`, differencing the quotient of differenced wages.
pub fn premium_ai_partial(params: &TechnologyParameters, b: &FactorBundle) -> f64 {
    let step = outer_step(b.ai_stock);
    partial_ext(
        |x| premium(params, x),
        &ext_bundle(b),
        Factor::AiStock,
        &step,
    )
    .expect("interior point")
    .to_f64()
}

/// The two-skill benchmark production function at 256 bits.
pub fn legacy_output(lp: &LegacyParameters, x: &[Ext; 4]) -> Ext {
    let [k, lu, ls, p] = x.clone();
    let one = e(1.0);
    let gamma = e(lp.gamma);
    let aggregate = (one.clone() - e(lp.beta)) * ls.pow(&gamma) + e(lp.beta) * (p + lu).pow(&gamma);
    aggregate.pow(&((one - e(lp.alpha)) / gamma)) * k.powf(lp.alpha)
}

fn legacy_partial<F>(f: F, x: &[Ext; 4], i: usize, spec: &DiffSpec) -> Option<Ext>
where
    F: Fn(&[Ext; 4]) -> Option<Ext>,
{
    let along = |v: &Ext| {
        let mut moved = x.clone();
        moved[i] = v.clone();
        if moved.iter().all(Ext::is_positive) {
            f(&moved)
        } else {
            None
        }
    };
    derivative(along, &x[i], spec).ok()
}

/// `∂w_s/∂P` in the benchmark model, with `w_s` itself a difference of output in `L_s`.
pub fn legacy_ws_robot_partial(lp: &LegacyParameters, b: &LegacyBundle) -> f64 {
    let x = [b.capital, b.low_skill, b.high_skill, b.robots].map(Ext::new);
    let wage =
        |v: &[Ext; 4]| legacy_partial(|w| Some(legacy_output(lp, w)), v, 2, &DiffSpec::central());
    legacy_partial(wage, &x, 3, &outer_step(b.robots))
        .expect("interior point")
        .to_f64()
}

/// Relative difference `|a − b| / |b|`.
pub fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
