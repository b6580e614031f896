//! Finite-difference derivatives used to check the closed forms.
//!
//! The scheme is generic over [`Real`] so the same code can difference an
//! extended-precision evaluation when `f64` cannot resolve the perturbation
//! (a factor with a tiny share moves output by less than one ulp).
//!
//! Functions handed to this module must be pure: the scheme evaluates them
//! several times and assumes repeated calls at the same point agree.

use std::ops::{Add, Div, Mul, Sub};

use thiserror::Error;

use crate::params::{Factor, FactorBundle};

/// Minimal scalar interface for the difference schemes.
pub trait Real:
    Clone
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_f64(value: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Unit roundoff of the representation.
    fn epsilon() -> Self;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn cbrt(&self) -> Self;
}

impl Real for f64 {
    fn from_f64(value: f64) -> Self {
        value
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn cbrt(&self) -> Self {
        f64::cbrt(*self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum StepMode {
    /// `cbrt(ε)·max(|x|, 1)` for central differences, `sqrt(ε)·max(|x|, 1)` for forward.
    #[default]
    Automatic,
    /// Step in the units of the differentiated variable; must be positive.
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    Central,
    Forward,
}

/// Settings for one finite-difference evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiffSpec {
    pub step: StepMode,
    pub scheme: Scheme,
    /// One level of Richardson extrapolation over steps `h` and `h/2`.
    pub richardson: bool,
}

impl DiffSpec {
    pub fn central() -> Self {
        DiffSpec::default()
    }

    pub fn richardson() -> Self {
        DiffSpec {
            richardson: true,
            ..DiffSpec::default()
        }
    }

    pub fn fixed(h: f64) -> Self {
        DiffSpec {
            step: StepMode::Fixed(h),
            ..DiffSpec::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiffError {
    #[error("fixed step must be strictly positive, got {0}")]
    InvalidStep(f64),
    #[error("both perturbation directions leave the function's domain at {0}")]
    OutsideDomain(f64),
    #[error("function undefined at the base point {0}")]
    UndefinedAtBase(f64),
    #[error("{factor}: {source}")]
    Field {
        factor: Factor,
        #[source]
        source: Box<DiffError>,
    },
}

/// Which sides of `x` the scheme may sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Both,
    Forward,
    Backward,
}

/// Derivative of a scalar function at `x`.
///
/// `f` returns `None` outside its domain. The central scheme falls back to a
/// one-sided difference when one neighbour is outside the domain; it fails
/// only when both are.
pub fn derivative<T, F>(f: F, x: &T, spec: &DiffSpec) -> Result<T, DiffError>
where
    T: Real,
    F: Fn(&T) -> Option<T>,
{
    let h = step(x, spec)?;
    let (side, coarse) = match spec.scheme {
        Scheme::Forward => (Side::Forward, difference(&f, x, &h, Side::Forward)?),
        Scheme::Central => {
            let minus = f(&(x.clone() - h.clone()));
            let plus = f(&(x.clone() + h.clone()));
            match (minus, plus) {
                (Some(m), Some(p)) => (Side::Both, (p - m) / (T::from_f64(2.0) * h.clone())),
                (None, Some(_)) => (Side::Forward, difference(&f, x, &h, Side::Forward)?),
                (Some(_), None) => (Side::Backward, difference(&f, x, &h, Side::Backward)?),
                (None, None) => return Err(DiffError::OutsideDomain(x.to_f64())),
            }
        }
    };

    if !spec.richardson {
        return Ok(coarse);
    }
    let half = h / T::from_f64(2.0);
    let fine = difference(&f, x, &half, side)?;
    Ok(match side {
        // error O(h^2): (4·D(h/2) − D(h)) / 3
        Side::Both => (T::from_f64(4.0) * fine - coarse) / T::from_f64(3.0),
        // error O(h): 2·D(h/2) − D(h)
        Side::Forward | Side::Backward => T::from_f64(2.0) * fine - coarse,
    })
}

fn step<T: Real>(x: &T, spec: &DiffSpec) -> Result<T, DiffError> {
    match spec.step {
        StepMode::Fixed(h) => {
            if h > 0.0 && h.is_finite() {
                Ok(T::from_f64(h))
            } else {
                Err(DiffError::InvalidStep(h))
            }
        }
        StepMode::Automatic => {
            let scale = {
                let a = x.abs();
                let one = T::from_f64(1.0);
                if a > one {
                    a
                } else {
                    one
                }
            };
            let base = match spec.scheme {
                Scheme::Central => T::epsilon().cbrt(),
                Scheme::Forward => T::epsilon().sqrt(),
            };
            Ok(base * scale)
        }
    }
}

fn difference<T, F>(f: &F, x: &T, h: &T, side: Side) -> Result<T, DiffError>
where
    T: Real,
    F: Fn(&T) -> Option<T>,
{
    let eval = |at: T| f(&at).ok_or_else(|| DiffError::OutsideDomain(x.to_f64()));
    match side {
        Side::Both => {
            let plus = eval(x.clone() + h.clone())?;
            let minus = eval(x.clone() - h.clone())?;
            Ok((plus - minus) / (T::from_f64(2.0) * h.clone()))
        }
        Side::Forward => {
            let base = f(x).ok_or_else(|| DiffError::UndefinedAtBase(x.to_f64()))?;
            let plus = eval(x.clone() + h.clone())?;
            Ok((plus - base) / h.clone())
        }
        Side::Backward => {
            let base = f(x).ok_or_else(|| DiffError::UndefinedAtBase(x.to_f64()))?;
            let minus = eval(x.clone() - h.clone())?;
            Ok((base - minus) / h.clone())
        }
    }
}

/// Partial derivative of `f` with respect to one factor of `bundle`.
///
/// Perturbed bundles that fail validation (e.g. a negative AI stock) count
/// as outside the domain, as do points where `f` returns an error.
pub fn partial<F, E>(
    f: F,
    bundle: &FactorBundle,
    which: Factor,
    spec: &DiffSpec,
) -> Result<f64, DiffError>
where
    F: Fn(&FactorBundle) -> Result<f64, E>,
{
    let along = |x: &f64| {
        let moved = bundle.with(which, *x);
        moved.validate().ok()?;
        f(&moved).ok()
    };
    derivative(along, &which.get(bundle), spec).map_err(|e| DiffError::Field {
        factor: which,
        source: Box::new(e),
    })
}

/// Partials with respect to all five factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gradient {
    pub capital: f64,
    pub low_skill_labor: f64,
    pub high_skill_labor: f64,
    pub robot_stock: f64,
    /// Absent when the AI stock is zero.
    pub ai_stock: Option<f64>,
}

impl Gradient {
    /// `Σ x_i · ∂f/∂x_i`; the AI term counts as zero when absent (it is multiplied by `G = 0`).
    pub fn dot(&self, bundle: &FactorBundle) -> f64 {
        self.capital * bundle.capital
            + self.low_skill_labor * bundle.low_skill_labor
            + self.high_skill_labor * bundle.high_skill_labor
            + self.robot_stock * bundle.robot_stock
            + self.ai_stock.map_or(0.0, |g| g * bundle.ai_stock)
    }
}

pub fn gradient<F, E>(f: F, bundle: &FactorBundle, spec: &DiffSpec) -> Result<Gradient, DiffError>
where
    F: Fn(&FactorBundle) -> Result<f64, E>,
{
    let d = |which| partial(&f, bundle, which, spec);
    Ok(Gradient {
        capital: d(Factor::Capital)?,
        low_skill_labor: d(Factor::LowSkillLabor)?,
        high_skill_labor: d(Factor::HighSkillLabor)?,
        robot_stock: d(Factor::RobotStock)?,
        ai_stock: if bundle.ai_stock == 0.0 {
            None
        } else {
            Some(d(Factor::AiStock)?)
        },
    })
}
