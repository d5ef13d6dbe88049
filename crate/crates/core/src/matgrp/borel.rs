use num::complex::Complex64;
use num::Complex;
use serde_json::{json, Value};

use super::scalar::{gauss, rational_to_f64, GaussRational, Rational, Scalar};
use super::{Mat2, MatError};

/// The conjugating matrix `X`, with `A^X = X A X⁻¹` upper triangular.
#[derive(Clone, Debug, PartialEq)]
pub enum BorelStep<T> {
    /// `X = (0 1; −1 0)`, used when `b = 0`.
    Swap,
    /// `X = (1 0; x 1)` with `b x² + (d − a) x − c = 0`.
    Shear(T),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BorelResult<T> {
    pub step: BorelStep<T>,
    pub conjugated: Mat2<T>,
}

impl<T: Scalar> BorelResult<T> {
    pub fn matrix(&self) -> Mat2<T> {
        match &self.step {
            BorelStep::Swap => Mat2::from_i64(0, 1, -1, 0),
            BorelStep::Shear(x) => Mat2::new(T::one(), T::zero(), x.clone(), T::one()),
        }
    }

    pub fn to_json(&self) -> Value {
        let step = match &self.step {
            BorelStep::Swap => json!("swap"),
            BorelStep::Shear(x) => json!({"x": x.to_json()}),
        };
        json!({"step": step, "conjugated": self.conjugated.to_json()})
    }
}

/// Upper-triangularizes `A` by conjugation inside backend `T`.
///
/// Fails with `NoRoot` when the quadratic has no root in `T`.
pub fn borel_conjugator_in<T: Scalar>(a: &Mat2<T>) -> Result<BorelResult<T>, MatError> {
    if a.det().is_zero() {
        return Err(MatError::Singular);
    }
    let (step, x) = if a.b == T::zero() {
        (BorelStep::Swap, Mat2::from_i64(0, 1, -1, 0))
    } else {
        let dma = a.d.clone() - a.a.clone();
        let disc = dma.clone() * dma.clone() + T::from_i64(4) * a.b.clone() * a.c.clone();
        let root = disc.sqrt().ok_or(MatError::NoRoot)?;
        let x = (root - dma) / (T::from_i64(2) * a.b.clone());
        (BorelStep::Shear(x.clone()), Mat2::new(T::one(), T::zero(), x, T::one()))
    };
    let conjugated = x.mul(a).mul(&x.inverse()?);
    Ok(BorelResult { step, conjugated })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BorelBackend {
    Real,
    Complex,
}

/// Borel conjugation of a rational matrix, exact whenever the root is (Gaussian) rational.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum BorelOutcome {
    ExactReal(BorelResult<Rational>),
    Real(BorelResult<f64>),
    ExactComplex(BorelResult<GaussRational>),
    Complex(BorelResult<Complex64>),
}

impl BorelOutcome {
    /// `|(A^X)₂,₁|`.
    pub fn lower_left_abs(&self) -> f64 {
        match self {
            BorelOutcome::ExactReal(r) => rational_to_f64(&r.conjugated.c).abs(),
            BorelOutcome::Real(r) => r.conjugated.c.abs(),
            BorelOutcome::ExactComplex(r) => r.conjugated.c.to_c64().norm(),
            BorelOutcome::Complex(r) => r.conjugated.c.norm(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BorelOutcome::ExactReal(_) | BorelOutcome::ExactComplex(_))
    }

    pub fn to_json(&self) -> Value {
        let (backend, exact, body) = match self {
            BorelOutcome::ExactReal(r) => ("real", true, r.to_json()),
            BorelOutcome::Real(r) => ("real", false, r.to_json()),
            BorelOutcome::ExactComplex(r) => ("complex", true, r.to_json()),
            BorelOutcome::Complex(r) => ("complex", false, r.to_json()),
        };
        json!({"backend": backend, "exact": exact, "result": body})
    }
}

/// Conjugates `A` into upper-triangular form. Over the real backend the discriminant
/// `(d − a)² + 4bc` is tested exactly, so `NoRealRoot` is reported exactly when it is negative.
pub fn borel_conjugator(a: &Mat2<Rational>, backend: BorelBackend) -> Result<BorelOutcome, MatError> {
    if a.det().is_zero() {
        return Err(MatError::Singular);
    }
    match backend {
        BorelBackend::Real => match borel_conjugator_in(a) {
            Ok(r) => Ok(BorelOutcome::ExactReal(r)),
            Err(MatError::NoRoot) => {
                let dma = a.d.clone() - a.a.clone();
                let disc = dma.clone() * dma + Rational::from_i64(4) * a.b.clone() * a.c.clone();
                if disc < Rational::zero() {
                    return Err(MatError::NoRealRoot);
                }
                borel_conjugator_in(&a.to_f64()).map(BorelOutcome::Real)
            }
            Err(e) => Err(e),
        },
        BorelBackend::Complex => match borel_conjugator_in(&a.map(|x| gauss(x.clone()))) {
            Ok(r) => Ok(BorelOutcome::ExactComplex(r)),
            Err(MatError::NoRoot) => borel_conjugator_in(&a.to_c64()).map(BorelOutcome::Complex),
            Err(e) => Err(e),
        },
    }
}

/// `Complex::new` for Gaussian rationals from integer parts.
pub fn gaussian(re: i64, im: i64) -> GaussRational {
    Complex::new(Rational::from_i64(re), Rational::from_i64(im))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Mat2<Rational>;

    #[test]
    fn lower_triangular_swaps() {
        let r = borel_conjugator(&Q::from_i64(1, 0, 5, 1), BorelBackend::Real).unwrap();
        match r {
            BorelOutcome::ExactReal(r) => {
                assert_eq!(r.step, BorelStep::Swap);
                assert_eq!(r.conjugated, Q::from_i64(1, -5, 0, 1));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn golden_ratio_root_is_inexact() {
        let r = borel_conjugator(&Q::from_i64(2, 1, 1, 1), BorelBackend::Real).unwrap();
        assert!(!r.is_exact());
        assert!(r.lower_left_abs() < 1e-12);
        if let BorelOutcome::Real(res) = &r {
            if let BorelStep::Shear(x) = res.step {
                assert!((x * x - x - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rational_root_is_exact() {
        // (d−a)² + 4bc = 1 + 8 = 9
        let r = borel_conjugator(&Q::from_i64(1, 1, 2, 0), BorelBackend::Real).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.lower_left_abs(), 0.0);
    }

    #[test]
    fn quarter_turn_needs_complex_numbers() {
        let a = Q::from_i64(0, -1, 1, 0);
        assert_eq!(borel_conjugator(&a, BorelBackend::Real).unwrap_err(), MatError::NoRealRoot);
        match borel_conjugator(&a, BorelBackend::Complex).unwrap() {
            BorelOutcome::ExactComplex(r) => {
                let BorelStep::Shear(x) = &r.step else { panic!() };
                assert!(*x == gaussian(0, 1) || *x == gaussian(0, -1));
                assert!(Scalar::is_zero(&r.conjugated.c));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn irrational_complex_root_uses_doubles() {
        // disc = (1−0)² + 4·(−1)·1 = −3
        let r = borel_conjugator(&Q::from_i64(0, -1, 1, 1), BorelBackend::Complex).unwrap();
        assert!(matches!(r, BorelOutcome::Complex(_)));
        assert!(r.lower_left_abs() < 1e-12);
    }
}
