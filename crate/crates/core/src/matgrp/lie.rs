use serde_json::{json, Value};

use super::scalar::{RealScalar, Scalar, SignClass};
use super::sl2::{eigenvector, nilpotent_frame, root, unimodular_columns};
use super::{Mat2, MatError};

/// A trace-zero matrix `(a b; c −a)` in `𝔰𝔩₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2LieElem<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> Sl2LieElem<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        Sl2LieElem { a, b, c }
    }

    pub fn matrix(&self) -> Mat2<S> {
        Mat2::new(self.a.clone(), self.b.clone(), self.c.clone(), -self.a.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Sl2LieElem::new(self.a.clone() * s.clone(), self.b.clone() * s.clone(), self.c.clone() * s.clone())
    }

    /// `a² + bc`, whose sign decides the orbit.
    pub fn discriminant(&self) -> S {
        self.a.clone() * self.a.clone() + self.b.clone() * self.c.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.a == S::zero() && self.b == S::zero() && self.c == S::zero()
    }
}

impl<S: RealScalar> Sl2LieElem<S> {
    pub fn to_f64(&self) -> Sl2LieElem<f64> {
        Sl2LieElem::new(self.a.to_f64(), self.b.to_f64(), self.c.to_f64())
    }
}

/// Adjoint orbit of a nonzero element of `𝔰𝔩₂(ℝ)`.
#[derive(Clone, Debug, PartialEq)]
pub enum LieOrbitKind {
    /// Eigenvalues `±t`; canonical form `diag(t, −t)`, `t > 0`.
    Split { t: f64 },
    /// Canonical form `(0 sign; 0 0)`.
    Nilpotent { sign: i8 },
    /// Eigenvalues `±θi`; canonical form `orientation · θ · (0 1; −1 0)`.
    Rotation { theta: f64, orientation: i8 },
}

impl LieOrbitKind {
    pub fn canonical(&self) -> Mat2<f64> {
        match *self {
            LieOrbitKind::Split { t } => Mat2::diag(t, -t),
            LieOrbitKind::Nilpotent { sign } => Mat2::new(0.0, sign as f64, 0.0, 0.0),
            LieOrbitKind::Rotation { theta, orientation } => {
                let s = orientation as f64 * theta;
                Mat2::new(0.0, s, -s, 0.0)
            }
        }
    }

    /// `exp` of the canonical form.
    pub fn canonical_exp(&self) -> Mat2<f64> {
        match *self {
            LieOrbitKind::Split { t } => Mat2::diag(t.exp(), (-t).exp()),
            LieOrbitKind::Nilpotent { sign } => Mat2::new(1.0, sign as f64, 0.0, 1.0),
            LieOrbitKind::Rotation { theta, orientation } => {
                let s = orientation as f64 * theta.sin();
                Mat2::new(theta.cos(), s, -s, theta.cos())
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            LieOrbitKind::Split { t } => json!({"kind": "split", "t": t}),
            LieOrbitKind::Nilpotent { sign } => json!({"kind": "nilpotent", "sign": sign}),
            LieOrbitKind::Rotation { theta, orientation } => {
                json!({"kind": "rotation", "theta": theta, "orientation": orientation})
            }
        }
    }
}

/// Result of [`lie_classify`]; `X⁻¹ · elem · X` is the canonical form of `kind`.
#[derive(Clone, Debug)]
pub struct LieOrbit<S> {
    pub kind: LieOrbitKind,
    pub conjugator: Option<Mat2<S>>,
    pub conjugator_f64: Mat2<f64>,
}

impl<S: RealScalar> LieOrbit<S> {
    pub fn residual(&self, x: &Sl2LieElem<S>) -> f64 {
        let p = &self.conjugator_f64;
        p.sl2_inverse().mul(&x.to_f64().matrix()).mul(p).max_abs_diff(&self.kind.canonical())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "orbit": self.kind.to_json(),
            "conjugator": self.conjugator.as_ref().map(Mat2::to_json),
            "conjugator_f64": self.conjugator_f64.to_json(),
        })
    }
}

#[derive(Clone, Copy)]
enum Case {
    Split,
    Nilpotent,
    Rotation(i8),
}

fn frame_in<T: RealScalar>(x: &Sl2LieElem<T>, case: Case) -> Option<Mat2<T>> {
    let m = x.matrix();
    match case {
        Case::Split => {
            if m.b == T::zero() && m.c == T::zero() && m.a.to_f64() > 0.0 {
                return Some(Mat2::identity());
            }
            let t = root(&x.discriminant())?;
            Some(unimodular_columns(eigenvector(&m, &t), eigenvector(&m, &(-t.clone()))))
        }
        Case::Nilpotent => nilpotent_frame(&m).1,
        Case::Rotation(orientation) => {
            // P = (u, v) with v = −X u / (σθ) satisfies X P = P · σθ(0 1; −1 0)
            let theta = root(&(-x.discriminant()))?;
            let st = theta * T::from_i64(orientation as i64);
            let e1 = (T::one(), T::zero());
            let e2 = (T::zero(), T::one());
            let (x1, x2) = (m.apply(e1.clone()), m.apply(e2.clone()));
            let size = |v: &(T, T)| v.0.magnitude().max(v.1.magnitude());
            let (u, xu) = if size(&x1) >= size(&x2) { (e1, x1) } else { (e2, x2) };
            let v = (-xu.0 / st.clone(), -xu.1 / st);
            let p = Mat2::from_columns(u, v);
            let alpha = T::one() / root(&p.det())?;
            Some(p.scale(&alpha))
        }
    }
}

/// Classifies a nonzero `X ∈ 𝔰𝔩₂` by the sign of `a² + bc` and conjugates it to a canonical
/// form inside `SL₂`.
pub fn lie_classify<S: RealScalar>(x: &Sl2LieElem<S>) -> Result<LieOrbit<S>, MatError> {
    if x.is_zero() {
        return Err(MatError::ZeroElement);
    }
    let disc = x.discriminant();
    let (kind, case) = match disc.sign_class() {
        SignClass::Positive => (LieOrbitKind::Split { t: disc.to_f64().sqrt() }, Case::Split),
        SignClass::Zero | SignClass::Borderline => {
            let (sign, _) = nilpotent_frame(&x.matrix());
            (LieOrbitKind::Nilpotent { sign }, Case::Nilpotent)
        }
        SignClass::Negative => {
            // c of the canonical form σθ(0 1; −1 0) is −σθ, and sign(c) is an invariant
            let orientation = -x.c.signum_i8();
            (LieOrbitKind::Rotation { theta: (-disc.to_f64()).sqrt(), orientation }, Case::Rotation(orientation))
        }
    };
    let conjugator = frame_in(x, case);
    let conjugator_f64 = frame_in(&x.to_f64(), case).expect("double roots always exist");
    Ok(LieOrbit { kind, conjugator, conjugator_f64 })
}

/// Matrix exponential of `X ∈ 𝔰𝔩₂(ℝ)`: the closed form on the canonical representative,
/// transported back by the conjugator.
pub fn exp_sl2(x: &Sl2LieElem<f64>) -> Mat2<f64> {
    match lie_classify(x) {
        Err(_) => Mat2::identity(),
        Ok(orbit) => {
            let p = &orbit.conjugator_f64;
            p.mul(&orbit.kind.canonical_exp()).mul(&p.sl2_inverse())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::scalar::{rational, Rational};
    use std::f64::consts::{E, FRAC_PI_2};

    fn q(a: i64, b: i64, c: i64) -> Sl2LieElem<Rational> {
        Sl2LieElem::new(rational(a, 1), rational(b, 1), rational(c, 1))
    }

    #[test]
    fn canonical_inputs() {
        let o = lie_classify(&q(1, 0, 0)).unwrap();
        assert_eq!(o.kind, LieOrbitKind::Split { t: 1.0 });
        assert_eq!(o.conjugator, Some(Mat2::identity()));
        let o = lie_classify(&q(0, 1, 0)).unwrap();
        assert_eq!(o.kind, LieOrbitKind::Nilpotent { sign: 1 });
        assert_eq!(o.conjugator, Some(Mat2::identity()));
        let o = lie_classify(&q(0, 2, -2)).unwrap();
        assert_eq!(o.kind, LieOrbitKind::Rotation { theta: 2.0, orientation: 1 });
        assert_eq!(o.conjugator, Some(Mat2::identity()));
        assert_eq!(lie_classify(&q(0, 0, 0)).unwrap_err(), MatError::ZeroElement);
    }

    #[test]
    fn residuals_and_exact_conjugators() {
        for x in [q(1, 2, 3), q(2, 1, -4), q(0, -3, 2), q(2, 4, -1), q(1, 1, -1), q(0, 0, 5)] {
            let o = lie_classify(&x).unwrap();
            assert!(o.residual(&x) < 1e-12, "{x:?}");
            assert!((o.conjugator_f64.det() - 1.0).abs() < 1e-12);
            if let Some(p) = o.conjugator {
                assert_eq!(p.det(), rational(1, 1));
            }
        }
        // (0 1; -1 0)·2 flipped: orientation -1
        assert_eq!(
            lie_classify(&q(0, -2, 2)).unwrap().kind,
            LieOrbitKind::Rotation { theta: 2.0, orientation: -1 }
        );
        assert_eq!(lie_classify(&q(0, 0, 5)).unwrap().kind, LieOrbitKind::Nilpotent { sign: -1 });
    }

    #[test]
    fn exponential_examples() {
        assert_eq!(exp_sl2(&Sl2LieElem::new(1.0, 0.0, 0.0)), Mat2::diag(E, 1.0 / E));
        assert_eq!(exp_sl2(&Sl2LieElem::new(0.0, 1.0, 0.0)), Mat2::new(1.0, 1.0, 0.0, 1.0));
        let r = exp_sl2(&Sl2LieElem::new(0.0, FRAC_PI_2, -FRAC_PI_2));
        assert!(r.max_abs_diff(&Mat2::new(0.0, 1.0, -1.0, 0.0)) < 1e-15);
        assert_eq!(exp_sl2(&Sl2LieElem::new(0.0, 0.0, 0.0)), Mat2::identity());
    }

    #[test]
    fn exponential_against_series() {
        for x in [Sl2LieElem::new(0.3, -0.7, 0.2), Sl2LieElem::new(0.1, 0.5, -0.9), Sl2LieElem::new(0.4, 0.0, 0.6)] {
            let m = x.matrix();
            let mut term = Mat2::<f64>::identity();
            let mut sum = Mat2::<f64>::identity();
            for k in 1..30 {
                term = term.mul(&m).scale(&(1.0 / k as f64));
                sum = Mat2::new(sum.a + term.a, sum.b + term.b, sum.c + term.c, sum.d + term.d);
            }
            assert!(exp_sl2(&x).max_abs_diff(&sum) < 1e-12);
        }
    }
}
