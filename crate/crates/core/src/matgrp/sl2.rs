use serde_json::{json, Value};

use super::scalar::{RealScalar, Scalar, SignClass};
use super::{Mat2, MatError};

/// Conjugacy class of an element of `SL₂(ℝ)`, decided by the sign of `(Tr g)² − 4`.
#[derive(Clone, Debug, PartialEq)]
pub enum Sl2ConjClass<S> {
    /// Conjugate to `diag(λ, 1/λ)` with `|λ| > 1`; `λ = (t + sgn(t)√(t²−4))/2`.
    Hyperbolic { trace: S, lambda: f64, lambda_exact: Option<S> },
    /// `±I`.
    ParabolicCentral { sign: i8 },
    /// Conjugate to `(ε s; 0 ε)` with `ε = eigenvalue`, `s = shear`.
    ParabolicShear { eigenvalue: i8, shear: i8 },
    /// Conjugate to the rotation `(cosθ −sinθ; sinθ cosθ)` with `sign(sinθ) = sin_sign`.
    Elliptic { cos_theta: S, sin_sign: i8 },
    /// Double backend only: `|(Tr g)² − 4| ≤ 1e−9`, too close to call.
    Borderline { trace: S },
}

impl<S: RealScalar> Sl2ConjClass<S> {
    pub fn name(&self) -> &'static str {
        match self {
            Sl2ConjClass::Hyperbolic { .. } => "hyperbolic",
            Sl2ConjClass::ParabolicCentral { .. } => "parabolic_central",
            Sl2ConjClass::ParabolicShear { .. } => "parabolic_shear",
            Sl2ConjClass::Elliptic { .. } => "elliptic",
            Sl2ConjClass::Borderline { .. } => "borderline",
        }
    }

    /// The canonical representative, in doubles.
    pub fn canonical_f64(&self) -> Option<Mat2<f64>> {
        Some(match self {
            Sl2ConjClass::Hyperbolic { lambda, .. } => Mat2::diag(*lambda, 1.0 / lambda),
            Sl2ConjClass::ParabolicCentral { sign } => Mat2::diag(*sign as f64, *sign as f64),
            Sl2ConjClass::ParabolicShear { eigenvalue, shear } => {
                Mat2::new(*eigenvalue as f64, *shear as f64, 0.0, *eigenvalue as f64)
            }
            Sl2ConjClass::Elliptic { cos_theta, sin_sign } => {
                let cos = cos_theta.to_f64();
                let sin = *sin_sign as f64 * (1.0 - cos * cos).max(0.0).sqrt();
                Mat2::new(cos, -sin, sin, cos)
            }
            Sl2ConjClass::Borderline { .. } => return None,
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Sl2ConjClass::Hyperbolic { trace, lambda, lambda_exact } => json!({
                "kind": self.name(), "trace": trace.to_json(), "lambda": lambda,
                "lambda_exact": lambda_exact.as_ref().map(Scalar::to_json),
            }),
            Sl2ConjClass::ParabolicCentral { sign } => json!({"kind": self.name(), "sign": sign}),
            Sl2ConjClass::ParabolicShear { eigenvalue, shear } => {
                json!({"kind": self.name(), "eigenvalue": eigenvalue, "shear": shear})
            }
            Sl2ConjClass::Elliptic { cos_theta, sin_sign } => {
                json!({"kind": self.name(), "cos_theta": cos_theta.to_json(), "sin_sign": sin_sign})
            }
            Sl2ConjClass::Borderline { trace } => json!({"kind": self.name(), "trace": trace.to_json()}),
        }
    }
}

/// Result of [`sl2_classify`]. Conjugators `X` satisfy `X⁻¹ g X = canonical`, `det X = 1`.
#[derive(Clone, Debug)]
pub struct Sl2Classification<S> {
    pub class: Sl2ConjClass<S>,
    /// Exact conjugator, when the needed square roots exist in the backend.
    pub conjugator: Option<Mat2<S>>,
    pub canonical: Option<Mat2<S>>,
    pub conjugator_f64: Option<Mat2<f64>>,
}

impl<S: RealScalar> Sl2Classification<S> {
    /// `‖X⁻¹gX − canonical‖_max` computed in doubles.
    pub fn residual(&self, g: &Mat2<S>) -> Option<f64> {
        let x = self.conjugator_f64.as_ref()?;
        let canon = self.class.canonical_f64()?;
        Some(x.sl2_inverse().mul(&g.to_f64()).mul(x).max_abs_diff(&canon))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "class": self.class.to_json(),
            "conjugator": self.conjugator.as_ref().map(Mat2::to_json),
            "conjugator_f64": self.conjugator_f64.as_ref().map(Mat2::to_json),
        })
    }
}

/// Square root inside the backend; on doubles tiny negative rounding noise is clamped to zero.
pub(crate) fn root<T: RealScalar>(x: &T) -> Option<T> {
    if !T::EXACT && x.to_f64() < 0.0 {
        return Some(T::zero());
    }
    x.sqrt()
}

/// An eigenvector of `m` for eigenvalue `mu`, the better-conditioned of the two candidates.
pub(crate) fn eigenvector<T: Scalar>(m: &Mat2<T>, mu: &T) -> (T, T) {
    let v1 = (m.b.clone(), mu.clone() - m.a.clone());
    let v2 = (mu.clone() - m.d.clone(), m.c.clone());
    let size = |v: &(T, T)| v.0.magnitude().max(v.1.magnitude());
    if size(&v1) >= size(&v2) { v1 } else { v2 }
}

/// Columns `v1, v2` rescaled (first column) to determinant one.
pub(crate) fn unimodular_columns<T: Scalar>(v1: (T, T), v2: (T, T)) -> Mat2<T> {
    let p = Mat2::from_columns(v1, v2);
    let det = p.det();
    Mat2::from_columns((p.a.clone() / det.clone(), p.c.clone() / det), (p.b, p.d))
}

/// For nonzero nilpotent `n`: the sign `s` and `X ∈ SL₂` with `X⁻¹ n X = (0 s; 0 0)`.
/// The matrix is `None` if the scaling root is missing from the backend.
pub(crate) fn nilpotent_frame<T: RealScalar>(n: &Mat2<T>) -> (i8, Option<Mat2<T>>) {
    let e1 = (T::one(), T::zero());
    let e2 = (T::zero(), T::one());
    let (n1, n2) = (n.apply(e1.clone()), n.apply(e2.clone()));
    let size = |v: &(T, T)| v.0.magnitude().max(v.1.magnitude());
    let (x2, nx2) = if size(&n1) >= size(&n2) { (e1, n1) } else { (e2, n2) };
    let det = Mat2::from_columns(nx2.clone(), x2.clone()).det();
    let s: i8 = if det.to_f64() < 0.0 { -1 } else { 1 };
    // columns (α N x₂ / s, α x₂) have determinant α²|det|
    let frame = root(&det.abs()).map(|r| {
        let alpha = T::one() / r;
        let sign = T::from_i64(s as i64);
        let col2 = (x2.0 * alpha.clone(), x2.1 * alpha.clone());
        let col1 = (nx2.0 * alpha.clone() / sign.clone(), nx2.1 * alpha / sign);
        Mat2::from_columns(col1, col2)
    });
    (s, frame)
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Branch {
    Hyperbolic,
    Central(i8),
    Shear(i8),
    Elliptic(i8),
}

/// Conjugator for a fixed branch, computed in backend `T`.
fn conjugator_in<T: RealScalar>(g: &Mat2<T>, branch: Branch) -> Option<Mat2<T>> {
    match branch {
        Branch::Hyperbolic => {
            if g.b == T::zero() && g.c == T::zero() && g.a.magnitude() > g.d.magnitude() {
                return Some(Mat2::identity());
            }
            let t = g.trace();
            let disc = t.clone() * t.clone() - T::from_i64(4);
            let r = root(&disc)?;
            let two = T::from_i64(2);
            let lambda = if t.to_f64() >= 0.0 { (t + r) / two } else { (t - r) / two };
            let inv = T::one() / lambda.clone();
            Some(unimodular_columns(eigenvector(g, &lambda), eigenvector(g, &inv)))
        }
        Branch::Central(_) => Some(Mat2::identity()),
        Branch::Shear(eps) => nilpotent_frame(&g.sub(&Mat2::identity().scale(&T::from_i64(eps as i64)))).1,
        Branch::Elliptic(sign) => {
            let cos = g.trace() / T::from_i64(2);
            let sin = root(&(T::one() - cos.clone() * cos.clone()))? * T::from_i64(sign as i64);
            let n = g.sub(&Mat2::identity().scale(&cos));
            // columns (e₁, N e₁ / sinθ) have determinant c / sinθ > 0
            let p = Mat2::from_columns((T::one(), T::zero()), (n.a / sin.clone(), n.c / sin));
            let alpha = T::one() / root(&p.det())?;
            Some(p.scale(&alpha))
        }
    }
}

/// Classifies `g ∈ SL₂` by the trace trichotomy and returns an explicit conjugator to the
/// canonical form.
pub fn sl2_classify<S: RealScalar>(g: &Mat2<S>) -> Result<Sl2Classification<S>, MatError> {
    let det = g.det();
    let unimodular = if S::EXACT { det == S::one() } else { (det.to_f64() - 1.0).abs() <= 1e-12 };
    if !unimodular {
        return Err(MatError::NotUnimodular);
    }
    let t = g.trace();
    let disc = t.clone() * t.clone() - S::from_i64(4);
    let (class, branch) = match disc.sign_class() {
        SignClass::Borderline => {
            let class = Sl2ConjClass::Borderline { trace: t };
            return Ok(Sl2Classification { class, conjugator: None, canonical: None, conjugator_f64: None });
        }
        SignClass::Positive => {
            let tf = t.to_f64();
            let lambda = (tf + tf.signum() * disc.to_f64().sqrt()) / 2.0;
            let lambda_exact = disc.sqrt().map(|r| {
                let two = S::from_i64(2);
                if tf > 0.0 { (t.clone() + r) / two } else { (t.clone() - r) / two }
            });
            (Sl2ConjClass::Hyperbolic { trace: t, lambda, lambda_exact }, Branch::Hyperbolic)
        }
        SignClass::Zero => {
            let eps: i8 = if t.to_f64() > 0.0 { 1 } else { -1 };
            let n = g.sub(&Mat2::identity().scale(&S::from_i64(eps as i64)));
            if n.entries().iter().all(|x| x.is_zero()) {
                (Sl2ConjClass::ParabolicCentral { sign: eps }, Branch::Central(eps))
            } else {
                let (shear, _) = nilpotent_frame(&n);
                (Sl2ConjClass::ParabolicShear { eigenvalue: eps, shear }, Branch::Shear(eps))
            }
        }
        SignClass::Negative => {
            let sin_sign = g.c.signum_i8();
            (Sl2ConjClass::Elliptic { cos_theta: t / S::from_i64(2), sin_sign }, Branch::Elliptic(sin_sign))
        }
    };
    let conjugator = conjugator_in(g, branch);
    let canonical = conjugator.as_ref().map(|x| x.sl2_inverse().mul(g).mul(x));
    let conjugator_f64 = conjugator_in(&g.to_f64(), branch);
    Ok(Sl2Classification { class, conjugator, canonical, conjugator_f64 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::scalar::{rational, Rational};

    type Q = Mat2<Rational>;

    #[test]
    fn diagonal_is_hyperbolic_and_canonical() {
        let g = Q::diag(rational(2, 1), rational(1, 2));
        let r = sl2_classify(&g).unwrap();
        match &r.class {
            Sl2ConjClass::Hyperbolic { lambda, lambda_exact, .. } => {
                assert_eq!(*lambda, 2.0);
                assert_eq!(lambda_exact.clone(), Some(rational(2, 1)));
            }
            c => panic!("{c:?}"),
        }
        assert_eq!(r.canonical, Some(g));
    }

    #[test]
    fn parabolic_examples() {
        let r = sl2_classify(&Q::from_i64(1, 1, 0, 1)).unwrap();
        assert_eq!(r.class, Sl2ConjClass::ParabolicShear { eigenvalue: 1, shear: 1 });
        assert_eq!(r.canonical, Some(Q::from_i64(1, 1, 0, 1)));
        let r = sl2_classify(&Q::from_i64(-1, 1, 0, -1)).unwrap();
        assert_eq!(r.class, Sl2ConjClass::ParabolicShear { eigenvalue: -1, shear: 1 });
        // J⁻¹ (1 0; c 1) J = (1 −c; 0 1) for J = (0 1; −1 0)
        let r = sl2_classify(&Q::from_i64(1, 0, -4, 1)).unwrap();
        assert_eq!(r.class, Sl2ConjClass::ParabolicShear { eigenvalue: 1, shear: 1 });
        assert_eq!(r.canonical, Some(Q::from_i64(1, 1, 0, 1)));
        let r = sl2_classify(&Q::from_i64(1, 0, 4, 1)).unwrap();
        assert_eq!(r.class, Sl2ConjClass::ParabolicShear { eigenvalue: 1, shear: -1 });
        assert_eq!(r.canonical, Some(Q::from_i64(1, -1, 0, 1)));
        let r = sl2_classify(&Q::from_i64(-1, 0, 0, -1)).unwrap();
        assert_eq!(r.class, Sl2ConjClass::ParabolicCentral { sign: -1 });
    }

    #[test]
    fn quarter_turn_is_elliptic() {
        let g = Q::from_i64(0, -1, 1, 0);
        let r = sl2_classify(&g).unwrap();
        assert_eq!(r.class, Sl2ConjClass::Elliptic { cos_theta: rational(0, 1), sin_sign: 1 });
        assert_eq!(r.canonical, Some(g));
    }

    #[test]
    fn trace_three_residual() {
        let g = Mat2::new(2.0, 1.0, 1.0, 1.0);
        let r = sl2_classify(&g).unwrap();
        match r.class {
            Sl2ConjClass::Hyperbolic { lambda, .. } => assert!((lambda - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12),
            c => panic!("{c:?}"),
        }
        assert!(r.residual(&g).unwrap() < 1e-10);
        let x = r.conjugator_f64.unwrap();
        assert!((x.det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unimodular() {
        assert_eq!(sl2_classify(&Q::from_i64(2, 0, 0, 1)).unwrap_err(), MatError::NotUnimodular);
    }

    #[test]
    fn borderline_on_doubles() {
        let g = Mat2::new(1.0, 1.0, -1e-10, 1.0 - 1e-10);
        assert!(matches!(sl2_classify(&g).unwrap().class, Sl2ConjClass::Borderline { .. }));
    }
}
