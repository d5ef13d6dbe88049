use std::fmt;

use num::complex::Complex64;
use serde_json::Value;

use super::scalar::{RealScalar, Scalar};
use super::MatError;
use crate::words::GroupOps;

/// A 2×2 matrix `(a b; c d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(S::from_i64(a), S::from_i64(b), S::from_i64(c), S::from_i64(d))
    }

    pub fn identity() -> Self {
        Mat2::new(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn diag(x: S, y: S) -> Self {
        Mat2::new(x, S::zero(), S::zero(), y)
    }

    /// Matrix with the given columns.
    pub fn from_columns(c1: (S, S), c2: (S, S)) -> Self {
        Mat2::new(c1.0, c2.0, c1.1, c2.1)
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> S {
        self.a.clone() + self.d.clone()
    }

    pub fn mul(&self, o: &Mat2<S>) -> Mat2<S> {
        let m = |x: &S, y: &S, z: &S, w: &S| x.clone() * y.clone() + z.clone() * w.clone();
        Mat2::new(
            m(&self.a, &o.a, &self.b, &o.c),
            m(&self.a, &o.b, &self.b, &o.d),
            m(&self.c, &o.a, &self.d, &o.c),
            m(&self.c, &o.b, &self.d, &o.d),
        )
    }

    pub fn scale(&self, s: &S) -> Mat2<S> {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn sub(&self, o: &Mat2<S>) -> Mat2<S> {
        Mat2::new(
            self.a.clone() - o.a.clone(),
            self.b.clone() - o.b.clone(),
            self.c.clone() - o.c.clone(),
            self.d.clone() - o.d.clone(),
        )
    }

    pub fn neg(&self) -> Mat2<S> {
        self.map(|x| -x.clone())
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Mat2<T> {
        Mat2 { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }

    pub fn inverse(&self) -> Result<Mat2<S>, MatError> {
        let det = self.det();
        if det.is_zero() {
            return Err(MatError::Singular);
        }
        Ok(Mat2::new(
            self.d.clone() / det.clone(),
            -self.b.clone() / det.clone(),
            -self.c.clone() / det.clone(),
            self.a.clone() / det,
        ))
    }

    /// Inverse of a determinant-one matrix, without division.
    pub fn sl2_inverse(&self) -> Mat2<S> {
        Mat2::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    /// `x⁻¹ · self · x`.
    pub fn conjugate_by(&self, x: &Mat2<S>) -> Result<Mat2<S>, MatError> {
        Ok(x.inverse()?.mul(self).mul(x))
    }

    pub fn apply(&self, v: (S, S)) -> (S, S) {
        (
            self.a.clone() * v.0.clone() + self.b.clone() * v.1.clone(),
            self.c.clone() * v.0 + self.d.clone() * v.1,
        )
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && (self.a.clone() - S::one()).is_zero() && (self.d.clone() - S::one()).is_zero()
    }

    pub fn to_c64(&self) -> Mat2<Complex64> {
        self.map(Scalar::to_c64)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Mat2<S>) -> f64 {
        self.sub(other).entries().iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(vec![
            Value::Array(vec![self.a.to_json(), self.b.to_json()]),
            Value::Array(vec![self.c.to_json(), self.d.to_json()]),
        ])
    }
}

impl<S: RealScalar> Mat2<S> {
    pub fn to_f64(&self) -> Mat2<f64> {
        self.map(RealScalar::to_f64)
    }

    /// Parses `[[a,b],[c,d]]` whose entries are numbers or strings such as `"-1/2"`.
    pub fn from_json(v: &Value) -> Result<Self, MatError> {
        let bad = || MatError::Parse(v.to_string());
        let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
        let mut out = Vec::with_capacity(4);
        for row in rows {
            let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
            for e in row {
                let text = match e {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(bad()),
                };
                out.push(S::parse(&text).ok_or_else(bad)?);
            }
        }
        let mut it = out.into_iter();
        let mut next = || it.next().unwrap();
        Ok(Mat2::new(next(), next(), next(), next()))
    }

    pub fn parse(s: &str) -> Result<Self, MatError> {
        let v: Value = serde_json::from_str(s).map_err(|_| MatError::Parse(s.to_string()))?;
        Self::from_json(&v)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// Projective equality: `p = λq` for some scalar `λ`, i.e. all 2×2 minors of the pair vanish.
pub fn psl_equal<S: Scalar>(p: &Mat2<S>, q: &Mat2<S>) -> bool {
    let (pe, qe) = (p.entries(), q.entries());
    (0..4).all(|i| (i + 1..4).all(|j| (pe[i].clone() * qe[j].clone() - pe[j].clone() * qe[i].clone()).is_zero()))
}

/// Matrix groups for the word machinery; `projective` compares modulo scalars.
#[derive(Clone, Copy, Debug)]
pub struct MatOps<S> {
    pub projective: bool,
    _marker: std::marker::PhantomData<S>,
}

impl<S> MatOps<S> {
    pub fn linear() -> Self {
        MatOps { projective: false, _marker: std::marker::PhantomData }
    }

    pub fn projective() -> Self {
        MatOps { projective: true, _marker: std::marker::PhantomData }
    }
}

impl<S: Scalar> GroupOps for MatOps<S> {
    type Elem = Mat2<S>;

    fn identity(&self) -> Mat2<S> {
        Mat2::identity()
    }

    fn mul(&self, a: &Mat2<S>, b: &Mat2<S>) -> Mat2<S> {
        a.mul(b)
    }

    fn inv(&self, a: &Mat2<S>) -> Mat2<S> {
        a.inverse().expect("group elements are invertible")
    }

    fn eq(&self, a: &Mat2<S>, b: &Mat2<S>) -> bool {
        if self.projective {
            psl_equal(a, b)
        } else {
            a.sub(b).entries().iter().all(|x| x.is_zero())
        }
    }

    fn is_identity(&self, a: &Mat2<S>) -> bool {
        if self.projective {
            a.b.is_zero() && a.c.is_zero() && (a.a.clone() - a.d.clone()).is_zero()
        } else {
            a.is_identity()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::scalar::{rational, Rational};

    type Q = Mat2<Rational>;

    #[test]
    fn arithmetic() {
        let g = Q::from_i64(2, 1, 1, 1);
        assert_eq!(g.det(), rational(1, 1));
        assert_eq!(g.mul(&g.inverse().unwrap()), Q::identity());
        assert_eq!(g.sl2_inverse(), g.inverse().unwrap());
        assert!(Q::from_i64(1, 2, 2, 4).inverse().is_err());
    }

    #[test]
    fn projective_equality() {
        let p = Q::from_i64(2, 1, 1, 1);
        assert!(psl_equal(&p, &p.neg()));
        assert!(!psl_equal(&Q::identity(), &Q::from_i64(1, 0, 0, -1)));
        assert!(psl_equal(&Q::from_i64(2, 0, 0, 2), &Q::identity()));
        let ops = MatOps::<Rational>::projective();
        assert!(ops.is_identity(&Q::from_i64(-1, 0, 0, -1)));
        assert!(!MatOps::<Rational>::linear().is_identity(&Q::from_i64(-1, 0, 0, -1)));
    }

    #[test]
    fn json_round_trip() {
        let g = Q::new(rational(1, 2), rational(-3, 1), rational(0, 1), rational(2, 1));
        let j = g.to_json();
        assert_eq!(j.to_string(), r#"[["1/2","-3"],["0","2"]]"#);
        assert_eq!(Q::from_json(&j).unwrap(), g);
        assert_eq!(Mat2::<f64>::parse("[[1, 0.5], [\"1/4\", 2]]").unwrap(), Mat2::new(1.0, 0.5, 0.25, 2.0));
        assert!(Q::parse("[[1,2]]").is_err());
    }
}
