use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::complex::Complex64;
use num::{BigRational, Complex, One, Signed, ToPrimitive, Zero};

/// Exact rationals.
pub type Rational = BigRational;
/// Exact Gaussian rationals `p + q i`.
pub type GaussRational = Complex<BigRational>;

/// Absolute tolerance for zero and sign decisions on the double backends.
pub const FLOAT_TOL: f64 = 1e-9;

/// Field operations shared by every matrix backend.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Exact test on exact backends, `|x| ≤ FLOAT_TOL` on double backends.
    fn is_zero(&self) -> bool;
    /// A square root inside the backend, if one exists there.
    fn sqrt(&self) -> Option<Self>;
    fn to_c64(&self) -> Complex64;
    /// Size used to pick the better-conditioned of several candidate vectors.
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
    fn to_json(&self) -> serde_json::Value;
}

/// Sign of a real quantity; `Borderline` only arises on the double backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignClass {
    Negative,
    Zero,
    Positive,
    Borderline,
}

/// Ordered (real) backends.
pub trait RealScalar: Scalar + PartialOrd {
    fn to_f64(&self) -> f64;
    fn sign_class(&self) -> SignClass;
    fn parse(s: &str) -> Option<Self>;

    fn signum_i8(&self) -> i8 {
        match self.sign_class() {
            SignClass::Negative => -1,
            SignClass::Positive => 1,
            SignClass::Zero | SignClass::Borderline => 0,
        }
    }

    fn abs(&self) -> Self {
        if self.signum_i8() < 0 { -self.clone() } else { self.clone() }
    }
}

fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a non-negative rational, if it is a square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = bigint_sqrt_exact(q.numer())?;
    let d = bigint_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl RealScalar for Rational {
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn sign_class(&self) -> SignClass {
        if Zero::is_zero(self) {
            SignClass::Zero
        } else if self.is_positive() {
            SignClass::Positive
        } else {
            SignClass::Negative
        }
    }
    fn parse(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

/// Parses `"3"`, `"-1/2"` or a finite decimal such as `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num::pow(BigInt::from(10), frac.len());
        let q = Rational::new(n, d);
        return Some(if neg { -q } else { q });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        f64::abs(*self) <= FLOAT_TOL
    }
    fn sqrt(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(f64::sqrt(*self))
        } else {
            None
        }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }
}

impl RealScalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    /// An exact `0.0` is `Zero`; other values within `FLOAT_TOL` of zero are `Borderline`.
    fn sign_class(&self) -> SignClass {
        if *self == 0.0 {
            SignClass::Zero
        } else if f64::abs(*self) <= FLOAT_TOL {
            SignClass::Borderline
        } else if *self > 0.0 {
            SignClass::Positive
        } else {
            SignClass::Negative
        }
    }
    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.contains('/') {
            return parse_rational(s).map(|q| rational_to_f64(&q));
        }
        s.parse().ok()
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.norm() <= FLOAT_TOL
    }
    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"re": self.re, "im": self.im})
    }
}

impl Scalar for GaussRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Complex::new(One::one(), Zero::zero())
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(Rational::from_integer(v.into()), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    /// `(x + iy)² = a + bi` has a Gaussian-rational solution iff `a² + b²` is a rational
    /// square `r²` and `(r + a)/2`, `(r − a)/2` are rational squares.
    fn sqrt(&self) -> Option<Self> {
        let (a, b) = (&self.re, &self.im);
        let r = rational_sqrt(&(a * a + b * b))?;
        let two = Rational::from_integer(2.into());
        let x = rational_sqrt(&((&r + a) / &two))?;
        let y_abs = rational_sqrt(&((&r - a) / &two))?;
        let y = if b.is_negative() { -y_abs } else { y_abs };
        let root = Complex::new(x, y);
        (&root * &root == *self).then_some(root)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"re": self.re.to_string(), "im": self.im.to_string()})
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn gauss(re: Rational) -> GaussRational {
    Complex::new(re, Zero::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_square_roots() {
        assert_eq!(Scalar::sqrt(&rational(9, 4)), Some(rational(3, 2)));
        assert_eq!(Scalar::sqrt(&rational(2, 1)), None);
        assert_eq!(Scalar::sqrt(&rational(-4, 1)), None);
    }

    #[test]
    fn gaussian_square_roots() {
        let minus_four = gauss(rational(-4, 1));
        let r = Scalar::sqrt(&minus_four).unwrap();
        assert_eq!(r.clone() * r, minus_four);
        let z = Complex::new(rational(3, 1), rational(4, 1)); // (2 + i)²
        assert_eq!(Scalar::sqrt(&z), Some(Complex::new(rational(2, 1), rational(1, 1))));
        assert_eq!(Scalar::sqrt(&gauss(rational(-3, 1))), None);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-1/2"), Some(rational(-1, 2)));
        assert_eq!(parse_rational("0.25"), Some(rational(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(rational(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(<f64 as RealScalar>::parse("1/4"), Some(0.25));
    }

    #[test]
    fn float_sign_classes() {
        assert_eq!(0.0f64.sign_class(), SignClass::Zero);
        assert_eq!(1e-12f64.sign_class(), SignClass::Borderline);
        assert_eq!((-0.5f64).sign_class(), SignClass::Negative);
    }
}
