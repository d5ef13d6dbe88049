use num::complex::Complex64;
use serde_json::{json, Value};

use super::scalar::{RealScalar, SignClass};
use super::{Mat2, MatError, MatOps};
use crate::words::{count_up_to, walk_evaluated, GroupOps, TupleSpec};

/// Default cap on the number of words evaluated by [`spectrum_of_words`].
pub const DEFAULT_SPECTRUM_CAP: u128 = 2_000_000;

/// Eigenvalues of sampled elements. `±1` lie in both `ℝ^×` and the unit circle and are
/// listed in both buckets.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpectrumReport {
    pub real_values: Vec<f64>,
    pub unit_values: Vec<Complex64>,
    pub other: Vec<Complex64>,
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * a.norm().max(1.0)
}

fn insert_real(values: &mut Vec<f64>, x: f64) {
    if !values.iter().any(|&y| close(x.into(), y.into())) {
        values.push(x);
    }
}

fn insert_complex(values: &mut Vec<Complex64>, z: Complex64) {
    if !values.iter().any(|&w| close(z, w)) {
        values.push(z);
    }
}

impl SpectrumReport {
    /// Adds both eigenvalues of `m`. Realness and unit modulus are decided in the backend.
    pub fn add<S: RealScalar>(&mut self, m: &Mat2<S>) {
        let (t, det) = (m.trace(), m.det());
        let disc = t.clone() * t.clone() - S::from_i64(4) * det.clone();
        let (tf, df) = (t.to_f64(), disc.to_f64());
        if disc.sign_class() == SignClass::Negative {
            let unit = (det - S::one()).is_zero();
            let im = (-df).sqrt() / 2.0;
            for z in [Complex64::new(tf / 2.0, im), Complex64::new(tf / 2.0, -im)] {
                insert_complex(if unit { &mut self.unit_values } else { &mut self.other }, z);
            }
            return;
        }
        let r = df.max(0.0).sqrt();
        for lambda in [(tf + r) / 2.0, (tf - r) / 2.0] {
            // λ = ±1 is a root of x² − tx + det, decided without rounding where possible
            let at = |s: i64| (S::one() - S::from_i64(s) * t.clone() + det.clone()).is_zero();
            let plus_one = at(1) && lambda > 0.0;
            let minus_one = at(-1) && lambda < 0.0;
            if plus_one || minus_one {
                let v = if plus_one { 1.0 } else { -1.0 };
                insert_real(&mut self.real_values, v);
                insert_complex(&mut self.unit_values, v.into());
            } else if det.is_zero() && lambda.abs() <= 1e-9 {
                insert_complex(&mut self.other, lambda.into());
            } else {
                insert_real(&mut self.real_values, lambda);
            }
        }
    }

    pub fn sorted(mut self) -> Self {
        self.real_values.sort_by(f64::total_cmp);
        let key = |z: &Complex64| (z.re, z.im);
        self.unit_values.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        self.other.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        self
    }

    pub fn contains_real(&self, x: f64) -> bool {
        self.real_values.iter().any(|&y| close(x.into(), y.into()))
    }

    pub fn contains_unit(&self, z: Complex64) -> bool {
        self.unit_values.iter().any(|&w| close(z, w))
    }

    pub fn to_json(&self) -> Value {
        let c = |zs: &[Complex64]| zs.iter().map(|z| json!({"re": z.re, "im": z.im})).collect::<Vec<_>>();
        json!({"real": self.real_values, "unit": c(&self.unit_values), "other": c(&self.other)})
    }
}

/// Eigenvalues of every freely reduced word of length `≤ L` in the generators, the empty
/// word included.
pub fn spectrum_of_words<S: RealScalar>(
    generators: &[Mat2<S>],
    length_bound: usize,
    word_cap: u128,
) -> Result<SpectrumReport, MatError> {
    if length_bound == 0 {
        return Err(MatError::ZeroLength);
    }
    if generators.iter().any(|g| g.det().is_zero()) {
        return Err(MatError::Singular);
    }
    let spec = TupleSpec::all_infinite(generators.len());
    let words = count_up_to(&spec, length_bound);
    if words > word_cap {
        return Err(MatError::Budget { words, cap: word_cap });
    }
    let ops = MatOps::<S>::linear();
    let mut report = SpectrumReport::default();
    report.add(&ops.identity());
    walk_evaluated(&ops, generators, &spec, length_bound, |_, m| {
        report.add(m);
        true
    });
    Ok(report.sorted())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::scalar::{rational, Rational};

    #[test]
    fn powers_of_a_diagonal() {
        let g = Mat2::diag(rational(2, 1), rational(1, 2));
        let r = spectrum_of_words(&[g], 3, DEFAULT_SPECTRUM_CAP).unwrap();
        assert_eq!(r.real_values, vec![0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0]);
        assert_eq!(r.unit_values, vec![Complex64::new(1.0, 0.0)]);
        assert!(r.other.is_empty());
    }

    #[test]
    fn weyl_element_has_spectrum_plus_minus_i() {
        let t = 1.0f64;
        let w = Mat2::new(0.0, (-t).exp(), -t.exp(), 0.0);
        let r = spectrum_of_words(&[w], 1, DEFAULT_SPECTRUM_CAP).unwrap();
        assert!(r.contains_unit(Complex64::new(0.0, 1.0)));
        assert!(r.contains_unit(Complex64::new(0.0, -1.0)));
        assert_eq!(r.unit_values.len(), 3); // ±i and 1 from the empty word
        assert!(r.other.is_empty());
    }

    #[test]
    fn borel_subgroup_is_real() {
        let u = Mat2::<Rational>::from_i64(1, 1, 0, 1);
        let h = Mat2::diag(rational(3, 1), rational(1, 3));
        let r = spectrum_of_words(&[u, h], 4, DEFAULT_SPECTRUM_CAP).unwrap();
        assert!(r.unit_values.iter().all(|z| z.im == 0.0));
        assert!(r.other.is_empty());
        assert!(r.contains_real(81.0) && r.contains_real(1.0 / 81.0));
    }

    #[test]
    fn budget() {
        let u = Mat2::<Rational>::from_i64(1, 1, 0, 1);
        assert!(matches!(spectrum_of_words(&[u.clone(), u], 6, 100), Err(MatError::Budget { .. })));
    }
}
