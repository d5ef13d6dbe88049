use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scalar::{Rational, Scalar};
use super::{Mat2, MatError, MatOps};
use crate::words::{free_up_to, FreenessCertificate, FreenessOptions, GroupOps, Word, DEFAULT_WORD_CAP};

/// Parameters of [`extend_free_tuple`].
#[derive(Clone, Debug)]
pub struct ExtendOptions {
    pub length_bound: usize,
    pub trials: usize,
    pub seed: u64,
    /// Sampled integer entries lie in `[−height, height]`.
    pub height: i64,
    pub word_cap: u128,
}

impl Default for ExtendOptions {
    fn default() -> Self {
        ExtendOptions { length_bound: 8, trials: 50, seed: 0, height: 5, word_cap: DEFAULT_WORD_CAP }
    }
}

#[derive(Clone, Debug)]
pub struct Extension {
    /// The sampled `g ∈ SL₂(ℚ)`.
    pub g: Mat2<Rational>,
    /// `g⁻¹ c g`, appended to the tuple.
    pub conjugate: Mat2<Rational>,
    /// Zero-based index of the successful trial.
    pub trial: usize,
    pub certificate: FreenessCertificate,
}

/// Random element of `SL₂(ℚ)`: integer entries in `[−h, h]`, first row divided by the determinant.
pub fn sample_sl2(rng: &mut impl Rng, height: i64) -> Mat2<Rational> {
    loop {
        let mut e = || rng.gen_range(-height..=height);
        let m = Mat2::<Rational>::from_i64(e(), e(), e(), e());
        let det = m.det();
        if det.is_zero() {
            continue;
        }
        return Mat2::new(m.a / det.clone(), m.b / det, m.c, m.d);
    }
}

/// Searches for `g` such that `c_list + (g⁻¹ c g)` has no relation of length `≤ L` in `PSL₂(ℚ)`.
///
/// Trials run in order from a seeded generator; the first success is returned.
pub fn extend_free_tuple(
    c_list: &[Mat2<Rational>],
    c: &Mat2<Rational>,
    options: &ExtendOptions,
) -> Result<Extension, MatError> {
    let ops = MatOps::<Rational>::projective();
    if c.det().is_zero() || c_list.iter().any(|m| m.det().is_zero()) {
        return Err(MatError::Singular);
    }
    if ops.is_identity(c) {
        return Err(MatError::PreconditionViolated("c is trivial in PSL".into()));
    }
    let word_options = |id: &str| FreenessOptions { tuple_id: id.into(), orders: None, word_cap: options.word_cap };
    if !c_list.is_empty() {
        let base = free_up_to(&ops, c_list, options.length_bound, &word_options("c_list"))?;
        if let Some(w) = base.relation() {
            return Err(MatError::PreconditionViolated(format!("c_list satisfies the relation {w}")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut relations: HashMap<Word, usize> = HashMap::new();
    for trial in 0..options.trials {
        let g = sample_sl2(&mut rng, options.height);
        let conjugate = g.sl2_inverse().mul(c).mul(&g);
        let mut tuple = c_list.to_vec();
        tuple.push(conjugate.clone());
        let certificate = free_up_to(&ops, &tuple, options.length_bound, &word_options(&format!("trial-{trial}")))?;
        match certificate.relation() {
            None => return Ok(Extension { g, conjugate, trial, certificate }),
            Some(w) => *relations.entry(w.clone()).or_default() += 1,
        }
    }
    let most_common = relations.into_iter().max_by(|(w1, n1), (w2, n2)| {
        n1.cmp(n2).then_with(|| w2.to_string().cmp(&w1.to_string()))
    });
    Err(MatError::TrialsExhausted {
        trials: options.trials,
        relation: most_common.as_ref().map(|(w, _)| w.to_string()),
        count: most_common.map_or(0, |(_, n)| n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::FreenessStatus;

    type Q = Mat2<Rational>;

    #[test]
    fn samples_are_unimodular_and_reproducible() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = sample_sl2(&mut r1, 5);
            assert_eq!(g.det(), Rational::one());
            assert_eq!(g, sample_sl2(&mut r2, 5));
        }
    }

    #[test]
    fn sanov_pair_extends() {
        let opts = ExtendOptions { length_bound: 6, trials: 20, seed: 1, ..Default::default() };
        let ext = extend_free_tuple(&[Q::from_i64(1, 2, 0, 1)], &Q::from_i64(1, 0, 2, 1), &opts).unwrap();
        assert_eq!(ext.certificate.status, FreenessStatus::FreeUpTo(6));
        assert_eq!(ext.conjugate, ext.g.sl2_inverse().mul(&Q::from_i64(1, 0, 2, 1)).mul(&ext.g));
    }

    #[test]
    fn single_element_of_infinite_order() {
        let opts = ExtendOptions { length_bound: 4, trials: 1, ..Default::default() };
        let ext = extend_free_tuple(&[], &Q::from_i64(1, 1, 0, 1), &opts).unwrap();
        assert_eq!(ext.trial, 0);
        assert!(ext.certificate.is_free());
    }

    #[test]
    fn central_element_is_rejected() {
        let err = extend_free_tuple(&[Q::from_i64(1, 2, 0, 1)], &Q::from_i64(-1, 0, 0, -1), &ExtendOptions::default())
            .unwrap_err();
        assert!(matches!(err, MatError::PreconditionViolated(_)));
    }

    #[test]
    fn zero_trials_exhaust() {
        let opts = ExtendOptions { trials: 0, ..Default::default() };
        let err = extend_free_tuple(&[], &Q::from_i64(1, 1, 0, 1), &opts).unwrap_err();
        assert_eq!(err, MatError::TrialsExhausted { trials: 0, relation: None, count: 0 });
    }

    #[test]
    fn non_free_base_is_rejected() {
        // (0 -1; 1 0) has order 2 in PSL, so the pair (w, w) has the relation x1 x2
        let w = Q::from_i64(0, -1, 1, 0);
        let err = extend_free_tuple(&[w.clone(), w], &Q::from_i64(1, 1, 0, 1), &ExtendOptions::default()).unwrap_err();
        assert!(matches!(err, MatError::PreconditionViolated(_)));
    }
}
