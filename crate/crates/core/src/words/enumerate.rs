use std::collections::VecDeque;

use super::{GroupOps, Letter, TupleSpec, Word};

/// Whether `next` may follow `prefix` in a word reduced on the tuple.
fn may_extend(prefix: &[Letter], next: Letter, spec: &TupleSpec) -> bool {
    if prefix.last() == Some(&next.inv()) {
        return false;
    }
    let run = prefix.iter().rev().take_while(|&&l| l == next).count() as u64 + 1;
    spec.max_run(next.var).is_none_or(|max| run <= max)
}

/// Depth-first walk over the prefix tree of words reduced on the tuple.
///
/// The callback sees each nonempty word once, in lexicographic preorder, and returns
/// whether to descend below it.
pub fn walk_reduced_words(spec: &TupleSpec, max_len: usize, mut visit: impl FnMut(&[Letter]) -> bool) {
    let alphabet: Vec<Letter> = (0..2 * spec.len()).map(Letter::from_rank).collect();
    let mut prefix = Vec::with_capacity(max_len);
    fn go(
        prefix: &mut Vec<Letter>,
        alphabet: &[Letter],
        spec: &TupleSpec,
        max_len: usize,
        visit: &mut dyn FnMut(&[Letter]) -> bool,
    ) {
        if prefix.len() == max_len {
            return;
        }
        for &l in alphabet {
            if may_extend(prefix, l, spec) {
                prefix.push(l);
                if visit(prefix) {
                    go(prefix, alphabet, spec, max_len, visit);
                }
                prefix.pop();
            }
        }
    }
    go(&mut prefix, &alphabet, spec, max_len, &mut visit);
}

/// Same walk, carrying the value of each prefix in `group`.
pub fn walk_evaluated<G: GroupOps>(
    group: &G,
    tuple: &[G::Elem],
    spec: &TupleSpec,
    max_len: usize,
    mut visit: impl FnMut(&[Letter], &G::Elem) -> bool,
) {
    let values: Vec<G::Elem> = (0..2 * spec.len())
        .map(|r| {
            let l = Letter::from_rank(r);
            if l.inverse { group.inv(&tuple[l.var - 1]) } else { tuple[l.var - 1].clone() }
        })
        .collect();
    let mut stack: Vec<G::Elem> = vec![group.identity()];
    walk_reduced_words(spec, max_len, |letters| {
        stack.truncate(letters.len());
        let last = letters[letters.len() - 1];
        let value = group.mul(&stack[letters.len() - 1], &values[last.rank()]);
        let descend = visit(letters, &value);
        stack.push(value);
        descend
    });
}

/// Every nonempty word of length `≤ max_len` reduced on the tuple, in length-lexicographic
/// order with `x₁ < x₁⁻¹ < x₂ < …`.
pub fn enumerate_reduced_words(spec: &TupleSpec, max_len: usize) -> ReducedWords {
    ReducedWords { spec: spec.clone(), max_len, len: 0, buffer: VecDeque::new() }
}

/// Length-by-length stream; each length is generated when the previous one is drained.
pub struct ReducedWords {
    spec: TupleSpec,
    max_len: usize,
    len: usize,
    buffer: VecDeque<Word>,
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while self.buffer.is_empty() {
            if self.len >= self.max_len {
                return None;
            }
            self.len += 1;
            let target = self.len;
            let buffer = &mut self.buffer;
            walk_reduced_words(&self.spec, target, |letters| {
                if letters.len() == target {
                    buffer.push_back(Word::reduce(letters.iter().copied()));
                }
                true
            });
        }
        self.buffer.pop_front()
    }
}

/// Number of words of length exactly `len` reduced on the tuple.
#[allow(clippy::needless_range_loop)]
pub fn count_reduced_words(spec: &TupleSpec, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    // state: last letter rank and current run length
    let ranks = 2 * spec.len();
    let cap = |r: usize| spec.max_run(Letter::from_rank(r).var).map(|m| m as usize);
    let max_state = len;
    let mut counts = vec![vec![0u128; max_state + 1]; ranks];
    for r in 0..ranks {
        if cap(r).is_none_or(|m| m >= 1) {
            counts[r][1] = 1;
        }
    }
    for _ in 1..len {
        let mut next = vec![vec![0u128; max_state + 1]; ranks];
        for r in 0..ranks {
            for run in 1..=max_state {
                let c = counts[r][run];
                if c == 0 {
                    continue;
                }
                for s in 0..ranks {
                    if s == r {
                        if run < max_state && cap(s).is_none_or(|m| run < m) {
                            next[s][run + 1] += c;
                        }
                    } else if s != (r ^ 1) && cap(s).is_none_or(|m| m >= 1) {
                        next[s][1] += c;
                    }
                }
            }
        }
        counts = next;
    }
    counts.iter().flatten().sum()
}

/// Number of nonempty words of length `≤ max_len` reduced on the tuple.
pub fn count_up_to(spec: &TupleSpec, max_len: usize) -> u128 {
    (1..=max_len).map(|l| count_reduced_words(spec, l)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(spec: &TupleSpec, max_len: usize) -> Vec<String> {
        enumerate_reduced_words(spec, max_len).map(|w| w.to_string()).collect()
    }

    #[test]
    fn single_variable_examples() {
        assert_eq!(
            strings(&TupleSpec::all_infinite(1), 2),
            vec!["x1", "x1^-1", "x1 x1", "x1^-1 x1^-1"]
        );
        assert_eq!(strings(&TupleSpec { orders: vec![2] }, 2), vec!["x1", "x1^-1"]);
        assert_eq!(strings(&TupleSpec::all_infinite(2), 1).len(), 4);
    }

    #[test]
    fn counts_match_free_group_formula() {
        for n in 1..=3usize {
            let spec = TupleSpec::all_infinite(n);
            for len in 1..=5usize {
                let expected = (2 * n) as u128 * ((2 * n - 1) as u128).pow(len as u32 - 1);
                assert_eq!(count_reduced_words(&spec, len), expected);
                let listed = enumerate_reduced_words(&spec, len).filter(|w| w.len() == len).count();
                assert_eq!(listed as u128, expected);
            }
        }
    }

    #[test]
    fn counts_respect_finite_orders() {
        let spec = TupleSpec { orders: vec![2, 3, 0] };
        for len in 1..=6 {
            let listed = enumerate_reduced_words(&spec, len).filter(|w| w.len() == len).count();
            assert_eq!(listed as u128, count_reduced_words(&spec, len));
        }
        assert_eq!(count_reduced_words(&TupleSpec { orders: vec![1] }, 1), 0);
    }

    #[test]
    fn order_is_length_lexicographic() {
        let words: Vec<Word> = enumerate_reduced_words(&TupleSpec { orders: vec![3, 0] }, 4).collect();
        for pair in words.windows(2) {
            let key = |w: &Word| (w.len(), w.letters().iter().map(Letter::rank).collect::<Vec<_>>());
            assert!(key(&pair[0]) < key(&pair[1]));
        }
        let spec = TupleSpec { orders: vec![3, 0] };
        assert!(words.iter().all(|w| w.is_reduced_on_tuple(&spec).unwrap()));
    }
}
