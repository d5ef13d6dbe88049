use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GroupOps, WordError};

/// One symbol `x_var^exp` with `var ≥ 1` and `exp = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub var: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(var: usize, exp: i8) -> Self {
        debug_assert!(var >= 1 && (exp == 1 || exp == -1));
        Letter { var, inverse: exp < 0 }
    }

    pub fn exp(&self) -> i8 {
        if self.inverse { -1 } else { 1 }
    }

    pub fn inv(self) -> Self {
        Letter { var: self.var, inverse: !self.inverse }
    }

    /// Position in the alphabet order `x₁ < x₁⁻¹ < x₂ < x₂⁻¹ < …`.
    pub fn rank(&self) -> usize {
        2 * (self.var - 1) + usize::from(self.inverse)
    }

    pub fn from_rank(rank: usize) -> Self {
        Letter { var: rank / 2 + 1, inverse: rank % 2 == 1 }
    }
}

/// Element orders of a tuple, `0` meaning infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleSpec {
    pub orders: Vec<u64>,
}

impl TupleSpec {
    pub fn all_infinite(n: usize) -> Self {
        TupleSpec { orders: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Longest allowed run `x_i^m`; `None` when unbounded.
    pub fn max_run(&self, var: usize) -> Option<u64> {
        match self.orders[var - 1] {
            0 => None,
            o => Some(o - 1),
        }
    }
}

/// A freely reduced word in `x₁^{±1}, …, xₙ^{±1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            if letters.last() == Some(&l.inv()) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Word { letters }
    }

    /// Builds a word from `(var, exponent)` pairs, where any nonzero exponent is
    /// expanded into a run, then reduces it.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        Word::reduce(powers.iter().flat_map(|&(var, e)| {
            let l = Letter::new(var, if e < 0 { -1 } else { 1 });
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_var(&self) -> usize {
        self.letters.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// Maximal runs as `(var, signed length)`.
    pub fn runs(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((v, m)) if *v == l.var && (*m < 0) == l.inverse => *m += i64::from(l.exp()),
                _ => out.push((l.var, i64::from(l.exp()))),
            }
        }
        out
    }

    /// True iff the word is freely reduced and no run `x_i^m` has `|m| ≥ |g_i|`.
    pub fn is_reduced_on_tuple(&self, spec: &TupleSpec) -> Result<bool, WordError> {
        if self.max_var() > spec.len() {
            return Err(WordError::VariableOutOfRange { var: self.max_var(), tuple_len: spec.len() });
        }
        if self.letters.windows(2).any(|w| w[0] == w[1].inv()) {
            return Ok(false);
        }
        Ok(self.runs().iter().all(|&(var, m)| spec.max_run(var).is_none_or(|max| m.unsigned_abs() <= max)))
    }

    /// The image of the word under `x_i ↦ tuple[i-1]`, multiplied left to right.
    pub fn evaluate<G: GroupOps>(&self, group: &G, tuple: &[G::Elem]) -> Result<G::Elem, WordError> {
        if self.max_var() > tuple.len() {
            return Err(WordError::VariableOutOfRange { var: self.max_var(), tuple_len: tuple.len() });
        }
        let inverses: Vec<G::Elem> = tuple.iter().map(|g| group.inv(g)).collect();
        Ok(self.letters.iter().fold(group.identity(), |acc, l| {
            let g = if l.inverse { &inverses[l.var - 1] } else { &tuple[l.var - 1] };
            group.mul(&acc, g)
        }))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.inverse {
                write!(f, "x{}^-1", l.var)?;
            } else {
                write!(f, "x{}", l.var)?;
            }
        }
        Ok(())
    }
}

/// Parses `"x1 x2^-1 x1"`; runs may be written `x1^3`. The result is freely reduced.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let mut powers = Vec::new();
        for tok in s.split_whitespace() {
            let body = tok.strip_prefix('x').ok_or_else(|| WordError::Parse(tok.to_string()))?;
            let (var, exp) = match body.split_once('^') {
                Some((v, e)) => (v, e.parse::<i64>().map_err(|_| WordError::Parse(tok.to_string()))?),
                None => (body, 1),
            };
            let var: usize = var.parse().map_err(|_| WordError::Parse(tok.to_string()))?;
            if var == 0 || exp == 0 {
                return Err(WordError::Parse(tok.to_string()));
            }
            powers.push((var, exp));
        }
        Ok(Word::from_powers(&powers))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use crate::words::PermOps;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        let raw = [Letter::new(1, 1), Letter::new(1, -1), Letter::new(2, 1)];
        assert_eq!(Word::reduce(raw), w("x2"));
        assert_eq!(Word::reduce([]), Word::empty());
        let raw = [Letter::new(1, 1), Letter::new(2, 1), Letter::new(2, -1), Letter::new(1, 1)];
        let r = Word::reduce(raw);
        assert_eq!(r.len(), 2);
        assert_eq!(r.to_string(), "x1 x1");
        assert_eq!(r.runs(), vec![(1, 2)]);
    }

    #[test]
    fn reduced_on_tuple_examples() {
        let two = TupleSpec { orders: vec![2] };
        assert!(!w("x1^2").is_reduced_on_tuple(&two).unwrap());
        assert!(w("x1 x2 x1").is_reduced_on_tuple(&TupleSpec { orders: vec![2, 0] }).unwrap());
        assert!(w("x1^3").is_reduced_on_tuple(&TupleSpec::all_infinite(1)).unwrap());
        assert_eq!(
            w("x2").is_reduced_on_tuple(&two),
            Err(WordError::VariableOutOfRange { var: 2, tuple_len: 1 })
        );
    }

    #[test]
    fn evaluate_examples() {
        let ops = PermOps { degree: 3 };
        let a = Perm::parse_with_degree("(0 1)", 3).unwrap();
        let b = Perm::parse_with_degree("(1 2)", 3).unwrap();
        let tuple = [a.clone(), b.clone()];
        assert!(w("x1 x1^-1").evaluate(&ops, &tuple).unwrap().is_identity());
        assert_eq!(w("x1 x2").evaluate(&ops, &tuple).unwrap(), a.compose(&b));
        assert!(w("x3").evaluate(&ops, &tuple).is_err());
    }

    #[test]
    fn parse_display() {
        assert_eq!(w("x1 x2^-1 x1").to_string(), "x1 x2^-1 x1");
        assert_eq!(w("x1^-2").to_string(), "x1^-1 x1^-1");
        assert!("y1".parse::<Word>().is_err());
        assert!("x0".parse::<Word>().is_err());
    }
}
