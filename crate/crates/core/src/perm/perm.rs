use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PermError;

/// A permutation of `{0, .., n-1}` stored by images: `images[i]` is the image of `i`.
///
/// Composition is right-to-left throughout the crate: `(g * h)(x) = g(h(x))`,
/// so `h` acts first. Every group action and every homomorphism in the crate
/// follows the same law.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u16).collect() }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotABijection(images.clone()));
            }
            seen[x] = true;
        }
        Ok(Perm { images: images.into_iter().map(|x| x as u16).collect() })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::PointOutOfRange { point: x, degree });
                }
                if touched[x] {
                    return Err(PermError::CyclesNotDisjoint(x));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm { images: inv }
    }

    /// `c * self * c⁻¹`, the conjugate that acts like `self` on relabelled points.
    pub fn conjugate_by(&self, c: &Perm) -> Perm {
        c.compose(self).compose(&c.inverse())
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut result = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            result = base.compose(&result);
        }
        result
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i == x as usize).count()
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted cycle lengths including fixed points; this is the conjugacy invariant in `S_n`.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.extend(std::iter::repeat_n(1, self.fixed_points()));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.cycles().iter().fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }

    /// Parses cycle notation with an explicit degree: `"(0 1)(2 3)"`, `"id"` or `"()"`.
    pub fn parse_with_degree(s: &str, degree: usize) -> Result<Perm, PermError> {
        let cycles = parse_cycles(s)?;
        Perm::from_cycles(degree, &cycles)
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let s = s.trim();
    if s == "id" || s == "()" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| PermError::Parse(s.to_string()))?;
        let close = open.find(')').ok_or_else(|| PermError::Parse(s.to_string()))?;
        let body = &open[..close];
        let cycle = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| PermError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

/// Parses cycle notation using the smallest degree that contains every point.
impl FromStr for Perm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cycles = parse_cycles(s)?;
        let degree = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        Perm::from_cycles(degree, &cycles)
    }
}

impl std::ops::Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every permutation of degree `n`, identity first, in lexicographic image order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![Perm::from_images(current.clone()).unwrap()];
    // next lexicographic permutation
    while let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) {
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(Perm::from_images(current.clone()).unwrap());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Perm::parse_with_degree("(0 1)(2 3)", 5).unwrap();
        assert_eq!(p.to_string(), "(0 1)(2 3)");
        assert_eq!(p.apply(4), 4);
        assert_eq!(Perm::parse_with_degree("id", 3).unwrap(), Perm::identity(3));
        assert_eq!("(0 2 1)".parse::<Perm>().unwrap().images(), vec![2, 0, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::parse_with_degree("(0 1)(1 2)", 3).is_err());
        assert!(Perm::parse_with_degree("(0 5)", 3).is_err());
        assert!("(0 1".parse::<Perm>().is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Perm::parse_with_degree("(0 1)", 3).unwrap();
        let b = Perm::parse_with_degree("(1 2)", 3).unwrap();
        // (a ∘ b)(1) = a(b(1)) = a(2) = 2
        assert_eq!((&a * &b).apply(1), 2);
        assert_eq!((&a * &b).apply(2), 0);
    }

    #[test]
    fn cycle_type_and_order() {
        let p = Perm::parse_with_degree("(0 1 2)(3 4)", 6).unwrap();
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
    }

    #[test]
    fn enumerates_symmetric_group() {
        let all = all_perms(4);
        assert_eq!(all.len(), 24);
        assert!(all[0].is_identity());
        let mut sorted = all.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
    }
}
