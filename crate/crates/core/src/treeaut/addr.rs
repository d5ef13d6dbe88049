use std::borrow::Borrow;
use std::fmt;

use crate::perm::Perm;

use super::TreeError;

/// A vertex of the `d`-regular tree: the colors of the non-backtracking path from the base
/// vertex `v₀`. Consecutive colors differ.
///
/// Addresses double as elements of the free product of `d` copies of `ℤ/2` (one involution
/// per color); the color-preserving automorphisms are exactly left multiplications.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Addr(Vec<u8>);

impl Addr {
    pub fn root() -> Self {
        Addr(Vec::new())
    }

    /// Reduces an arbitrary color sequence (adjacent equal colors cancel).
    pub fn reduce(colors: impl IntoIterator<Item = u8>) -> Self {
        let mut out = Addr::root();
        for c in colors {
            out.step_mut(c);
        }
        out
    }

    /// Parses a digit string such as `"121"`; `""` and `"e"` denote `v₀`.
    pub fn parse(s: &str, d: usize) -> Result<Self, TreeError> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Addr::root());
        }
        let mut colors = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let c = ch.to_digit(10).filter(|&c| c >= 1 && c as usize <= d).ok_or_else(|| TreeError::InvalidAddress(s.into()))?;
            if colors.last() == Some(&(c as u8)) {
                return Err(TreeError::InvalidAddress(s.into()));
            }
            colors.push(c as u8);
        }
        Ok(Addr(colors))
    }

    pub fn colors(&self) -> &[u8] {
        &self.0
    }

    /// Distance from `v₀`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// Color of the edge towards `v₀`.
    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn parent(&self) -> Option<Addr> {
        (!self.is_root()).then(|| Addr(self.0[..self.0.len() - 1].to_vec()))
    }

    pub fn prefix(&self, len: usize) -> Addr {
        Addr(self.0[..len].to_vec())
    }

    fn step_mut(&mut self, c: u8) {
        if self.0.last() == Some(&c) {
            self.0.pop();
        } else {
            self.0.push(c);
        }
    }

    /// The neighbor across the edge of color `c`.
    pub fn step(&self, c: u8) -> Addr {
        let mut a = self.clone();
        a.step_mut(c);
        a
    }

    /// Neighbors away from `v₀`, in color order.
    pub fn children(&self, d: usize) -> impl Iterator<Item = Addr> + '_ {
        (1..=d as u8).filter(move |&c| Some(c) != self.last()).map(move |c| {
            let mut v = self.0.clone();
            v.push(c);
            Addr(v)
        })
    }

    /// All `d` neighbors, ordered by edge color.
    pub fn neighbors(&self, d: usize) -> Vec<Addr> {
        (1..=d as u8).map(|c| self.step(c)).collect()
    }

    fn common_prefix(&self, other: &Addr) -> usize {
        self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count()
    }

    pub fn dist(&self, other: &Addr) -> usize {
        self.len() + other.len() - 2 * self.common_prefix(other)
    }

    /// The neighbor of `self` on the geodesic to `target` (`None` if they coincide).
    pub fn toward(&self, target: &Addr) -> Option<Addr> {
        let k = self.common_prefix(target);
        if k < self.len() {
            self.parent()
        } else if k < target.len() {
            Some(target.prefix(k + 1))
        } else {
            None
        }
    }

    /// The geodesic from `self` to `target`, both ends included.
    pub fn geodesic(&self, target: &Addr) -> Vec<Addr> {
        let mut path = vec![self.clone()];
        let mut cur = self.clone();
        while let Some(next) = cur.toward(target) {
            path.push(next.clone());
            cur = next;
        }
        path
    }

    /// Product in the free product of involutions: the vertex reached from `self` by following
    /// the colors of `other`.
    pub fn times(&self, other: &Addr) -> Addr {
        let mut out = self.clone();
        for &c in &other.0 {
            out.step_mut(c);
        }
        out
    }

    pub fn inverse(&self) -> Addr {
        Addr(self.0.iter().rev().copied().collect())
    }

    /// Applies a color permutation letterwise (colors `1..=d` are points `0..d`).
    pub fn relabel(&self, tau: &Perm) -> Addr {
        Addr(self.0.iter().map(|&c| tau.apply(c as usize - 1) as u8 + 1).collect())
    }

    pub fn is_prefix_of(&self, other: &Addr) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl Borrow<[u8]> for Addr {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for Addr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Addr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Addr({self})")
    }
}

/// `|S(v, n)| = d(d−1)^{n−1}` for `n ≥ 1`.
pub fn sphere_size(d: usize, n: usize) -> usize {
    if n == 0 { 1 } else { d * (d - 1).pow(n as u32 - 1) }
}

/// Vertices of `S(v₀, n)` in lexicographic order.
pub fn sphere(d: usize, n: usize) -> Vec<Addr> {
    let mut level = vec![Addr::root()];
    for _ in 0..n {
        level = level.iter().flat_map(|a| a.children(d).collect::<Vec<_>>()).collect();
    }
    level
}

/// Vertices of `B(v₀, r)` ordered by distance, then lexicographically.
pub fn ball(d: usize, r: usize) -> Vec<Addr> {
    (0..=r).flat_map(|n| sphere(d, n)).collect()
}

/// `S(center, n)`, as the image of `S(v₀, n)` under the color-preserving map `v₀ ↦ center`.
pub fn sphere_about(center: &Addr, d: usize, n: usize) -> Vec<Addr> {
    sphere(d, n).iter().map(|w| center.times(w)).collect()
}

pub fn ball_about(center: &Addr, d: usize, r: usize) -> Vec<Addr> {
    ball(d, r).iter().map(|w| center.times(w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Addr {
        Addr::parse(s, 3).unwrap()
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(a("121").to_string(), "121");
        assert_eq!(a("").to_string(), "e");
        assert_eq!(a("e"), Addr::root());
        assert!(Addr::parse("11", 3).is_err());
        assert!(Addr::parse("14", 3).is_err());
    }

    #[test]
    fn sphere_sizes() {
        for n in 0..=6 {
            assert_eq!(sphere(3, n).len(), sphere_size(3, n));
            assert_eq!(sphere(4, n).len(), sphere_size(4, n));
        }
        assert_eq!(ball(3, 6).len(), 190);
        assert_eq!(ball(3, 4).len(), 46);
    }

    #[test]
    fn distances_and_geodesics() {
        assert_eq!(a("12").dist(&a("13")), 2);
        assert_eq!(a("121").dist(&a("23")), 5);
        assert_eq!(a("12").geodesic(&a("3")), vec![a("12"), a("1"), a(""), a("3")]);
        assert_eq!(a("1").toward(&a("1")), None);
    }

    #[test]
    fn free_product_structure() {
        assert_eq!(a("12").times(&a("21")), Addr::root());
        assert_eq!(a("12").times(&a("23")), a("13"));
        assert_eq!(a("123").inverse(), a("321"));
        assert_eq!(a("123").times(&a("123").inverse()), Addr::root());
        for w in ball(3, 3) {
            for x in ball(3, 2) {
                // left multiplication is an isometry
                assert_eq!(a("21").times(&w).dist(&a("21").times(&x)), w.dist(&x));
            }
        }
    }
}
