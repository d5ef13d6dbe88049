use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::addr::{ball, Addr};
use super::atom::{Atom, Portrait};
use super::element::TreeAut;
use super::TreeError;
use crate::perm::Perm;

/// A type `(n, 𝒫)`: `𝒫` partitions `{1..d}` when `n = 1` and `{1..d−1}` when `n > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeSpec {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl TypeSpec {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        TypeSpec { n, blocks }
    }

    /// Consecutive blocks with the given sizes, e.g. `[2, 1]` gives `{1,2},{3}`.
    pub fn from_shape(n: usize, shape: &[usize]) -> Self {
        let mut next = 1;
        let blocks = shape
            .iter()
            .map(|&k| {
                let b: Vec<usize> = (next..next + k).collect();
                next += k;
                b
            })
            .collect();
        TypeSpec { n, blocks }
    }

    /// Parses `"{1,2},{3}"`, `"12|3"` or `"1 2|3"`.
    pub fn parse(n: usize, s: &str) -> Result<Self, TreeError> {
        let bad = || TreeError::InvalidPartition(s.into());
        let s = s.trim();
        let parts: Vec<&str> = if s.contains('{') {
            s.split('}').map(|p| p.trim_matches(|c: char| c == ',' || c == '{' || c.is_whitespace())).filter(|p| !p.is_empty()).collect()
        } else {
            s.split('|').collect()
        };
        let mut blocks = Vec::new();
        for p in parts {
            let block: Vec<usize> = if p.contains(',') || p.contains(' ') {
                p.split([',', ' ']).filter(|t| !t.is_empty()).map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
            } else {
                p.chars().map(|c| c.to_digit(10).map(|x| x as usize).ok_or_else(bad)).collect::<Result<_, _>>()?
            };
            blocks.push(block);
        }
        Ok(TypeSpec { n, blocks })
    }

    /// Size of the partitioned set.
    pub fn base_size(&self, d: usize) -> usize {
        if self.n == 1 { d } else { d - 1 }
    }

    /// Some block has more than one element.
    pub fn is_nontrivial(&self) -> bool {
        self.blocks.iter().any(|b| b.len() > 1)
    }

    /// Block sizes in decreasing order.
    pub fn shape(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    pub fn validate(&self, d: usize) -> Result<(), TreeError> {
        let bad = |why: &str| Err(TreeError::InvalidPartition(format!("{self}: {why}")));
        if self.n == 0 {
            return bad("n must be at least 1");
        }
        let m = self.base_size(d);
        let mut seen = vec![false; m + 1];
        for &x in self.blocks.iter().flatten() {
            if x == 0 || x > m || std::mem::replace(&mut seen[x], true) {
                return bad(&format!("not a partition of {{1..{m}}}"));
            }
        }
        if seen[1..].iter().any(|s| !s) || self.blocks.iter().any(Vec::is_empty) {
            return bad(&format!("not a partition of {{1..{m}}}"));
        }
        if !self.is_nontrivial() {
            return bad("trivial partition");
        }
        Ok(())
    }

    /// The product of ascending block cycles, on points `0..base_size`.
    pub fn permutation(&self, d: usize) -> Result<Perm, TreeError> {
        self.validate(d)?;
        let cycles: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut b: Vec<usize> = b.iter().map(|x| x - 1).collect();
                b.sort_unstable();
                b
            })
            .collect();
        Ok(Perm::from_cycles(self.base_size(d), &cycles)?)
    }

    /// One spec per non-trivial shape at level `n`, in decreasing lexicographic shape order.
    pub fn all_shapes(n: usize, d: usize) -> Vec<TypeSpec> {
        let m = if n == 1 { d } else { d - 1 };
        crate::perm::partitions_of(m).into_iter().filter(|p| p[0] > 1).map(|p| TypeSpec::from_shape(n, &p)).collect()
    }
}

impl fmt::Display for TypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, ", self.n)?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            let items: Vec<String> = b.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        f.write_str(")")
    }
}

fn transposition(d: usize) -> Perm {
    Perm::from_cycles(d, &[vec![0, 1]]).expect("d ≥ 2")
}

/// The color-preserving automorphism `w ↦ v·w` taking `v₀` to `v`.
pub fn translation_to(v: &Addr, d: usize) -> TreeAut {
    TreeAut::from_atom(Atom::Affine { p: v.clone(), tau: Perm::identity(d) })
}

/// `t_v ∘ g ∘ t_v⁻¹`: moves an element about `v₀` to one about `v`.
pub fn about(v: &Addr, g: &TreeAut) -> TreeAut {
    if v.is_root() {
        return g.clone();
    }
    g.conj(&translation_to(v, g.d()))
}

/// Translation of length 1 along the axis `…, 2, e, 1, 12, 121, …`: `w ↦ 1·τ(w)`, `τ = (1 2)`.
pub fn make_hyperbolic_translation(d: usize) -> TreeAut {
    TreeAut::from_atom(Atom::Affine { p: Addr::reduce([1]), tau: transposition(d) })
}

/// The color-preserving flip of the edge `(v₀, 1)`.
pub fn make_edge_flip(d: usize) -> TreeAut {
    translation_to(&Addr::reduce([1]), d)
}

/// The odometer about `v`, transitive on every sphere `S(v, n)`.
pub fn make_spherically_transitive(v: &Addr, d: usize) -> TreeAut {
    about(v, &TreeAut::from_atom(Atom::Odometer { d }))
}

/// The canonical element of type `(n, 𝒫)` about `v`; `u ∈ S(v, n−1)` is the witness when
/// `n > 1` and must be omitted when `n = 1`.
pub fn make_type_np(v: &Addr, spec: &TypeSpec, u: Option<&Addr>, d: usize) -> Result<TreeAut, TreeError> {
    let perm = spec.permutation(d)?;
    let portrait = match (spec.n, u) {
        (1, None) => Portrait::new(perm, BTreeMap::new())?,
        (1, Some(_)) => return Err(TreeError::InvalidPartition("type (1, 𝒫) takes no witness".into())),
        (n, Some(u)) => {
            if v.dist(u) != n - 1 {
                return Err(TreeError::InvalidPartition(format!("witness {u} is not on S({v}, {})", n - 1)));
            }
            let rel = v.inverse().times(u);
            Portrait::new(Perm::identity(d), BTreeMap::from([(rel, perm)]))?
        }
        (_, None) => return Err(TreeError::InvalidPartition("type (n, 𝒫) with n > 1 needs a witness".into())),
    };
    Ok(about(v, &TreeAut::from_atom(Atom::Portrait(portrait))))
}

/// The first vertex of `S(v, n)` along the colors `1, 2, 1, 2, …`.
pub fn default_witness(v: &Addr, n: usize) -> Addr {
    v.times(&Addr::reduce((0..n).map(|k| if k % 2 == 0 { 1 } else { 2 })))
}

fn random_perm(rng: &mut impl Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::from_images(images).expect("shuffled identity")
}

/// A random element fixing `v`: uniform local permutations at `v` and at every vertex of
/// `B(v, radius − 1)`, rigid beyond.
pub fn random_stabilizer_element(rng: &mut impl Rng, d: usize, v: &Addr, radius: usize) -> TreeAut {
    let root = random_perm(rng, d);
    let mut rho = BTreeMap::new();
    for w in ball(d, radius.saturating_sub(1)).into_iter().skip(1) {
        rho.insert(w, random_perm(rng, d - 1));
    }
    let p = Portrait::new(root, rho).expect("valid portrait");
    about(v, &TreeAut::from_atom(Atom::Portrait(p)))
}

/// `w ↦ p·τ(k(w))` with `|p| ≤ shift`, `τ` a random color permutation and `k` a random
/// stabilizer element of `v₀` of the given radius.
pub fn random_automorphism(rng: &mut impl Rng, d: usize, shift: usize, radius: usize) -> TreeAut {
    let len = rng.gen_range(0..=shift);
    let mut colors: Vec<u8> = Vec::with_capacity(len);
    while colors.len() < len {
        let c = rng.gen_range(1..=d as u8);
        if colors.last() != Some(&c) {
            colors.push(c);
        }
    }
    let affine = TreeAut::from_atom(Atom::Affine { p: Addr::reduce(colors), tau: random_perm(rng, d) });
    affine.product(&random_stabilizer_element(rng, d, &Addr::root(), radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treeaut::addr::sphere;

    fn a(s: &str) -> Addr {
        Addr::parse(s, 3).unwrap()
    }

    #[test]
    fn spec_parsing_and_validation() {
        let s = TypeSpec::parse(1, "{1,2},{3}").unwrap();
        assert_eq!(s.blocks, vec![vec![1, 2], vec![3]]);
        assert_eq!(TypeSpec::parse(1, "12|3").unwrap(), s);
        assert!(s.validate(3).is_ok());
        assert!(matches!(TypeSpec::parse(1, "1|2|3").unwrap().validate(3), Err(TreeError::InvalidPartition(_))));
        assert!(TypeSpec::parse(2, "12|3").unwrap().validate(3).is_err());
        assert_eq!(TypeSpec::all_shapes(1, 4).len(), 4);
        assert_eq!(TypeSpec::all_shapes(2, 3), vec![TypeSpec::new(2, vec![vec![1, 2]])]);
    }

    #[test]
    fn translation_moves_along_its_axis() {
        let h = make_hyperbolic_translation(3);
        let axis = ["2", "e", "1", "12", "121"];
        for w in axis.windows(2) {
            assert_eq!(h.image(&a(w[0])).unwrap(), a(w[1]));
        }
    }

    #[test]
    fn odometer_is_transitive_on_small_spheres() {
        let s = make_spherically_transitive(&Addr::root(), 3);
        for n in 1..=5 {
            let sph = sphere(3, n);
            let mut w = sph[0].clone();
            let mut count = 0;
            loop {
                w = s.image(&w).unwrap();
                count += 1;
                if w == sph[0] {
                    break;
                }
            }
            assert_eq!(count, sph.len());
        }
    }

    #[test]
    fn type_element_moves_only_the_witness_children() {
        let v = a("1");
        let u = a("13");
        let g = make_type_np(&v, &TypeSpec::new(2, vec![vec![1, 2]]), Some(&u), 3).unwrap();
        for w in ball(3, 4) {
            let moved = g.image(&w).unwrap() != w;
            let below_u = u.is_prefix_of(&w) && w.len() > u.len();
            assert_eq!(moved, below_u, "{w}");
        }
    }

    #[test]
    fn random_elements_are_bijective() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let g = random_automorphism(&mut rng, 3, 2, 3);
            for w in ball(3, 4) {
                assert_eq!(g.preimage(&g.image(&w).unwrap()).unwrap(), w);
            }
        }
    }
}
