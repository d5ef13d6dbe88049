use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::addr::{ball, Addr};
use super::TreeError;
use crate::perm::Perm;

/// `ψ_i`: the order-preserving relabeling `{1..d}∖{i} → {1..d−1}`.
#[inline]
pub(crate) fn psi(i: u8, c: u8) -> u8 {
    debug_assert_ne!(i, c);
    if c < i { c } else { c - 1 }
}

#[inline]
pub(crate) fn psi_inv(i: u8, x: u8) -> u8 {
    if x < i { x } else { x + 1 }
}

/// A building block of tree automorphisms. Every variant except `Table` is defined on the
/// whole tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    /// `w ↦ p · τ(w)`: relabels every edge color by `τ`, then moves `v₀` to `p`.
    Affine { p: Addr, tau: Perm },
    /// Fixes `v₀`, permutes its edge colors by `root` and, at each other vertex `w`, acts
    /// on the outward colors by `ψ_j⁻¹ ρ_w ψ_i` (`i` inward color of `w`, `j` inward color of
    /// its image, `ρ_w` the identity unless listed).
    Portrait(Portrait),
    /// The odometer about `v₀`: a full `d`-cycle at the root and a `(d−1)`-cycle at one
    /// vertex per level (the carry path `d, d−1, d, …`).
    Odometer { d: usize },
    /// A finite truncation on `B(v₀, depth)`.
    Table(Table),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Portrait {
    root: Perm,
    rho: BTreeMap<Addr, Perm>,
    rho_inv: BTreeMap<Addr, Perm>,
}

impl Portrait {
    pub fn new(root: Perm, rho: BTreeMap<Addr, Perm>) -> Result<Self, TreeError> {
        let d = root.degree();
        if d < 2 {
            return Err(TreeError::InvalidValence(d));
        }
        let rho: BTreeMap<Addr, Perm> = rho.into_iter().filter(|(_, p)| !p.is_identity()).collect();
        for (w, p) in &rho {
            if w.is_root() || p.degree() != d - 1 || w.colors().iter().any(|&c| c as usize > d) {
                return Err(TreeError::InvalidRecipe(format!("local permutation {p} at {w}")));
            }
        }
        let rho_inv = rho.iter().map(|(w, p)| (w.clone(), p.inverse())).collect();
        Ok(Portrait { root, rho, rho_inv })
    }

    pub fn root(&self) -> &Perm {
        &self.root
    }

    pub fn rho(&self) -> &BTreeMap<Addr, Perm> {
        &self.rho
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    d: usize,
    depth: usize,
    forward: HashMap<Addr, Addr>,
    backward: HashMap<Addr, Addr>,
}

impl Table {
    /// Checks that `images` is defined on all of `B(v₀, depth)`, injective and
    /// adjacency-preserving.
    pub fn new(d: usize, depth: usize, images: HashMap<Addr, Addr>) -> Result<Self, TreeError> {
        let dom = ball(d, depth);
        let mut backward = HashMap::with_capacity(dom.len());
        for w in &dom {
            let img = images.get(w).ok_or_else(|| TreeError::InvalidTable(format!("no image for {w}")))?;
            if img.colors().iter().any(|&c| c as usize > d) {
                return Err(TreeError::InvalidTable(format!("image {img} is not a vertex")));
            }
            if backward.insert(img.clone(), w.clone()).is_some() {
                return Err(TreeError::InvalidTable(format!("{img} has two preimages")));
            }
            if let Some(p) = w.parent() {
                if images[&p].dist(img) != 1 {
                    return Err(TreeError::InvalidTable(format!("edge {p}–{w} is not preserved")));
                }
            }
        }
        let forward = dom.into_iter().map(|w| {
            let img = images[&w].clone();
            (w, img)
        });
        Ok(Table { d, depth, forward: forward.collect(), backward })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Pairs `(w, g·w)` in ball order.
    pub fn pairs(&self) -> Vec<(Addr, Addr)> {
        ball(self.d, self.depth).into_iter().map(|w| {
            let img = self.forward[&w].clone();
            (w, img)
        }).collect()
    }
}

impl Atom {
    pub fn valence(&self) -> usize {
        match self {
            Atom::Affine { tau, .. } => tau.degree(),
            Atom::Portrait(p) => p.root.degree(),
            Atom::Odometer { d } => *d,
            Atom::Table(t) => t.d,
        }
    }

    /// `d(v₀, a·v₀)`.
    pub fn displacement(&self) -> usize {
        match self {
            Atom::Affine { p, .. } => p.len(),
            Atom::Portrait(_) | Atom::Odometer { .. } => 0,
            Atom::Table(t) => t.forward[&Addr::root()].len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Atom::Table(_))
    }

    pub fn image(&self, w: &Addr) -> Result<Addr, TreeError> {
        match self {
            Atom::Affine { p, tau } => Ok(p.times(&w.relabel(tau))),
            Atom::Portrait(p) => Ok(walk(w, |prefix, c, j| {
                let Some(i) = prefix.last() else { return p.root.apply(c as usize - 1) as u8 + 1 };
                let x = psi(*i, c);
                let y = p.rho.get(prefix).map_or(x, |r| r.apply(x as usize - 1) as u8 + 1);
                psi_inv(j.unwrap(), y)
            })),
            Atom::Odometer { d } => Ok(walk(w, |prefix, c, j| {
                let d = *d as u8;
                let Some(i) = prefix.last() else { return c % d + 1 };
                let x = psi(*i, c);
                let y = if on_carry_path(prefix, d) { x % (d - 1) + 1 } else { x };
                psi_inv(j.unwrap(), y)
            })),
            Atom::Table(t) => t.forward.get(w).cloned().ok_or(TreeError::DepthExhausted(format!("{w} lies outside the known ball of radius {}", t.depth))),
        }
    }

    pub fn preimage(&self, t: &Addr) -> Result<Addr, TreeError> {
        match self {
            Atom::Affine { p, tau } => Ok(p.inverse().times(t).relabel(&tau.inverse())),
            Atom::Portrait(p) => Ok(unwalk(t, |orig, c, i, j| {
                let y = psi(j, c);
                let x = p.rho_inv.get(orig).map_or(y, |r| r.apply(y as usize - 1) as u8 + 1);
                psi_inv(i, x)
            }, |c| p.root.inverse().apply(c as usize - 1) as u8 + 1)),
            Atom::Odometer { d } => {
                let d = *d as u8;
                Ok(unwalk(t, |orig, c, i, j| {
                    let y = psi(j, c);
                    let x = if on_carry_path(orig, d) { (y + d - 3) % (d - 1) + 1 } else { y };
                    psi_inv(i, x)
                }, |c| (c + d - 2) % d + 1))
            }
            Atom::Table(tb) => tb.backward.get(t).cloned().ok_or(TreeError::DepthExhausted(format!("{t} has no known preimage (radius {})", tb.depth))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Atom::Affine { p, tau } => json!({"type": "affine", "p": p.to_string(), "tau": tau.to_string()}),
            Atom::Portrait(p) => {
                let rho: serde_json::Map<String, Value> = p.rho.iter().map(|(w, r)| (w.to_string(), json!(r.to_string()))).collect();
                json!({"type": "portrait", "root": p.root.to_string(), "rho": rho})
            }
            Atom::Odometer { d } => json!({"type": "odometer", "d": d}),
            Atom::Table(t) => {
                let map: Vec<String> = t.pairs().iter().map(|(a, b)| format!("{a}→{b}")).collect();
                json!({"type": "table", "depth": t.depth, "map": map})
            }
        }
    }

    pub fn from_json(d: usize, v: &Value) -> Result<Self, TreeError> {
        let bad = || TreeError::Parse(format!("atom {v}"));
        let kind = v.get("type").and_then(Value::as_str).ok_or_else(bad)?;
        let perm = |key: &str, degree: usize| -> Result<Perm, TreeError> {
            let s = v.get(key).and_then(Value::as_str).ok_or_else(bad)?;
            Ok(Perm::parse_with_degree(s, degree)?)
        };
        match kind {
            "affine" => {
                let p = Addr::parse(v.get("p").and_then(Value::as_str).ok_or_else(bad)?, d)?;
                Ok(Atom::Affine { p, tau: perm("tau", d)? })
            }
            "portrait" => {
                let mut rho = BTreeMap::new();
                if let Some(map) = v.get("rho").and_then(Value::as_object) {
                    for (w, r) in map {
                        let r = r.as_str().ok_or_else(bad)?;
                        rho.insert(Addr::parse(w, d)?, Perm::parse_with_degree(r, d - 1)?);
                    }
                }
                Ok(Atom::Portrait(Portrait::new(perm("root", d)?, rho)?))
            }
            "odometer" => Ok(Atom::Odometer { d }),
            "table" => {
                let depth = v.get("depth").and_then(Value::as_u64).ok_or_else(bad)? as usize;
                let map = v.get("map").and_then(Value::as_array).ok_or_else(bad)?;
                Ok(Atom::Table(Table::new(d, depth, parse_pairs(d, map)?)?))
            }
            _ => Err(bad()),
        }
    }
}

/// Parses `"121→212"` strings (`->` is accepted too).
pub(crate) fn parse_pairs(d: usize, items: &[Value]) -> Result<HashMap<Addr, Addr>, TreeError> {
    let mut out = HashMap::new();
    for item in items {
        let s = item.as_str().ok_or_else(|| TreeError::Parse(item.to_string()))?;
        let (a, b) = s.split_once('→').or_else(|| s.split_once("->")).ok_or_else(|| TreeError::Parse(s.into()))?;
        out.insert(Addr::parse(a, d)?, Addr::parse(b, d)?);
    }
    Ok(out)
}

fn on_carry_path(w: &[u8], d: u8) -> bool {
    w.iter().enumerate().all(|(k, &c)| c == if k % 2 == 0 { d } else { d - 1 })
}

/// Image of `w` under a root-fixing map given by its local rule
/// `sigma(prefix, color, inward color of the image of prefix)`.
fn walk(w: &Addr, sigma: impl Fn(&[u8], u8, Option<u8>) -> u8) -> Addr {
    let src = w.colors();
    let mut out: Vec<u8> = Vec::with_capacity(src.len());
    for (k, &c) in src.iter().enumerate() {
        let j = out.last().copied();
        out.push(sigma(&src[..k], c, j));
    }
    Addr::reduce(out)
}

/// Preimage under a root-fixing map: `root_inv` inverts the root permutation and
/// `local_inv(original prefix, color, i, j)` inverts the rule at a non-root vertex.
fn unwalk(
    t: &Addr,
    local_inv: impl Fn(&[u8], u8, u8, u8) -> u8,
    root_inv: impl Fn(u8) -> u8,
) -> Addr {
    let tgt = t.colors();
    let mut out: Vec<u8> = Vec::with_capacity(tgt.len());
    for (k, &c) in tgt.iter().enumerate() {
        let x = if k == 0 { root_inv(c) } else { local_inv(&out, c, out[k - 1], tgt[k - 1]) };
        out.push(x);
    }
    Addr::reduce(out)
}
