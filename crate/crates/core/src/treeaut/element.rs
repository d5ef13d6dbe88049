use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::addr::{ball, ball_about, Addr};
use super::atom::{parse_pairs, Atom, Table};
use super::TreeError;
use crate::perm::Perm;
use crate::words::GroupOps;

/// Default radius of the working ball `B(v₀, 6)`.
pub const WORKING_DEPTH: usize = 6;

/// An automorphism of the `d`-regular tree, stored as a product of atoms with exponents.
///
/// The product is function composition: the last factor acts first. Elements built only
/// from exact atoms are defined everywhere; a truncation factor limits the element to a
/// ball whose radius is tracked by [`TreeAut::known_depth`].
#[derive(Clone, Debug)]
pub struct TreeAut {
    d: usize,
    factors: Vec<(Arc<Atom>, i64)>,
}

impl TreeAut {
    pub fn identity(d: usize) -> Self {
        TreeAut { d, factors: Vec::new() }
    }

    pub fn from_atom(atom: Atom) -> Self {
        TreeAut { d: atom.valence(), factors: vec![(Arc::new(atom), 1)] }
    }

    pub fn from_shared(atom: Arc<Atom>) -> Self {
        TreeAut { d: atom.valence(), factors: vec![(atom, 1)] }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn factors(&self) -> &[(Arc<Atom>, i64)] {
        &self.factors
    }

    /// True when every factor is defined on the whole tree.
    pub fn is_exact(&self) -> bool {
        self.factors.iter().all(|(a, _)| a.is_exact())
    }

    fn push(factors: &mut Vec<(Arc<Atom>, i64)>, atom: &Arc<Atom>, e: i64) {
        if e == 0 {
            return;
        }
        match factors.last_mut() {
            Some((last, k)) if Arc::ptr_eq(last, atom) => {
                *k += e;
                if *k == 0 {
                    factors.pop();
                }
            }
            _ => factors.push((atom.clone(), e)),
        }
    }

    pub fn image(&self, w: &Addr) -> Result<Addr, TreeError> {
        let mut cur = w.clone();
        for (atom, e) in self.factors.iter().rev() {
            for _ in 0..e.unsigned_abs() {
                cur = if *e > 0 { atom.image(&cur)? } else { atom.preimage(&cur)? };
            }
        }
        Ok(cur)
    }

    pub fn preimage(&self, w: &Addr) -> Result<Addr, TreeError> {
        let mut cur = w.clone();
        for (atom, e) in &self.factors {
            for _ in 0..e.unsigned_abs() {
                cur = if *e > 0 { atom.preimage(&cur)? } else { atom.image(&cur)? };
            }
        }
        Ok(cur)
    }

    /// Largest `R` such that the element is known on `B(v₀, R)`; `None` when exact.
    /// May be negative for an over-composed truncation.
    pub fn known_depth(&self) -> Option<i64> {
        let mut radius: Option<i64> = None;
        let mut shift = 0i64;
        for (atom, e) in self.factors.iter().rev() {
            let delta = atom.displacement() as i64;
            match atom.as_ref() {
                Atom::Table(t) => {
                    let limit = if *e > 0 { t.depth() as i64 } else { t.depth() as i64 - delta };
                    for _ in 0..e.unsigned_abs() {
                        radius = Some(radius.map_or(limit - shift, |r| r.min(limit - shift)));
                        shift += delta;
                    }
                }
                _ => shift += delta * e.abs(),
            }
        }
        radius
    }

    fn check_depth(self) -> Result<Self, TreeError> {
        match self.known_depth() {
            Some(r) if r < 0 => Err(TreeError::DepthExhausted("truncation depth exhausted by composition".into())),
            _ => Ok(self),
        }
    }

    /// `self ∘ other` without depth bookkeeping.
    pub fn product(&self, other: &TreeAut) -> TreeAut {
        debug_assert_eq!(self.d, other.d);
        let mut factors = self.factors.clone();
        for (a, e) in &other.factors {
            Self::push(&mut factors, a, *e);
        }
        TreeAut { d: self.d, factors }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &TreeAut) -> Result<TreeAut, TreeError> {
        if self.d != other.d {
            return Err(TreeError::ValenceMismatch { left: self.d, right: other.d });
        }
        self.product(other).check_depth()
    }

    pub fn inverse(&self) -> TreeAut {
        let mut factors = Vec::with_capacity(self.factors.len());
        for (a, e) in self.factors.iter().rev() {
            Self::push(&mut factors, a, -e);
        }
        TreeAut { d: self.d, factors }
    }

    pub fn pow(&self, k: i64) -> TreeAut {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        if let [(a, e)] = base.factors.as_slice() {
            let mut factors = Vec::new();
            Self::push(&mut factors, a, e * k.abs());
            return TreeAut { d: self.d, factors };
        }
        (0..k.unsigned_abs()).fold(TreeAut::identity(self.d), |acc, _| acc.product(&base))
    }

    /// `x ∘ self ∘ x⁻¹`, which fixes `x·v` whenever `self` fixes `v`.
    pub fn conj(&self, x: &TreeAut) -> TreeAut {
        x.product(self).product(&x.inverse())
    }

    /// `d(v₀, g·v₀)`.
    pub fn displacement(&self) -> Result<usize, TreeError> {
        Ok(self.image(&Addr::root())?.len())
    }

    pub fn fixes(&self, w: &Addr) -> Result<bool, TreeError> {
        Ok(&self.image(w)? == w)
    }

    /// The local permutation `σ_w`: `g(w·c) = g(w)·σ_w(c)`, colors `c` as points `c − 1`.
    pub fn local_perm(&self, w: &Addr) -> Result<Perm, TreeError> {
        let gw = self.image(w)?;
        let mut images = Vec::with_capacity(self.d);
        for c in 1..=self.d as u8 {
            let gn = self.image(&w.step(c))?;
            let c2 = (1..=self.d as u8).find(|&k| gw.step(k) == gn).ok_or_else(|| {
                TreeError::InvalidRecipe(format!("image of {w} and its neighbor are not adjacent"))
            })?;
            images.push(c2 as usize - 1);
        }
        Ok(Perm::from_images(images)?)
    }

    /// Whether `self` and `other` agree on `B(center, r)`.
    pub fn agrees_on_ball(&self, other: &TreeAut, center: &Addr, r: usize) -> Result<bool, TreeError> {
        for w in ball_about(center, self.d, r) {
            if self.image(&w)? != other.image(&w)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The truncation of `self` to `B(v₀, radius)`.
    pub fn truncate(&self, radius: usize) -> Result<TreeAut, TreeError> {
        if let Some(known) = self.known_depth() {
            if (radius as i64) > known {
                return Err(TreeError::DepthExhausted(format!("radius {radius} requested, known to {known}")));
            }
        }
        let mut images = HashMap::new();
        for w in ball(self.d, radius) {
            let img = self.image(&w)?;
            images.insert(w, img);
        }
        Ok(TreeAut::from_atom(Atom::Table(Table::new(self.d, radius, images)?)))
    }

    /// `{kind: "recipe", d, depth: null, data: {atoms, factors}}` for exact elements, else
    /// `{kind: "truncation", d, depth, data: ["w→g·w", …]}` on the known ball.
    pub fn to_json(&self) -> Result<Value, TreeError> {
        match self.known_depth() {
            None => {
                let mut atoms: Vec<&Arc<Atom>> = Vec::new();
                let mut factors = Vec::new();
                for (a, e) in &self.factors {
                    let idx = match atoms.iter().position(|b| Arc::ptr_eq(a, b)) {
                        Some(i) => i,
                        None => {
                            atoms.push(a);
                            atoms.len() - 1
                        }
                    };
                    factors.push(json!([idx, e]));
                }
                let atoms: Vec<Value> = atoms.iter().map(|a| a.to_json()).collect();
                Ok(json!({"kind": "recipe", "d": self.d, "depth": null, "data": {"atoms": atoms, "factors": factors}}))
            }
            Some(r) if r < 0 => Err(TreeError::DepthExhausted("truncation depth exhausted by composition".into())),
            Some(r) => {
                let mut data = Vec::new();
                for w in ball(self.d, r as usize) {
                    data.push(format!("{w}→{}", self.image(&w)?));
                }
                Ok(json!({"kind": "truncation", "d": self.d, "depth": r, "data": data}))
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<TreeAut, TreeError> {
        let bad = |what: &str| TreeError::Parse(format!("tree element: {what}"));
        let d = v.get("d").and_then(Value::as_u64).ok_or_else(|| bad("missing d"))? as usize;
        if !(2..=9).contains(&d) {
            return Err(TreeError::InvalidValence(d));
        }
        match v.get("kind").and_then(Value::as_str) {
            Some("recipe") => {
                let data = v.get("data").ok_or_else(|| bad("missing data"))?;
                let atoms: Vec<Arc<Atom>> = data
                    .get("atoms")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing atoms"))?
                    .iter()
                    .map(|a| Atom::from_json(d, a).map(Arc::new))
                    .collect::<Result<_, _>>()?;
                let mut out = TreeAut::identity(d);
                for f in data.get("factors").and_then(Value::as_array).ok_or_else(|| bad("missing factors"))? {
                    let idx = f.get(0).and_then(Value::as_u64).ok_or_else(|| bad("factor index"))? as usize;
                    let e = f.get(1).and_then(Value::as_i64).ok_or_else(|| bad("factor exponent"))?;
                    let atom = atoms.get(idx).ok_or_else(|| bad("factor index out of range"))?;
                    Self::push(&mut out.factors, atom, e);
                }
                out.check_depth()
            }
            Some("truncation") => {
                let depth = v.get("depth").and_then(Value::as_u64).ok_or_else(|| bad("missing depth"))? as usize;
                let items = v.get("data").and_then(Value::as_array).ok_or_else(|| bad("missing data"))?;
                Ok(TreeAut::from_atom(Atom::Table(Table::new(d, depth, parse_pairs(d, items)?)?)))
            }
            _ => Err(bad("kind must be \"recipe\" or \"truncation\"")),
        }
    }
}

/// `Aut(T)` as a [`GroupOps`] whose equality is agreement on `B(v₀, radius)`.
#[derive(Clone, Copy, Debug)]
pub struct TreeOps {
    pub d: usize,
    pub radius: usize,
}

impl GroupOps for TreeOps {
    type Elem = TreeAut;

    fn identity(&self) -> TreeAut {
        TreeAut::identity(self.d)
    }

    fn mul(&self, a: &TreeAut, b: &TreeAut) -> TreeAut {
        a.product(b)
    }

    fn inv(&self, a: &TreeAut) -> TreeAut {
        a.inverse()
    }

    fn eq(&self, a: &TreeAut, b: &TreeAut) -> bool {
        a.agrees_on_ball(b, &Addr::root(), self.radius).unwrap_or(false)
    }
}
