use std::collections::HashMap;

use serde_json::{json, Value};

use super::addr::{ball, Addr};
use super::classify::{classify, default_radius, TreeClass};
use super::element::TreeAut;
use super::TreeError;

/// The `g`-invariant root of an orbital type: a fixed vertex or a flipped edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    Vertex(Addr),
    Edge(Addr, Addr),
}

impl Center {
    fn vertices(&self) -> Vec<Addr> {
        match self {
            Center::Vertex(v) => vec![v.clone()],
            Center::Edge(a, b) => vec![a.clone(), b.clone()],
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Center::Vertex(v) => json!({"vertex": v.to_string()}),
            Center::Edge(a, b) => json!({"edge": [a.to_string(), b.to_string()]}),
        }
    }
}

/// One `⟨g⟩`-orbit in the quotient tree, with its cardinality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitNode {
    pub size: usize,
    /// False when some image left the known ball, so `size` is only a lower bound.
    pub exact: bool,
    /// The orbit lies on the outer sphere of the examined region.
    pub boundary: bool,
    pub representative: Addr,
    pub children: Vec<OrbitNode>,
}

impl OrbitNode {
    /// AHU-style canonical string; children sorted.
    pub fn canonical(&self) -> String {
        let mark = if self.exact { "" } else { "+" };
        let kids: Vec<String> = self.children.iter().map(OrbitNode::canonical).collect();
        format!("{}{mark}({})", self.size, kids.join(","))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "size": self.size,
            "exact": self.exact,
            "boundary": self.boundary,
            "representative": self.representative.to_string(),
            "children": self.children.iter().map(OrbitNode::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The marked quotient tree `⟨g⟩\B(center, radius)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitalType {
    pub center: Center,
    pub radius: usize,
    pub root: OrbitNode,
}

impl OrbitalType {
    pub fn canonical(&self) -> String {
        self.root.canonical()
    }

    /// Orbit sizes level by level, each level in decreasing order.
    pub fn marks_by_level(&self) -> Vec<Vec<usize>> {
        let mut levels: Vec<Vec<usize>> = Vec::new();
        let mut stack = vec![(&self.root, 0usize)];
        while let Some((node, k)) = stack.pop() {
            if levels.len() <= k {
                levels.resize(k + 1, Vec::new());
            }
            levels[k].push(node.size);
            stack.extend(node.children.iter().map(|c| (c, k + 1)));
        }
        for l in &mut levels {
            l.sort_unstable_by(|a, b| b.cmp(a));
        }
        levels
    }

    pub fn to_json(&self) -> Value {
        json!({"center": self.center.to_json(), "radius": self.radius, "canonical": self.canonical(), "tree": self.root.to_json()})
    }
}

/// Orbital type about an explicit invariant center.
pub fn orbital_type_about(g: &TreeAut, center: &Center, radius: usize) -> Result<OrbitalType, TreeError> {
    let d = g.d();
    let roots = center.vertices();
    let images: Vec<Addr> = roots.iter().map(|v| g.image(v)).collect::<Result<_, _>>()?;
    let invariant = match center {
        Center::Vertex(_) => images[0] == roots[0],
        Center::Edge(a, b) => a.dist(b) == 1 && images.iter().all(|x| roots.contains(x)),
    };
    if !invariant {
        return Err(TreeError::PreconditionViolated("the center is not invariant".into()));
    }
    // breadth-first layers about the center
    let mut level: HashMap<Addr, usize> = roots.iter().map(|v| (v.clone(), 0)).collect();
    let mut order = roots.clone();
    let mut frontier = roots.clone();
    for k in 1..=radius {
        let mut next = Vec::new();
        for w in &frontier {
            for x in w.neighbors(d) {
                if !level.contains_key(&x) {
                    level.insert(x.clone(), k);
                    next.push(x);
                }
            }
        }
        order.extend(next.iter().cloned());
        frontier = next;
    }
    let mut orbit_of: HashMap<Addr, usize> = HashMap::new();
    let mut orbits: Vec<(Addr, usize, bool)> = Vec::new();
    for w in &order {
        if orbit_of.contains_key(w) {
            continue;
        }
        let id = orbits.len();
        let mut size = 0;
        let mut exact = true;
        let mut x = w.clone();
        loop {
            orbit_of.insert(x.clone(), id);
            size += 1;
            match g.image(&x) {
                Ok(y) if &y == w => break,
                Ok(y) if level.get(&y) == Some(&level[w]) && !orbit_of.contains_key(&y) => x = y,
                _ => {
                    exact = false;
                    break;
                }
            }
        }
        orbits.push((w.clone(), size, exact));
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); orbits.len()];
    for (id, (rep, _, _)) in orbits.iter().enumerate() {
        let k = level[rep];
        if k == 0 {
            continue;
        }
        let parent = rep.neighbors(d).into_iter().find(|x| level.get(x) == Some(&(k - 1))).expect("layered");
        children[orbit_of[&parent]].push(id);
    }
    fn build(id: usize, orbits: &[(Addr, usize, bool)], children: &[Vec<usize>], level: &HashMap<Addr, usize>, r: usize) -> OrbitNode {
        let (rep, size, exact) = &orbits[id];
        let mut kids: Vec<OrbitNode> = children[id].iter().map(|&c| build(c, orbits, children, level, r)).collect();
        kids.sort_by_cached_key(OrbitNode::canonical);
        OrbitNode { size: *size, exact: *exact, boundary: level[rep] == r, representative: rep.clone(), children: kids }
    }
    let root = build(0, &orbits, &children, &level, radius);
    Ok(OrbitalType { center: center.clone(), radius, root })
}

/// Fixed vertices of `g` in `B(v₀, search)` that have a moved neighbor.
fn frontier(g: &TreeAut, search: usize) -> Result<Vec<Addr>, TreeError> {
    let mut out = Vec::new();
    for v in ball(g.d(), search) {
        if g.fixes(&v)? && v.neighbors(g.d()).iter().any(|x| !g.fixes(x).unwrap_or(false)) {
            out.push(v);
        }
    }
    Ok(out)
}

struct Canonical {
    ty: OrbitalType,
    /// Every frontier vertex found lies strictly inside the search ball.
    settled: bool,
}

fn canonical_type(g: &TreeAut, radius: usize) -> Result<Canonical, TreeError> {
    let search = default_radius(g);
    match classify(g, Some(search)) {
        TreeClass::Elliptic { fixed_vertex } => {
            let front = frontier(g, search)?;
            if front.is_empty() {
                let ty = orbital_type_about(g, &Center::Vertex(fixed_vertex), radius)?;
                return Ok(Canonical { ty, settled: true });
            }
            let settled = front.iter().all(|f| f.len() < search);
            let mut best: Option<OrbitalType> = None;
            for f in front {
                let ty = orbital_type_about(g, &Center::Vertex(f), radius)?;
                if best.as_ref().is_none_or(|b| ty.canonical() < b.canonical()) {
                    best = Some(ty);
                }
            }
            Ok(Canonical { ty: best.expect("non-empty"), settled })
        }
        TreeClass::Inversion { edge } => {
            let settled = edge.0.len().max(edge.1.len()) < search;
            Ok(Canonical { ty: orbital_type_about(g, &Center::Edge(edge.0, edge.1), radius)?, settled })
        }
        TreeClass::Hyperbolic { .. } => Err(TreeError::WrongClass("hyperbolic elements have no orbital tree".into())),
        TreeClass::Undetermined { reason } => Err(TreeError::WrongClass(format!("undetermined: {reason}"))),
    }
}

/// The orbital type of an elliptic element or inversion to `radius`.
///
/// Elliptic elements are rooted at the fixed vertex with a moved neighbor whose type has
/// the least canonical string (a conjugation-invariant choice), or at the first fixed
/// vertex when `g` is trivial near `v₀`. Inversions are rooted at the flipped edge.
pub fn orbital_type(g: &TreeAut, radius: usize) -> Result<OrbitalType, TreeError> {
    canonical_type(g, radius).map(|c| c.ty)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    ConjugateUpTo(usize),
    NotConjugate,
    Undetermined(String),
}

impl Conjugacy {
    pub fn to_json(&self) -> Value {
        match self {
            Conjugacy::ConjugateUpTo(r) => json!({"verdict": "conjugate_up_to", "radius": r}),
            Conjugacy::NotConjugate => json!({"verdict": "not_conjugate"}),
            Conjugacy::Undetermined(why) => json!({"verdict": "undetermined", "reason": why}),
        }
    }
}

/// Compares classes, then translation lengths (hyperbolic) or canonical orbital types
/// to `radius` (elliptic, inversion).
///
/// Differing orbital types give `NotConjugate` only when the canonical centers of both
/// elements were found strictly inside the search ball; otherwise `Undetermined`.
pub fn conjugacy_test(g: &TreeAut, h: &TreeAut, radius: usize) -> Conjugacy {
    let (cg, ch) = (classify(g, None), classify(h, None));
    match (&cg, &ch) {
        (TreeClass::Undetermined { reason }, _) | (_, TreeClass::Undetermined { reason }) => {
            return Conjugacy::Undetermined(reason.clone());
        }
        (TreeClass::Hyperbolic { length: a, .. }, TreeClass::Hyperbolic { length: b, .. }) => {
            return if a == b { Conjugacy::ConjugateUpTo(radius) } else { Conjugacy::NotConjugate };
        }
        _ if cg.name() != ch.name() => return Conjugacy::NotConjugate,
        _ => {}
    }
    match (canonical_type(g, radius), canonical_type(h, radius)) {
        (Ok(a), Ok(b)) => {
            if a.ty.canonical() == b.ty.canonical() {
                Conjugacy::ConjugateUpTo(radius)
            } else if a.settled && b.settled {
                Conjugacy::NotConjugate
            } else {
                Conjugacy::Undetermined("orbital types differ but a center lies on the search boundary".into())
            }
        }
        (Err(e), _) | (_, Err(e)) => Conjugacy::Undetermined(e.to_string()),
    }
}
