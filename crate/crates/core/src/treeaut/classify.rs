use serde_json::{json, Value};

use super::addr::{ball, Addr};
use super::element::{TreeAut, WORKING_DEPTH};

/// Elliptic / inversion / hyperbolic, as far as `B(v₀, R)` can tell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeClass {
    Elliptic { fixed_vertex: Addr },
    Inversion { edge: (Addr, Addr) },
    /// `axis_segment` is ordered in the direction of translation.
    Hyperbolic { length: usize, axis_segment: Vec<Addr> },
    Undetermined { reason: String },
}

impl TreeClass {
    pub fn name(&self) -> &'static str {
        match self {
            TreeClass::Elliptic { .. } => "elliptic",
            TreeClass::Inversion { .. } => "inversion",
            TreeClass::Hyperbolic { .. } => "hyperbolic",
            TreeClass::Undetermined { .. } => "undetermined",
        }
    }

    pub fn is_determined(&self) -> bool {
        !matches!(self, TreeClass::Undetermined { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            TreeClass::Elliptic { fixed_vertex } => json!({"class": "elliptic", "fixed_vertex": fixed_vertex.to_string()}),
            TreeClass::Inversion { edge } => json!({"class": "inversion", "edge": [edge.0.to_string(), edge.1.to_string()]}),
            TreeClass::Hyperbolic { length, axis_segment } => json!({
                "class": "hyperbolic",
                "length": length,
                "axis_segment": axis_segment.iter().map(Addr::to_string).collect::<Vec<_>>(),
            }),
            TreeClass::Undetermined { reason } => json!({"class": "undetermined", "reason": reason}),
        }
    }
}

/// Default radius: the known depth of a truncation, else [`WORKING_DEPTH`].
pub(crate) fn default_radius(g: &TreeAut) -> usize {
    g.known_depth().map_or(WORKING_DEPTH, |r| r.max(0) as usize)
}

/// Classifies `g` from its displacement profile on `B(v₀, radius)`.
///
/// A fixed vertex gives `Elliptic`; an edge `(w, g·w)` with `g²·w = w` gives `Inversion`;
/// vertices with `d(w, g²w) = 2 d(w, gw) > 0` lie on the axis of a hyperbolic `g` and give
/// `Hyperbolic`. Vertices whose images fall outside the known ball are skipped.
pub fn classify(g: &TreeAut, radius: Option<usize>) -> TreeClass {
    let r = radius.unwrap_or_else(|| default_radius(g));
    let vertices = ball(g.d(), r);
    let mut moved: Vec<(Addr, Addr)> = Vec::with_capacity(vertices.len());
    for w in vertices {
        let Ok(gw) = g.image(&w) else { continue };
        if gw == w {
            return TreeClass::Elliptic { fixed_vertex: w };
        }
        moved.push((w, gw));
    }
    if moved.is_empty() {
        return TreeClass::Undetermined { reason: format!("no vertex of B(v₀, {r}) has a known image") };
    }
    let mut axis: Vec<(Addr, usize)> = Vec::new();
    for (w, gw) in &moved {
        let Ok(g2w) = g.image(gw) else { continue };
        let delta = w.dist(gw);
        if delta == 1 && &g2w == w {
            return TreeClass::Inversion { edge: (w.clone(), gw.clone()) };
        }
        if w.dist(&g2w) == 2 * delta {
            axis.push((w.clone(), delta));
        }
    }
    let Some(&(_, length)) = axis.first() else {
        return TreeClass::Undetermined { reason: format!("no fixed vertex, flipped edge or axis vertex within B(v₀, {r})") };
    };
    if axis.iter().any(|(_, l)| *l != length) {
        return TreeClass::Undetermined { reason: "inconsistent translation lengths".into() };
    }
    let points: Vec<Addr> = axis.into_iter().map(|(w, _)| w).collect();
    let far = |from: &Addr| points.iter().max_by_key(|p| p.dist(from)).cloned().unwrap();
    let b = far(&points[0]);
    let a = far(&b);
    let segment = a.geodesic(&b);
    if segment.len() != points.len() || segment.iter().any(|p| !points.contains(p)) {
        return TreeClass::Undetermined { reason: "axis vertices do not form a geodesic".into() };
    }
    let forward = g.image(&a).map(|ga| ga.dist(&b) < a.dist(&b)).unwrap_or(true);
    let axis_segment = if forward || segment.len() == 1 { segment } else { segment.into_iter().rev().collect() };
    TreeClass::Hyperbolic { length, axis_segment }
}

/// `|g|`: the translation length of a hyperbolic element, `0` for an elliptic one, `None`
/// for inversions and undetermined cases.
pub fn translation_length(g: &TreeAut, radius: Option<usize>) -> Option<usize> {
    match classify(g, radius) {
        TreeClass::Hyperbolic { length, .. } => Some(length),
        TreeClass::Elliptic { .. } => Some(0),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treeaut::construct::{make_edge_flip, make_hyperbolic_translation, make_spherically_transitive};

    fn a(s: &str) -> Addr {
        Addr::parse(s, 3).unwrap()
    }

    #[test]
    fn basic_classes() {
        assert_eq!(classify(&TreeAut::identity(3), None), TreeClass::Elliptic { fixed_vertex: Addr::root() });
        assert_eq!(classify(&make_edge_flip(3), None), TreeClass::Inversion { edge: (Addr::root(), a("1")) });
        let s = make_spherically_transitive(&a("12"), 3);
        assert_eq!(classify(&s, None), TreeClass::Elliptic { fixed_vertex: a("12") });
    }

    #[test]
    fn translation_axis_is_ordered() {
        let h = make_hyperbolic_translation(3);
        match classify(&h, Some(3)) {
            TreeClass::Hyperbolic { length, axis_segment } => {
                assert_eq!(length, 1);
                let names: Vec<String> = axis_segment.iter().map(Addr::to_string).collect();
                assert_eq!(names, ["212", "21", "2", "e", "1", "12", "121"]);
            }
            c => panic!("{c:?}"),
        }
        match classify(&h.inverse(), Some(3)) {
            TreeClass::Hyperbolic { length: 1, axis_segment } => assert_eq!(axis_segment[0], a("121")),
            c => panic!("{c:?}"),
        }
        for k in 1..=4 {
            assert_eq!(translation_length(&h.pow(k), None), Some(k as usize));
        }
    }
}
