use std::collections::HashSet;

use super::addr::{ball, ball_about, sphere_about, sphere_size, Addr};
use super::atom::psi;
use super::classify::{classify, TreeClass};
use super::element::TreeAut;
use super::TreeError;
use crate::perm::Perm;

/// `φ_{v,1}`: the permutation of the edge colors at `v` induced by `g ∈ Stab(v)`.
pub fn phi_v1(g: &TreeAut, v: &Addr) -> Result<Perm, TreeError> {
    if !g.fixes(v)? {
        return Err(TreeError::NotInStabilizer(format!("g does not fix {v}")));
    }
    g.local_perm(v)
}

fn inward_color(u: &Addr, v: &Addr, d: usize) -> u8 {
    let toward = u.toward(v).expect("u ≠ v");
    (1..=d as u8).find(|&c| u.step(c) == toward).expect("neighbor")
}

fn check_ball_fixed(g: &TreeAut, v: &Addr, r: usize) -> Result<(), TreeError> {
    for w in ball_about(v, g.d(), r) {
        if !g.fixes(&w)? {
            return Err(TreeError::NotInBallStabilizer(format!("g moves {w} in B({v}, {r})")));
        }
    }
    Ok(())
}

/// The action at `u` on its outward colors, read through `ψ_i` (`i` the inward color).
fn outward_perm(g: &TreeAut, u: &Addr, v: &Addr) -> Result<Perm, TreeError> {
    let d = g.d();
    let i = inward_color(u, v, d);
    let sigma = g.local_perm(u)?;
    let images = (1..=d as u8)
        .filter(|&c| c != i)
        .map(|c| psi(i, sigma.apply(c as usize - 1) as u8 + 1) as usize - 1)
        .collect();
    Ok(Perm::from_images(images)?)
}

/// `φ_{v,n,u}` for `n ≥ 2`: the permutation of the `d − 1` outward colors at `u ∈ S(v, n−1)`,
/// relabeled by `ψ_i`, for `g` fixing `B(v, n−1)` pointwise.
pub fn phi_vnu(g: &TreeAut, v: &Addr, n: usize, u: &Addr) -> Result<Perm, TreeError> {
    if n < 2 {
        return Err(TreeError::PreconditionViolated("φ_{v,n,u} needs n ≥ 2".into()));
    }
    if v.dist(u) != n - 1 {
        return Err(TreeError::PreconditionViolated(format!("{u} is not on S({v}, {})", n - 1)));
    }
    check_ball_fixed(g, v, n - 1)?;
    outward_perm(g, u, v)
}

/// `φ_{v,n}`: `φ_{v,n,u}` for every `u ∈ S(v, n−1)`, in sphere order.
pub fn phi_vn(g: &TreeAut, v: &Addr, n: usize) -> Result<Vec<(Addr, Perm)>, TreeError> {
    if n < 2 {
        return Err(TreeError::PreconditionViolated("φ_{v,n} needs n ≥ 2".into()));
    }
    check_ball_fixed(g, v, n - 1)?;
    sphere_about(v, g.d(), n - 1).into_iter().map(|u| outward_perm(g, &u, v).map(|p| (u, p))).collect()
}

/// Orbit sizes of `⟨s⟩` on `S(v, n)` for `n = 1..=r`, each list in decreasing order.
pub fn sphere_orbit_sizes(s: &TreeAut, v: &Addr, r: usize) -> Result<Vec<Vec<usize>>, TreeError> {
    if !s.fixes(v)? {
        return Err(TreeError::NotInStabilizer(format!("s does not fix {v}")));
    }
    let mut out = Vec::with_capacity(r);
    for n in 1..=r {
        let mut seen = HashSet::new();
        let mut sizes = Vec::new();
        for w in sphere_about(v, s.d(), n) {
            if seen.contains(&w) {
                continue;
            }
            let mut size = 0;
            let mut x = w.clone();
            loop {
                seen.insert(x.clone());
                size += 1;
                x = s.image(&x)?;
                if x == w {
                    break;
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        out.push(sizes);
    }
    Ok(out)
}

/// Whether `s` fixes `v` and `⟨s⟩` is transitive on `S(v, n)` for `1 ≤ n ≤ r`.
pub fn verify_spherical_transitivity(s: &TreeAut, v: &Addr, r: usize) -> bool {
    if r == 0 {
        return false;
    }
    match sphere_orbit_sizes(s, v, r) {
        Ok(levels) => levels.iter().enumerate().all(|(k, sizes)| sizes == &[sphere_size(s.d(), k + 1)]),
        Err(_) => false,
    }
}

/// `ℋ`: hyperbolic elements, with their translation length.
pub fn in_family_h(g: &TreeAut, radius: usize) -> Option<usize> {
    match classify(g, Some(radius)) {
        TreeClass::Hyperbolic { length, .. } => Some(length),
        _ => None,
    }
}

/// `𝒯s`: the vertex about which `g` is spherically transitive (checked to depth `depth`).
pub fn in_family_ts(g: &TreeAut, radius: usize, depth: usize) -> Option<Addr> {
    match classify(g, Some(radius)) {
        TreeClass::Elliptic { fixed_vertex } if verify_spherical_transitivity(g, &fixed_vertex, depth) => Some(fixed_vertex),
        _ => None,
    }
}

fn orbit_shape(g: &TreeAut, points: &[Addr]) -> Result<Vec<usize>, TreeError> {
    let mut seen = HashSet::new();
    let mut sizes = Vec::new();
    for p in points {
        if seen.contains(p) {
            continue;
        }
        let mut size = 0;
        let mut x = p.clone();
        loop {
            if !points.contains(&x) {
                return Err(TreeError::PreconditionViolated("point set is not invariant".into()));
            }
            seen.insert(x.clone());
            size += 1;
            x = g.image(&x)?;
            if &x == p {
                break;
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sizes)
}

/// `𝒫₁`, read literally: a vertex `v ∈ B(v₀, radius)` fixed by `g` whose neighbors are
/// permuted non-trivially, with the orbit shape on them.
pub fn in_family_p1(g: &TreeAut, radius: usize) -> Option<(Addr, Vec<usize>)> {
    for v in ball(g.d(), radius) {
        if g.fixes(&v).ok()? {
            let shape = orbit_shape(g, &v.neighbors(g.d())).ok()?;
            if shape[0] > 1 {
                return Some((v, shape));
            }
        }
    }
    None
}

/// `𝒫_n` (`n ≥ 2`), read literally: `v ∈ B(v₀, radius)` and `u ∈ S(v, n−1)` such that `g`
/// fixes `B(v, n)` except the outward neighbors of `u`, which it permutes non-trivially.
pub fn in_family_pn(g: &TreeAut, n: usize, radius: usize) -> Option<(Addr, Addr, Vec<usize>)> {
    if n < 2 {
        return None;
    }
    let d = g.d();
    'centers: for v in ball(d, radius) {
        if check_ball_fixed(g, &v, n - 1).is_err() {
            continue;
        }
        let mut witness = None;
        for u in sphere_about(&v, d, n - 1) {
            let outward: Vec<Addr> = u.neighbors(d).into_iter().filter(|x| x.dist(&v) == n).collect();
            let moved = outward.iter().any(|x| !g.fixes(x).unwrap_or(false));
            if moved {
                if witness.is_some() {
                    continue 'centers;
                }
                witness = Some((u, orbit_shape(g, &outward).ok()?));
            }
        }
        if let Some((u, shape)) = witness {
            return Some((v, u, shape));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treeaut::construct::{make_spherically_transitive, make_type_np, TypeSpec};

    fn a(s: &str) -> Addr {
        Addr::parse(s, 3).unwrap()
    }

    #[test]
    fn phi_v1_of_type_elements() {
        let g = make_type_np(&a("2"), &TypeSpec::parse(1, "12|3").unwrap(), None, 3).unwrap();
        assert_eq!(phi_v1(&g, &a("2")).unwrap().cycle_type(), vec![2, 1]);
        assert!(matches!(phi_v1(&g, &a("21")), Err(TreeError::NotInStabilizer(_))));
        assert!(phi_v1(&TreeAut::identity(3), &a("1")).unwrap().is_identity());
    }

    #[test]
    fn phi_vnu_reads_the_witness() {
        let v = Addr::root();
        let u = a("12");
        let g = make_type_np(&v, &TypeSpec::parse(3, "12").unwrap(), Some(&u), 3).unwrap();
        assert_eq!(phi_vnu(&g, &v, 3, &u).unwrap().cycle_type(), vec![2]);
        assert!(phi_vnu(&g, &v, 3, &a("13")).unwrap().is_identity());
        assert!(matches!(phi_vnu(&g, &v, 4, &a("121")), Err(TreeError::NotInBallStabilizer(_))));
        let all = phi_vn(&g, &v, 3).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(all.iter().filter(|(_, p)| !p.is_identity()).count(), 1);
    }

    #[test]
    fn odometer_sphere_orbits() {
        let s = make_spherically_transitive(&Addr::root(), 3);
        assert_eq!(sphere_orbit_sizes(&s, &Addr::root(), 4).unwrap(), vec![vec![3], vec![6], vec![12], vec![24]]);
        assert!(verify_spherical_transitivity(&s, &Addr::root(), 6));
        assert!(!verify_spherical_transitivity(&TreeAut::identity(3), &Addr::root(), 1));
        let t = make_type_np(&Addr::root(), &TypeSpec::parse(1, "123").unwrap(), None, 3).unwrap();
        assert!(!verify_spherical_transitivity(&t, &Addr::root(), 2));
    }

    #[test]
    fn family_membership() {
        let t2 = make_type_np(&a("1"), &TypeSpec::parse(2, "12").unwrap(), Some(&a("13")), 3).unwrap();
        let (v, u, shape) = in_family_pn(&t2, 2, 4).unwrap();
        assert_eq!((v, u, shape), (a("1"), a("13"), vec![2]));
        let s = make_spherically_transitive(&Addr::root(), 3);
        assert_eq!(in_family_ts(&s, 4, 5), Some(Addr::root()));
        assert!(in_family_ts(&t2, 4, 5).is_none());
        assert!(in_family_pn(&s, 2, 4).is_none());
    }
}
