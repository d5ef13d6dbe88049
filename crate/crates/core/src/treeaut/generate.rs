use serde_json::{json, Value};

use super::addr::{ball_about, sphere_about, sphere_size, Addr};
use super::classify::{classify, TreeClass};
use super::construct::{default_witness, make_spherically_transitive, make_type_np, TypeSpec};
use super::element::TreeAut;
use super::local::{phi_v1, phi_vn, phi_vnu};
use super::TreeError;
use crate::perm::{express_as_conjugate_product, express_as_product, Perm, PermError};
use crate::words::Word;

/// `g` with `g·v = x`, as a word in `x1 = h`, `x2 = s`.
#[derive(Clone, Debug)]
pub struct VertexWitness {
    pub word: Word,
    pub element: TreeAut,
    pub image: Addr,
    /// `(m, k)` for each induction step `g_n = s^k s'^m g_{n−1}`.
    pub steps: Vec<(usize, usize)>,
}

impl VertexWitness {
    pub fn to_json(&self) -> Value {
        json!({"word": self.word.to_string(), "image": self.image.to_string(), "steps": self.steps})
    }
}

/// Least `k ≥ 0` with `pred(g^k·p)`, scanning at most `bound` steps.
fn power_search(g: &TreeAut, p: &Addr, bound: usize, pred: impl Fn(&Addr) -> bool) -> Result<(usize, Addr), TreeError> {
    let mut q = p.clone();
    for k in 0..=bound {
        if pred(&q) {
            return Ok((k, q));
        }
        q = g.image(&q)?;
    }
    Err(TreeError::PreconditionViolated(format!("no power within {bound} steps moves {p} as required")))
}

/// Builds `g ∈ ⟨h, s⟩` with `g·v = x` by the induction through the edge `(v, u)`.
///
/// `h` must be hyperbolic of length 1 and `s` spherically transitive about `v`; the target
/// must satisfy `d(v, x) + margin ≤ depth`.
pub fn vertex_transitivity_witness(
    h: &TreeAut,
    s: &TreeAut,
    v: &Addr,
    x: &Addr,
    depth: usize,
    margin: usize,
) -> Result<VertexWitness, TreeError> {
    let d = s.d();
    if v.dist(x) + margin > depth {
        return Err(TreeError::DepthExhausted(format!("d({v}, {x}) + {margin} exceeds depth {depth}")));
    }
    if !s.fixes(v)? {
        return Err(TreeError::PreconditionViolated(format!("s does not fix {v}")));
    }
    if !matches!(classify(h, Some(depth)), TreeClass::Hyperbolic { length: 1, .. }) {
        return Err(TreeError::PreconditionViolated("h is not hyperbolic of length 1".into()));
    }
    if x == v {
        return Ok(VertexWitness { word: Word::empty(), element: TreeAut::identity(d), image: v.clone(), steps: vec![] });
    }
    let odd = v.dist(x) % 2 == 1;
    let target = if odd { h.preimage(x)? } else { x.clone() };

    let v1 = h.image(v)?;
    let v2 = h.image(&v1)?;
    let u = v.toward(&v2).expect("v ≠ h²·v");
    // (s^{h²})^n · v₁ = u
    let s_h2 = s.conj(&h.pow(2));
    let (n, _) = power_search(&s_h2, &v1, sphere_size(d, v2.dist(&v1)), |q| q == &u)?;
    let y = s_h2.pow(n as i64);
    let s_prime_pow = |m: usize| s.pow(m as i64).conj(h).conj(&y);
    let s_prime = s_prime_pow(1);
    if !s_prime.fixes(&u)? {
        return Err(TreeError::PreconditionViolated("s' does not fix u".into()));
    }
    let s_prime_word = |m: usize| Word::from_powers(&[(1, 2), (2, n as i64), (1, -1), (2, m as i64), (1, 1), (2, -(n as i64)), (1, -2)]);

    let in_tu = |q: &Addr| q.dist(v) == q.dist(&u) + 1;
    let in_tv = |q: &Addr| q.dist(&u) == q.dist(v) + 1;
    let mut g = TreeAut::identity(d);
    let mut word = Word::empty();
    let mut steps = Vec::new();
    for step in 1..=v.dist(&target) / 2 {
        let p = g.image(v)?;
        let (m, q) = power_search(&s_prime, &p, sphere_size(d, u.dist(&p)), in_tu)?;
        let (k, r) = power_search(s, &q, sphere_size(d, v.dist(&q)), in_tv)?;
        debug_assert_eq!(v.dist(&r), 2 * step);
        g = s.pow(k as i64).compose(&s_prime_pow(m))?.compose(&g)?;
        word = Word::from_powers(&[(2, k as i64)]).concat(&s_prime_word(m)).concat(&word);
        steps.push((m, k));
    }
    let p = g.image(v)?;
    let (l, _) = power_search(s, &p, sphere_size(d, v.dist(&p)), |q| q == &target)?;
    g = s.pow(l as i64).compose(&g)?;
    word = Word::from_powers(&[(2, l as i64)]).concat(&word);
    if odd {
        g = h.compose(&g)?;
        word = Word::from_powers(&[(1, 1)]).concat(&word);
    }
    let image = g.image(v)?;
    if &image != x {
        return Err(TreeError::PreconditionViolated(format!("construction reached {image} instead of {x}")));
    }
    Ok(VertexWitness { word, element: g, image, steps })
}

/// Elements available to [`stabilizer_approximation`]: `s`, spherically transitive about
/// `v`, and type-`(n, 𝒫)` elements about `v`.
#[derive(Clone, Debug)]
pub struct Supply {
    pub v: Addr,
    pub s: TreeAut,
    pub types: Vec<(TypeSpec, TreeAut)>,
}

impl Supply {
    /// The odometer about `v` and one canonical element per non-trivial shape and level
    /// `1..=n_max`, witnesses along the colors `1, 2, 1, …`.
    pub fn canonical(d: usize, v: &Addr, n_max: usize) -> Result<Self, TreeError> {
        let mut types = Vec::new();
        for n in 1..=n_max {
            for spec in TypeSpec::all_shapes(n, d) {
                let u = (n > 1).then(|| default_witness(v, n - 1));
                types.push((spec.clone(), make_type_np(v, &spec, u.as_ref(), d)?));
            }
        }
        Ok(Supply { v: v.clone(), s: make_spherically_transitive(v, d), types })
    }

    /// Word variable of `types[i]` (`x1` is `s`).
    pub fn var(i: usize) -> usize {
        i + 2
    }
}

/// `k_n ∈ ⟨supply⟩` agreeing with `k` on `B(v, n)`, as a word in `x1 = s`,
/// `x_{i+2} = types[i]`.
#[derive(Clone, Debug)]
pub struct StabilizerApproximation {
    pub word: Word,
    pub element: TreeAut,
    /// Number of correcting factors introduced at each level `1..=n`.
    pub factors_per_level: Vec<usize>,
}

impl StabilizerApproximation {
    pub fn to_json(&self) -> Value {
        json!({"word": self.word.to_string(), "word_length": self.word.len(), "factors_per_level": self.factors_per_level})
    }
}

fn supply_error(e: PermError) -> TreeError {
    match e {
        PermError::SupplyNotComplete | PermError::NotFound(_) => TreeError::SupplyIncomplete(e.to_string()),
        e => TreeError::Perm(e),
    }
}

/// Writes `target` as a product of conjugates of `perms`, each conjugator realized as a
/// product of `perms` themselves; returns the matching element and word.
fn realize(degree: usize, target: &Perm, perms: &[Perm], elems: &[(TreeAut, Word)]) -> Result<(TreeAut, Word, usize), TreeError> {
    let d = elems[0].0.d();
    let mut element = TreeAut::identity(d);
    let mut word = Word::empty();
    let factors = express_as_conjugate_product(degree, target, perms).map_err(supply_error)?;
    for f in &factors {
        let mut c_elem = TreeAut::identity(d);
        let mut c_word = Word::empty();
        for i in express_as_product(degree, &f.conjugator, perms).map_err(supply_error)? {
            c_elem = c_elem.compose(&elems[i].0)?;
            c_word = c_word.concat(&elems[i].1);
        }
        element = element.compose(&elems[f.index].0.conj(&c_elem))?;
        word = word.concat(&c_word).concat(&elems[f.index].1).concat(&c_word.inverse());
    }
    Ok((element, word, factors.len()))
}

/// Level-by-level approximation of `k ∈ Stab(v)` by products of supply elements.
///
/// Level 1 writes `φ_{v,1}(k)` as a product of conjugates of the level-1 images in `S_d`.
/// Level `m > 1` moves each level-`m` element's witness onto every `u ∈ S(v, m−1)` by
/// conjugating with powers of `s`, solves `φ_{v,m,u}(k_{m−1}⁻¹ k)` in `S_{d−1}`, and
/// multiplies the commuting corrections onto `k_{m−1}`.
pub fn stabilizer_approximation(k: &TreeAut, supply: &Supply, n: usize) -> Result<StabilizerApproximation, TreeError> {
    let d = k.d();
    let v = &supply.v;
    if !k.fixes(v)? {
        return Err(TreeError::NotInStabilizer(format!("k does not fix {v}")));
    }
    let mut approx = TreeAut::identity(d);
    let mut word = Word::empty();
    let mut factors_per_level = Vec::new();
    if n == 0 {
        return Ok(StabilizerApproximation { word, element: approx, factors_per_level });
    }
    let level_elems = |m: usize| -> Vec<(usize, &TreeAut)> {
        supply.types.iter().enumerate().filter(|(_, (spec, _))| spec.n == m).map(|(i, (_, g))| (i, g)).collect()
    };

    let first = level_elems(1);
    if first.is_empty() {
        return Err(TreeError::SupplyIncomplete("no type-(1, 𝒫) elements".into()));
    }
    let perms: Vec<Perm> = first.iter().map(|(_, g)| phi_v1(g, v)).collect::<Result<_, _>>()?;
    let elems: Vec<(TreeAut, Word)> = first.iter().map(|(i, g)| ((*g).clone(), Word::from_powers(&[(Supply::var(*i), 1)]))).collect();
    let (e, w, count) = realize(d, &phi_v1(k, v)?, &perms, &elems)?;
    approx = approx.compose(&e)?;
    word = word.concat(&w);
    factors_per_level.push(count);

    for m in 2..=n {
        let typed = level_elems(m);
        if typed.is_empty() {
            return Err(TreeError::SupplyIncomplete(format!("no type-({m}, 𝒫) elements")));
        }
        let mut witnesses = Vec::with_capacity(typed.len());
        for (_, g) in &typed {
            let moved = sphere_about(v, d, m - 1).into_iter().find(|u| {
                u.neighbors(d).iter().any(|x| x.dist(v) == m && !g.fixes(x).unwrap_or(true))
            });
            witnesses.push(moved.ok_or_else(|| TreeError::SupplyIncomplete(format!("level-{m} element moves nothing on S({v}, {m})")))?);
        }
        let residual = approx.inverse().compose(k)?;
        let mut correction = TreeAut::identity(d);
        let mut correction_word = Word::empty();
        let mut count = 0;
        for (u, target) in phi_vn(&residual, v, m)? {
            if target.is_identity() {
                continue;
            }
            let mut perms = Vec::with_capacity(typed.len());
            let mut elems = Vec::with_capacity(typed.len());
            for ((i, g), w) in typed.iter().zip(&witnesses) {
                let (a, _) = power_search(&supply.s, w, sphere_size(d, m - 1), |q| q == &u)?;
                let moved = g.conj(&supply.s.pow(a as i64));
                perms.push(phi_vnu(&moved, v, m, &u)?);
                elems.push((moved, Word::from_powers(&[(1, a as i64), (Supply::var(*i), 1), (1, -(a as i64))])));
            }
            let (e, w, c) = realize(d - 1, &target, &perms, &elems)?;
            correction = correction.compose(&e)?;
            correction_word = correction_word.concat(&w);
            count += c;
        }
        approx = approx.compose(&correction)?;
        word = word.concat(&correction_word);
        factors_per_level.push(count);
    }
    for w in ball_about(v, d, n) {
        if approx.image(&w)? != k.image(&w)? {
            return Err(TreeError::PreconditionViolated(format!("approximation differs from k at {w}")));
        }
    }
    Ok(StabilizerApproximation { word, element: approx, factors_per_level })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treeaut::addr::ball;
    use crate::treeaut::construct::{make_hyperbolic_translation, random_stabilizer_element};
    use crate::treeaut::element::TreeOps;
    use rand::SeedableRng;

    #[test]
    fn witness_reaches_small_ball() {
        let d = 3;
        let v = Addr::root();
        let h = make_hyperbolic_translation(d);
        let s = make_spherically_transitive(&v, d);
        for x in ball(d, 3) {
            let w = vertex_transitivity_witness(&h, &s, &v, &x, 6, 2).unwrap();
            assert_eq!(w.element.image(&v).unwrap(), x);
            let evaluated = w.word.evaluate(&TreeOps { d, radius: 0 }, &[h.clone(), s.clone()]).unwrap();
            assert_eq!(evaluated.image(&v).unwrap(), x);
        }
        assert!(vertex_transitivity_witness(&h, &s, &v, &v, 6, 2).unwrap().word.is_empty());
    }

    #[test]
    fn neighbor_uses_the_parity_step() {
        let h = make_hyperbolic_translation(3);
        let s = make_spherically_transitive(&Addr::root(), 3);
        let w = vertex_transitivity_witness(&h, &s, &Addr::root(), &Addr::parse("3", 3).unwrap(), 6, 2).unwrap();
        assert_eq!(w.word.letters()[0].var, 1);
    }

    #[test]
    fn approximates_random_stabilizer_elements() {
        let d = 3;
        let v = Addr::parse("2", 3).unwrap();
        let supply = Supply::canonical(d, &v, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let k = random_stabilizer_element(&mut rng, d, &v, 4);
            let res = stabilizer_approximation(&k, &supply, 3).unwrap();
            assert!(res.element.agrees_on_ball(&k, &v, 3).unwrap());
        }
        let id = stabilizer_approximation(&TreeAut::identity(d), &supply, 3).unwrap();
        assert!(id.word.is_empty());
    }

    #[test]
    fn missing_levels_are_reported() {
        let mut supply = Supply::canonical(3, &Addr::root(), 2).unwrap();
        let k = random_stabilizer_element(&mut rand_chacha::ChaCha8Rng::seed_from_u64(1), 3, &Addr::root(), 4);
        assert!(matches!(stabilizer_approximation(&k, &supply, 3), Err(TreeError::SupplyIncomplete(_))));
        supply.types.retain(|(spec, _)| spec.shape() != vec![3]);
        assert!(matches!(stabilizer_approximation(&k, &supply, 1), Err(TreeError::SupplyIncomplete(_))));
    }

    #[test]
    fn type_element_is_recovered() {
        let supply = Supply::canonical(3, &Addr::root(), 3).unwrap();
        let (_, g) = &supply.types[2];
        let res = stabilizer_approximation(g, &supply, 3).unwrap();
        assert!(res.element.agrees_on_ball(g, &Addr::root(), 3).unwrap());
    }
}
