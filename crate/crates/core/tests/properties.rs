use invgen::matgrp::scalar::{rational, Rational};
use invgen::matgrp::{borel_conjugator, exp_sl2, sample_sl2, sl2_classify, BorelBackend, Mat2, Sl2LieElem};
use invgen::perm::{all_perms, invariably_generates, named_group, FiniteGroup, Perm, DEFAULT_LEAF_BUDGET};
use invgen::treeaut::{
    ball, classify, random_automorphism, random_stabilizer_element, sphere, Addr, TreeAut, TreeClass,
};
use invgen::words::{Letter, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn sl2_strategy() -> impl Strategy<Value = Mat2<Rational>> {
    any::<u64>().prop_map(|seed| sample_sl2(&mut ChaCha8Rng::seed_from_u64(seed), 6))
}

fn tree_elem(seed: u64, shift: usize) -> TreeAut {
    random_automorphism(&mut ChaCha8Rng::seed_from_u64(seed), 3, shift, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perm_group_laws(a in perm_strategy(6), b in perm_strategy(6), c in perm_strategy(6)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.conjugate_by(&b), b.compose(&a).compose(&b.inverse()));
        prop_assert_eq!(a.conjugate_by(&b).cycle_type(), a.cycle_type());
        prop_assert_eq!(a.pow(a.order() as i64), Perm::identity(6));
    }

    #[test]
    fn ig_is_conjugation_invariant(
        idx in proptest::collection::vec(0usize..24, 1..4),
        conj in proptest::collection::vec(0usize..24, 3),
    ) {
        let g = named_group("S4").unwrap();
        let set: Vec<Perm> = idx.iter().map(|&i| g.elements()[i].clone()).collect();
        let moved: Vec<Perm> = set.iter().zip(conj.iter().cycle()).map(|(s, &c)| s.conjugate_by(&g.elements()[c])).collect();
        let a = invariably_generates(&g, &set, DEFAULT_LEAF_BUDGET).unwrap();
        let b = invariably_generates(&g, &moved, DEFAULT_LEAF_BUDGET).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn word_reduction_is_idempotent_and_inverse_cancels(raw in proptest::collection::vec((1usize..4, any::<bool>()), 0..20)) {
        let letters: Vec<Letter> = raw.iter().map(|&(v, pos)| Letter::new(v, if pos { 1 } else { -1 })).collect();
        let w = Word::reduce(letters.iter().copied());
        prop_assert_eq!(Word::reduce(w.letters().iter().copied()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inv()));
        prop_assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn sl2_class_is_conjugation_invariant(g in sl2_strategy(), h in sl2_strategy()) {
        let conj = h.sl2_inverse().mul(&g).mul(&h);
        prop_assert_eq!(sl2_classify(&g).unwrap().class, sl2_classify(&conj).unwrap().class);
        let c = sl2_classify(&g.to_f64()).unwrap();
        if let Some(r) = c.residual(&g.to_f64()) {
            prop_assert!(r < 1e-9, "residual {}", r);
        }
    }

    #[test]
    fn exp_is_a_one_parameter_homomorphism(
        a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0, s in -1.5f64..1.5, t in -1.5f64..1.5,
    ) {
        let x = |k: f64| Sl2LieElem::new(a * k, b * k, c * k);
        let lhs = exp_sl2(&x(s + t));
        let rhs = exp_sl2(&x(s)).mul(&exp_sl2(&x(t)));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
        prop_assert!((lhs.det() - 1.0).abs() < 1e-9);
        prop_assert!(exp_sl2(&x(s)).mul(&exp_sl2(&x(-s))).max_abs_diff(&Mat2::identity()) < 1e-10);
    }

    #[test]
    fn borel_triangularizes(e in proptest::array::uniform4(-9i64..=9)) {
        let m = Mat2::<Rational>::from_i64(e[0], e[1], e[2], e[3]);
        prop_assume!(m.det() != rational(0, 1));
        let o = borel_conjugator(&m, BorelBackend::Complex).unwrap();
        let ok = if o.is_exact() { o.lower_left_abs() == 0.0 } else { o.lower_left_abs() < 1e-12 };
        prop_assert!(ok, "|c| = {}", o.lower_left_abs());
    }

    #[test]
    fn tree_group_laws(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (f, g, h) = (tree_elem(s1, 2), tree_elem(s2, 2), tree_elem(s3, 2));
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(left.agrees_on_ball(&right, &Addr::root(), 4).unwrap());
        let id = TreeAut::identity(3);
        prop_assert!(f.compose(&f.inverse()).unwrap().agrees_on_ball(&id, &Addr::root(), 4).unwrap());
        for w in ball(3, 3) {
            prop_assert_eq!(f.preimage(&f.image(&w).unwrap()).unwrap(), w.clone());
            // automorphisms preserve adjacency
            for n in w.neighbors(3) {
                prop_assert_eq!(f.image(&w).unwrap().dist(&f.image(&n).unwrap()), 1);
            }
        }
    }

    #[test]
    fn stabilizer_elements_fix_their_vertex(seed in any::<u64>(), v in "[1-3]{0,3}") {
        let Ok(v) = Addr::parse(&v, 3) else { return Ok(()) };
        let k = random_stabilizer_element(&mut ChaCha8Rng::seed_from_u64(seed), 3, &v, 3);
        prop_assert!(k.fixes(&v).unwrap());
        let elliptic = matches!(classify(&k, Some(4)), TreeClass::Elliptic { .. });
        prop_assert!(elliptic);
    }
}

#[test]
fn sphere_sizes_follow_the_formula() {
    for d in 3..=5 {
        for n in 1..=5 {
            let expected = d * (d - 1usize).pow(n as u32 - 1);
            let s = sphere(d, n);
            assert_eq!(s.len(), expected, "d = {d}, n = {n}");
            assert!(s.iter().all(|w| w.len() == n));
        }
    }
}

#[test]
fn conjugation_covariance_of_fixed_points() {
    let s = invgen::treeaut::make_spherically_transitive(&Addr::parse("12", 3).unwrap(), 3);
    for seed in 0..40 {
        let x = tree_elem(seed, 2);
        let c = s.conj(&x);
        assert!(c.fixes(&x.image(&Addr::parse("12", 3).unwrap()).unwrap()).unwrap());
    }
}

#[test]
fn every_subgroup_of_s4_is_enumerated_by_pairs() {
    // S4 has 30 subgroups, 29 of them proper; all are 2-generated
    let g = FiniteGroup::symmetric(4);
    let mut seen = std::collections::HashSet::new();
    let els: Vec<Perm> = all_perms(4);
    for a in &els {
        for b in &els {
            let h = g.subgroup(&[a.clone(), b.clone()]).unwrap();
            let mut key: Vec<Vec<usize>> = h.elements().iter().map(Perm::images).collect();
            key.sort();
            seen.insert(key);
        }
    }
    assert_eq!(seen.len(), 30);
}
