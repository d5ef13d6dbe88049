//! Classification, orbital types and conjugacy for automorphisms of the 3-regular tree.

use invgen::treeaut::{
    classify, conjugacy_test, make_edge_flip, make_hyperbolic_translation, make_spherically_transitive,
    make_type_np, orbital_type, sphere_orbit_sizes, Addr, TypeSpec,
};

fn main() {
    let d = 3;
    let h = make_hyperbolic_translation(d);
    let s = make_spherically_transitive(&Addr::root(), d);
    let t = make_type_np(&Addr::root(), &TypeSpec::parse(1, "12|3").unwrap(), None, d).unwrap();
    for (name, g) in [("h", &h), ("h^3", &h.pow(3)), ("s", &s), ("type (1, 12|3)", &t), ("flip", &make_edge_flip(d))] {
        println!("{name}: {}", classify(g, Some(4)).to_json());
    }
    println!("orbits of s on spheres: {:?}", sphere_orbit_sizes(&s, &Addr::root(), 5).unwrap());
    println!("orbital type of s: {}", orbital_type(&s, 4).unwrap().canonical());
    println!("orbital type of the type-1 element: {}", orbital_type(&t, 2).unwrap().canonical());
    println!("h ~ s h s^-1: {:?}", conjugacy_test(&h, &h.conj(&s), 4));
    println!("h ~ h^2: {:?}", conjugacy_test(&h, &h.pow(2), 4));
}
