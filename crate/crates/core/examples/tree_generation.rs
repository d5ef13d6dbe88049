//! The two generation procedures: moving the base vertex with a translation and an odometer,
//! and rebuilding a stabilizer element on a ball from typed elements.

use invgen::treeaut::{
    make_hyperbolic_translation, make_spherically_transitive, random_stabilizer_element, stabilizer_approximation,
    vertex_transitivity_witness, Addr, Supply,
};
use rand::SeedableRng;

fn main() {
    let d = 3;
    let v = Addr::root();
    let h = make_hyperbolic_translation(d);
    let s = make_spherically_transitive(&v, d);
    for x in ["1", "3", "23", "1213"] {
        let x = Addr::parse(x, d).unwrap();
        let w = vertex_transitivity_witness(&h, &s, &v, &x, 6, 2).unwrap();
        println!("v -> {x}: {} (x1 = h, x2 = s)", w.word);
    }

    let supply = Supply::canonical(d, &v, 3).unwrap();
    let k = random_stabilizer_element(&mut rand_chacha::ChaCha8Rng::seed_from_u64(7), d, &v, 4);
    let approx = stabilizer_approximation(&k, &supply, 3).unwrap();
    println!(
        "stabilizer element rebuilt on B(v, 3) from {} supply elements: {} letters, agrees: {}",
        supply.types.len() + 1,
        approx.word.len(),
        approx.element.agrees_on_ball(&k, &v, 3).unwrap()
    );
}
