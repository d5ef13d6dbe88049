//! Adjoint orbits in sl2 and the exponential map onto the subgroups A, U and K.

use invgen::matgrp::scalar::rational;
use invgen::matgrp::{exp_sl2, lie_classify, Sl2LieElem};

fn main() {
    let samples = [(1, 2, 3), (0, 1, 0), (1, 1, -1), (0, 2, -2), (3, -3, 3)];
    for (a, b, c) in samples {
        let x = Sl2LieElem::new(rational(a, 1), rational(b, 1), rational(c, 1));
        let orbit = lie_classify(&x).unwrap();
        let e = exp_sl2(&x.to_f64());
        println!("X = ({a} {b}; {c} {}): {} | exp(X) = {e:.6?}", -a, orbit.kind.to_json());
    }
    let x = Sl2LieElem::new(0.3, -1.2, 0.7);
    let scaled = |t: f64| Sl2LieElem::new(x.a * t, x.b * t, x.c * t);
    let err = exp_sl2(&scaled(1.5)).max_abs_diff(&exp_sl2(&scaled(0.4)).mul(&exp_sl2(&scaled(1.1))));
    println!("|exp(1.5X) - exp(0.4X) exp(1.1X)| = {err:.1e}");
}
