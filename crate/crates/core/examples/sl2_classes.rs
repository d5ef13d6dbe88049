//! Trace trichotomy in SL2 with explicit conjugators to canonical forms.

use invgen::matgrp::scalar::rational;
use invgen::matgrp::{sl2_classify, Mat2};

fn main() {
    let samples = [
        Mat2::new(rational(2, 1), rational(0, 1), rational(0, 1), rational(1, 2)),
        Mat2::from_i64(2, 1, 1, 1),
        Mat2::from_i64(1, 3, 0, 1),
        Mat2::from_i64(-1, 0, 2, -1),
        Mat2::from_i64(0, -1, 1, 1),
        Mat2::from_i64(1, -2, 1, -1),
    ];
    for g in samples {
        let c = sl2_classify(&g).unwrap();
        let conj = c.conjugator.as_ref().map_or("needs a square root outside Q".into(), |x| x.to_string());
        println!("{g}: {} | conjugator {conj} | residual {:.1e}", c.class.to_json(), c.residual(&g).unwrap());
    }
}
