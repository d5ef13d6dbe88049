//! Extends a free tuple by a random conjugate of a fixed element.

use invgen::matgrp::{extend_free_tuple, ExtendOptions, Mat2};

fn main() {
    let tuple = [Mat2::from_i64(1, 2, 0, 1)];
    let target = Mat2::from_i64(1, 0, 2, 1);
    let opts = ExtendOptions { length_bound: 8, trials: 200, seed: 2024, ..Default::default() };
    let ext = extend_free_tuple(&tuple, &target, &opts).unwrap();
    println!("trial {}: g = {}, g^-1 c g = {}", ext.trial, ext.g, ext.conjugate);
    println!("{}", serde_json::to_string(&ext.certificate).unwrap());
}
