//! Bounded freeness certificates for a matrix pair and a permutation pair.

use invgen::matgrp::{Mat2, MatOps, Rational};
use invgen::perm::Perm;
use invgen::words::{free_up_to, FreenessOptions, PermOps};

fn main() {
    let sanov = [Mat2::<Rational>::from_i64(1, 2, 0, 1), Mat2::from_i64(1, 0, 2, 1)];
    let cert = free_up_to(&MatOps::projective(), &sanov, 8, &FreenessOptions::default()).unwrap();
    println!("Sanov pair: {}", serde_json::to_string(&cert).unwrap());

    let weak = [Mat2::<Rational>::from_i64(1, 1, 0, 1), Mat2::from_i64(1, 0, -1, 1)];
    let cert = free_up_to(&MatOps::projective(), &weak, 8, &FreenessOptions::default()).unwrap();
    println!("(1 1; 0 1), (1 0; -1 1): relation {}", cert.relation().unwrap());

    let perms = [Perm::parse_with_degree("(0 1)", 3).unwrap(), Perm::parse_with_degree("(1 2)", 3).unwrap()];
    let cert = free_up_to(&PermOps { degree: 3 }, &perms, 6, &FreenessOptions::default()).unwrap();
    println!("(0 1), (1 2) in S3: relation {}", cert.relation().unwrap());
}
