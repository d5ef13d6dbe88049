//! Eigenvalues of short words: SL2 spectra lie on the real line or the unit circle.

use invgen::matgrp::scalar::rational;
use invgen::matgrp::{spectrum_of_words, Mat2, Rational, DEFAULT_SPECTRUM_CAP};

fn main() {
    let gens: [Mat2<Rational>; 2] = [Mat2::from_i64(1, 1, 0, 1), Mat2::from_i64(0, -1, 1, 0)];
    let report = spectrum_of_words(&gens, 5, DEFAULT_SPECTRUM_CAP).unwrap();
    println!("SL2(Z) generators, L = 5: {}", report.to_json());

    let borel = [
        Mat2::new(rational(2, 1), rational(1, 1), rational(0, 1), rational(1, 2)),
        Mat2::new(rational(-1, 3), rational(5, 1), rational(0, 1), rational(-3, 1)),
    ];
    let report = spectrum_of_words(&borel, 4, DEFAULT_SPECTRUM_CAP).unwrap();
    println!("upper triangular generators: {} real eigenvalues, unit {:?}", report.real_values.len(), report.unit_values);
}
