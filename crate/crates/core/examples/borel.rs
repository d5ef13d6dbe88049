//! Triangularizing 2x2 matrices over R and C, and invariant planes in higher dimension.

use invgen::matgrp::{borel_conjugator, invariant_plane, BorelBackend, Mat2};
use nalgebra::DMatrix;

fn main() {
    for m in [Mat2::from_i64(1, 2, 3, 4), Mat2::from_i64(0, -1, 1, 0), Mat2::from_i64(1, 1, 1, 2)] {
        for backend in [BorelBackend::Real, BorelBackend::Complex] {
            match borel_conjugator(&m, backend) {
                Ok(o) => println!("{m} {backend:?}: exact {} |c| = {:.1e}", o.is_exact(), o.lower_left_abs()),
                Err(e) => println!("{m} {backend:?}: {e}"),
            }
        }
    }
    let g = DMatrix::from_row_slice(4, 4, &[0., -1., 0., 0., 1., 0., 0., 0., 0., 0., 2., 1., 0., 0., 0., 3.]);
    let plane = invariant_plane(&g).unwrap();
    println!("4x4 rotation block: invariant plane residual {:.1e}, eigenvalue {:?}", plane.residual(&g), plane.eigenvalue);
}
