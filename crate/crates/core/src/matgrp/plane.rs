use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;

use super::MatError;

/// A real `g`-invariant plane `span{u, v}`.
#[derive(Clone, Debug)]
pub struct InvariantPlane {
    pub u: DVector<f64>,
    pub v: DVector<f64>,
    /// The non-real eigenvalue `a + bi` whose eigenvector `u + iv` gave the plane, if any.
    pub eigenvalue: Option<Complex64>,
}

impl InvariantPlane {
    /// Orthonormal basis of the plane (columns).
    pub fn orthonormal_basis(&self) -> DMatrix<f64> {
        let basis = DMatrix::from_columns(&[self.u.clone(), self.v.clone()]);
        basis.qr().q()
    }

    /// `‖(I − PPᵀ) g B‖ / ‖g B‖` for `B = (u v)` and `P` an orthonormal basis of the plane.
    pub fn residual(&self, g: &DMatrix<f64>) -> f64 {
        let p = self.orthonormal_basis();
        let gb = g * DMatrix::from_columns(&[self.u.clone(), self.v.clone()]);
        let off = &gb - &p * (p.transpose() * &gb);
        off.norm() / gb.norm().max(f64::MIN_POSITIVE)
    }

    /// Gram determinant of `u/|u|, v/|v|`; near zero means the vectors are nearly parallel.
    pub fn normalized_gram_det(&self) -> f64 {
        let (u, v) = (self.u.normalize(), self.v.normalize());
        let uv = u.dot(&v);
        1.0 - uv * uv
    }

    /// Whether `w` lies in the plane, up to `tol` relative to `|w|`.
    pub fn contains(&self, w: &DVector<f64>) -> bool {
        let p = self.orthonormal_basis();
        let off = w - &p * (p.transpose() * w);
        off.norm() <= 1e-10 * w.norm().max(1.0)
    }
}

/// A 2-dimensional `g`-invariant subspace of `ℝⁿ`, `n ≥ 2`.
///
/// With a non-real eigenvalue `a + bi` (largest `|b|` first) the plane is spanned by the real
/// and imaginary parts of an eigenvector: `g(u + iv) = (au − bv) + i(av + bu)`. Otherwise
/// the first two Schur vectors span an invariant plane.
pub fn invariant_plane(g: &DMatrix<f64>) -> Result<InvariantPlane, MatError> {
    if !g.is_square() {
        return Err(MatError::NotSquare);
    }
    let n = g.nrows();
    if n < 2 {
        return Err(MatError::DimensionTooSmall(n));
    }
    let scale = g.norm().max(1.0);
    let eigen = g.complex_eigenvalues();
    let complex = eigen
        .iter()
        .filter(|z| z.im.abs() > 1e-9 * scale)
        .max_by(|a, b| a.im.abs().total_cmp(&b.im.abs()).then(b.re.total_cmp(&a.re)));
    if let Some(&lambda) = complex {
        let lambda = if lambda.im < 0.0 { lambda.conj() } else { lambda };
        let shifted = g.map(|x| Complex64::new(x, 0.0)) - DMatrix::<Complex64>::identity(n, n) * lambda;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.ok_or(MatError::NoConvergence)?;
        let (idx, _) = svd.singular_values.argmin();
        let w: DVector<Complex64> = v_t.row(idx).transpose().map(|z| z.conj());
        // rotate w so that its real part carries the larger share
        let k = (0..n).max_by(|&i, &j| w[i].norm().total_cmp(&w[j].norm())).unwrap_or(0);
        let phase = w[k] / w[k].norm();
        let w = w.map(|z| z / phase);
        let u = w.map(|z| z.re);
        let v = w.map(|z| z.im);
        return Ok(InvariantPlane { u, v, eigenvalue: Some(lambda) });
    }
    let schur = g.clone().schur();
    let (q, _) = schur.unpack();
    Ok(InvariantPlane { u: q.column(0).into_owned(), v: q.column(1).into_owned(), eigenvalue: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> DVector<f64> {
        DVector::from_fn(n, |j, _| if i == j { 1.0 } else { 0.0 })
    }

    #[test]
    fn rotation_block() {
        let mut g = DMatrix::<f64>::identity(4, 4);
        g[(0, 0)] = 0.0;
        g[(0, 1)] = -1.0;
        g[(1, 0)] = 1.0;
        g[(1, 1)] = 0.0;
        let p = invariant_plane(&g).unwrap();
        assert!(p.contains(&e(4, 0)) && p.contains(&e(4, 1)));
        assert!(p.residual(&g) < 1e-10);
        assert!(p.normalized_gram_det() > 0.5);
        let lambda = p.eigenvalue.unwrap();
        assert!((lambda - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn diagonal_real_branch() {
        let g = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 3.0, 5.0]));
        let p = invariant_plane(&g).unwrap();
        assert!(p.eigenvalue.is_none());
        assert!(p.residual(&g) < 1e-10);
        assert!(p.normalized_gram_det() > 0.5);
    }

    #[test]
    fn companion_of_x2_plus_1_is_whole_plane() {
        let g = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let p = invariant_plane(&g).unwrap();
        assert!(p.contains(&e(2, 0)) && p.contains(&e(2, 1)));
        assert!(p.normalized_gram_det() > 0.5);
    }

    #[test]
    fn rejects_small_or_non_square() {
        assert_eq!(invariant_plane(&DMatrix::from_element(1, 1, 2.0)).unwrap_err(), MatError::DimensionTooSmall(1));
        assert_eq!(invariant_plane(&DMatrix::from_element(2, 3, 1.0)).unwrap_err(), MatError::NotSquare);
    }

    #[test]
    fn real_and_imaginary_parts_follow_the_eigenvalue() {
        let g = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.5, -3.0, 1.0, 0.0, 0.2, 0.1, 2.0]);
        let p = invariant_plane(&g).unwrap();
        let z = p.eigenvalue.unwrap();
        let (a, b) = (z.re, z.im);
        assert!((&g * &p.u - (&p.u * a - &p.v * b)).norm() < 1e-9);
        assert!((&g * &p.v - (&p.v * a + &p.u * b)).norm() < 1e-9);
    }
}
