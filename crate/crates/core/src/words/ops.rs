use crate::perm::Perm;

/// Group structure supplied from outside, so permutations, matrices and tree
/// automorphisms all plug into the same word machinery.
pub trait GroupOps {
    type Elem: Clone;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn is_identity(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.identity())
    }

    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// `h · a · h⁻¹`
    fn conj(&self, a: &Self::Elem, h: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(h, a), &self.inv(h))
    }
}

/// The symmetric group on `degree` points.
#[derive(Clone, Copy, Debug)]
pub struct PermOps {
    pub degree: usize,
}

impl GroupOps for PermOps {
    type Elem = Perm;

    fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.compose(b)
    }

    fn inv(&self, a: &Perm) -> Perm {
        a.inverse()
    }

    fn eq(&self, a: &Perm, b: &Perm) -> bool {
        a == b
    }

    fn is_identity(&self, a: &Perm) -> bool {
        a.is_identity()
    }
}

/// Smallest `k ≤ bound` with `g^k = 1`, or `0` (standing for infinite order) if none.
pub fn probe_order<G: GroupOps>(group: &G, g: &G::Elem, bound: u64) -> u64 {
    let mut acc = g.clone();
    for k in 1..=bound {
        if group.is_identity(&acc) {
            return k;
        }
        acc = group.mul(&acc, g);
    }
    0
}
