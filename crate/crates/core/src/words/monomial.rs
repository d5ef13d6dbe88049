use super::GroupOps;

/// A one-variable monomial `a₀ x^{l₁} a₁ ⋯ x^{l_m} a_m` with group constants.
#[derive(Clone, Debug)]
pub struct Monomial<E> {
    constants: Vec<E>,
    exponents: Vec<i64>,
}

impl<E: Clone> Monomial<E> {
    /// `constants.len()` must be `exponents.len() + 1` and every exponent nonzero.
    pub fn new(constants: Vec<E>, exponents: Vec<i64>) -> Option<Self> {
        if constants.len() != exponents.len() + 1 || exponents.contains(&0) {
            return None;
        }
        Some(Monomial { constants, exponents })
    }

    pub fn constant(a: E) -> Self {
        Monomial { constants: vec![a], exponents: Vec::new() }
    }

    pub fn constants(&self) -> &[E] {
        &self.constants
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Number of variable blocks `m`.
    pub fn degree(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Substitutes `x ↦ g` and multiplies out.
    pub fn evaluate<G: GroupOps<Elem = E>>(&self, group: &G, g: &E) -> E {
        let mut acc = self.constants[0].clone();
        for (l, a) in self.exponents.iter().zip(&self.constants[1..]) {
            acc = group.mul(&acc, &group.pow(g, *l));
            acc = group.mul(&acc, a);
        }
        acc
    }

    /// Membership of `g` in the principal algebraic set `{g : w(g) = 1}`.
    pub fn vanishes_at<G: GroupOps<Elem = E>>(&self, group: &G, g: &E) -> bool {
        group.is_identity(&self.evaluate(group, g))
    }

    /// Reduces over the group: a block `x^{±1} a x^{∓1}` with `a` central collapses,
    /// and identity constants between two powers merge them. Repeats until stable.
    ///
    /// The value `w(g)` at every `g` is unchanged.
    pub fn reduce_over_group<G: GroupOps<Elem = E>>(&self, group: &G, is_central: impl Fn(&E) -> bool) -> Self {
        let mut constants = self.constants.clone();
        let mut exponents = self.exponents.clone();
        loop {
            let pos = (1..constants.len() - 1).find(|&i| {
                let (l, r) = (exponents[i - 1], exponents[i]);
                group.is_identity(&constants[i]) || ((l > 0) != (r > 0) && is_central(&constants[i]))
            });
            let Some(i) = pos else { break };
            // x^l a x^r with a central equals a x^{l+r}; move a into the left constant
            let a = constants.remove(i);
            constants[i - 1] = group.mul(&constants[i - 1], &a);
            let merged = exponents[i - 1] + exponents[i];
            exponents.remove(i);
            if merged == 0 {
                exponents.remove(i - 1);
                let right = constants.remove(i);
                constants[i - 1] = group.mul(&constants[i - 1], &right);
            } else {
                exponents[i - 1] = merged;
            }
        }
        Monomial { constants, exponents }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{FiniteGroup, Perm};
    use crate::words::PermOps;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_with_degree(s, n).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let ops = PermOps { degree: 3 };
        let a0 = p("(0 1)", 3);
        let a1 = p("(1 2)", 3);
        let g = p("(0 1 2)", 3);
        assert_eq!(Monomial::constant(a0.clone()).evaluate(&ops, &g), a0);
        let x = Monomial::new(vec![ops.identity(), ops.identity()], vec![1]).unwrap();
        assert_eq!(x.evaluate(&ops, &g), g);
        let axa = Monomial::new(vec![a0.clone(), a1.clone()], vec![1]).unwrap();
        assert_eq!(axa.evaluate(&ops, &g), a0.compose(&g).compose(&a1));
    }

    #[test]
    fn principal_set_examples() {
        let ops = PermOps { degree: 3 };
        let x = Monomial::new(vec![ops.identity(), ops.identity()], vec![1]).unwrap();
        assert!(x.vanishes_at(&ops, &ops.identity()));
        assert!(!x.vanishes_at(&ops, &p("(0 1)", 3)));
        let a = p("(0 1 2)", 3);
        let xa = Monomial::new(vec![ops.identity(), a.inverse()], vec![1]).unwrap();
        assert!(xa.vanishes_at(&ops, &a));
    }

    #[test]
    fn reduction_examples() {
        // Z/2 x S3 realised on 5 points: (0 1) is central
        let ops = PermOps { degree: 5 };
        let z = p("(0 1)", 5);
        let b = p("(2 3)", 5);
        let central = |e: &Perm| e.is_identity() || *e == z;

        let trivial = Monomial::new(vec![ops.identity(), ops.identity(), ops.identity()], vec![1, -1]).unwrap();
        let r = trivial.reduce_over_group(&ops, central);
        assert!(r.is_constant() && r.constants()[0].is_identity());

        let xzxb = Monomial::new(vec![ops.identity(), z.clone(), b.clone()], vec![1, -1]).unwrap();
        let r = xzxb.reduce_over_group(&ops, central);
        assert!(r.is_constant());
        assert_eq!(r.constants()[0], z.compose(&b));

        let a = p("(2 3 4)", 5);
        let xax = Monomial::new(vec![ops.identity(), a.clone(), ops.identity()], vec![1, -1]).unwrap();
        let r = xax.reduce_over_group(&ops, central);
        assert_eq!(r.degree(), 2);
    }

    #[test]
    fn reduction_preserves_values() {
        let ops = PermOps { degree: 5 };
        let g = FiniteGroup::closure(5, &[p("(0 1)", 5), p("(2 3)", 5), p("(2 3 4)", 5)], 100).unwrap();
        let z = p("(0 1)", 5);
        let central = |e: &Perm| e.is_identity() || *e == z;
        let elems = g.elements();
        let w = Monomial::new(
            vec![elems[3].clone(), z.clone(), ops.identity(), elems[5].clone(), z.clone()],
            vec![2, -1, 3, -2],
        )
        .unwrap();
        let r = w.reduce_over_group(&ops, central);
        assert!(r.degree() < w.degree());
        for x in elems {
            assert_eq!(w.evaluate(&ops, x), r.evaluate(&ops, x));
        }
    }
}
