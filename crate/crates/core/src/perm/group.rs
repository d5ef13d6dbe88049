use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Perm, PermError};

/// A finite permutation group held as its full element list.
///
/// The identity is always element 0 and the list is in breadth-first order
/// from the generators, so indices are reproducible for a fixed generator list.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// JSON form of a group: `{"degree": 3, "generators": ["(0 1)", "(0 1 2)"]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupSpec {
    pub fn generators(&self) -> Result<Vec<Perm>, PermError> {
        self.generators.iter().map(|g| Perm::parse_with_degree(g, self.degree)).collect()
    }

    pub fn build(&self, cap: usize) -> Result<FiniteGroup, PermError> {
        FiniteGroup::closure(self.degree, &self.generators()?, cap)
    }
}

impl FiniteGroup {
    /// Breadth-first closure of `generators` under composition.
    pub fn closure(degree: usize, generators: &[Perm], cap: usize) -> Result<Self, PermError> {
        if cap == 0 {
            return Err(PermError::CapExceeded { cap });
        }
        for g in generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = g.compose(&elements[i]);
                if !index.contains_key(&next) {
                    if elements.len() == cap {
                        return Err(PermError::CapExceeded { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(FiniteGroup { degree, generators: generators.to_vec(), elements, index })
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        FiniteGroup::closure(n, &gens, usize::MAX).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn identity(&self) -> &Perm {
        &self.elements[0]
    }

    pub fn spec(&self) -> GroupSpec {
        GroupSpec {
            degree: self.degree,
            generators: self.generators.iter().map(ToString::to_string).collect(),
        }
    }

    /// The subgroup generated by `gens`, which must all lie in `self`.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<FiniteGroup, PermError> {
        if let Some(bad) = gens.iter().find(|g| !self.contains(g)) {
            return Err(PermError::NotASubgroup(bad.to_string()));
        }
        FiniteGroup::closure(self.degree, gens, self.order())
    }

    /// Partition into conjugacy classes; class 0 is `{id}`.
    pub fn conjugacy_classes(&self) -> ConjClassPartition {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let conjugators: Vec<Perm> = if self.generators.is_empty() {
            Vec::new()
        } else {
            self.generators.clone()
        };
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let label = classes.len();
            class_of[start] = label;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for c in &conjugators {
                    let conj = self.elements[i].conjugate_by(c);
                    let j = self.index[&conj];
                    if class_of[j] == usize::MAX {
                        class_of[j] = label;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjClassPartition { classes, class_of }
    }

    /// True iff `set` meets every conjugacy class except `{id}`.
    pub fn is_conjugation_complete(&self, set: &[Perm]) -> bool {
        let classes = self.conjugacy_classes();
        self.is_conjugation_complete_with(&classes, set)
    }

    pub fn is_conjugation_complete_with(&self, classes: &ConjClassPartition, set: &[Perm]) -> bool {
        let mut hit = vec![false; classes.len()];
        for p in set {
            if let Some(i) = self.index_of(p) {
                hit[classes.class_of[i]] = true;
            }
        }
        hit.iter().skip(1).all(|&h| h)
    }

    /// Size of `∪_{g∈G} H^g` for `H = ⟨h_generators⟩`.
    ///
    /// The union of the conjugates of `H` is exactly the union of the
    /// conjugacy classes of `G` that meet `H`.
    pub fn conjugate_union_size(&self, h_generators: &[Perm]) -> Result<usize, PermError> {
        let h = self.subgroup(h_generators)?;
        let classes = self.conjugacy_classes();
        let mut hit = vec![false; classes.len()];
        for p in h.elements() {
            hit[classes.class_of[self.index[p]]] = true;
        }
        Ok(classes.classes.iter().zip(&hit).filter(|(_, &h)| h).map(|(c, _)| c.len()).sum())
    }

    /// True iff `⟨h_generators⟩` is a proper subgroup whose conjugates cover `G`.
    pub fn is_wiegold(&self, h_generators: &[Perm]) -> Result<bool, PermError> {
        let h = self.subgroup(h_generators)?;
        if h.order() == self.order() {
            return Ok(false);
        }
        Ok(self.conjugate_union_size(h_generators)? == self.order())
    }

    /// Left cosets `gH` of `H = ⟨h_generators⟩`, as index lists into `self.elements()`.
    pub fn left_cosets(&self, h_generators: &[Perm]) -> Result<Vec<Vec<usize>>, PermError> {
        let h = self.subgroup(h_generators)?;
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut cosets = Vec::new();
        for (i, g) in self.elements.iter().enumerate() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = h.elements().iter().map(|x| self.index[&g.compose(x)]).collect();
            for &m in &members {
                coset_of[m] = cosets.len();
            }
            cosets.push(members);
        }
        Ok(cosets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClassPartition {
    /// Element indices of each class, sorted.
    pub classes: Vec<Vec<usize>>,
    /// Class label of each element index.
    pub class_of: Vec<usize>,
}

impl ConjClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// One representative (the smallest index) from each non-trivial class.
    pub fn representatives<'a>(&self, group: &'a FiniteGroup) -> Vec<&'a Perm> {
        self.classes.iter().skip(1).map(|c| &group.elements()[c[0]]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_with_degree(s, n).unwrap()
    }

    #[test]
    fn closure_of_s3() {
        let g = FiniteGroup::closure(3, &[p("(0 1)", 3), p("(0 1 2)", 3)], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.identity().is_identity());
    }

    #[test]
    fn closure_of_nothing_is_trivial() {
        let g = FiniteGroup::closure(4, &[], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closure_cap() {
        let err = FiniteGroup::closure(5, &[p("(0 1 2 3 4)", 5)], 4).unwrap_err();
        assert_eq!(err, PermError::CapExceeded { cap: 4 });
    }

    #[test]
    fn closure_rejects_mixed_degrees() {
        let err = FiniteGroup::closure(3, &[p("(0 1)", 4)], 10).unwrap_err();
        assert!(matches!(err, PermError::DegreeMismatch { .. }));
    }

    #[test]
    fn classes_of_small_groups() {
        let s3 = FiniteGroup::symmetric(3);
        let cl = s3.conjugacy_classes();
        let mut sizes = cl.sizes();
        assert_eq!(sizes[0], 1);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);

        let trivial = FiniteGroup::closure(3, &[], 1).unwrap();
        assert_eq!(trivial.conjugacy_classes().sizes(), vec![1]);

        let z4 = FiniteGroup::closure(4, &[p("(0 1 2 3)", 4)], 10).unwrap();
        assert_eq!(z4.conjugacy_classes().sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn conjugation_completeness() {
        let s3 = FiniteGroup::symmetric(3);
        assert!(s3.is_conjugation_complete(&[p("(0 1)", 3), p("(0 1 2)", 3)]));
        assert!(!s3.is_conjugation_complete(&[p("(0 1)", 3)]));
        let z2 = FiniteGroup::closure(2, &[p("(0 1)", 2)], 10).unwrap();
        assert!(z2.is_conjugation_complete(&[p("(0 1)", 2)]));
    }

    #[test]
    fn wiegold_examples() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.conjugate_union_size(&[p("(0 1)", 3)]).unwrap(), 4);
        assert!(!s3.is_wiegold(&[p("(0 1)", 3)]).unwrap());
        assert!(!s3.is_wiegold(&[p("(0 1)", 3), p("(0 1 2)", 3)]).unwrap());
        let s4 = FiniteGroup::symmetric(4);
        assert!(s4.conjugate_union_size(&[p("(0 1 2 3)", 4)]).unwrap() < 24);
        assert!(!s4.is_wiegold(&[p("(0 1 2 3)", 4)]).unwrap());
        let err = s3.is_wiegold(&[p("(0 1)", 3), p("(0 1 2)", 3), p("(0 2)", 3)]);
        assert!(err.is_ok());
        let a3 = FiniteGroup::closure(3, &[p("(0 1 2)", 3)], 10).unwrap();
        assert!(matches!(a3.is_wiegold(&[p("(0 1)", 3)]), Err(PermError::NotASubgroup(_))));
    }

    #[test]
    fn cosets_partition_group() {
        let s4 = FiniteGroup::symmetric(4);
        let cosets = s4.left_cosets(&[p("(0 1 2 3)", 4)]).unwrap();
        assert_eq!(cosets.len(), 6);
        assert!(cosets.iter().all(|c| c.len() == 4));
    }
}
