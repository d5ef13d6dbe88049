use super::{FiniteGroup, Perm, PermError};

/// A finite group acting on `{0, .., domain_size-1}`.
///
/// The action is stored as one permutation of the domain per group element,
/// parallel to `group.elements()`. It is a homomorphism under the crate's
/// composition law: `act(gh, x) = act(g, act(h, x))`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    images: Vec<Perm>,
}

impl GroupAction {
    /// Wraps explicit images, checking the homomorphism law on generators and the identity.
    pub fn new(group: FiniteGroup, images: Vec<Perm>) -> Result<Self, PermError> {
        if images.len() != group.order() || images.is_empty() {
            return Err(PermError::BadAction("one image per group element is required".into()));
        }
        let n = images[0].degree();
        if images.iter().any(|p| p.degree() != n) {
            return Err(PermError::BadAction("images have mixed degrees".into()));
        }
        if !images[0].is_identity() {
            return Err(PermError::BadAction("identity does not act trivially".into()));
        }
        for g in group.generators() {
            let gi = group.index_of(g).expect("generator is a member");
            for (hi, h) in group.elements().iter().enumerate() {
                let gh = group.index_of(&g.compose(h)).unwrap();
                if images[gh] != images[gi].compose(&images[hi]) {
                    return Err(PermError::BadAction("composition law fails".into()));
                }
            }
        }
        Ok(GroupAction { group, images })
    }

    /// The defining action on `{0, .., degree-1}`.
    pub fn natural(group: &FiniteGroup) -> Self {
        GroupAction { group: group.clone(), images: group.elements().to_vec() }
    }

    /// Left multiplication on the group itself.
    pub fn regular(group: &FiniteGroup) -> Self {
        let images = group
            .elements()
            .iter()
            .map(|g| {
                let imgs = group.elements().iter().map(|x| group.index_of(&g.compose(x)).unwrap()).collect();
                Perm::from_images(imgs).unwrap()
            })
            .collect();
        GroupAction { group: group.clone(), images }
    }

    /// Left multiplication on the left cosets of `⟨h_generators⟩`.
    pub fn on_cosets(group: &FiniteGroup, h_generators: &[Perm]) -> Result<Self, PermError> {
        let cosets = group.left_cosets(h_generators)?;
        let mut coset_of = vec![0usize; group.order()];
        for (c, members) in cosets.iter().enumerate() {
            for &m in members {
                coset_of[m] = c;
            }
        }
        let images = group
            .elements()
            .iter()
            .map(|g| {
                let imgs = cosets
                    .iter()
                    .map(|members| {
                        let rep = &group.elements()[members[0]];
                        coset_of[group.index_of(&g.compose(rep)).unwrap()]
                    })
                    .collect();
                Perm::from_images(imgs).unwrap()
            })
            .collect();
        Ok(GroupAction { group: group.clone(), images })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn domain_size(&self) -> usize {
        self.images[0].degree()
    }

    /// Image of `point` under the element with index `element`.
    pub fn act(&self, element: usize, point: usize) -> usize {
        self.images[element].apply(point)
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.domain_size();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for g in self.group.generators() {
                let y = self.images[self.group.index_of(g).unwrap()].apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The first element (in group order) acting without fixed points.
    ///
    /// Jordan's theorem guarantees one exists for transitive actions on at least two points.
    pub fn jordan_active_element(&self) -> Result<Option<&Perm>, PermError> {
        if self.domain_size() < 2 {
            return Err(PermError::DomainTooSmall(self.domain_size()));
        }
        if !self.is_transitive() {
            return Err(PermError::NotTransitive);
        }
        Ok(self
            .images
            .iter()
            .position(|img| img.fixed_points() == 0)
            .map(|i| &self.group.elements()[i]))
    }
}
