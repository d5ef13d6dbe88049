use std::collections::{HashMap, HashSet, VecDeque};

use super::{all_perms, FiniteGroup, Perm, PermError};

/// Default leaf budget for [`invariably_generates`].
pub const DEFAULT_LEAF_BUDGET: u64 = 5_000_000;

struct IgSearch<'a> {
    group: &'a FiniteGroup,
    choices: Vec<Vec<usize>>,
    budget: u64,
    explored: u64,
    known_good: HashSet<(usize, Vec<u64>)>,
}

impl IgSearch<'_> {
    fn bits(&self, members: &[bool]) -> Vec<u64> {
        let mut out = vec![0u64; members.len().div_ceil(64)];
        for (i, &m) in members.iter().enumerate() {
            if m {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }

    /// Closure of `gens` as a membership mask over group indices.
    fn closure(&self, gens: &[usize]) -> (Vec<bool>, usize) {
        let elements = self.group.elements();
        let mut member = vec![false; elements.len()];
        member[0] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &g in gens {
                let j = self.group.index_of(&elements[g].compose(&elements[i])).unwrap();
                if !member[j] {
                    member[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
        (member, count)
    }

    fn dfs(&mut self, depth: usize, gens: &mut Vec<usize>, member: &[bool], count: usize) -> Result<bool, PermError> {
        if count == self.group.order() {
            return Ok(true);
        }
        self.explored += 1;
        if self.explored > self.budget {
            return Err(PermError::SearchBudgetExceeded { leaves: self.explored });
        }
        if depth == self.choices.len() {
            return Ok(false);
        }
        let key = (depth, self.bits(member));
        if self.known_good.contains(&key) {
            return Ok(true);
        }
        for k in 0..self.choices[depth].len() {
            let c = self.choices[depth][k];
            let ok = if member[c] {
                self.dfs(depth + 1, gens, member, count)?
            } else {
                gens.push(c);
                let (next, next_count) = self.closure(gens);
                let ok = self.dfs(depth + 1, gens, &next, next_count)?;
                gens.pop();
                ok
            };
            if !ok {
                return Ok(false);
            }
        }
        self.known_good.insert(key);
        Ok(true)
    }
}

/// Decides whether `set` invariably generates `group`: every choice of one
/// conjugate per element generates the whole group.
///
/// Depth-first search over conjugate choices. The first element is kept as
/// given, since conjugating a whole tuple by one element does not change the
/// subgroup it generates up to conjugacy. A branch stops as soon as the
/// chosen conjugates already generate `group`, and subgroups already shown to
/// complete successfully at a given depth are memoised.
pub fn invariably_generates(group: &FiniteGroup, set: &[Perm], leaf_budget: u64) -> Result<bool, PermError> {
    if set.is_empty() {
        return Err(PermError::EmptySet);
    }
    let classes = group.conjugacy_classes();
    let mut choices = Vec::with_capacity(set.len());
    for (k, s) in set.iter().enumerate() {
        let i = group.index_of(s).ok_or_else(|| PermError::NotInGroup(s.to_string()))?;
        if k == 0 {
            choices.push(vec![i]);
        } else {
            choices.push(classes.classes[classes.class_of[i]].clone());
        }
    }
    let mut search = IgSearch { group, choices, budget: leaf_budget, explored: 0, known_good: HashSet::new() };
    let mut member = vec![false; group.order()];
    member[0] = true;
    search.dfs(0, &mut Vec::new(), &member, 1)
}

/// One factor `supply[index]` conjugated by `conjugator`, i.e. `c · s · c⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateFactor {
    pub index: usize,
    pub conjugator: Perm,
}

impl ConjugateFactor {
    pub fn evaluate(&self, supply: &[Perm]) -> Perm {
        supply[self.index].conjugate_by(&self.conjugator)
    }
}

/// Evaluates `f₁ · f₂ ⋯ f_k` for a factor list.
pub fn evaluate_factors(degree: usize, factors: &[ConjugateFactor], supply: &[Perm]) -> Perm {
    factors.iter().fold(Perm::identity(degree), |acc, f| acc.compose(&f.evaluate(supply)))
}

fn meets_every_class(degree: usize, supply: &[Perm]) -> bool {
    let types: HashSet<Vec<usize>> = supply.iter().map(Perm::cycle_type).collect();
    partitions_of(degree).into_iter().filter(|p| p.len() < degree).all(|p| types.contains(&p))
}

/// Integer partitions of `n`, parts in decreasing order.
pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Writes `target` as a product of conjugates of `supply` elements in `S_degree`.
///
/// `supply` must meet every non-trivial conjugacy class of `S_degree`. Breadth-first
/// search over group elements reached, so the returned product is as short as possible;
/// ties are broken by supply index and then by conjugator in lexicographic order.
pub fn express_as_conjugate_product(degree: usize, target: &Perm, supply: &[Perm]) -> Result<Vec<ConjugateFactor>, PermError> {
    if target.degree() != degree || supply.iter().any(|s| s.degree() != degree) {
        return Err(PermError::DegreeMismatch { expected: degree, found: target.degree() });
    }
    if !meets_every_class(degree, supply) {
        return Err(PermError::SupplyNotComplete);
    }
    // distinct conjugates, first conjugator wins
    let mut steps: Vec<(Perm, ConjugateFactor)> = Vec::new();
    let mut seen = HashSet::new();
    let conjugators = all_perms(degree);
    for (index, s) in supply.iter().enumerate() {
        for c in &conjugators {
            let conj = s.conjugate_by(c);
            if seen.insert((index, conj.clone())) {
                steps.push((conj, ConjugateFactor { index, conjugator: c.clone() }));
            }
        }
    }
    let path = bfs(degree, target, &steps)?;
    Ok(path)
}

/// Writes `target` as a plain product of `supply` elements (no inverses, no conjugation).
///
/// Used to realise a conjugator from elements that generate the whole symmetric group.
pub fn express_as_product(degree: usize, target: &Perm, supply: &[Perm]) -> Result<Vec<usize>, PermError> {
    let steps: Vec<(Perm, usize)> = supply.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    bfs(degree, target, &steps)
}

fn bfs<T: Clone>(degree: usize, target: &Perm, steps: &[(Perm, T)]) -> Result<Vec<T>, PermError> {
    let id = Perm::identity(degree);
    let mut parent: HashMap<Perm, Option<(Perm, usize)>> = HashMap::from([(id.clone(), None)]);
    let mut queue = VecDeque::from([id]);
    while let Some(cur) = queue.pop_front() {
        if &cur == target {
            let mut path = Vec::new();
            let mut at = cur;
            while let Some(Some((prev, step))) = parent.get(&at).cloned() {
                path.push(steps[step].1.clone());
                at = prev;
            }
            path.reverse();
            return Ok(path);
        }
        for (k, (f, _)) in steps.iter().enumerate() {
            let next = cur.compose(f);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), k)));
                queue.push_back(next);
            }
        }
    }
    Err(PermError::NotFound(target.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_with_degree(s, n).unwrap()
    }

    #[test]
    fn ig_examples() {
        let s3 = FiniteGroup::symmetric(3);
        assert!(invariably_generates(&s3, &[p("(0 1)", 3), p("(0 1 2)", 3)], 1000).unwrap());
        assert!(!invariably_generates(&s3, &[p("(0 1 2)", 3)], 1000).unwrap());
        let z2 = FiniteGroup::closure(2, &[p("(0 1)", 2)], 10).unwrap();
        assert!(invariably_generates(&z2, &[p("(0 1)", 2)], 10).unwrap());
    }

    /// Brute force over every choice of conjugates, no pruning and no fixed first element.
    fn ig_brute(group: &FiniteGroup, set: &[Perm]) -> bool {
        let classes = group.conjugacy_classes();
        let options: Vec<Vec<Perm>> = set
            .iter()
            .map(|s| {
                let i = group.index_of(s).unwrap();
                classes.classes[classes.class_of[i]].iter().map(|&j| group.elements()[j].clone()).collect()
            })
            .collect();
        let mut idx = vec![0usize; set.len()];
        loop {
            let chosen: Vec<Perm> = idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
            if FiniteGroup::closure(group.degree(), &chosen, usize::MAX).unwrap().order() != group.order() {
                return false;
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return true;
                }
                idx[k] += 1;
                if idx[k] < options[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn pruned_search_agrees_with_brute_force() {
        let s4 = FiniteGroup::symmetric(4);
        let elems = s4.elements().to_vec();
        for a in (0..elems.len()).step_by(5) {
            for b in (0..elems.len()).step_by(3) {
                let set = [elems[a].clone(), elems[b].clone()];
                assert_eq!(invariably_generates(&s4, &set, u64::MAX).unwrap(), ig_brute(&s4, &set), "{set:?}");
            }
        }
    }

    #[test]
    fn ig_budget_and_membership_errors() {
        let s4 = FiniteGroup::symmetric(4);
        let set = [p("(0 1)", 4), p("(0 1)(2 3)", 4), p("(0 1)(2 3)", 4)];
        assert!(matches!(invariably_generates(&s4, &set, 1), Err(PermError::SearchBudgetExceeded { .. })));
        let a4 = FiniteGroup::closure(4, &[p("(0 1 2)", 4), p("(1 2 3)", 4)], 100).unwrap();
        assert!(matches!(invariably_generates(&a4, &[p("(0 1)", 4)], 10), Err(PermError::NotInGroup(_))));
        assert_eq!(invariably_generates(&a4, &[], 10), Err(PermError::EmptySet));
    }

    #[test]
    fn conjugate_product_examples() {
        let supply3 = [p("(0 1)", 3), p("(0 1 2)", 3)];
        assert!(express_as_conjugate_product(3, &Perm::identity(3), &supply3).unwrap().is_empty());
        let one = express_as_conjugate_product(3, &p("(0 1)", 3), &supply3).unwrap();
        assert_eq!(one, vec![ConjugateFactor { index: 0, conjugator: Perm::identity(3) }]);

        let supply4 = [p("(0 1)", 4), p("(0 1 2)", 4), p("(0 1 2 3)", 4), p("(0 1)(2 3)", 4)];
        let target = p("(0 1 2 3)", 4);
        let f = express_as_conjugate_product(4, &target, &supply4).unwrap();
        assert_eq!(evaluate_factors(4, &f, &supply4), target);
        for t in all_perms(4) {
            let f = express_as_conjugate_product(4, &t, &supply4).unwrap();
            assert_eq!(evaluate_factors(4, &f, &supply4), t);
            assert!(f.len() <= 2);
        }
    }

    #[test]
    fn incomplete_supply_is_rejected() {
        let err = express_as_conjugate_product(4, &p("(0 1)", 4), &[p("(0 1)", 4), p("(0 1 2 3)", 4)]);
        assert_eq!(err, Err(PermError::SupplyNotComplete));
    }

    #[test]
    fn plain_products() {
        let gens = [p("(0 1)", 4), p("(0 1 2 3)", 4)];
        for t in all_perms(4) {
            let w = express_as_product(4, &t, &gens).unwrap();
            let prod = w.iter().fold(Perm::identity(4), |acc, &i| acc.compose(&gens[i]));
            assert_eq!(prod, t);
        }
    }

    #[test]
    fn partitions() {
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(5).len(), 7);
    }
}
