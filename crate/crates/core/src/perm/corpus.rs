use super::{FiniteGroup, Perm};

/// Names accepted by [`named_group`].
pub const CORPUS: [&str; 10] = ["S3", "S4", "S5", "A4", "A5", "D4", "D6", "Z2", "Z6", "Q8"];

fn cycles(degree: usize, gens: &[&str]) -> Vec<Perm> {
    gens.iter().map(|g| Perm::parse_with_degree(g, degree).expect("corpus generator")).collect()
}

/// Generators of a small named group. `Dn` is the dihedral group of order `2n`; `Q8` is given
/// by its regular representation on `±1, ±i, ±j, ±k`.
pub fn named_generators(name: &str) -> Option<(usize, Vec<Perm>)> {
    let out = match name.to_ascii_uppercase().as_str() {
        "S3" => (3, cycles(3, &["(0 1)", "(0 1 2)"])),
        "S4" => (4, cycles(4, &["(0 1)", "(0 1 2 3)"])),
        "S5" => (5, cycles(5, &["(0 1)", "(0 1 2 3 4)"])),
        "A4" => (4, cycles(4, &["(0 1 2)", "(1 2 3)"])),
        "A5" => (5, cycles(5, &["(0 1 2)", "(0 1 2 3 4)"])),
        "D4" => (4, cycles(4, &["(0 1 2 3)", "(0 2)"])),
        "D6" => (6, cycles(6, &["(0 1 2 3 4 5)", "(1 5)(2 4)"])),
        "Z2" => (2, cycles(2, &["(0 1)"])),
        "Z6" => (6, cycles(6, &["(0 1 2 3 4 5)"])),
        "Q8" => {
            let i = Perm::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4]).unwrap();
            let j = Perm::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3]).unwrap();
            (8, vec![i, j])
        }
        _ => return None,
    };
    Some(out)
}

pub fn named_group(name: &str) -> Option<FiniteGroup> {
    let (degree, gens) = named_generators(name)?;
    Some(FiniteGroup::closure(degree, &gens, 1 << 12).expect("corpus groups are small"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let expected = [6, 24, 120, 12, 60, 8, 12, 2, 6, 8];
        for (name, n) in CORPUS.iter().zip(expected) {
            assert_eq!(named_group(name).unwrap().order(), n, "{name}");
        }
        assert!(named_group("S7").is_none());
    }

    #[test]
    fn q8_has_one_involution() {
        let q = named_group("q8").unwrap();
        let involutions = q.elements().iter().filter(|g| g.order() == 2).count();
        assert_eq!(involutions, 1);
        assert_eq!(q.conjugacy_classes().len(), 5);
    }
}
