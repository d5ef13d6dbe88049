//! Invariable generation in the small corpus: Wiegold subgroups, Jordan elements and
//! conjugation-complete sets.

use invgen::perm::{invariably_generates, named_group, GroupAction, Perm, CORPUS, DEFAULT_LEAF_BUDGET};

fn main() {
    for name in CORPUS {
        let g = named_group(name).unwrap();
        let classes = g.conjugacy_classes();
        let reps: Vec<Perm> = classes.representatives(&g).into_iter().cloned().collect();
        let ig = invariably_generates(&g, &reps, DEFAULT_LEAF_BUDGET).unwrap();
        let regular = GroupAction::regular(&g);
        let active = regular.jordan_active_element().unwrap().map(Perm::to_string);
        println!(
            "{name:>3}: order {:>3}, class sizes {:?}, representatives IG: {ig}, active on regular action: {}",
            g.order(),
            classes.sizes(),
            active.unwrap_or_else(|| "-".into()),
        );
    }

    let s4 = named_group("S4").unwrap();
    let h = [Perm::parse_with_degree("(0 1 2)", 4).unwrap()];
    println!(
        "S4: <(0 1 2)> is Wiegold: {} (conjugates cover {} of 24 elements)",
        s4.is_wiegold(&h).unwrap(),
        s4.conjugate_union_size(&h).unwrap()
    );
}
