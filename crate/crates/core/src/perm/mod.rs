//! Finite permutation groups: closure, conjugacy classes, Wiegold and Jordan
//! checks, exhaustive invariable-generation search, and conjugate-product
//! expression in symmetric groups.

mod action;
mod corpus;
mod group;
#[allow(clippy::module_inception)]
mod perm;
mod search;

pub use action::GroupAction;
pub use corpus::{named_generators, named_group, CORPUS};
pub use group::{ConjClassPartition, FiniteGroup, GroupSpec};
pub use perm::{all_perms, Perm};
pub use search::{
    evaluate_factors, express_as_conjugate_product, express_as_product, invariably_generates, partitions_of,
    ConjugateFactor, DEFAULT_LEAF_BUDGET,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list {0:?} is not a bijection")]
    NotABijection(Vec<usize>),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears in two cycles")]
    CyclesNotDisjoint(usize),
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error("{0} is not an element of the group")]
    NotASubgroup(String),
    #[error("{0} is not an element of the group")]
    NotInGroup(String),
    #[error("action is not transitive")]
    NotTransitive,
    #[error("action domain has {0} point(s); at least 2 are required")]
    DomainTooSmall(usize),
    #[error("invalid action: {0}")]
    BadAction(String),
    #[error("element set is empty")]
    EmptySet,
    #[error("search budget exceeded after {leaves} nodes")]
    SearchBudgetExceeded { leaves: u64 },
    #[error("supply does not meet every non-trivial conjugacy class")]
    SupplyNotComplete,
    #[error("no product reaches {0}")]
    NotFound(String),
}
