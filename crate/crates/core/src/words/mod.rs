//! Free words and one-variable monomials over a group: reduction, enumeration of
//! words reduced on a tuple, evaluation, and bounded freeness certificates.

mod certify;
mod enumerate;
mod monomial;
mod ops;
mod word;

pub use certify::{
    free_up_to, FreenessCertificate, FreenessOptions, FreenessStatus, DEFAULT_WORD_CAP, ORDER_PROBE_BOUND,
};
pub use enumerate::{
    count_reduced_words, count_up_to, enumerate_reduced_words, walk_evaluated, walk_reduced_words, ReducedWords,
};
pub use monomial::Monomial;
pub use ops::{probe_order, GroupOps, PermOps};
pub use word::{Letter, TupleSpec, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("variable x{var} used but the tuple has {tuple_len} entries")]
    VariableOutOfRange { var: usize, tuple_len: usize },
    #[error("cannot parse word token {0:?}")]
    Parse(String),
    #[error("length bound must be at least 1")]
    ZeroLength,
    #[error("{words} words exceed the cap of {cap}")]
    Budget { words: u128, cap: u128 },
}
