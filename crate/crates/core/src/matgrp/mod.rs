//! 2×2 matrix groups over exact rationals and doubles: `SL₂` conjugacy classes with
//! conjugators, `𝔰𝔩₂` orbits and exponentials, spectra of word samples, Borel
//! conjugation, invariant planes of real matrices, and randomized free-tuple extension.

mod borel;
mod free_ext;
mod lie;
mod mat2;
mod plane;
pub mod scalar;
mod sl2;
mod spectrum;

pub use borel::{borel_conjugator, borel_conjugator_in, gaussian, BorelBackend, BorelOutcome, BorelResult, BorelStep};
pub use free_ext::{extend_free_tuple, sample_sl2, ExtendOptions, Extension};
pub use lie::{exp_sl2, lie_classify, LieOrbit, LieOrbitKind, Sl2LieElem};
pub use mat2::{psl_equal, Mat2, MatOps};
pub use plane::{invariant_plane, InvariantPlane};
pub use scalar::{GaussRational, Rational, RealScalar, Scalar};
pub use sl2::{sl2_classify, Sl2Classification, Sl2ConjClass};
pub use spectrum::{spectrum_of_words, SpectrumReport, DEFAULT_SPECTRUM_CAP};

use thiserror::Error;

use crate::words::WordError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatError {
    #[error("determinant is not 1")]
    NotUnimodular,
    #[error("matrix is singular")]
    Singular,
    #[error("the Lie algebra element is zero")]
    ZeroElement,
    #[error("no real root: the discriminant is negative")]
    NoRealRoot,
    #[error("no root in this backend")]
    NoRoot,
    #[error("dimension {0} is too small")]
    DimensionTooSmall(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("eigen-decomposition did not converge")]
    NoConvergence,
    #[error("length bound must be at least 1")]
    ZeroLength,
    #[error("{words} words exceed the cap of {cap}")]
    Budget { words: u128, cap: u128 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("{trials} trials exhausted; most frequent relation {relation:?} ({count} times)")]
    TrialsExhausted { trials: usize, relation: Option<String>, count: usize },
    #[error("cannot parse matrix {0}")]
    Parse(String),
    #[error(transparent)]
    Word(#[from] WordError),
}
