//! Automorphisms of the `d`-regular tree with a legal coloring: exact recipes and depth
//! truncations, the elliptic/inversion/hyperbolic classification, orbital types and
//! conjugacy, local actions on spheres, canonical type-`(n, 𝒫)`, odometer and translation
//! elements, and the two constructive generation procedures (vertex transitivity from a
//! translation and an odometer; stabilizer approximation from typed elements).

mod addr;
mod atom;
mod classify;
mod construct;
mod element;
mod generate;
mod local;
mod orbital;

pub use addr::{ball, ball_about, sphere, sphere_about, sphere_size, Addr};
pub use atom::{Atom, Portrait, Table};
pub use classify::{classify, translation_length, TreeClass};
pub use construct::{
    about, default_witness, make_edge_flip, make_hyperbolic_translation, make_spherically_transitive, make_type_np,
    random_automorphism, random_stabilizer_element, translation_to, TypeSpec,
};
pub use element::{TreeAut, TreeOps, WORKING_DEPTH};
pub use generate::{
    stabilizer_approximation, vertex_transitivity_witness, StabilizerApproximation, Supply, VertexWitness,
};
pub use local::{
    in_family_h, in_family_p1, in_family_pn, in_family_ts, phi_v1, phi_vn, phi_vnu, sphere_orbit_sizes,
    verify_spherical_transitivity,
};
pub use orbital::{conjugacy_test, orbital_type, orbital_type_about, Center, Conjugacy, OrbitNode, OrbitalType};

use thiserror::Error;

use crate::perm::PermError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("invalid address {0:?}")]
    InvalidAddress(String),
    #[error("valence {0} is not supported")]
    InvalidValence(usize),
    #[error("valence mismatch: {left} vs {right}")]
    ValenceMismatch { left: usize, right: usize },
    #[error("depth exhausted: {0}")]
    DepthExhausted(String),
    #[error("invalid partition {0}")]
    InvalidPartition(String),
    #[error("not in the stabilizer: {0}")]
    NotInStabilizer(String),
    #[error("not in the ball stabilizer: {0}")]
    NotInBallStabilizer(String),
    #[error("wrong class: {0}")]
    WrongClass(String),
    #[error("supply incomplete: {0}")]
    SupplyIncomplete(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid truncation: {0}")]
    InvalidTable(String),
    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),
    #[error("cannot parse {0}")]
    Parse(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}
