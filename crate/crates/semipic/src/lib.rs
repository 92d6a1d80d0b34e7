//! Exact-arithmetic computation of wall-and-chamber structures.
//!
//! The crate is organized around a pipeline:
//!
//! - [`exactgeom`]: arbitrary-precision rational vectors and matrices,
//!   rational polyhedral cones with dual (generator / halfspace)
//!   representations, and verifiers for the polyhedral-fan and
//!   wall-and-chamber axioms, including exact chamber enumeration by
//!   sign-vector cells of a hyperplane arrangement.
//! - [`quivercore`]: quivers, exchange matrices, the Euler-Ringel pairing,
//!   null roots of Euclidean quivers, g-vectors from dimension vectors,
//!   Fomin-Zelevinsky mutation, and the `A_k^+` / `A_k^-` transport matrices.
//! - [`nakayama`]: the self-injective Nakayama algebras `Lambda_r = K Z_r / rad^(r+1)`
//!   as a complete combinatorial model: indecomposables, explicit Hom spaces,
//!   g-vectors, support tau-tilting enumeration (twice, independently),
//!   semi-invariant domains and exchange-wall brick labels.
//! - [`tame`]: exceptional tubes of a tame hereditary algebra, regular
//!   semi-invariant domains, projective vectors, and the infinitesimal /
//!   v-perp membership oracles.
//! - [`coamalg`]: co-amalgamated products of labeled cone sets along linear
//!   functionals, and the linear isomorphism onto the regular structure.
//! - [`srr`]: support regular rigid triples, their cones and polyhedral fan,
//!   cluster enumeration, the chamber bijection, and wall labeling.
//! - [`mutapp`]: piecewise-linear mutation transport of whole regular
//!   pictures together with their null data.
//!
//! All geometry is exact; no floating point is used anywhere in this crate.

pub mod coamalg;
pub mod exactgeom;
pub mod mutapp;
pub mod nakayama;
pub mod quivercore;
pub mod srr;
pub mod tame;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("linear system is infeasible")]
    Infeasible,
    #[error("quiver is not of Euclidean type: {0}")]
    NotEuclidean(String),
    #[error("quiver parse error: {0}")]
    QuiverParse(String),
    #[error("tube table required for non-A-tilde quivers")]
    MissingTubeTable,
    #[error("tube table parse error: {0}")]
    TubeTableParse(String),
    #[error("tube data invariant violated: {0}")]
    InvariantViolation(String),
    #[error("module is not a brick")]
    NotBrick,
    #[error("object is not support tau-rigid")]
    NotRigid,
    #[error("triple is not support regular rigid: {0}")]
    NotSrr(String),
    #[error("triple is not a support regular cluster")]
    NotCluster,
    #[error("objects do not form an exchange pair")]
    NotExchangePair,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("mutation transport produced a negative label entry")]
    NegativeLabel,
    #[error("mutation sign condition is ambiguous and the candidates disagree")]
    SignAmbiguous,
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
