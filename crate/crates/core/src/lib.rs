//! Exact arithmetic for weighted dual graphs of klt surface singularities.
//!
//! A resolution of a normal surface singularity is described combinatorially by
//! its weighted dual graph: one vertex per exceptional curve `E_i`, weighted by
//! `m_i = -E_i^2`, with an edge wherever two curves meet. Everything this crate
//! computes is derived from that graph in exact integer/rational arithmetic —
//! no floating point anywhere:
//!
//! - [`dualgraph`] — the graph type, validation (tree-ness, weight bounds,
//!   negative definiteness), tree paths, and the determinant calculus
//!   `Δ(Γ')` on induced subgraphs;
//! - [`discrepancy`] — log discrepancies `a(E_k, Y, 0)`, pull-back
//!   multiplicities `mult_{E_k} π*C`, boundary discrepancies
//!   `a(E_k, Y, (1-δ)C)`, and the δ-lc test;
//! - [`oracle`] — independent linear-system reference implementations of the
//!   same quantities, kept separate so the two routes can be cross-checked;
//! - [`hj`] — Hirzebruch–Jung continued fractions and the resolution chains of
//!   cyclic quotient singularities `(1/n)(1, a)`;
//! - [`verify`] — exhaustive enumeration harnesses for the chain determinant
//!   laws and the pull-back multiplicity lower bound;
//! - [`bounds`] — exact evaluators for the closed-form threshold and volume
//!   bounds, with grid consistency checks.

pub mod bounds;
pub mod det;
pub mod discrepancy;
pub mod dualgraph;
pub mod graphfile;
pub mod hj;
pub mod oracle;
pub mod rat;
pub mod verify;

use thiserror::Error;

pub use discrepancy::CurveAttachment;
pub use dualgraph::{DualGraph, SubgraphSelector, ValidationReport};
pub use hj::CyclicQuotient;
pub use rat::{parse_rat, rat, Rat};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1} (intersection multiplicities > 1 are not supported)")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a chain")]
    NotAChain,
    #[error("graph is not a valid singularity graph: {0}")]
    InvalidGraph(String),
    #[error("curve attachment has {got} entries, graph has {expected} vertices")]
    CurveLengthMismatch { got: usize, expected: usize },
    #[error("curve intersection numbers must be non-negative")]
    NegativeCurveEntry,
    #[error("parameter {name} = {value} outside required range {range}")]
    ParamRange {
        name: &'static str,
        value: String,
        range: &'static str,
    },
    #[error("invalid rational '{input}': {msg}")]
    ParseRational { input: String, msg: String },
    #[error("line {line}: {msg}")]
    ParseGraph { line: usize, msg: String },
    #[error("intersection matrix is singular")]
    SingularMatrix,
}

pub type Result<T> = std::result::Result<T, Error>;
