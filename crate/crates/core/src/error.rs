//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by graph, model, embedding and solver operations.
///
/// Anticipated failures (invalid input files, embeddings that do not satisfy
/// the minor embedding conditions, oversized exponential enumerations) are
/// reported through this type; internal invariant violations use
/// [`Error::Internal`] and indicate a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("assignment does not match the model vertices: {0}")]
    DomainMismatch(String),

    #[error("{what} has {size} vertices, enumeration is limited to {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("{0} is not connected")]
    Disconnected(String),

    #[error("{0} is not a tree")]
    NotATree(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    /// The weight of a vertex dominates its incident strengths, so the vertex
    /// should have been fixed by preprocessing before parameters are set.
    #[error(
        "vertex `{vertex}` is preprocessable: |weight| = {lambda} >= {sigma_total} = \
         total incident strength"
    )]
    PreprocessableVertex {
        vertex: String,
        lambda: f64,
        sigma_total: f64,
    },

    #[error("linear program: {0}")]
    Lp(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
