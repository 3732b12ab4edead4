//! Equivalent embedded Ising models via optimal per-qubit weight distribution.
//!
//! Given an Ising problem over a logical graph, a hardware graph, and a minor
//! embedding of the former into the latter, this crate computes parameters for
//! the embedded problem — a distribution of each logical weight over the qubits
//! of its image and a uniform ferromagnetic coupling strength per image — such
//! that the embedded problem provably preserves the original optima with a
//! configurable energy gap to any unsynchronized assignment.
//!
//! The coupling strength is not guessed from a global scaling factor. For each
//! logical vertex the crate builds a small linear program over the cuts of the
//! image subgraph, minimizes the coupling strength subject to the gap
//! constraints, and distributes the vertex weight optimally at the same time.
//! Exhaustive oracles ([`oracle`]) re-verify every claimed guarantee on desk
//! scale instances: sufficiency of the per-image parameters, redundancy of the
//! restricted cut families, and end-to-end equality of the ground states.
//!
//! Module map:
//! - [`graph`], [`ising`]: graphs, Ising models, brute-force ground states.
//! - [`embedding`]: minor embeddings, validation, embedded graph structure.
//! - [`preprocess`]: fixing of dominated spins on the logical problem.
//! - [`subproblem`]: per-vertex weight distribution instances.
//! - [`cuts`]: cut families (all subsets, connected cuts, tree edge cuts).
//! - [`lp`]: the gapped weight distribution linear program and its solvers.
//! - [`setter`]: parameter setting, offset bookkeeping, baseline comparison.
//! - [`oracle`]: brute-force verification of sufficiency and equivalence.
//! - [`testgen`]: seeded generators for reproducible test instances.

pub mod cuts;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod ising;
pub mod lp;
pub mod oracle;
pub mod preprocess;
pub mod setter;
pub mod subproblem;
pub mod testgen;
pub mod tolerance;

pub use error::{Error, Result};
