//! Numeric tolerances used across the crate.
//!
//! All comparisons against computed floating point quantities go through these
//! constants so that every tolerance in the code base is documented in one
//! place. Exact values (inputs, spins, counts) are compared exactly.

/// Feasibility slack for linear constraints: a constraint `a·x >= b` counts as
/// satisfied when `a·x >= b - FEASIBILITY`.
pub const FEASIBILITY: f64 = 1e-9;

/// Smallest pivot magnitude the simplex solvers accept. Candidate pivots
/// closer to zero are treated as zero to avoid dividing by noise.
pub const PIVOT: f64 = 1e-9;

/// A constraint whose residual is below this bound is reported as tight
/// (binding) in solution certificates.
pub const TIGHT: f64 = 1e-7;

/// Agreement required between two independent routes to the same quantity
/// (different cut families, different solvers, de-embedded objective values).
pub const CROSS_CHECK: f64 = 1e-6;

/// Collection tolerance for brute-force minimizers: assignments within this
/// distance of the minimum value count as minimizers.
pub const VALUE: f64 = 1e-9;
