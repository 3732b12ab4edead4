//! Brute-force verification of every claimed guarantee.
//!
//! Nothing here shares logic with the solver path: sufficiency is checked by
//! enumerating all inner assignments against all extremal outer fields,
//! redundancy by solving the program over the unrestricted subset family,
//! and equivalence by grounding both models exhaustively. The oracles are
//! deliberately simple and guarded by size limits.

use std::collections::BTreeMap;

use crate::cuts::{all_subsets_with_limit, connected_cuts_with_limit};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ising::{brute_force_minimum, SpinAssignment};
use crate::lp::{build_lp, solve_simplex};
use crate::setter::EmbeddedIsingModel;
use crate::subproblem::SubproblemInstance;
use crate::tolerance;

/// Inner vertex cap for the sufficiency scan (`4^n` pairs).
pub const SUFFICIENCY_LIMIT: usize = 14;
/// Inner vertex cap for the redundancy check (two full-family solves).
pub const REDUNDANCY_LIMIT: usize = 12;

/// The worst pair found by a failed sufficiency scan.
#[derive(Debug, Clone)]
pub struct SufficiencyWitness {
    /// Non-constant inner assignment realizing the worst margin.
    pub assignment: SpinAssignment,
    /// Extremal outer field directions (sign of the field at each inner
    /// vertex).
    pub field_signs: SpinAssignment,
    pub margin: f64,
}

/// Result of scanning one instance's parameters against all adversaries.
#[derive(Debug, Clone)]
pub struct SufficiencyReport {
    pub pass: bool,
    /// Smallest margin of any non-constant assignment over the best constant
    /// one; infinite when the image is a single qubit.
    pub worst_margin: f64,
    /// Demanded separation (twice the half-gap).
    pub required_gap: f64,
    pub pairs_checked: usize,
    /// Present exactly when the scan failed.
    pub witness: Option<SufficiencyWitness>,
}

/// Exhaustively checks that `(theta, omega)` enforce the gap on an instance.
///
/// For every extremal outer field `s` and every non-constant inner
/// assignment `r`, the inner objective
/// `sum omega_q r_q - theta * sum_{pq in E} r_p r_q + sum sigma_q r_q s_q`
/// must exceed the best constant assignment by at least `required_gap`
/// (minus the feasibility tolerance). Single-vertex instances pass
/// vacuously: every assignment is constant.
pub fn verify_sufficiency(
    inst: &SubproblemInstance,
    theta: f64,
    omega: &[f64],
    required_gap: f64,
) -> Result<SufficiencyReport> {
    let n = inst.graph.vertex_count();
    if n > SUFFICIENCY_LIMIT {
        return Err(Error::SizeLimit {
            what: "sufficiency scan vertices",
            size: n,
            limit: SUFFICIENCY_LIMIT,
        });
    }
    if omega.len() != n {
        return Err(Error::Contract(format!(
            "{} weights for {n} inner vertices",
            omega.len()
        )));
    }
    if n <= 1 {
        return Ok(SufficiencyReport {
            pass: true,
            worst_margin: f64::INFINITY,
            required_gap,
            pairs_checked: 0,
            witness: None,
        });
    }

    let size = 1usize << n;
    let full = size - 1;
    // Subset sums make every term of the objective O(1) per pair: a sign
    // pattern contributes `total - 2 * sum over its negative set`.
    let mut ss_sigma = vec![0.0; size];
    let mut ss_omega = vec![0.0; size];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        ss_sigma[mask] = ss_sigma[mask & (mask - 1)] + inst.sigma[low];
        ss_omega[mask] = ss_omega[mask & (mask - 1)] + omega[low];
    }
    let sigma_total = ss_sigma[full];
    let omega_total = ss_omega[full];
    let m_edges = inst.graph.edge_count() as f64;

    // Inner energy per assignment: weight term plus coupling term.
    let mut inner = vec![0.0; size];
    for (r, e) in inner.iter_mut().enumerate() {
        let weight = omega_total - 2.0 * ss_omega[full ^ r];
        let mut agree = 0i64;
        for &(p, q) in inst.graph.edges() {
            if (r >> p & 1) == (r >> q & 1) {
                agree += 1;
            } else {
                agree -= 1;
            }
        }
        *e = weight - theta * agree as f64;
    }

    let mut worst = f64::INFINITY;
    let mut worst_pair = (0usize, 0usize);
    let mut pairs = 0usize;
    for s in 0..size {
        let field = sigma_total - 2.0 * ss_sigma[full ^ s];
        // Best constant assignment under this field: all up or all down.
        let best_const = -theta * m_edges - (omega_total + field).abs();
        for r in 1..full {
            let cross = sigma_total - 2.0 * ss_sigma[r ^ s];
            let margin = inner[r] + cross - best_const;
            pairs += 1;
            if margin < worst {
                worst = margin;
                worst_pair = (r, s);
            }
        }
    }

    let pass = worst >= required_gap - tolerance::FEASIBILITY;
    let witness = (!pass).then(|| {
        let to_spins = |mask: usize| -> Vec<i8> {
            (0..n)
                .map(|q| if mask >> q & 1 == 1 { 1 } else { -1 })
                .collect()
        };
        SufficiencyWitness {
            assignment: SpinAssignment::from_dense(&inst.graph, &to_spins(worst_pair.0)),
            field_signs: SpinAssignment::from_dense(&inst.graph, &to_spins(worst_pair.1)),
            margin: worst,
        }
    });
    Ok(SufficiencyReport {
        pass,
        worst_margin: worst,
        required_gap,
        pairs_checked: pairs,
        witness,
    })
}

/// Rebuilds each vertex's instance from the embedded model alone and runs
/// the sufficiency scan on it with the recorded parameters.
///
/// The inner graph is recovered from nonzero intra strengths (which must all
/// equal `-theta`), sigma from the absolute coupler strengths, the weight
/// magnitude and half-gap from the record. Verification therefore covers the
/// model as written, not the solver's intermediate state.
pub fn verify_solution_gap(
    embedded: &EmbeddedIsingModel,
) -> Result<Vec<(String, SufficiencyReport)>> {
    let graph = embedded.model.graph();
    let mut owner: Vec<Option<&str>> = vec![None; graph.vertex_count()];
    for (v, record) in &embedded.per_vertex {
        for q in record.omega.keys() {
            let qi = graph.require_index(q)?;
            if owner[qi].replace(v).is_some() {
                return Err(Error::Contract(format!("`{q}` owned by two images")));
            }
        }
    }
    if owner.iter().any(Option::is_none) {
        return Err(Error::Contract(
            "weight records do not cover the embedded graph".to_string(),
        ));
    }

    let mut reports = Vec::new();
    for (v, record) in &embedded.per_vertex {
        let image: Vec<usize> = record
            .omega
            .keys()
            .map(|q| graph.require_index(q))
            .collect::<Result<_>>()?;
        let image_ids: Vec<&str> = image.iter().map(|&q| graph.id(q)).collect();
        let in_image = |q: usize| owner[q] == Some(v.as_str());

        // Inner edges: intra edges carrying strength; each must be -theta.
        let mut inner_edges = Vec::new();
        let mut sigma_by_id: BTreeMap<&str, f64> = image_ids.iter().map(|&i| (i, 0.0)).collect();
        for (e, &(p, q)) in graph.edges().iter().enumerate() {
            let s = embedded.model.strengths()[e];
            match (in_image(p), in_image(q)) {
                (true, true) => {
                    if s != 0.0 {
                        let theta = record.theta.ok_or_else(|| {
                            Error::Contract(format!(
                                "`{v}` has inner strengths but no coupling record"
                            ))
                        })?;
                        if (s + theta).abs() > tolerance::FEASIBILITY * (1.0 + theta.abs()) {
                            return Err(Error::Contract(format!(
                                "inner edge of `{v}` has strength {s}, expected {}",
                                -theta
                            )));
                        }
                        inner_edges.push((graph.id(p), graph.id(q)));
                    }
                }
                (true, false) => *sigma_by_id.get_mut(graph.id(p)).unwrap() += s.abs(),
                (false, true) => *sigma_by_id.get_mut(graph.id(q)).unwrap() += s.abs(),
                (false, false) => {}
            }
        }

        let inner_graph = Graph::new(image_ids.iter().copied(), inner_edges)?;
        let sigma: Vec<f64> = inner_graph
            .ids()
            .iter()
            .map(|id| sigma_by_id[id.as_str()])
            .collect();
        let omega: Vec<f64> = inner_graph
            .ids()
            .iter()
            .map(|id| record.omega[id.as_str()])
            .collect();
        let inst = SubproblemInstance {
            graph: inner_graph,
            sigma,
            lambda: omega.iter().sum::<f64>().abs(),
            gamma: record.gamma,
        };
        let report = verify_sufficiency(
            &inst,
            record.theta.unwrap_or(0.0),
            &omega,
            2.0 * record.gamma,
        )?;
        reports.push((v.clone(), report));
    }
    Ok(reports)
}

/// Redundancy check: the connected cut family must reach the same optimum as
/// all subsets.
#[derive(Debug, Clone)]
pub struct RedundancyReport {
    pub theta_all_subsets: f64,
    pub theta_connected: f64,
}

impl RedundancyReport {
    pub fn pass(&self) -> bool {
        (self.theta_all_subsets - self.theta_connected).abs()
            <= tolerance::CROSS_CHECK * (1.0 + self.theta_all_subsets.abs())
    }
}

/// Solves the instance over both the unrestricted and the connected cut
/// family and reports the two optima.
pub fn verify_redundancy(inst: &SubproblemInstance) -> Result<RedundancyReport> {
    let n = inst.graph.vertex_count();
    if n > REDUNDANCY_LIMIT {
        return Err(Error::SizeLimit {
            what: "redundancy check vertices",
            size: n,
            limit: REDUNDANCY_LIMIT,
        });
    }
    let all = all_subsets_with_limit(&inst.graph, REDUNDANCY_LIMIT)?;
    let connected = connected_cuts_with_limit(&inst.graph, REDUNDANCY_LIMIT)?;
    let theta_all = solve_simplex(&build_lp(inst, &all)?)?.theta;
    let theta_connected = solve_simplex(&build_lp(inst, &connected)?)?.theta;
    Ok(RedundancyReport {
        theta_all_subsets: theta_all,
        theta_connected,
    })
}

/// Maps a logical assignment to the embedded assignment that copies each
/// vertex's spin onto every qubit of its image.
pub fn synchronized(
    embedded: &EmbeddedIsingModel,
    logical: &SpinAssignment,
) -> Result<SpinAssignment> {
    if logical.len() != embedded.per_vertex.len() {
        return Err(Error::DomainMismatch(format!(
            "assignment covers {} vertices, model has {}",
            logical.len(),
            embedded.per_vertex.len()
        )));
    }
    let mut pairs = Vec::new();
    for (v, record) in &embedded.per_vertex {
        let spin = logical
            .get(v)
            .ok_or_else(|| Error::DomainMismatch(format!("no spin for vertex `{v}`")))?;
        for q in record.omega.keys() {
            pairs.push((q.clone(), spin));
        }
    }
    SpinAssignment::new(pairs)
}

/// Whether every image is constant under the assignment.
pub fn is_synchronized(embedded: &EmbeddedIsingModel, hw: &SpinAssignment) -> Result<bool> {
    for record in embedded.per_vertex.values() {
        let mut spins = record.omega.keys().map(|q| {
            hw.get(q)
                .ok_or_else(|| Error::DomainMismatch(format!("no spin for qubit `{q}`")))
        });
        let first = spins.next().expect("images are nonempty")?;
        for s in spins {
            if s? != first {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reads the logical assignment off a synchronized embedded one (the spin of
/// the lexicographically smallest qubit of each image). Fails on
/// unsynchronized input.
pub fn representative(
    embedded: &EmbeddedIsingModel,
    hw: &SpinAssignment,
) -> Result<SpinAssignment> {
    let mut pairs = Vec::new();
    for (v, record) in &embedded.per_vertex {
        let mut image = record.omega.keys();
        let first_id = image.next().expect("images are nonempty");
        let spin = hw
            .get(first_id)
            .ok_or_else(|| Error::DomainMismatch(format!("no spin for qubit `{first_id}`")))?;
        for q in image {
            let other = hw
                .get(q)
                .ok_or_else(|| Error::DomainMismatch(format!("no spin for qubit `{q}`")))?;
            if other != spin {
                return Err(Error::Contract(format!(
                    "image of `{v}` is not synchronized: `{first_id}` and `{q}` disagree"
                )));
            }
        }
        pairs.push((v.clone(), spin));
    }
    SpinAssignment::new(pairs)
}

/// Collapses any embedded assignment to a logical one by per-image majority;
/// exact ties round to `+1`.
pub fn majority_vote(embedded: &EmbeddedIsingModel, hw: &SpinAssignment) -> Result<SpinAssignment> {
    let mut pairs = Vec::new();
    for (v, record) in &embedded.per_vertex {
        let mut sum = 0i64;
        for q in record.omega.keys() {
            let s = hw
                .get(q)
                .ok_or_else(|| Error::DomainMismatch(format!("no spin for qubit `{q}`")))?;
            sum += s as i64;
        }
        pairs.push((v.clone(), if sum >= 0 { 1 } else { -1 }));
    }
    SpinAssignment::new(pairs)
}

/// Ground-state comparison of the embedded model against the logical model
/// it encodes.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub original_minimum: f64,
    pub embedded_minimum: f64,
    pub offset_c: f64,
    /// `embedded + offset = original` within tolerance.
    pub minima_agree: bool,
    pub original_minimizers: usize,
    pub embedded_minimizers: usize,
    /// No embedded minimizer breaks an image apart.
    pub all_minimizers_synchronized: bool,
    /// The minimizer sets correspond exactly under synchronization.
    pub minimizer_sets_match: bool,
}

impl EquivalenceReport {
    pub fn pass(&self) -> bool {
        self.minima_agree && self.all_minimizers_synchronized && self.minimizer_sets_match
    }
}

/// Grounds both models exhaustively and checks that the embedded model's
/// minimizers are exactly the synchronized images of the original's, at the
/// same objective value after the offset.
///
/// The original model is reconstructed from the embedded one, so the check
/// covers the full round trip.
pub fn verify_equivalence(embedded: &EmbeddedIsingModel) -> Result<EquivalenceReport> {
    let original = embedded.reconstruct_original()?;
    let orig = brute_force_minimum(&original)?;
    let emb = brute_force_minimum(&embedded.model)?;

    let minima_agree = (emb.value + embedded.offset_c - orig.value).abs() <= tolerance::CROSS_CHECK;

    let mut all_sync = true;
    let mut sets_match = true;
    for r in &emb.minimizers {
        if !is_synchronized(embedded, r)? {
            all_sync = false;
            sets_match = false;
            break;
        }
        if !orig.contains(&representative(embedded, r)?) {
            sets_match = false;
        }
    }
    if sets_match {
        for t in &orig.minimizers {
            if !emb.contains(&synchronized(embedded, t)?) {
                sets_match = false;
                break;
            }
        }
    }

    Ok(EquivalenceReport {
        original_minimum: orig.value,
        embedded_minimum: emb.value,
        offset_c: embedded.offset_c,
        minima_agree,
        original_minimizers: orig.minimizers.len(),
        embedded_minimizers: emb.minimizers.len(),
        all_minimizers_synchronized: all_sync,
        minimizer_sets_match: sets_match,
    })
}
