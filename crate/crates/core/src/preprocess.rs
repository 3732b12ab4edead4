//! Fixing of dominated spins on a logical problem.
//!
//! When the weight of a vertex is at least as large in magnitude as the total
//! strength incident to it, an optimal spin for that vertex is the sign
//! opposing its weight regardless of the neighbors (strictly larger: every
//! optimal assignment agrees; equal: at least one does). Fixing such a vertex
//! folds its incident strengths into the neighbor weights and moves the fixed
//! weight contribution into a constant offset, possibly making further
//! vertices eligible.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::ising::IsingModel;

/// One fixing step, recorded in application order.
#[derive(Debug, Clone, PartialEq)]
pub struct FixEvent {
    pub vertex: String,
    /// The vertex weight at the moment of fixing (after earlier folds).
    pub weight_at_fix: f64,
    /// The spin the vertex was fixed to.
    pub spin: i8,
    /// Weight deltas folded into the remaining neighbors: `(id, delta)`.
    pub folds: Vec<(String, f64)>,
}

/// Result of exhaustive fixing.
#[derive(Debug, Clone)]
pub struct PreprocessResult {
    /// The model on the remaining vertices with folded weights.
    pub reduced: IsingModel,
    /// Fixed spins by vertex id.
    pub fixed: BTreeMap<String, i8>,
    /// Constant objective offset: for every assignment `t` of the remaining
    /// vertices, the original objective of `t` extended by the fixed spins
    /// equals `reduced(t) + offset`.
    pub offset: f64,
    /// Fixing steps in application order.
    pub events: Vec<FixEvent>,
    pub strict: bool,
}

/// The spin that opposes `weight`; ties (weight 0, which only occurs for
/// isolated vertices) are fixed to +1, which is value-neutral.
fn opposing_spin(weight: f64) -> i8 {
    if weight > 0.0 {
        -1
    } else {
        1
    }
}

/// Repeatedly fixes dominated vertices until none is eligible.
///
/// A vertex `v` is eligible when `|W_v| >= sum_n |S_vn|` over its remaining
/// neighbors; with `strict` the inequality must be strict, which restricts
/// fixing to vertices every optimal assignment agrees on. Vertices are
/// scanned in id order and the scan restarts after every fix.
pub fn preprocess(model: &IsingModel, strict: bool) -> Result<PreprocessResult> {
    let graph = model.graph();
    let n = graph.vertex_count();
    let mut alive = vec![true; n];
    let mut weights = model.weights().to_vec();
    let mut fixed = BTreeMap::new();
    let mut events = Vec::new();
    let mut offset = 0.0;

    loop {
        let candidate = (0..n).find(|&v| {
            alive[v] && {
                let incident = incident_strength(model, &alive, v);
                if strict {
                    weights[v].abs() > incident
                } else {
                    weights[v].abs() >= incident
                }
            }
        });
        let Some(v) = candidate else { break };

        let spin = opposing_spin(weights[v]);
        let mut folds = Vec::new();
        for &u in graph.neighbors(v) {
            if !alive[u] {
                continue;
            }
            let e = graph.edge_index(v, u).expect("neighbor edge exists");
            let delta = model.strengths()[e] * f64::from(spin);
            weights[u] += delta;
            folds.push((graph.id(u).to_string(), delta));
        }
        offset += weights[v] * f64::from(spin);
        events.push(FixEvent {
            vertex: graph.id(v).to_string(),
            weight_at_fix: weights[v],
            spin,
            folds,
        });
        fixed.insert(graph.id(v).to_string(), spin);
        alive[v] = false;
    }

    let remaining: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let reduced_graph = graph.induced(&remaining);
    let reduced_weights: Vec<f64> = reduced_graph
        .ids()
        .iter()
        .map(|id| weights[graph.index_of(id).unwrap()])
        .collect();
    let reduced_strengths: Vec<f64> = reduced_graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            let gu = graph.index_of(reduced_graph.id(u)).unwrap();
            let gv = graph.index_of(reduced_graph.id(v)).unwrap();
            model.strengths()[graph.edge_index(gu, gv).unwrap()]
        })
        .collect();
    let reduced = IsingModel::new(reduced_graph, reduced_weights, reduced_strengths)?;

    Ok(PreprocessResult {
        reduced,
        fixed,
        offset,
        events,
        strict,
    })
}

/// Vertices eligible for fixing on the given model (non-strict reading,
/// one-shot), in id order. An empty result certifies that every vertex
/// satisfies the strict domination condition `|W_v| < sum_n |S_vn|`.
pub fn is_preprocessable(model: &IsingModel) -> Vec<String> {
    let graph = model.graph();
    let alive = vec![true; graph.vertex_count()];
    (0..graph.vertex_count())
        .filter(|&v| model.weights()[v].abs() >= incident_strength(model, &alive, v))
        .map(|v| graph.id(v).to_string())
        .collect()
}

fn incident_strength(model: &IsingModel, alive: &[bool], v: usize) -> f64 {
    let graph = model.graph();
    graph
        .neighbors(v)
        .iter()
        .filter(|&&u| alive[u])
        .map(|&u| model.strengths()[graph.edge_index(v, u).unwrap()].abs())
        .sum()
}
