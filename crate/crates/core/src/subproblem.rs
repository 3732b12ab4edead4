//! Per-vertex weight distribution instances.
//!
//! For each logical vertex `v` the parameter setter solves a small problem on
//! the image of `v`: distribute the logical weight over the image vertices
//! and choose a uniform inner coupling strength. The instance consists of the
//! inner graph (a spanning tree of the image by default), the absolute outer
//! strength `sigma_q` pulling on each image vertex through coupler edges, the
//! weight magnitude `lambda = |W_v|`, and the required gap `gamma`.

use std::collections::BTreeMap;

use crate::embedding::EmbeddedGraphStructure;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ising::IsingModel;

/// How a logical strength `S_vw` is distributed over the couplers of `vw`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OuterStrategy {
    /// Every coupler of `vw` carries `S_vw / |couplers|`.
    UniformSplit,
    /// The lexicographically smallest coupler carries `S_vw`, the rest 0.
    SingleEdge,
}

impl OuterStrategy {
    pub fn name(self) -> &'static str {
        match self {
            OuterStrategy::UniformSplit => "uniform-split",
            OuterStrategy::SingleEdge => "single-edge",
        }
    }

    pub fn from_name(name: &str) -> Option<OuterStrategy> {
        match name {
            "uniform-split" => Some(OuterStrategy::UniformSplit),
            "single-edge" => Some(OuterStrategy::SingleEdge),
            _ => None,
        }
    }
}

/// Strengths assigned to the coupler edges of the embedded graph, keyed by
/// embedded edge index.
#[derive(Debug, Clone)]
pub struct OuterStrengthAssignment {
    values: BTreeMap<usize, f64>,
    strategy: OuterStrategy,
}

impl OuterStrengthAssignment {
    /// Strength on an embedded coupler edge.
    pub fn value(&self, edge: usize) -> Option<f64> {
        self.values.get(&edge).copied()
    }

    pub fn strategy(&self) -> OuterStrategy {
        self.strategy
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().map(|(&e, &s)| (e, s))
    }
}

/// Distributes every logical strength over the couplers of its logical edge.
///
/// For every logical edge the assigned strengths sum to the logical strength
/// (exactly for [`OuterStrategy::SingleEdge`], up to rounding for
/// [`OuterStrategy::UniformSplit`]).
pub fn assign_outer_strengths(
    logical_model: &IsingModel,
    structure: &EmbeddedGraphStructure,
    strategy: OuterStrategy,
) -> Result<OuterStrengthAssignment> {
    let logical = logical_model.graph();
    let mut values = BTreeMap::new();
    for (e, &(u, v)) in logical.edges().iter().enumerate() {
        let strength = logical_model.strengths()[e];
        let couplers = structure.inter_edges(u, v);
        if couplers.is_empty() {
            return Err(Error::Internal(format!(
                "logical edge `{}`-`{}` has no couplers",
                logical.id(u),
                logical.id(v)
            )));
        }
        match strategy {
            OuterStrategy::UniformSplit => {
                let share = strength / couplers.len() as f64;
                for &c in couplers {
                    values.insert(c, share);
                }
            }
            OuterStrategy::SingleEdge => {
                // Embedded edge indices order edges lexicographically by id
                // pair, so the smallest index is the smallest coupler.
                let first = *couplers.iter().min().unwrap();
                for &c in couplers {
                    values.insert(c, if c == first { strength } else { 0.0 });
                }
            }
        }
    }
    Ok(OuterStrengthAssignment { values, strategy })
}

/// The weight distribution instance of one logical vertex.
#[derive(Debug, Clone)]
pub struct SubproblemInstance {
    /// Inner graph over the image vertices (hardware ids preserved): the
    /// breadth-first spanning tree of the image subgraph by default, or the
    /// full image subgraph when spanning trees are disabled.
    pub graph: Graph,
    /// Absolute outer strength per inner vertex, aligned with `graph`.
    pub sigma: Vec<f64>,
    /// Magnitude of the logical vertex weight.
    pub lambda: f64,
    /// Required half-gap; the realized objective separation is `2 * gamma`.
    pub gamma: f64,
}

impl SubproblemInstance {
    pub fn sigma_total(&self) -> f64 {
        self.sigma.iter().sum()
    }
}

/// Extracts the instance of logical vertex `v`.
///
/// `sigma_q` sums `|S|` over all coupler edges at `q` under `assignment`;
/// `lambda = |W_v|`. Fails when `lambda >= sigma(V)`, because such a vertex
/// is preprocessable and no inner parameters can enforce a positive gap.
pub fn extract_instance(
    v: &str,
    logical_model: &IsingModel,
    structure: &EmbeddedGraphStructure,
    assignment: &OuterStrengthAssignment,
    gamma: f64,
    use_spanning_tree: bool,
) -> Result<SubproblemInstance> {
    let logical = logical_model.graph();
    let vi = logical.require_index(v)?;
    let embedded = structure.graph();

    let image = structure.image(vi);
    let image_ids: Vec<String> = image.iter().map(|&q| embedded.id(q).to_string()).collect();

    // Inner graph: induced intra edges, optionally thinned to a spanning tree.
    let full = embedded.induced(image);
    let graph = if use_spanning_tree {
        let tree_edges: Vec<(String, String)> = full
            .spanning_tree()
            .map_err(|_| Error::Disconnected(format!("image of `{v}`")))?
            .into_iter()
            .map(|(a, b)| (full.id(a).to_string(), full.id(b).to_string()))
            .collect();
        Graph::new(image_ids.clone(), tree_edges)?
    } else {
        full
    };

    // sigma: absolute coupler strengths by inner vertex.
    let mut sigma = vec![0.0; graph.vertex_count()];
    for &w in logical.neighbors(vi) {
        for &c in structure.inter_edges(vi, w) {
            let (p, q) = embedded.edges()[c];
            let inner = if structure.owner(p) == vi { p } else { q };
            let id = embedded.id(inner);
            let idx = graph.require_index(id)?;
            let strength = assignment.value(c).ok_or_else(|| {
                Error::Internal(format!("coupler edge {c} has no assigned strength"))
            })?;
            sigma[idx] += strength.abs();
        }
    }

    let lambda = logical_model.weights()[vi].abs();
    let sigma_total: f64 = sigma.iter().sum();
    if lambda >= sigma_total {
        return Err(Error::PreprocessableVertex {
            vertex: v.to_string(),
            lambda,
            sigma_total,
        });
    }

    Ok(SubproblemInstance {
        graph,
        sigma,
        lambda,
        gamma,
    })
}
