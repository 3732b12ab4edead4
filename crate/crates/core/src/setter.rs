//! Parameter setting: from a logical model and an embedding to an embedded
//! model with per-image optimal inner parameters.
//!
//! For every logical vertex the setter extracts the weight distribution
//! instance, solves its program over the appropriate cut family (tree edge
//! cuts when the inner graph is a tree, connected cuts otherwise) and writes
//! the result back: hardware weights `sign(W_v) * omega_q`, inner edges of
//! the instance graph at `-theta_v`, surplus intra edges at zero, couplers at
//! their split strengths. The constant `c = -sum of intra strengths` makes
//! embedded objective values comparable to logical ones: for every logical
//! assignment `t` and its synchronized image `r`, `I_embedded(r) + c =
//! I_logical(t)`, and the embedded minimum is attained only on synchronized
//! assignments, `2 * gamma` below any unsynchronized one.
//!
//! [`baseline_uniform`] produces the conventional alternative (uniform
//! `theta = factor * C_max`, evenly split weights) in the same shape so both
//! go through identical verification.

use std::collections::BTreeMap;

use crate::cuts::{connected_cuts, tree_edge_cuts, CutFamily};
use crate::embedding::{build_embedded_structure, EmbeddedGraphStructure, Embedding};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ising::{c_max, IsingModel};
use crate::lp::{build_lp, solve_simplex};
use crate::subproblem::{
    assign_outer_strengths, extract_instance, OuterStrategy, OuterStrengthAssignment,
    SubproblemInstance,
};

/// Per-vertex certificate of the parameters chosen for one image.
#[derive(Debug, Clone)]
pub struct VertexRecord {
    /// Uniform inner coupling magnitude; `None` for single-qubit images,
    /// which have no inner edges.
    pub theta: Option<f64>,
    /// Half-gap this vertex was solved (and is verified) with.
    pub gamma: f64,
    /// Weight distribution by hardware id, before the logical weight sign is
    /// applied. Sums to `|W_v|`.
    pub omega: BTreeMap<String, f64>,
    /// Hardware id sets of the cut constraints binding at the optimum.
    pub tight_cuts: Vec<Vec<String>>,
    /// Cuts in the family the program was built over.
    pub family_size: usize,
    /// Constraints in that program.
    pub lp_constraints: usize,
}

/// An embedded model with everything needed to verify and undo it.
#[derive(Debug, Clone)]
pub struct EmbeddedIsingModel {
    /// Model over the embedded graph (images plus couplers).
    pub model: IsingModel,
    /// Constant relating objective values: `embedded + offset_c = logical`
    /// on synchronized assignments.
    pub offset_c: f64,
    /// Default half-gap the run was configured with.
    pub gamma: f64,
    pub strategy: OuterStrategy,
    pub use_spanning_tree: bool,
    /// `Some(factor)` when produced by [`baseline_uniform`].
    pub baseline_factor: Option<f64>,
    pub per_vertex: BTreeMap<String, VertexRecord>,
}

impl EmbeddedIsingModel {
    /// Largest inner coupling magnitude over all images, if any image has
    /// inner edges.
    pub fn max_theta(&self) -> Option<f64> {
        self.per_vertex
            .values()
            .filter_map(|r| r.theta)
            .reduce(f64::max)
    }

    /// Hardware-to-logical ownership, derived from the weight records.
    pub fn owner_of(&self, hardware_id: &str) -> Option<&str> {
        self.per_vertex
            .iter()
            .find(|(_, r)| r.omega.contains_key(hardware_id))
            .map(|(v, _)| v.as_str())
    }

    /// Rebuilds the logical model from the embedded one: logical weights are
    /// image weight sums, logical strengths are coupler sums per logical
    /// edge. Exact inverse of the setter up to float addition order.
    pub fn reconstruct_original(&self) -> Result<IsingModel> {
        let embedded = self.model.graph();
        let mut owner: Vec<Option<&str>> = vec![None; embedded.vertex_count()];
        for (v, record) in &self.per_vertex {
            for q in record.omega.keys() {
                let qi = embedded.require_index(q)?;
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

        let mut weights: BTreeMap<&str, f64> = BTreeMap::new();
        for (v, record) in &self.per_vertex {
            let mut sum = 0.0;
            for q in record.omega.keys() {
                sum += self.model.weights()[embedded.require_index(q)?];
            }
            weights.insert(v, sum);
        }

        let mut strengths: BTreeMap<(&str, &str), f64> = BTreeMap::new();
        for (e, &(p, q)) in embedded.edges().iter().enumerate() {
            let (vp, vq) = (owner[p].unwrap(), owner[q].unwrap());
            if vp == vq {
                continue;
            }
            let key = if vp < vq { (vp, vq) } else { (vq, vp) };
            *strengths.entry(key).or_insert(0.0) += self.model.strengths()[e];
        }

        let graph = Graph::new(
            self.per_vertex.keys().map(String::as_str),
            strengths.keys().copied(),
        )?;
        let w: Vec<f64> = graph.ids().iter().map(|id| weights[id.as_str()]).collect();
        let s: Vec<f64> = graph
            .edges()
            .iter()
            .map(|&(u, v)| strengths[&(graph.id(u), graph.id(v))])
            .collect();
        IsingModel::new(graph, w, s)
    }
}

/// Knobs for [`set_parameters`] and [`baseline_uniform`].
#[derive(Debug, Clone)]
pub struct SetterOptions {
    /// Default half-gap; the embedded minimum separates from unsynchronized
    /// assignments by twice this.
    pub gamma: f64,
    pub strategy: OuterStrategy,
    /// Thin every image to its spanning tree (surplus intra edges get zero
    /// strength). Disabling keeps full image subgraphs.
    pub use_spanning_tree: bool,
    /// Per-vertex half-gap overrides by logical id.
    pub gamma_overrides: BTreeMap<String, f64>,
}

impl Default for SetterOptions {
    fn default() -> Self {
        SetterOptions {
            gamma: 1.0,
            strategy: OuterStrategy::UniformSplit,
            use_spanning_tree: true,
            gamma_overrides: BTreeMap::new(),
        }
    }
}

fn validate_options(logical: &Graph, opts: &SetterOptions) -> Result<()> {
    if !(opts.gamma.is_finite() && opts.gamma > 0.0) {
        return Err(Error::InvalidModel(format!(
            "half-gap must be positive, got {}",
            opts.gamma
        )));
    }
    for v in opts.gamma_overrides.keys() {
        if logical.index_of(v).is_none() {
            return Err(Error::UnknownVertex(format!(
                "half-gap override for unknown vertex `{v}`"
            )));
        }
    }
    Ok(())
}

fn gamma_for(opts: &SetterOptions, v: &str) -> Result<f64> {
    let g = opts.gamma_overrides.get(v).copied().unwrap_or(opts.gamma);
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::InvalidModel(format!(
            "half-gap for `{v}` must be positive, got {g}"
        )));
    }
    Ok(g)
}

fn family_for(graph: &Graph) -> Result<CutFamily> {
    if graph.is_tree() {
        tree_edge_cuts(graph)
    } else {
        connected_cuts(graph)
    }
}

/// Weights, strengths and records accumulated image by image.
struct Assembly {
    weights: Vec<f64>,
    strengths: Vec<f64>,
    per_vertex: BTreeMap<String, VertexRecord>,
}

impl Assembly {
    fn new(structure: &EmbeddedGraphStructure) -> Assembly {
        Assembly {
            weights: vec![0.0; structure.graph().vertex_count()],
            strengths: vec![0.0; structure.graph().edge_count()],
            per_vertex: BTreeMap::new(),
        }
    }

    /// Writes one image: signed weights, `-theta` on the instance edges, and
    /// the record (`theta` dropped for singletons).
    fn apply_vertex(
        &mut self,
        structure: &EmbeddedGraphStructure,
        v: &str,
        inst: &SubproblemInstance,
        sign: f64,
        theta: f64,
        omega: &[f64],
        tight_cuts: Vec<Vec<String>>,
        family_size: usize,
        lp_constraints: usize,
    ) -> Result<()> {
        let embedded = structure.graph();
        let mut omega_map = BTreeMap::new();
        for (q, id) in inst.graph.ids().iter().enumerate() {
            omega_map.insert(id.clone(), omega[q]);
            self.weights[embedded.require_index(id)?] = sign * omega[q];
        }
        let singleton = inst.graph.vertex_count() == 1;
        if !singleton {
            for &(a, b) in inst.graph.edges() {
                let ia = embedded.require_index(inst.graph.id(a))?;
                let ib = embedded.require_index(inst.graph.id(b))?;
                let e = embedded
                    .edge_index(ia, ib)
                    .ok_or_else(|| Error::Internal("inner edge not embedded".into()))?;
                self.strengths[e] = -theta;
            }
        }
        self.per_vertex.insert(
            v.to_string(),
            VertexRecord {
                theta: (!singleton).then_some(theta),
                gamma: inst.gamma,
                omega: omega_map,
                tight_cuts,
                family_size,
                lp_constraints,
            },
        );
        Ok(())
    }

    fn into_model(
        self,
        structure: &EmbeddedGraphStructure,
        assignment: &OuterStrengthAssignment,
        opts: &SetterOptions,
        baseline_factor: Option<f64>,
    ) -> Result<EmbeddedIsingModel> {
        let mut strengths = self.strengths;
        for (e, s) in assignment.iter() {
            strengths[e] = s;
        }
        // Offset: negated sum of intra strengths; couplers contribute
        // nothing. Surplus edges hold zero and drop out on their own.
        let mut offset_c = 0.0;
        for v in 0..structure.logical_ids().len() {
            for &e in structure.intra_edges(v) {
                offset_c -= strengths[e];
            }
        }
        let model = IsingModel::new(structure.graph().clone(), self.weights, strengths)?;
        Ok(EmbeddedIsingModel {
            model,
            offset_c,
            gamma: opts.gamma,
            strategy: opts.strategy,
            use_spanning_tree: opts.use_spanning_tree,
            baseline_factor,
            per_vertex: self.per_vertex,
        })
    }
}

/// Computes the embedded model with per-image optimal parameters.
///
/// Fails with [`Error::PreprocessableVertex`] when some logical weight
/// dominates its vertex's total coupler strength; preprocess the model
/// first.
pub fn set_parameters(
    logical_model: &IsingModel,
    hardware: &Graph,
    phi: &Embedding,
    opts: &SetterOptions,
) -> Result<EmbeddedIsingModel> {
    validate_options(logical_model.graph(), opts)?;
    let structure = build_embedded_structure(logical_model.graph(), hardware, phi)?;
    let assignment = assign_outer_strengths(logical_model, &structure, opts.strategy)?;

    let mut assembly = Assembly::new(&structure);
    for v in logical_model.graph().ids() {
        let gamma_v = gamma_for(opts, v)?;
        let inst = extract_instance(
            v,
            logical_model,
            &structure,
            &assignment,
            gamma_v,
            opts.use_spanning_tree,
        )?;
        let family = family_for(&inst.graph)?;
        let lp = build_lp(&inst, &family)?;
        let wd = solve_simplex(&lp)?;

        let sign = if logical_model.weight_of(v)? < 0.0 {
            -1.0
        } else {
            1.0
        };
        let tight_cuts = wd
            .tight_cuts(&lp)
            .into_iter()
            .map(|i| {
                family.cuts[i]
                    .members
                    .iter()
                    .map(|&q| inst.graph.id(q).to_string())
                    .collect()
            })
            .collect();
        assembly.apply_vertex(
            &structure,
            v,
            &inst,
            sign,
            wd.theta,
            &wd.omega,
            tight_cuts,
            family.len(),
            lp.constraints.len(),
        )?;
    }
    assembly.into_model(&structure, &assignment, opts, None)
}

/// Computes the conventional uniform-parameter embedded model: every inner
/// edge at `-factor * C_max` of the logical model, weights split evenly over
/// each image. Same record shape as [`set_parameters`] so the same
/// verification applies; records carry empty certificates.
pub fn baseline_uniform(
    logical_model: &IsingModel,
    hardware: &Graph,
    phi: &Embedding,
    factor: f64,
    opts: &SetterOptions,
) -> Result<EmbeddedIsingModel> {
    if !(factor.is_finite() && factor > 0.0) {
        return Err(Error::InvalidModel(format!(
            "baseline factor must be positive, got {factor}"
        )));
    }
    validate_options(logical_model.graph(), opts)?;
    let structure = build_embedded_structure(logical_model.graph(), hardware, phi)?;
    let assignment = assign_outer_strengths(logical_model, &structure, opts.strategy)?;
    let theta = factor * c_max(logical_model);

    let mut assembly = Assembly::new(&structure);
    for v in logical_model.graph().ids() {
        let gamma_v = gamma_for(opts, v)?;
        // Extraction reuses the inner graph choice and the domination check;
        // no program is solved.
        let inst = extract_instance(
            v,
            logical_model,
            &structure,
            &assignment,
            gamma_v,
            opts.use_spanning_tree,
        )?;
        let w_v = logical_model.weight_of(v)?;
        let n = inst.graph.vertex_count() as f64;
        let sign = if w_v < 0.0 { -1.0 } else { 1.0 };
        let omega = vec![w_v.abs() / n; inst.graph.vertex_count()];
        assembly.apply_vertex(&structure, v, &inst, sign, theta, &omega, Vec::new(), 0, 0)?;
    }
    assembly.into_model(&structure, &assignment, opts, Some(factor))
}
