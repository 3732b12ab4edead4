//! Ising models over ±1 spins and their brute-force ground states.
//!
//! A model assigns a weight to every vertex and a strength to every edge of a
//! graph; the objective of an assignment `s` is
//! `sum_v W_v s_v + sum_vw S_vw s_v s_w`, minimized over `s in {-1,+1}^V`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex limit for brute-force enumeration (`2^24` assignments).
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// An Ising model: a graph with vertex weights and edge strengths.
///
/// Logical problem inputs require nonzero strengths (an edge with strength 0
/// is no edge); embedded models relax this because surplus intra edges carry
/// strength 0 by construction. Use [`IsingModel::require_nonzero_strengths`]
/// to enforce the stricter reading.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    graph: Graph,
    weights: Vec<f64>,
    strengths: Vec<f64>,
}

impl IsingModel {
    /// Builds a model from a graph plus weights and strengths aligned with the
    /// graph's vertex and edge ordering. All values must be finite.
    pub fn new(graph: Graph, weights: Vec<f64>, strengths: Vec<f64>) -> Result<IsingModel> {
        if weights.len() != graph.vertex_count() {
            return Err(Error::InvalidModel(format!(
                "{} weights for {} vertices",
                weights.len(),
                graph.vertex_count()
            )));
        }
        if strengths.len() != graph.edge_count() {
            return Err(Error::InvalidModel(format!(
                "{} strengths for {} edges",
                strengths.len(),
                graph.edge_count()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
            return Err(Error::InvalidModel(format!("non-finite weight {w}")));
        }
        if let Some(s) = strengths.iter().find(|s| !s.is_finite()) {
            return Err(Error::InvalidModel(format!("non-finite strength {s}")));
        }
        Ok(IsingModel {
            graph,
            weights,
            strengths,
        })
    }

    /// Builds a model from id-keyed maps. Vertices missing from `weights`
    /// default to weight 0; unknown keys are rejected.
    pub fn from_maps(
        graph: Graph,
        weights: &BTreeMap<String, f64>,
        strengths: &BTreeMap<(String, String), f64>,
    ) -> Result<IsingModel> {
        for id in weights.keys() {
            if graph.index_of(id).is_none() {
                return Err(Error::UnknownVertex(id.clone()));
            }
        }
        let w = graph
            .ids()
            .iter()
            .map(|id| weights.get(id).copied().unwrap_or(0.0))
            .collect();
        let mut s = vec![0.0; graph.edge_count()];
        let mut seen = vec![false; graph.edge_count()];
        for ((a, b), value) in strengths {
            let u = graph.require_index(a)?;
            let v = graph.require_index(b)?;
            let e = graph
                .edge_index(u, v)
                .ok_or_else(|| Error::InvalidModel(format!("no edge `{a}`-`{b}`")))?;
            if seen[e] {
                return Err(Error::InvalidModel(format!(
                    "strength for `{a}`-`{b}` given twice"
                )));
            }
            seen[e] = true;
            s[e] = *value;
        }
        if let Some(e) = seen.iter().position(|s| !s) {
            let (u, v) = graph.edges()[e];
            return Err(Error::InvalidModel(format!(
                "missing strength for edge `{}`-`{}`",
                graph.id(u),
                graph.id(v)
            )));
        }
        IsingModel::new(graph, w, s)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn strengths(&self) -> &[f64] {
        &self.strengths
    }

    pub fn weight_of(&self, id: &str) -> Result<f64> {
        Ok(self.weights[self.graph.require_index(id)?])
    }

    /// Fails when any edge carries strength 0 (required of logical problems).
    pub fn require_nonzero_strengths(&self) -> Result<()> {
        for (e, &s) in self.strengths.iter().enumerate() {
            if s == 0.0 {
                let (u, v) = self.graph.edges()[e];
                return Err(Error::InvalidModel(format!(
                    "edge `{}`-`{}` has strength 0",
                    self.graph.id(u),
                    self.graph.id(v)
                )));
            }
        }
        Ok(())
    }

    /// Objective value of a dense ±1 spin vector aligned with the vertex
    /// ordering. Callers must pass exactly one spin per vertex.
    pub fn value_of_dense(&self, spins: &[i8]) -> f64 {
        debug_assert_eq!(spins.len(), self.graph.vertex_count());
        let mut value = 0.0;
        for (v, &w) in self.weights.iter().enumerate() {
            value += w * f64::from(spins[v]);
        }
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            value += self.strengths[e] * f64::from(spins[u]) * f64::from(spins[v]);
        }
        value
    }
}

/// A ±1 spin per vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinAssignment {
    values: BTreeMap<String, i8>,
}

impl SpinAssignment {
    /// Builds an assignment from `(id, spin)` pairs; spins must be ±1 and ids
    /// unique.
    pub fn new<I, S>(pairs: I) -> Result<SpinAssignment>
    where
        I: IntoIterator<Item = (S, i8)>,
        S: Into<String>,
    {
        let mut values = BTreeMap::new();
        for (id, spin) in pairs {
            let id = id.into();
            if spin != 1 && spin != -1 {
                return Err(Error::InvalidModel(format!(
                    "spin {spin} for `{id}` is not ±1"
                )));
            }
            if values.insert(id.clone(), spin).is_some() {
                return Err(Error::InvalidModel(format!("spin for `{id}` given twice")));
            }
        }
        Ok(SpinAssignment { values })
    }

    /// Builds an assignment for `graph` from a dense spin vector.
    pub fn from_dense(graph: &Graph, spins: &[i8]) -> SpinAssignment {
        let values = graph
            .ids()
            .iter()
            .zip(spins)
            .map(|(id, &s)| (id.clone(), s))
            .collect();
        SpinAssignment { values }
    }

    pub fn get(&self, id: &str) -> Option<i8> {
        self.values.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i8)> {
        self.values.iter().map(|(id, &s)| (id.as_str(), s))
    }

    /// The assignment as a dense vector aligned with `graph`'s vertex order.
    /// Fails unless the domains match exactly.
    pub fn to_dense(&self, graph: &Graph) -> Result<Vec<i8>> {
        if self.values.len() != graph.vertex_count() {
            return Err(Error::DomainMismatch(format!(
                "{} spins for {} vertices",
                self.values.len(),
                graph.vertex_count()
            )));
        }
        let mut dense = vec![0i8; graph.vertex_count()];
        for (id, &spin) in &self.values {
            match graph.index_of(id) {
                Some(v) => dense[v] = spin,
                None => return Err(Error::DomainMismatch(format!("extra vertex `{id}`"))),
            }
        }
        Ok(dense)
    }
}

/// Objective value `sum_v W_v s_v + sum_vw S_vw s_v s_w` of an assignment.
/// The assignment domain must equal the model's vertex set.
pub fn evaluate(model: &IsingModel, assignment: &SpinAssignment) -> Result<f64> {
    let dense = assignment.to_dense(model.graph())?;
    Ok(model.value_of_dense(&dense))
}

/// Largest parameter magnitude `max(max_v |W_v|, max_vw |S_vw|)`; 0 for an
/// empty model.
pub fn c_max(model: &IsingModel) -> f64 {
    let w = model.weights().iter().fold(0.0f64, |m, w| m.max(w.abs()));
    let s = model.strengths().iter().fold(0.0f64, |m, s| m.max(s.abs()));
    w.max(s)
}

/// Result of exhaustive ground-state enumeration.
#[derive(Debug, Clone)]
pub struct BruteForceResult {
    /// Minimum objective value over all `2^|V|` assignments.
    pub value: f64,
    /// Every assignment within [`crate::tolerance::VALUE`] of the minimum,
    /// ordered by enumeration index.
    pub minimizers: Vec<SpinAssignment>,
}

impl BruteForceResult {
    /// True when `assignment` is one of the collected minimizers.
    pub fn contains(&self, assignment: &SpinAssignment) -> bool {
        self.minimizers.iter().any(|m| m == assignment)
    }
}

/// Enumerates all assignments and returns the minimum value and all
/// minimizers, with the default size guard of [`BRUTE_FORCE_LIMIT`].
///
/// The empty model has the single empty assignment with value 0.
pub fn brute_force_minimum(model: &IsingModel) -> Result<BruteForceResult> {
    brute_force_minimum_with_limit(model, BRUTE_FORCE_LIMIT)
}

/// [`brute_force_minimum`] with an explicit vertex limit.
pub fn brute_force_minimum_with_limit(
    model: &IsingModel,
    limit: usize,
) -> Result<BruteForceResult> {
    let n = model.graph().vertex_count();
    if n > limit {
        return Err(Error::SizeLimit {
            what: "brute-force model",
            size: n,
            limit,
        });
    }
    let mut best = f64::INFINITY;
    let mut masks: Vec<u64> = Vec::new();
    let mut spins = vec![-1i8; n];
    for mask in 0u64..(1u64 << n) {
        for (v, spin) in spins.iter_mut().enumerate() {
            *spin = if mask >> v & 1 == 1 { 1 } else { -1 };
        }
        let value = model.value_of_dense(&spins);
        if value < best - crate::tolerance::VALUE {
            best = value;
            masks.clear();
            masks.push(mask);
        } else if value <= best + crate::tolerance::VALUE {
            if value < best {
                best = value;
            }
            masks.push(mask);
        }
    }
    let minimizers = masks
        .into_iter()
        .map(|mask| {
            for (v, spin) in spins.iter_mut().enumerate() {
                *spin = if mask >> v & 1 == 1 { 1 } else { -1 };
            }
            SpinAssignment::from_dense(model.graph(), &spins)
        })
        .collect();
    Ok(BruteForceResult {
        value: best,
        minimizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_model() -> IsingModel {
        let g = Graph::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        IsingModel::new(g, vec![1.0, 1.0, 1.0], vec![1.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn evaluate_triangle() {
        // W = (1,1,1), S = 1 on all edges, s = (+1,+1,-1):
        // 1 + 1 - 1 + (ab) 1 + (ac) -1 + (bc) -1 = 0.
        let m = triangle_model();
        let s = SpinAssignment::new([("a", 1), ("b", 1), ("c", -1)]).unwrap();
        assert_eq!(evaluate(&m, &s).unwrap(), 0.0);
    }

    #[test]
    fn evaluate_rejects_domain_mismatch() {
        let m = triangle_model();
        let missing = SpinAssignment::new([("a", 1), ("b", 1)]).unwrap();
        assert!(evaluate(&m, &missing).is_err());
        let extra = SpinAssignment::new([("a", 1), ("b", 1), ("c", 1), ("d", 1)]).unwrap();
        assert!(evaluate(&m, &extra).is_err());
        let wrong = SpinAssignment::new([("a", 1), ("b", 1), ("x", 1)]).unwrap();
        assert!(evaluate(&m, &wrong).is_err());
    }

    #[test]
    fn evaluate_term_by_term_cross_check() {
        // Independent accumulation over id maps, compared against evaluate on
        // a handful of fixed assignments.
        let m = triangle_model();
        for mask in 0..8u8 {
            let spins: Vec<i8> = (0..3)
                .map(|v| if mask >> v & 1 == 1 { 1 } else { -1 })
                .collect();
            let s = SpinAssignment::from_dense(m.graph(), &spins);
            let mut expected = 0.0;
            for (v, id) in m.graph().ids().iter().enumerate() {
                expected += m.weights()[v] * f64::from(s.get(id).unwrap());
            }
            for (e, (a, b)) in m.graph().edge_ids().enumerate() {
                expected +=
                    m.strengths()[e] * f64::from(s.get(a).unwrap()) * f64::from(s.get(b).unwrap());
            }
            assert_eq!(evaluate(&m, &s).unwrap(), expected);
        }
    }

    #[test]
    fn c_max_is_largest_magnitude() {
        let g = Graph::new(["a", "b"], [("a", "b")]).unwrap();
        let m = IsingModel::new(g, vec![-3.0, 0.5], vec![2.0]).unwrap();
        assert_eq!(c_max(&m), 3.0);
        let empty = IsingModel::new(
            Graph::new([] as [&str; 0], [] as [(&str, &str); 0]).unwrap(),
            vec![],
            vec![],
        )
        .unwrap();
        assert_eq!(c_max(&empty), 0.0);
    }

    #[test]
    fn brute_force_path() {
        // Path a-b-c with unit strengths and zero weights: minimum -2 at the
        // two alternating assignments.
        let g = Graph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let m = IsingModel::new(g, vec![0.0; 3], vec![1.0, 1.0]).unwrap();
        let result = brute_force_minimum(&m).unwrap();
        assert_eq!(result.value, -2.0);
        assert_eq!(result.minimizers.len(), 2);
        let alt = SpinAssignment::new([("a", 1), ("b", -1), ("c", 1)]).unwrap();
        assert!(result.contains(&alt));
        let alt2 = SpinAssignment::new([("a", -1), ("b", 1), ("c", -1)]).unwrap();
        assert!(result.contains(&alt2));
    }

    #[test]
    fn brute_force_empty_model() {
        let m = IsingModel::new(
            Graph::new([] as [&str; 0], [] as [(&str, &str); 0]).unwrap(),
            vec![],
            vec![],
        )
        .unwrap();
        let result = brute_force_minimum(&m).unwrap();
        assert_eq!(result.value, 0.0);
        assert_eq!(result.minimizers.len(), 1);
        assert!(result.minimizers[0].is_empty());
    }

    #[test]
    fn brute_force_respects_limit() {
        let ids: Vec<String> = (0..5).map(|i| format!("v{i}")).collect();
        let g = Graph::new(ids, [] as [(&str, &str); 0]).unwrap();
        let m = IsingModel::new(g, vec![0.0; 5], vec![]).unwrap();
        assert!(brute_force_minimum_with_limit(&m, 4).is_err());
    }

    #[test]
    fn from_maps_defaults_missing_weights() {
        let g = Graph::new(["a", "b"], [("a", "b")]).unwrap();
        let mut weights = BTreeMap::new();
        weights.insert("a".to_string(), 2.0);
        let mut strengths = BTreeMap::new();
        strengths.insert(("a".to_string(), "b".to_string()), -1.0);
        let m = IsingModel::from_maps(g, &weights, &strengths).unwrap();
        assert_eq!(m.weights(), [2.0, 0.0]);
        assert_eq!(m.strengths(), [-1.0]);
    }

    #[test]
    fn nonzero_strength_check() {
        let g = Graph::new(["a", "b"], [("a", "b")]).unwrap();
        let m = IsingModel::new(g, vec![0.0, 0.0], vec![0.0]).unwrap();
        assert!(m.require_nonzero_strengths().is_err());
    }
}
