//! JSON file formats: problems, embeddings, parameter results, samples.
//!
//! Vertex ids are strings everywhere; bare integers in input files are
//! accepted and normalized to their decimal form. Maps are keyed by id, so
//! serde's BTreeMap round-trip keeps key order stable, and numbers are
//! written in the shortest form that parses back to the same value. Saving
//! and re-loading a result file therefore reproduces the embedded model
//! bit for bit.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use ising_embed::embedding::Embedding;
use ising_embed::graph::Graph;
use ising_embed::ising::{c_max, IsingModel};
use ising_embed::setter::{EmbeddedIsingModel, VertexRecord};
use ising_embed::subproblem::OuterStrategy;

use crate::Failure;

/// A vertex id. Serializes as a plain JSON string; deserializes from a
/// string or from a bare integer (normalized to decimal).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Id(pub String);

impl Serialize for Id {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Id {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Id, D::Error> {
        struct IdVisitor;

        impl Visitor<'_> for IdVisitor {
            type Value = Id;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a string or integer vertex id")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Id, E> {
                Ok(Id(s.to_string()))
            }

            fn visit_i64<E: de::Error>(self, n: i64) -> Result<Id, E> {
                Ok(Id(n.to_string()))
            }

            fn visit_u64<E: de::Error>(self, n: u64) -> Result<Id, E> {
                Ok(Id(n.to_string()))
            }
        }

        deserializer.deserialize_any(IdVisitor)
    }
}

/// One weighted edge of a problem file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub u: Id,
    pub v: Id,
    pub strength: f64,
}

/// An Ising problem: vertices, weighted edges, and a (sparse) weight map.
/// Vertices without a weight entry have weight zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub vertices: Vec<Id>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default)]
    pub weights: BTreeMap<String, f64>,
}

impl ProblemFile {
    /// Canonical file form of a model: vertices and edges in graph order,
    /// every vertex listed in the weight map.
    pub fn from_model(model: &IsingModel) -> ProblemFile {
        let graph = model.graph();
        let vertices = graph.ids().iter().cloned().map(Id).collect();
        let edges = graph
            .edge_ids()
            .zip(model.strengths())
            .map(|((u, v), &strength)| EdgeEntry {
                u: Id(u.to_string()),
                v: Id(v.to_string()),
                strength,
            })
            .collect();
        let weights = graph
            .ids()
            .iter()
            .zip(model.weights())
            .map(|(id, &w)| (id.clone(), w))
            .collect();
        ProblemFile {
            vertices,
            edges,
            weights,
        }
    }

    /// Builds the model. `require_nonzero` enforces nonzero strengths, as
    /// original problems must have; embedded-model files relax this because
    /// surplus hardware edges legitimately carry strength zero.
    pub fn to_model(&self, require_nonzero: bool) -> Result<IsingModel, Failure> {
        let vertices: Vec<String> = self.vertices.iter().map(|id| id.0.clone()).collect();
        let pairs: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|e| (e.u.0.clone(), e.v.0.clone()))
            .collect();
        let graph = Graph::new(vertices, pairs)?;

        let mut strengths = vec![None; graph.edge_count()];
        for e in &self.edges {
            let u = graph.require_index(&e.u.0)?;
            let v = graph.require_index(&e.v.0)?;
            // The graph was built from these entries, and duplicates were
            // rejected above, so each slot is filled exactly once.
            let k = graph.edge_index(u, v).expect("edge listed in file");
            strengths[k] = Some(e.strength);
        }
        let strengths: Vec<f64> = strengths
            .into_iter()
            .map(|s| s.expect("every edge came from an entry"))
            .collect();

        for id in self.weights.keys() {
            graph.require_index(id)?;
        }
        let weights: Vec<f64> = graph
            .ids()
            .iter()
            .map(|id| self.weights.get(id).copied().unwrap_or(0.0))
            .collect();

        let model = IsingModel::new(graph, weights, strengths)?;
        if require_nonzero {
            model.require_nonzero_strengths()?;
        }
        Ok(model)
    }
}

/// An unweighted edge of a hardware graph file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgePair {
    pub u: Id,
    pub v: Id,
}

/// A bare graph: the hardware half of an embedding file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<Id>,
    pub edges: Vec<EdgePair>,
}

impl GraphFile {
    pub fn from_graph(graph: &Graph) -> GraphFile {
        GraphFile {
            vertices: graph.ids().iter().cloned().map(Id).collect(),
            edges: graph
                .edge_ids()
                .map(|(u, v)| EdgePair {
                    u: Id(u.to_string()),
                    v: Id(v.to_string()),
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, Failure> {
        let vertices: Vec<String> = self.vertices.iter().map(|id| id.0.clone()).collect();
        let pairs: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|e| (e.u.0.clone(), e.v.0.clone()))
            .collect();
        Ok(Graph::new(vertices, pairs)?)
    }
}

/// A minor embedding: the hardware graph and the image map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingFile {
    pub hardware: GraphFile,
    pub map: BTreeMap<String, Vec<Id>>,
}

impl EmbeddingFile {
    pub fn from_parts(hardware: &Graph, phi: &Embedding) -> EmbeddingFile {
        EmbeddingFile {
            hardware: GraphFile::from_graph(hardware),
            map: phi
                .iter()
                .map(|(v, image)| (v.to_string(), image.iter().cloned().map(Id).collect()))
                .collect(),
        }
    }

    pub fn to_parts(&self) -> Result<(Graph, Embedding), Failure> {
        let hardware = self.hardware.to_graph()?;
        let phi = Embedding::new(
            self.map
                .iter()
                .map(|(v, image)| (v.clone(), image.iter().map(|id| id.0.clone()))),
        )?;
        Ok((hardware, phi))
    }
}

/// Per-vertex solver record in a result file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexRecordFile {
    /// Uniform inner coupling magnitude; null for single-qubit images.
    pub theta: Option<f64>,
    pub gamma: f64,
    pub omega: BTreeMap<String, f64>,
    pub tight_cuts: Vec<Vec<String>>,
    pub family_size: usize,
    pub lp_constraints: usize,
}

impl VertexRecordFile {
    fn from_record(record: &VertexRecord) -> VertexRecordFile {
        VertexRecordFile {
            theta: record.theta,
            gamma: record.gamma,
            omega: record.omega.clone(),
            tight_cuts: record.tight_cuts.clone(),
            family_size: record.family_size,
            lp_constraints: record.lp_constraints,
        }
    }

    fn to_record(&self) -> VertexRecord {
        VertexRecord {
            theta: self.theta,
            gamma: self.gamma,
            omega: self.omega.clone(),
            tight_cuts: self.tight_cuts.clone(),
            family_size: self.family_size,
            lp_constraints: self.lp_constraints,
        }
    }
}

/// A computed embedded model with its parameter records. Loading rebuilds
/// the exact [`EmbeddedIsingModel`] that was saved.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultFile {
    pub model: ProblemFile,
    pub offset_c: f64,
    pub gamma: f64,
    pub strategy: String,
    pub use_spanning_tree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline_factor: Option<f64>,
    /// Largest parameter magnitude of the embedded model, for reporting.
    pub c_max: f64,
    pub per_vertex: BTreeMap<String, VertexRecordFile>,
}

impl ResultFile {
    pub fn from_embedded(embedded: &EmbeddedIsingModel) -> ResultFile {
        ResultFile {
            model: ProblemFile::from_model(&embedded.model),
            offset_c: embedded.offset_c,
            gamma: embedded.gamma,
            strategy: embedded.strategy.name().to_string(),
            use_spanning_tree: embedded.use_spanning_tree,
            baseline_factor: embedded.baseline_factor,
            c_max: c_max(&embedded.model),
            per_vertex: embedded
                .per_vertex
                .iter()
                .map(|(v, r)| (v.clone(), VertexRecordFile::from_record(r)))
                .collect(),
        }
    }

    pub fn to_embedded(&self) -> Result<EmbeddedIsingModel, Failure> {
        let model = self.model.to_model(false)?;
        let strategy = OuterStrategy::from_name(&self.strategy).ok_or_else(|| {
            Failure::semantic(format!("unknown outer strategy `{}`", self.strategy))
        })?;
        if !self.offset_c.is_finite() {
            return Err(Failure::semantic("offset_c is not finite"));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Failure::semantic(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        let stored = self.c_max;
        let actual = c_max(&model);
        if (stored - actual).abs() > 1e-9 * (1.0 + actual.abs()) {
            return Err(Failure::semantic(format!(
                "stored c_max {stored} does not match the model's {actual}"
            )));
        }
        let per_vertex = self
            .per_vertex
            .iter()
            .map(|(v, r)| (v.clone(), r.to_record()))
            .collect();
        Ok(EmbeddedIsingModel {
            model,
            offset_c: self.offset_c,
            gamma: self.gamma,
            strategy,
            use_spanning_tree: self.use_spanning_tree,
            baseline_factor: self.baseline_factor,
            per_vertex,
        })
    }
}

/// Hardware samples to map back to logical assignments: one spin map per
/// sample, every hardware vertex present, spins written as 1 or -1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SamplesFile {
    pub samples: Vec<BTreeMap<String, i8>>,
}

/// Reads and parses a JSON file. Unreadable or malformed input is a usage
/// failure (exit 2) naming the path.
pub fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Pretty-printed JSON with a trailing newline; the byte form every command
/// writes and prints.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

pub fn save<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    fs::write(path, to_pretty(value))
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}
