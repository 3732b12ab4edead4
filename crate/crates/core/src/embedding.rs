//! Minor embeddings of a logical graph into a hardware graph.
//!
//! An embedding maps every logical vertex `v` to a set of hardware vertices
//! `phi_v` (its image) such that images are pairwise disjoint, every image
//! induces a connected hardware subgraph, and for every logical edge `vw` at
//! least one hardware edge connects `phi_v` to `phi_w`.
//!
//! The embedded graph keeps only the hardware edges that carry meaning for
//! the embedded problem: intra edges inside an image and coupler edges
//! between images of adjacent logical vertices. Hardware edges between images
//! of non-adjacent logical vertices carry no coupling and are omitted.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A map from logical vertex ids to disjoint sets of hardware vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    map: BTreeMap<String, Vec<String>>,
}

impl Embedding {
    /// Builds an embedding from `(logical id, image ids)` pairs. Images are
    /// sorted and must be free of duplicates; structural conditions are
    /// checked later by [`validate_embedding`].
    pub fn new<I, S, J, T>(pairs: I) -> Result<Embedding>
    where
        I: IntoIterator<Item = (S, J)>,
        S: Into<String>,
        J: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (v, image) in pairs {
            let v = v.into();
            let mut image: Vec<String> = image.into_iter().map(Into::into).collect();
            image.sort();
            if let Some(w) = image.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidEmbedding(format!(
                    "image of `{v}` lists `{}` twice",
                    w[0]
                )));
            }
            if map.insert(v.clone(), image).is_some() {
                return Err(Error::InvalidEmbedding(format!(
                    "image of `{v}` given twice"
                )));
            }
        }
        Ok(Embedding { map })
    }

    /// Image of a logical vertex, sorted by id.
    pub fn image(&self, v: &str) -> Option<&[String]> {
        self.map.get(v).map(|img| img.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.map.iter().map(|(v, img)| (v.as_str(), img.as_slice()))
    }

    pub fn logical_ids(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }
}

/// One violated embedding condition. Failures are collected in condition
/// order — overlaps, then image defects, then missing couplers — so the first
/// entry always names the first violated condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationFailure {
    /// A hardware vertex appears in the images of two logical vertices.
    Overlap {
        hardware: String,
        first: String,
        second: String,
    },
    /// A logical vertex has an empty image.
    EmptyImage { vertex: String },
    /// The image of a logical vertex does not induce a connected subgraph.
    DisconnectedImage { vertex: String },
    /// No hardware edge connects the images of an adjacent logical pair.
    MissingCoupler { u: String, v: String },
}

impl std::fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationFailure::Overlap {
                hardware,
                first,
                second,
            } => write!(
                f,
                "hardware vertex `{hardware}` belongs to the images of both `{first}` and `{second}`"
            ),
            ValidationFailure::EmptyImage { vertex } => {
                write!(f, "image of `{vertex}` is empty")
            }
            ValidationFailure::DisconnectedImage { vertex } => {
                write!(f, "image of `{vertex}` is not connected in the hardware graph")
            }
            ValidationFailure::MissingCoupler { u, v } => {
                write!(f, "no hardware edge connects the images of `{u}` and `{v}`")
            }
        }
    }
}

/// Outcome of embedding validation with all diagnostics collected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the three minor embedding conditions and reports every violation.
///
/// Unknown logical or hardware ids and logical vertices without an image are
/// hard errors (the inputs are malformed); condition violations are reported
/// in the result so callers can print all diagnostics.
pub fn validate_embedding(
    logical: &Graph,
    hardware: &Graph,
    phi: &Embedding,
) -> Result<ValidationReport> {
    for v in phi.logical_ids() {
        if logical.index_of(v).is_none() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
    }
    for id in logical.ids() {
        if phi.image(id).is_none() {
            return Err(Error::InvalidEmbedding(format!("`{id}` has no image")));
        }
    }
    for (_, image) in phi.iter() {
        for q in image {
            if hardware.index_of(q).is_none() {
                return Err(Error::UnknownVertex(q.clone()));
            }
        }
    }

    let mut failures = Vec::new();

    // (a) images are pairwise disjoint.
    let mut owner: BTreeMap<&str, &str> = BTreeMap::new();
    for (v, image) in phi.iter() {
        for q in image {
            if let Some(first) = owner.get(q.as_str()) {
                failures.push(ValidationFailure::Overlap {
                    hardware: q.clone(),
                    first: (*first).to_string(),
                    second: v.to_string(),
                });
            } else {
                owner.insert(q, v);
            }
        }
    }

    // (b) every image induces a connected, non-empty subgraph.
    for (v, image) in phi.iter() {
        if image.is_empty() {
            failures.push(ValidationFailure::EmptyImage {
                vertex: v.to_string(),
            });
            continue;
        }
        let members: Vec<usize> = image
            .iter()
            .map(|q| hardware.index_of(q).expect("checked above"))
            .collect();
        if !hardware.subset_connected(&members) {
            failures.push(ValidationFailure::DisconnectedImage {
                vertex: v.to_string(),
            });
        }
    }

    // (c) every logical edge has at least one coupler.
    for (a, b) in logical.edge_ids() {
        let img_a: BTreeSet<usize> = phi
            .image(a)
            .unwrap()
            .iter()
            .map(|q| hardware.index_of(q).unwrap())
            .collect();
        let img_b: BTreeSet<usize> = phi
            .image(b)
            .unwrap()
            .iter()
            .map(|q| hardware.index_of(q).unwrap())
            .collect();
        let covered = hardware.edges().iter().any(|&(p, q)| {
            (img_a.contains(&p) && img_b.contains(&q)) || (img_a.contains(&q) && img_b.contains(&p))
        });
        if !covered {
            failures.push(ValidationFailure::MissingCoupler {
                u: a.to_string(),
                v: b.to_string(),
            });
        }
    }

    Ok(ValidationReport { failures })
}

/// The embedded graph: the union of all images with intra edges (inside an
/// image) and coupler edges (between images of adjacent logical vertices).
///
/// Vertex and edge indices below refer to [`EmbeddedGraphStructure::graph`];
/// logical indices refer to the logical graph the structure was built from.
#[derive(Debug, Clone)]
pub struct EmbeddedGraphStructure {
    graph: Graph,
    logical_ids: Vec<String>,
    /// For each embedded vertex, the logical index owning it.
    owner: Vec<usize>,
    /// For each logical index, its image as embedded vertex indices (sorted).
    images: Vec<Vec<usize>>,
    /// For each logical index, its intra edges as embedded edge indices.
    intra: Vec<Vec<usize>>,
    /// For each logical edge (as an index pair `u < v`), its coupler edges.
    inter: BTreeMap<(usize, usize), Vec<usize>>,
}

impl EmbeddedGraphStructure {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn logical_ids(&self) -> &[String] {
        &self.logical_ids
    }

    /// Logical index owning an embedded vertex.
    pub fn owner(&self, q: usize) -> usize {
        self.owner[q]
    }

    /// Image of logical index `v` as embedded vertex indices.
    pub fn image(&self, v: usize) -> &[usize] {
        &self.images[v]
    }

    /// Intra edges of logical index `v` as embedded edge indices.
    pub fn intra_edges(&self, v: usize) -> &[usize] {
        &self.intra[v]
    }

    /// Coupler edges of the logical edge `{u, v}` as embedded edge indices.
    pub fn inter_edges(&self, u: usize, v: usize) -> &[usize] {
        let key = (u.min(v), u.max(v));
        self.inter.get(&key).map(|e| e.as_slice()).unwrap_or(&[])
    }

    pub fn logical_edges(&self) -> impl Iterator<Item = ((usize, usize), &[usize])> {
        self.inter.iter().map(|(&k, e)| (k, e.as_slice()))
    }

    /// Total number of intra edges across all images.
    pub fn intra_edge_count(&self) -> usize {
        self.intra.iter().map(Vec::len).sum()
    }
}

/// Builds the embedded graph structure for a valid embedding.
///
/// Fails with the first diagnostic when validation does not pass. Every edge
/// of the embedded graph is either an intra edge of exactly one image or a
/// coupler edge of exactly one logical edge.
pub fn build_embedded_structure(
    logical: &Graph,
    hardware: &Graph,
    phi: &Embedding,
) -> Result<EmbeddedGraphStructure> {
    let report = validate_embedding(logical, hardware, phi)?;
    if let Some(first) = report.failures.first() {
        return Err(Error::InvalidEmbedding(format!(
            "{first} ({} conditions violated)",
            report.failures.len()
        )));
    }

    let logical_ids: Vec<String> = logical.ids().to_vec();
    let mut union: Vec<String> = Vec::new();
    for id in &logical_ids {
        union.extend(phi.image(id).unwrap().iter().cloned());
    }

    // Owner of each hardware vertex, by hardware index.
    let mut hw_owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, id) in logical_ids.iter().enumerate() {
        for q in phi.image(id).unwrap() {
            hw_owner.insert(hardware.index_of(q).unwrap(), v);
        }
    }

    // Keep intra edges and couplers of logical edges; drop edges between
    // images of non-adjacent logical vertices and edges leaving the union.
    let mut kept_edges: Vec<(String, String)> = Vec::new();
    for &(p, q) in hardware.edges() {
        let (Some(&a), Some(&b)) = (hw_owner.get(&p), hw_owner.get(&q)) else {
            continue;
        };
        if a == b || logical.has_edge(a, b) {
            kept_edges.push((hardware.id(p).to_string(), hardware.id(q).to_string()));
        }
    }

    let graph = Graph::new(union, kept_edges)?;

    let mut owner = vec![usize::MAX; graph.vertex_count()];
    let mut images = vec![Vec::new(); logical_ids.len()];
    for (v, id) in logical_ids.iter().enumerate() {
        for q in phi.image(id).unwrap() {
            let qi = graph.index_of(q).unwrap();
            owner[qi] = v;
            images[v].push(qi);
        }
        images[v].sort_unstable();
    }

    let mut intra = vec![Vec::new(); logical_ids.len()];
    let mut inter: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (e, &(p, q)) in graph.edges().iter().enumerate() {
        let (a, b) = (owner[p], owner[q]);
        if a == b {
            intra[a].push(e);
        } else {
            inter.entry((a.min(b), a.max(b))).or_default().push(e);
        }
    }
    // Logical edges whose couplers were all dropped cannot occur (validation
    // guarantees at least one), but logical edges absent from `inter` would
    // make downstream lookups silently empty; assert the partition is total.
    for (u, v) in logical.edges() {
        if !inter.contains_key(&(*u, *v)) {
            return Err(Error::Internal(format!(
                "no coupler recorded for logical edge `{}`-`{}`",
                logical.id(*u),
                logical.id(*v)
            )));
        }
    }

    Ok(EmbeddedGraphStructure {
        graph,
        logical_ids,
        owner,
        images,
        intra,
        inter,
    })
}
