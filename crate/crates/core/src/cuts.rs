//! Cut families over the inner graph of a weight distribution instance.
//!
//! A cut is identified with the vertex set `S` on one side; its boundary size
//! `|delta(S)|` is the number of edges leaving `S`. The full family of all
//! non-empty proper subsets is exponential; the connected family (both sides
//! connected) gives the same optimum, and on trees the cuts induced by single
//! edge removals suffice, making the program polynomial.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex limit for exponential subset enumeration.
pub const SUBSET_LIMIT: usize = 20;

/// One side of a cut: the member vertices (sorted dense indices) and the
/// number of boundary edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSet {
    pub members: Vec<usize>,
    pub boundary: usize,
}

/// An ordered list of cuts of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutFamily {
    pub cuts: Vec<CutSet>,
}

impl CutFamily {
    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }
}

fn boundary_of_mask(graph: &Graph, mask: u32) -> usize {
    graph
        .edges()
        .iter()
        .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
        .count()
}

fn members_of_mask(n: usize, mask: u32) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Every non-empty proper subset of the vertices, in ascending bitmask order
/// (bit `i` = vertex index `i`), with the default guard of [`SUBSET_LIMIT`].
pub fn all_subsets(graph: &Graph) -> Result<CutFamily> {
    all_subsets_with_limit(graph, SUBSET_LIMIT)
}

/// [`all_subsets`] with an explicit vertex limit.
pub fn all_subsets_with_limit(graph: &Graph, limit: usize) -> Result<CutFamily> {
    let n = guarded_size(graph, limit)?;
    let mut cuts = Vec::new();
    if n >= 1 {
        for mask in 1..((1u32 << n) - 1) {
            cuts.push(CutSet {
                members: members_of_mask(n, mask),
                boundary: boundary_of_mask(graph, mask),
            });
        }
    }
    Ok(CutFamily { cuts })
}

/// The subsets whose both sides induce connected subgraphs, in ascending
/// bitmask order, with the default guard of [`SUBSET_LIMIT`]. The family is
/// closed under complement. Requires a connected graph (otherwise no subset
/// qualifies and the optimum would be unconstrained).
pub fn connected_cuts(graph: &Graph) -> Result<CutFamily> {
    connected_cuts_with_limit(graph, SUBSET_LIMIT)
}

/// [`connected_cuts`] with an explicit vertex limit.
pub fn connected_cuts_with_limit(graph: &Graph, limit: usize) -> Result<CutFamily> {
    let n = guarded_size(graph, limit)?;
    if !graph.is_connected() {
        return Err(Error::Disconnected("cut enumeration graph".to_string()));
    }
    let mut cuts = Vec::new();
    if n >= 1 {
        let full = (1u32 << n) - 1;
        for mask in 1..full {
            let members = members_of_mask(n, mask);
            if !graph.subset_connected(&members) {
                continue;
            }
            let complement = members_of_mask(n, full & !mask);
            if !graph.subset_connected(&complement) {
                continue;
            }
            cuts.push(CutSet {
                boundary: boundary_of_mask(graph, mask),
                members,
            });
        }
    }
    Ok(CutFamily { cuts })
}

/// The `2(|V| - 1)` cuts induced by removing a single tree edge: for each
/// edge in edge order, first the component of the smaller endpoint, then the
/// component of the larger. Every boundary is 1. Fails when the graph is not
/// a tree. A single vertex yields the empty family.
pub fn tree_edge_cuts(graph: &Graph) -> Result<CutFamily> {
    if !graph.is_tree() {
        return Err(Error::NotATree("cut enumeration graph".to_string()));
    }
    let mut cuts = Vec::new();
    for &(u, v) in graph.edges() {
        let seen = component_avoiding(graph, u, v);
        let mut side_u = Vec::new();
        let mut side_v = Vec::new();
        for w in 0..graph.vertex_count() {
            if seen[w] {
                side_u.push(w);
            } else {
                side_v.push(w);
            }
        }
        cuts.push(CutSet {
            members: side_u,
            boundary: 1,
        });
        cuts.push(CutSet {
            members: side_v,
            boundary: 1,
        });
    }
    Ok(CutFamily { cuts })
}

/// Marks the vertices reachable from `start` without crossing the edge
/// `{start, avoid}` — in a tree, the component of `start` after removing
/// that edge.
fn component_avoiding(graph: &Graph, start: usize, avoid: usize) -> Vec<bool> {
    let mut seen = vec![false; graph.vertex_count()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for &w in graph.neighbors(u) {
            if u == start && w == avoid {
                continue;
            }
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

fn guarded_size(graph: &Graph, limit: usize) -> Result<usize> {
    let n = graph.vertex_count();
    if n > limit.min(31) {
        return Err(Error::SizeLimit {
            what: "cut enumeration graph",
            size: n,
            limit: limit.min(31),
        });
    }
    Ok(n)
}
