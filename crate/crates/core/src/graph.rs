//! Simple undirected graphs over string vertex ids.
//!
//! Vertices are identified by opaque strings at the interface and mapped to
//! dense indices internally. The dense ordering is the lexicographic order of
//! the ids, which makes every derived structure (edge lists, adjacency,
//! spanning trees, cut enumerations) deterministic for a given input.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

/// An undirected graph without self loops or parallel edges.
///
/// Edges are stored as index pairs `(u, v)` with `u < v`, sorted
/// lexicographically; `edges()[i]` is the edge with edge index `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from vertex ids and edges given as id pairs.
    ///
    /// Fails on duplicate vertex ids, unknown edge endpoints, self loops and
    /// duplicate edges (regardless of orientation).
    pub fn new<I, S, E, T>(vertices: I, edges: E) -> Result<Graph>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let mut ids: Vec<String> = vertices.into_iter().map(Into::into).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate vertex id `{}`",
                w[0]
            )));
        }
        let index: HashMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();

        let mut idx_edges = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ai = *index
                .get(a)
                .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let bi = *index
                .get(b)
                .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            if ai == bi {
                return Err(Error::InvalidGraph(format!("self loop at `{a}`")));
            }
            idx_edges.push((ai.min(bi), ai.max(bi)));
        }
        idx_edges.sort();
        if let Some(w) = idx_edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge `{}`-`{}`",
                ids[w[0].0], ids[w[0].1]
            )));
        }

        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in &idx_edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        Ok(Graph {
            ids,
            index,
            edges: idx_edges,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex ids in dense index order (sorted lexicographically).
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require_index(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Edges as dense index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge endpoints as ids, in edge index order.
    pub fn edge_ids(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges
            .iter()
            .map(move |&(u, v)| (self.ids[u].as_str(), self.ids[v].as_str()))
    }

    /// Neighbors of `v` in ascending index order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = (u.min(v), u.max(v));
        self.edges.binary_search(&(a, b)).is_ok()
    }

    /// Index of the edge `{u, v}` in `edges()`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (u.min(v), u.max(v));
        self.edges.binary_search(&(a, b)).ok()
    }

    /// True when the graph has at most one vertex or a single connected
    /// component.
    pub fn is_connected(&self) -> bool {
        if self.ids.len() <= 1 {
            return true;
        }
        let mut seen = vec![false; self.ids.len()];
        let reached = self.bfs_from(0, &mut seen);
        reached == self.ids.len()
    }

    /// True when `members` (dense indices) induce a connected subgraph.
    /// The empty set counts as disconnected, a singleton as connected.
    pub fn subset_connected(&self, members: &[usize]) -> bool {
        if members.is_empty() {
            return false;
        }
        let inside: HashSet<usize> = members.iter().copied().collect();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        queue.push_back(members[0]);
        seen.insert(members[0]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if inside.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == members.len()
    }

    /// The subgraph induced by `members` (dense indices), with ids preserved.
    pub fn induced(&self, members: &[usize]) -> Graph {
        let inside: HashSet<usize> = members.iter().copied().collect();
        let ids: Vec<String> = members.iter().map(|&v| self.ids[v].clone()).collect();
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .filter(|(u, v)| inside.contains(u) && inside.contains(v))
            .map(|&(u, v)| (self.ids[u].clone(), self.ids[v].clone()))
            .collect();
        Graph::new(ids, edges).expect("induced subgraph of a valid graph is valid")
    }

    /// True when the graph is connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.vertex_count().max(1)
    }

    /// A breadth-first spanning tree rooted at the smallest vertex id, with
    /// neighbors explored in ascending id order. Returns tree edges as index
    /// pairs `(u, v)` with `u < v`, sorted. Fails when the graph is
    /// disconnected. A single vertex yields an empty edge set.
    pub fn spanning_tree(&self) -> Result<Vec<(usize, usize)>> {
        if self.ids.is_empty() {
            return Ok(Vec::new());
        }
        let mut seen = vec![false; self.ids.len()];
        let mut tree = Vec::new();
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    tree.push((u.min(w), u.max(w)));
                    queue.push_back(w);
                }
            }
        }
        if tree.len() + 1 != self.ids.len() {
            return Err(Error::Disconnected("graph".to_string()));
        }
        tree.sort_unstable();
        Ok(tree)
    }

    fn bfs_from(&self, start: usize, seen: &mut [bool]) -> usize {
        let mut queue = VecDeque::new();
        let mut reached = 1;
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached
    }
}
