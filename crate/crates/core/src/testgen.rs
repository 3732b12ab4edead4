//! Seeded generators for reproducible instances.
//!
//! Everything is driven by a caller-supplied ChaCha generator so identical
//! seeds give identical objects across runs and platforms. Ids are
//! zero-padded, which keeps lexicographic order equal to numeric order and
//! therefore dense indices equal to generation order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embedding::Embedding;
use crate::graph::Graph;
use crate::ising::IsingModel;
use crate::subproblem::SubproblemInstance;

/// The deterministic generator all seeded entry points use.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `prefix` plus a zero-padded counter wide enough for `n` values.
pub fn vertex_ids(prefix: &str, n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| format!("{prefix}{i:0width$}")).collect()
}

/// Uniform random labeled tree: each vertex beyond the first attaches to a
/// uniformly chosen earlier one.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    let ids = vertex_ids("q", n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        edges.push((ids[parent].clone(), ids[i].clone()));
    }
    Graph::new(ids, edges).expect("generated tree is valid")
}

/// Random connected graph: a random tree plus up to `extra` distinct
/// non-tree edges.
pub fn random_connected_graph(n: usize, extra: usize, rng: &mut impl Rng) -> Graph {
    let tree = random_tree(n, rng);
    let ids: Vec<String> = tree.ids().to_vec();
    let mut edges: Vec<(String, String)> = tree
        .edges()
        .iter()
        .map(|&(u, v)| (ids[u].clone(), ids[v].clone()))
        .collect();
    let mut present: std::collections::BTreeSet<(usize, usize)> =
        tree.edges().iter().copied().collect();
    let mut budget = extra;
    let mut attempts = 0;
    while budget > 0 && attempts < 20 * extra.max(1) && n >= 2 {
        attempts += 1;
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if a == b || present.contains(&(a, b)) {
            continue;
        }
        present.insert((a, b));
        edges.push((ids[a].clone(), ids[b].clone()));
        budget -= 1;
    }
    Graph::new(ids, edges).expect("generated graph is valid")
}

/// Random weight distribution instance over a random tree: outer strengths
/// uniform on `[0, 5]`, weight magnitude uniform on `[0, 0.9 * sigma(V)]`
/// (never preprocessable), half-gap uniform on `[0.1, 2]`.
pub fn random_instance(n: usize, rng: &mut impl Rng) -> SubproblemInstance {
    let graph = random_tree(n, rng);
    let sigma: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..5.0)).collect();
    let total: f64 = sigma.iter().sum();
    let lambda = rng.gen_range(0.0..0.9 * total.max(f64::MIN_POSITIVE));
    let gamma = rng.gen_range(0.1..2.0);
    SubproblemInstance {
        graph,
        sigma,
        lambda,
        gamma,
    }
}

/// Random model on a graph: strengths are `[0.25, 1]` in magnitude with
/// random sign, weights stay strictly below the incident strength total so
/// no vertex is preprocessable.
pub fn random_model(graph: &Graph, rng: &mut impl Rng) -> IsingModel {
    let strengths: Vec<f64> = graph
        .edges()
        .iter()
        .map(|_| {
            let magnitude = rng.gen_range(0.25..1.0);
            if rng.gen_bool(0.5) {
                magnitude
            } else {
                -magnitude
            }
        })
        .collect();
    let weights: Vec<f64> = (0..graph.vertex_count())
        .map(|v| {
            let incident: f64 = graph
                .edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| a == v || b == v)
                .map(|(e, _)| strengths[e].abs())
                .sum();
            rng.gen_range(-0.9..0.9) * incident
        })
        .collect();
    IsingModel::new(graph.clone(), weights, strengths).expect("generated model is valid")
}

/// Random valid embedding of a logical graph: every vertex becomes a path of
/// `1..=max_chain` fresh qubits, every logical edge gets one or two couplers
/// between random members of the two chains. Returns the hardware graph
/// (exactly the union, no stray edges) and the embedding.
pub fn random_embedding(
    logical: &Graph,
    max_chain: usize,
    rng: &mut impl Rng,
) -> (Graph, Embedding) {
    let n = logical.vertex_count();
    let sizes: Vec<usize> = (0..n)
        .map(|_| rng.gen_range(1..=max_chain.max(1)))
        .collect();
    let total: usize = sizes.iter().sum();
    let hw_ids = vertex_ids("h", total);

    let mut images: Vec<Vec<String>> = Vec::with_capacity(n);
    let mut edges: std::collections::BTreeSet<(String, String)> = std::collections::BTreeSet::new();
    let mut next = 0;
    for &size in &sizes {
        let chain: Vec<String> = hw_ids[next..next + size].to_vec();
        next += size;
        for pair in chain.windows(2) {
            edges.insert((pair[0].clone(), pair[1].clone()));
        }
        images.push(chain);
    }

    for &(u, v) in logical.edges() {
        let couplers = rng.gen_range(1..=2);
        for _ in 0..couplers {
            let p = images[u][rng.gen_range(0..images[u].len())].clone();
            let q = images[v][rng.gen_range(0..images[v].len())].clone();
            let (p, q) = if p < q { (p, q) } else { (q, p) };
            edges.insert((p, q));
        }
    }

    let hardware = Graph::new(hw_ids, edges).expect("generated hardware is valid");
    let phi = Embedding::new(
        logical
            .ids()
            .iter()
            .zip(images)
            .map(|(v, image)| (v.clone(), image)),
    )
    .expect("generated embedding is well formed");
    (hardware, phi)
}
