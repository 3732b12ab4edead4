//! Fast path for programs whose cut rows all have unit boundary and whose
//! member sets, complemented onto a fixed root vertex, form a laminar
//! family. The tree edge cut family always has this shape: both sides of
//! every tree edge normalize to the same subtree, and subtrees nest.
//!
//! For such programs feasibility at a fixed `theta` is an interval
//! computation: every row bounds the weight of one laminar set,
//!
//! ```text
//! theta - omega(S) >= r        =>  omega(S) <= theta - r
//! theta - omega(V \ S) >= r    =>  omega(S) >= lambda - theta + r
//! ```
//!
//! and with the box rows bounding each vertex by `[-theta, theta]`, the set
//! of achievable `omega(S)` propagates bottom-up through the forest as a
//! Minkowski sum of child intervals clipped by each node's own bounds. All
//! interval ends grow monotonically with `theta`, so the least feasible
//! `theta` is found by bisection, and a witness `omega` falls out of a
//! top-down greedy distribution. This solves tree instances in near-linear
//! time per probe where the simplex pays for a dense basis inverse.

use super::{ConstraintKind, LinearProgram, Relation, WeightDistribution};
use crate::tolerance;

/// Parent marker for nodes directly below the implicit root (the full
/// vertex set, whose weight is pinned to `lambda`).
const ROOT: usize = usize::MAX;

/// Bisection stops when the bracket is this narrow relative to its upper
/// end; well below every consumer tolerance, well above f64 resolution.
const WIDTH: f64 = 1e-13;

struct Forest {
    lambda: f64,
    /// Normalized member sets, descending by size (ties lexicographic).
    sets: Vec<Vec<u32>>,
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
    /// Vertices whose deepest containing set is this node.
    loose: Vec<Vec<u32>>,
    root_children: Vec<usize>,
    root_loose: Vec<u32>,
    /// `omega(set) <= theta - r`, largest r over rows on the set itself.
    upper_r: Vec<Option<f64>>,
    /// `omega(set) >= lambda - theta + r`, largest r over complement rows.
    lower_r: Vec<Option<f64>>,
}

/// Reads the program into a laminar forest, or `None` when any row falls
/// outside the supported shape.
fn read_program(lp: &LinearProgram) -> Option<Forest> {
    let n = lp.omega_count();
    if n == 0 || lp.objective.len() != n + 1 {
        return None;
    }
    if lp.objective[0] != 1.0 || lp.objective[1..].iter().any(|&c| c != 0.0) {
        return None;
    }

    let mut lambda = None;
    let mut box_upper = vec![0usize; n];
    let mut box_lower = vec![0usize; n];
    // Normalized set -> (upper_r, lower_r).
    let mut bounds: std::collections::BTreeMap<Vec<u32>, (Option<f64>, Option<f64>)> =
        std::collections::BTreeMap::new();

    for c in &lp.constraints {
        match c.kind {
            ConstraintKind::TotalWeight => {
                if lambda.is_some()
                    || c.relation != Relation::Eq
                    || c.coefs.len() != n
                    || c.coefs
                        .iter()
                        .enumerate()
                        .any(|(q, &(j, a))| j != 1 + q || a != 1.0)
                {
                    return None;
                }
                lambda = Some(c.rhs);
            }
            ConstraintKind::BoxUpper { vertex } => {
                if c.relation != Relation::Ge
                    || c.rhs != 0.0
                    || c.coefs != [(0, 1.0), (1 + vertex, -1.0)]
                {
                    return None;
                }
                box_upper[vertex] += 1;
            }
            ConstraintKind::BoxLower { vertex } => {
                if c.relation != Relation::Ge
                    || c.rhs != 0.0
                    || c.coefs != [(0, 1.0), (1 + vertex, 1.0)]
                {
                    return None;
                }
                box_lower[vertex] += 1;
            }
            ConstraintKind::Cut { .. } => {
                if c.relation != Relation::Ge || !c.rhs.is_finite() {
                    return None;
                }
                let mut coefs = c.coefs.iter();
                if coefs.next() != Some(&(0, 1.0)) {
                    return None;
                }
                let mut members = Vec::with_capacity(c.coefs.len() - 1);
                let mut inside = vec![false; n];
                for &(j, a) in coefs {
                    if a != -1.0 || j == 0 || j > n || inside[j - 1] {
                        return None;
                    }
                    inside[j - 1] = true;
                    members.push((j - 1) as u32);
                }
                if members.is_empty() || members.len() >= n {
                    return None;
                }
                members.sort_unstable();
                // Normalize so no set contains vertex 0: a row on the side
                // holding the root becomes a lower bound on the other side.
                if inside[0] {
                    let complement: Vec<u32> =
                        (0..n as u32).filter(|&q| !inside[q as usize]).collect();
                    let entry = bounds.entry(complement).or_insert((None, None));
                    entry.1 = Some(entry.1.map_or(c.rhs, |r: f64| r.max(c.rhs)));
                } else {
                    let entry = bounds.entry(members).or_insert((None, None));
                    entry.0 = Some(entry.0.map_or(c.rhs, |r: f64| r.max(c.rhs)));
                }
            }
        }
    }

    let lambda = lambda?;
    if !lambda.is_finite() || box_upper.iter().any(|&k| k != 1) || box_lower.iter().any(|&k| k != 1)
    {
        return None;
    }

    let mut entries: Vec<(Vec<u32>, Option<f64>, Option<f64>)> = bounds
        .into_iter()
        .map(|(set, (upper, lower))| (set, upper, lower))
        .collect();
    // Descending size; the BTreeMap already fixed a lexicographic tie order.
    entries.sort_by(|a, b| b.0.len().cmp(&a.0.len()));

    let m = entries.len();
    let mut forest = Forest {
        lambda,
        sets: Vec::with_capacity(m),
        parent: vec![ROOT; m],
        children: vec![Vec::new(); m],
        loose: vec![Vec::new(); m],
        root_children: Vec::new(),
        root_loose: Vec::new(),
        upper_r: Vec::with_capacity(m),
        lower_r: Vec::with_capacity(m),
    };

    // Ownership pass: processing large to small, every member of a set must
    // currently be owned by one common node, which becomes the parent;
    // otherwise two sets cross and the family is not laminar.
    let mut owner = vec![ROOT; n];
    for (i, (set, upper, lower)) in entries.into_iter().enumerate() {
        let o = owner[set[0] as usize];
        if set.iter().any(|&q| owner[q as usize] != o) {
            return None;
        }
        forest.parent[i] = o;
        if o == ROOT {
            forest.root_children.push(i);
        } else {
            forest.children[o].push(i);
        }
        for &q in &set {
            owner[q as usize] = i;
        }
        forest.sets.push(set);
        forest.upper_r.push(upper);
        forest.lower_r.push(lower);
    }
    for (q, &o) in owner.iter().enumerate() {
        if o == ROOT {
            forest.root_loose.push(q as u32);
        } else {
            forest.loose[o].push(q as u32);
        }
    }
    Some(forest)
}

impl Forest {
    /// Bottom-up reach of every node at fixed `theta`, written to `out` as
    /// `(lo, hi)` of achievable `omega(set)`; returns whether `lambda` is
    /// achievable at the root. Children precede parents in reverse index
    /// order because the sets are sorted by descending size.
    fn propagate(&self, theta: f64, out: &mut [(f64, f64)]) -> bool {
        let m = self.sets.len();
        for i in (0..m).rev() {
            let k = self.loose[i].len() as f64;
            let mut lo = -theta * k;
            let mut hi = theta * k;
            for &c in &self.children[i] {
                lo += out[c].0;
                hi += out[c].1;
            }
            if let Some(r) = self.lower_r[i] {
                lo = lo.max(self.lambda - theta + r);
            }
            if let Some(r) = self.upper_r[i] {
                hi = hi.min(theta - r);
            }
            if lo > hi {
                return false;
            }
            out[i] = (lo, hi);
        }
        let k = self.root_loose.len() as f64;
        let mut lo = -theta * k;
        let mut hi = theta * k;
        for &c in &self.root_children {
            lo += out[c].0;
            hi += out[c].1;
        }
        lo <= self.lambda && self.lambda <= hi
    }

    /// Splits `target` over children and loose vertices of one node: every
    /// item starts at its interval floor and the remainder is poured left
    /// to right. Feasibility of `target` guarantees the remainder fits.
    fn distribute(
        &self,
        node: usize,
        target: f64,
        theta: f64,
        reach: &[(f64, f64)],
        targets: &mut [f64],
        omega: &mut [f64],
    ) {
        let (children, loose) = if node == ROOT {
            (&self.root_children, &self.root_loose)
        } else {
            (&self.children[node], &self.loose[node])
        };
        let mut slack = target;
        for &c in children {
            slack -= reach[c].0;
        }
        slack += theta * loose.len() as f64;
        for &c in children {
            let width = reach[c].1 - reach[c].0;
            let give = slack.clamp(0.0, width);
            targets[c] = reach[c].0 + give;
            slack -= give;
        }
        for &q in loose {
            let give = slack.clamp(0.0, 2.0 * theta);
            omega[q as usize] = -theta + give;
            slack -= give;
        }
    }
}

/// Attempts the laminar fast path. `None` means the program is not of the
/// supported shape (the caller falls back to the simplex solvers); `Some`
/// is an optimal solution within the bisection width.
pub(super) fn solve(lp: &LinearProgram) -> Option<WeightDistribution> {
    let forest = read_program(lp)?;
    let n = lp.omega_count();
    let m = forest.sets.len();
    let mut reach = vec![(0.0, 0.0); m];
    let mut probes = 0usize;

    let max_rhs = lp
        .constraints
        .iter()
        .map(|c| c.rhs.abs())
        .fold(0.0, f64::max);

    let theta = if forest.propagate(0.0, &mut reach) {
        probes += 1;
        0.0
    } else {
        probes += 1;
        let mut lo = 0.0;
        let mut hi = 1.0 + forest.lambda.abs() + 2.0 * max_rhs;
        let mut grow = 0;
        while !forest.propagate(hi, &mut reach) {
            probes += 1;
            hi *= 2.0;
            grow += 1;
            if grow > 100 {
                return None;
            }
        }
        probes += 1;
        while hi - lo > WIDTH * (1.0 + hi) {
            let mid = 0.5 * (lo + hi);
            probes += 1;
            if forest.propagate(mid, &mut reach) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    // Recover omega at the accepted theta; reach is left at that probe.
    if !forest.propagate(theta, &mut reach) {
        return None;
    }
    let mut omega = vec![0.0; n];
    let mut targets = vec![0.0; m];
    forest.distribute(ROOT, forest.lambda, theta, &reach, &mut targets, &mut omega);
    for i in 0..m {
        let target = targets[i];
        forest.distribute(i, target, theta, &reach, &mut targets, &mut omega);
    }
    // Subtree weights were assigned to targets, not omega: a node's loose
    // vertices got theirs above, so nothing further is needed per set.

    let mut x = Vec::with_capacity(n + 1);
    x.push(theta);
    x.extend_from_slice(&omega);
    let tight = lp
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let activity: f64 = c.coefs.iter().map(|&(j, a)| a * x[j]).sum();
            (c.rhs - activity).abs() <= tolerance::TIGHT * (1.0 + c.rhs.abs())
        })
        .map(|(i, _)| i)
        .collect();

    Some(WeightDistribution {
        theta,
        omega,
        tight,
        pivots: probes,
    })
}
