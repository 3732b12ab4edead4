//! Self-contained dense two-phase tableau simplex.
//!
//! Serves as the independent cross-check for the active-set solver and as
//! its fallback, so it shares no code with it. Free variables are split into
//! nonnegative pairs, `>=` rows get surplus columns, every row gets an
//! artificial, and phase one minimizes the artificial sum before phase two
//! minimizes `theta`. Entering columns follow the most-negative reduced cost
//! with index tie-breaks, switching to smallest-index selection after a
//! stretch of stalled pivots so cycling terminates. All choices are
//! index-deterministic.

use super::{LinearProgram, Relation, WeightDistribution};
use crate::error::{Error, Result};
use crate::tolerance;

const EPS: f64 = 1e-9;
const STALL_LIMIT: usize = 100;
const MAX_PIVOTS: usize = 50_000;

struct Tableau {
    /// `m` constraint rows then the phase-two and phase-one objective rows;
    /// last column is the right hand side.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    m: usize,
    /// First artificial column; entering candidates stay below it.
    art_start: usize,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = 1.0 / self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f == 0.0 {
                continue;
            }
            for (v, p) in row.iter_mut().zip(pivot_row.iter()) {
                *v -= f * p;
            }
            row[c] = 0.0;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Runs one phase to optimality of the given objective row.
    fn run(&mut self, obj: usize) -> Result<()> {
        let rhs = self.rows[0].len() - 1;
        let mut stall = 0usize;
        let mut bland = false;
        let mut best = -self.rows[obj][rhs];
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(Error::Lp(format!(
                    "no convergence within {MAX_PIVOTS} pivots"
                )));
            }
            let mut col = None;
            if bland {
                for c in 0..self.art_start {
                    if self.rows[obj][c] < -EPS {
                        col = Some(c);
                        break;
                    }
                }
            } else {
                let mut most = -EPS;
                for c in 0..self.art_start {
                    if self.rows[obj][c] < most {
                        most = self.rows[obj][c];
                        col = Some(c);
                    }
                }
            }
            let Some(c) = col else {
                return Ok(());
            };

            let mut row = None;
            let mut ratio = f64::INFINITY;
            for i in 0..self.m {
                let a = self.rows[i][c];
                if a <= EPS {
                    continue;
                }
                let t = self.rows[i][rhs] / a;
                let better = match row {
                    None => true,
                    Some(r) => {
                        t < ratio - 1e-15 * (1.0 + ratio)
                            || (t <= ratio + 1e-15 * (1.0 + ratio) && self.basis[i] < self.basis[r])
                    }
                };
                if better {
                    ratio = t;
                    row = Some(i);
                }
            }
            let Some(r) = row else {
                return Err(Error::Lp("objective unbounded below".to_string()));
            };
            self.pivot(r, c);

            let obj_now = -self.rows[obj][rhs];
            if obj_now < best - 1e-12 * (1.0 + best.abs()) {
                best = obj_now;
                stall = 0;
                bland = false;
            } else {
                stall += 1;
                if stall > STALL_LIMIT {
                    bland = true;
                }
            }
        }
    }
}

pub fn solve(lp: &LinearProgram) -> Result<WeightDistribution> {
    let d = lp.var_count();
    let m = lp.constraints.len();
    if m == 0 {
        return Err(Error::Lp("empty program".to_string()));
    }
    let ge_count = lp
        .constraints
        .iter()
        .filter(|c| c.relation == Relation::Ge)
        .count();
    // Columns: split pairs, surplus columns, artificials, right hand side.
    let art_start = 2 * d + ge_count;
    let cols = art_start + m;
    let rhs = cols;

    let mut rows = vec![vec![0.0; cols + 1]; m + 2];
    let mut basis = vec![0usize; m];
    let mut surplus = 0usize;
    for (i, c) in lp.constraints.iter().enumerate() {
        for &(j, a) in &c.coefs {
            rows[i][j] = a;
            rows[i][d + j] = -a;
        }
        if c.relation == Relation::Ge {
            rows[i][2 * d + surplus] = -1.0;
            surplus += 1;
        }
        rows[i][rhs] = c.rhs;
        if rows[i][rhs] < 0.0 {
            for v in rows[i].iter_mut() {
                *v = -*v;
            }
        }
        rows[i][art_start + i] = 1.0;
        basis[i] = art_start + i;
    }

    // Phase-two reduced costs: minimize theta = split pair of variable 0.
    let p2 = m;
    rows[p2][0] = lp.objective[0];
    rows[p2][d] = -lp.objective[0];
    for j in 1..d {
        rows[p2][j] = lp.objective[j];
        rows[p2][d + j] = -lp.objective[j];
    }

    // Phase-one reduced costs: negated column sums, zero on artificials.
    let p1 = m + 1;
    for j in 0..=cols {
        let mut s = 0.0;
        for row in rows.iter().take(m) {
            s += row[j];
        }
        rows[p1][j] = -s;
    }
    for i in 0..m {
        rows[p1][art_start + i] = 0.0;
    }

    let mut t = Tableau {
        rows,
        basis,
        m,
        art_start,
        pivots: 0,
    };

    t.run(p1)?;
    let infeas = -t.rows[p1][rhs];
    if infeas > tolerance::TIGHT {
        return Err(Error::Lp(format!(
            "infeasible: phase one residual {infeas:.3e}"
        )));
    }
    // Pivot leftover artificials out where a structural column allows it;
    // rows with none are redundant zero rows and stay inert.
    for i in 0..m {
        if t.basis[i] < art_start {
            continue;
        }
        if let Some(c) = (0..art_start).find(|&c| t.rows[i][c].abs() > tolerance::TIGHT) {
            t.pivot(i, c);
        }
    }

    t.run(p2)?;

    let mut values = vec![0.0; art_start];
    for i in 0..m {
        if t.basis[i] < art_start {
            values[t.basis[i]] = t.rows[i][rhs];
        }
    }
    let mut x = vec![0.0; d];
    for (j, xj) in x.iter_mut().enumerate() {
        *xj = values[j] - values[d + j];
    }

    let mut tight = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        let activity: f64 = c.coefs.iter().map(|&(j, a)| a * x[j]).sum();
        if ((c.rhs - activity) / (1.0 + c.rhs.abs())).abs() <= tolerance::TIGHT {
            tight.push(i);
        }
    }

    Ok(WeightDistribution {
        theta: x[0],
        omega: x[1..].to_vec(),
        tight,
        pivots: t.pivots,
    })
}
