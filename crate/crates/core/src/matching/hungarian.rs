//! Maximum-weight assignment with a forbidden diagonal.

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Instance};

/// Permutation `σ` without fixed points maximising `Σ w[i][σ(i)]`.
///
/// Shortest augmenting paths with row and column potentials, O(n³). Diagonal
/// entries are ignored.
pub fn max_assignment(w: &[Vec<f64>]) -> Result<Vec<usize>> {
    let n = w.len();
    if n < 2 {
        return Err(Error::InvalidInstance(format!("assignment needs n >= 2, got {n}")));
    }
    if w.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInstance("weight matrix is not square".into()));
    }
    if w.iter().enumerate().any(|(i, row)| row.iter().enumerate().any(|(j, x)| i != j && !x.is_finite())) {
        return Err(Error::InvalidInstance("off-diagonal weights must be finite".into()));
    }
    // minimise cost = -w; rows and columns are 1-based, column 0 is the root
    let cost = |i: usize, j: usize| -> Option<f64> { (i != j).then(|| -w[i][j]) };
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                if let Some(c) = cost(i0 - 1, j - 1) {
                    let cur = c - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if j1 == 0 {
                return Err(Error::InvalidInstance("no assignment avoids the diagonal".into()));
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut sigma = vec![0; n];
    for j in 1..=n {
        sigma[p[j] - 1] = j - 1;
    }
    Ok(sigma)
}

/// The arcs `(i, σ(i))` of an assignment on a directed instance.
pub fn assignment_arcs(inst: &Instance, sigma: &[usize]) -> Result<EdgeSet> {
    let mut s = inst.empty_set();
    for (i, &j) in sigma.iter().enumerate() {
        let e = inst
            .edge_id(i, j)
            .ok_or_else(|| crate::error::contract(format!("no arc from {i} to {j}")))?;
        s.insert(e);
    }
    Ok(s)
}
