//! Exact optima for small instances.
//!
//! Both oracles score candidate assignments with the same row-order sum,
//! so when they find the same assignment their values agree bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{assignment_cost, Assignment, CostTensor};

/// Limit on `(n!)^(d-1)` for [`brute_force_opt`].
pub const BRUTE_FORCE_MAX_ASSIGNMENTS: f64 = 1e8;
/// Limit on `(n!)^(d-2) * n^3` for [`hybrid_opt`].
pub const HYBRID_MAX_WORK: f64 = 1e9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactMethod {
    Brute,
    Hybrid,
}

impl std::str::FromStr for ExactMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(ExactMethod::Brute),
            "hybrid" => Ok(ExactMethod::Hybrid),
            other => Err(Error::parse(format!("unknown exact method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    pub value: f64,
    pub argmin: Assignment,
    pub method: ExactMethod,
    /// Complete assignments scored (brute) or 2-D subproblems solved (hybrid).
    pub nodes_explored: u64,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Advances `p` to the next permutation in lexicographic order; returns
/// `false` (and leaves `p` sorted ascending) after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Advances a tuple of permutations like an odometer, last one fastest.
fn next_perm_tuple(perms: &mut [Vec<usize>]) -> bool {
    for p in perms.iter_mut().rev() {
        if next_permutation(p) {
            return true;
        }
    }
    false
}

/// Exhaustive minimum over all `(n!)^(d-1)` assignments. The argmin is the
/// lexicographically smallest optimal permutation tuple.
pub fn brute_force_opt<W: CostTensor + ?Sized>(instance: &W) -> Result<ExactResult> {
    let d = instance.dim();
    let n = instance.side();
    let work = factorial(n).powi(d as i32 - 1);
    if work > BRUTE_FORCE_MAX_ASSIGNMENTS {
        return Err(Error::capacity(format!(
            "brute force would score {work:.3e} assignments, limit is {BRUTE_FORCE_MAX_ASSIGNMENTS:e}"
        )));
    }
    let mut current = Assignment::identity(d, n)?;
    let mut best_value = f64::INFINITY;
    let mut best = current.clone();
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        let value = assignment_cost(instance, &current);
        if value < best_value {
            best_value = value;
            best = current.clone();
        }
        if !next_perm_tuple(current.perms_mut()) {
            break;
        }
    }
    Ok(ExactResult {
        value: best_value,
        argmin: best,
        method: ExactMethod::Brute,
        nodes_explored: nodes,
    })
}

/// Minimum-cost perfect matching of a square matrix: returns the optimal
/// value and `perm` with row `i` matched to column `perm[i]`.
///
/// Shortest augmenting paths with row and column potentials, O(n^3).
pub fn hungarian(cost: &[Vec<f64>]) -> Result<(f64, Vec<usize>)> {
    let n = cost.len();
    if n == 0 {
        return Err(Error::domain("cost matrix is empty"));
    }
    if let Some(row) = cost.iter().position(|r| r.len() != n) {
        return Err(Error::domain(format!(
            "cost matrix is not square: row {} has {} entries, expected {n}",
            row + 1,
            cost[row].len()
        )));
    }
    if cost.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::domain("cost matrix has a non-finite entry"));
    }
    let perm = hungarian_unchecked(cost);
    let value = perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
    Ok((value, perm))
}

fn hungarian_unchecked(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    // 1-based internally; column 0 is the virtual source.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut minv = vec![0.0f64; n + 1];
    let mut used = vec![false; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut col0 = 0usize;
        minv.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[col0] = true;
            let r = owner[col0];
            let mut delta = f64::INFINITY;
            let mut next = 0usize;
            for col in 1..=n {
                if used[col] {
                    continue;
                }
                let reduced = cost[r - 1][col - 1] - u[r] - v[col];
                if reduced < minv[col] {
                    minv[col] = reduced;
                    way[col] = col0;
                }
                if minv[col] < delta {
                    delta = minv[col];
                    next = col;
                }
            }
            for col in 0..=n {
                if used[col] {
                    u[owner[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = next;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0usize; n];
    for col in 1..=n {
        perm[owner[col] - 1] = col - 1;
    }
    perm
}

/// Enumerates the first `d-2` permutations and solves the last coordinate
/// as a 2-D assignment problem. Requires `d >= 3`.
///
/// Outer permutation tuples are scanned in lexicographic order and only
/// strict improvements are kept; within one outer tuple the last
/// permutation is whichever optimum the 2-D solver returns.
pub fn hybrid_opt<W: CostTensor + ?Sized>(instance: &W) -> Result<ExactResult> {
    let d = instance.dim();
    let n = instance.side();
    if d < 3 {
        return Err(Error::domain("hybrid oracle needs d >= 3; use brute force or hungarian for d = 2"));
    }
    let work = factorial(n).powi(d as i32 - 2) * (n as f64).powi(3);
    if work > HYBRID_MAX_WORK {
        return Err(Error::capacity(format!(
            "hybrid oracle work {work:.3e} exceeds limit {HYBRID_MAX_WORK:e}"
        )));
    }
    let mut outer: Vec<Vec<usize>> = vec![(0..n).collect(); d - 2];
    let mut matrix = vec![vec![0.0f64; n]; n];
    let mut tuple = vec![0usize; d];
    let mut best_value = f64::INFINITY;
    let mut best = None;
    let mut nodes = 0u64;
    loop {
        for (i, row) in matrix.iter_mut().enumerate() {
            tuple[0] = i;
            for (slot, p) in tuple[1..d - 1].iter_mut().zip(&outer) {
                *slot = p[i];
            }
            for (k, cell) in row.iter_mut().enumerate() {
                tuple[d - 1] = k;
                *cell = instance.weight_at(&tuple);
            }
        }
        let last = hungarian_unchecked(&matrix);
        nodes += 1;
        let mut perms = outer.clone();
        perms.push(last);
        let candidate = Assignment::new(d, n, perms)?;
        let value = assignment_cost(instance, &candidate);
        if value < best_value {
            best_value = value;
            best = Some(candidate);
        }
        if !next_perm_tuple(&mut outer) {
            break;
        }
    }
    Ok(ExactResult {
        value: best_value,
        argmin: best.expect("at least one outer permutation"),
        method: ExactMethod::Hybrid,
        nodes_explored: nodes,
    })
}

/// Dispatches to the requested oracle.
pub fn solve<W: CostTensor + ?Sized>(instance: &W, method: ExactMethod) -> Result<ExactResult> {
    match method {
        ExactMethod::Brute => brute_force_opt(instance),
        ExactMethod::Hybrid => hybrid_opt(instance),
    }
}
