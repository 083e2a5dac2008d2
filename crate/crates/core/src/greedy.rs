//! Row greedy with in-order completion, and the global-minimum greedy.

use crate::error::{Error, Result};
use crate::model::{assignment_cost, check_tuple, Assignment, CostTensor, PartialAssignment};

/// Hard limit on `n^d` for [`global_greedy`], which materializes every weight.
pub const GLOBAL_GREEDY_MAX_TUPLES: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyTrace {
    /// Tuples in selection order.
    pub chosen: Vec<Vec<usize>>,
    pub step_weights: Vec<f64>,
    pub completed: Option<Assignment>,
    /// Sum of `step_weights`, accumulated in selection order.
    pub partial_total: f64,
    pub total: Option<f64>,
    /// Number of tuple weights inspected while selecting.
    pub evaluations: u64,
}

impl GreedyTrace {
    fn empty() -> Self {
        GreedyTrace {
            chosen: Vec::new(),
            step_weights: Vec::new(),
            completed: None,
            partial_total: 0.0,
            total: None,
            evaluations: 0,
        }
    }
}

/// Smallest integer `r` with `r^k >= n`, i.e. `ceil(n^(1/k))` without rounding error.
pub fn ceil_root(n: usize, k: u32) -> usize {
    if n <= 1 || k == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as usize;
    let covers = |r: usize| (r as u128).checked_pow(k).is_some_and(|p| p >= n as u128);
    while r > 1 && covers(r - 1) {
        r -= 1;
    }
    while !covers(r) {
        r += 1;
    }
    r
}

/// Default number of greedy rounds, `n - ceil(n^(1/(d+1)))`.
pub fn default_steps(n: usize, d: usize) -> usize {
    n - ceil_root(n, d as u32 + 1).min(n)
}

/// Runs the first `m` rounds of row greedy: row `i` takes the cheapest tuple
/// over the still-unused values of coordinates `2..d`. Ties go to the
/// lexicographically smallest tuple.
pub fn row_greedy<W: CostTensor + ?Sized>(instance: &W, m: usize) -> Result<GreedyTrace> {
    let d = instance.dim();
    let n = instance.side();
    if m > n {
        return Err(Error::domain(format!("step count {m} exceeds n = {n}")));
    }
    let mut trace = GreedyTrace::empty();
    let mut remaining: Vec<Vec<usize>> = vec![(0..n).collect(); d - 1];
    for row in 0..m {
        let found = instance.box_min(row, &remaining);
        for (set, &value) in remaining.iter_mut().zip(&found.tuple[1..]) {
            let pos = set
                .binary_search(&value)
                .expect("box minimum lies inside the remaining box");
            set.remove(pos);
        }
        trace.evaluations += found.evaluations;
        trace.partial_total += found.weight;
        trace.step_weights.push(found.weight);
        trace.chosen.push(found.tuple);
    }
    Ok(trace)
}

/// Completes a row-greedy trace by giving rows `m+1..n`, in order, the unused
/// values of each coordinate in increasing order.
pub fn complete_in_order<W: CostTensor + ?Sized>(
    trace: &GreedyTrace,
    instance: &W,
) -> Result<GreedyTrace> {
    let d = instance.dim();
    let n = instance.side();
    let m = trace.chosen.len();
    if m > n || trace.step_weights.len() != m {
        return Err(Error::domain("trace does not fit the instance"));
    }
    let mut partial = PartialAssignment::new(d, n)?;
    for (row, tuple) in trace.chosen.iter().enumerate() {
        check_tuple(d, n, tuple)?;
        if tuple[0] != row {
            return Err(Error::domain(format!(
                "trace step {} is for row {}, expected row {}",
                row + 1,
                tuple[0] + 1,
                row + 1
            )));
        }
        partial.push(tuple.clone())?;
    }
    let free: Vec<Vec<usize>> = (1..d).map(|t| partial.remaining(t)).collect();
    for (offset, row) in (m..n).enumerate() {
        let mut tuple = Vec::with_capacity(d);
        tuple.push(row);
        tuple.extend(free.iter().map(|f| f[offset]));
        partial.push(tuple)?;
    }
    let assignment = partial.into_assignment()?;
    let total = assignment_cost(instance, &assignment);
    let mut out = trace.clone();
    out.completed = Some(assignment);
    out.total = Some(total);
    Ok(out)
}

/// Repeatedly takes the cheapest tuple disjoint from everything chosen so
/// far until `n` tuples are chosen. Ties go to the lexicographically smallest
/// tuple.
pub fn global_greedy<W: CostTensor + ?Sized>(instance: &W) -> Result<GreedyTrace> {
    let d = instance.dim();
    let n = instance.side();
    let count = (n as u64)
        .checked_pow(d as u32)
        .filter(|&c| c <= GLOBAL_GREEDY_MAX_TUPLES)
        .ok_or_else(|| {
            Error::capacity(format!(
                "global greedy enumerates n^d tuples, limit is {GLOBAL_GREEDY_MAX_TUPLES}"
            ))
        })? as usize;

    let mut order: Vec<(f64, u32)> = Vec::with_capacity(count);
    let mut tuple = vec![0usize; d];
    for lin in 0..count {
        order.push((instance.weight_at(&tuple), lin as u32));
        for slot in tuple.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    // Linear index order is lexicographic tuple order.
    order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut trace = GreedyTrace::empty();
    let mut partial = PartialAssignment::new(d, n)?;
    for &(w, lin) in &order {
        if partial.len() == n {
            break;
        }
        trace.evaluations += 1;
        let mut rest = lin as usize;
        for slot in tuple.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        if (0..d).any(|t| partial.is_used(t, tuple[t])) {
            continue;
        }
        partial.push(tuple.clone())?;
        trace.chosen.push(tuple.clone());
        trace.step_weights.push(w);
        trace.partial_total += w;
    }
    let assignment = partial.into_assignment()?;
    trace.total = Some(assignment_cost(instance, &assignment));
    trace.completed = Some(assignment);
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::f2;
    use crate::model::{make_factorized, make_independent, CostModel, FactorizedInstance, IndependentInstance, IndependentModel};
    use crate::rng::RngSpec;

    #[test]
    fn fixture_row_greedy() {
        let f = f2();
        let trace = row_greedy(&f, 2).unwrap();
        assert_eq!(trace.chosen, vec![vec![0, 0, 0], vec![1, 1, 1]]);
        assert!((trace.step_weights[0] - 0.3).abs() < 1e-15);
        assert!((trace.step_weights[1] - 0.5).abs() < 1e-15);
        assert!((trace.partial_total - 0.8).abs() < 1e-15);
    }

    #[test]
    fn zero_steps_is_empty() {
        let f = f2();
        let trace = row_greedy(&f, 0).unwrap();
        assert!(trace.chosen.is_empty());
        assert_eq!(trace.partial_total, 0.0);
        assert!(matches!(row_greedy(&f, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn ties_break_lexicographically() {
        let z = FactorizedInstance::zeros(4, 3).unwrap();
        let trace = row_greedy(&z, 3).unwrap();
        assert_eq!(trace.chosen[0], vec![0, 0, 0, 0]);
        assert_eq!(trace.chosen[1], vec![1, 1, 1, 1]);
        let g = global_greedy(&z).unwrap();
        assert_eq!(g.chosen[0], vec![0, 0, 0, 0]);
    }

    #[test]
    fn fixture_completion() {
        let f = f2();
        let one = row_greedy(&f, 1).unwrap();
        let done = complete_in_order(&one, &f).unwrap();
        assert_eq!(done.completed.as_ref().unwrap().tuples(), vec![vec![0, 0, 0], vec![1, 1, 1]]);
        assert!((done.total.unwrap() - 0.8).abs() < 1e-15);

        let full = row_greedy(&f, 2).unwrap();
        let done = complete_in_order(&full, &f).unwrap();
        assert_eq!(done.completed.as_ref().unwrap().tuples(), full.chosen);
        assert_eq!(done.total.unwrap(), done.partial_total);
    }

    #[test]
    fn completion_cost_is_bounded_by_d_per_row() {
        let inst = make_factorized(3, 30, RngSpec::new(8, 8)).unwrap();
        for m in [0, 5, 29, 30] {
            let done = complete_in_order(&row_greedy(&inst, m).unwrap(), &inst).unwrap();
            let total = done.total.unwrap();
            assert!(total - done.partial_total <= 3.0 * (30 - m) as f64 + 1e-9);
            assert!(total >= done.partial_total - 1e-9);
        }
    }

    #[test]
    fn completion_rejects_foreign_traces() {
        let f = f2();
        let mut trace = row_greedy(&f, 1).unwrap();
        trace.chosen[0][0] = 1;
        assert!(complete_in_order(&trace, &f).is_err());
        let big = make_factorized(3, 3, RngSpec::new(0, 0)).unwrap();
        let trace = row_greedy(&big, 3).unwrap();
        assert!(complete_in_order(&trace, &f).is_err());
    }

    #[test]
    fn fixture_global_greedy() {
        let f = f2();
        let g = global_greedy(&f).unwrap();
        assert_eq!(g.chosen, vec![vec![0, 0, 0], vec![1, 1, 1]]);
        assert!((g.step_weights[0] - 0.3).abs() < 1e-15);
        assert!((g.step_weights[1] - 0.5).abs() < 1e-15);
        assert!((g.total.unwrap() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn global_greedy_single_tuple() {
        let inst = IndependentInstance::from_weights(3, 1, IndependentModel::Exp1, vec![0.25]).unwrap();
        let g = global_greedy(&inst).unwrap();
        assert_eq!(g.chosen, vec![vec![0, 0, 0]]);
        assert_eq!(g.total, Some(0.25));
        let r = row_greedy(&inst, 1).unwrap();
        assert_eq!(r.partial_total, 0.25);
    }

    #[test]
    fn global_greedy_steps_are_nondecreasing() {
        for seed in 0..20 {
            let inst = make_independent(3, 7, CostModel::Exp1, None, RngSpec::new(seed, 3)).unwrap();
            let g = global_greedy(&inst).unwrap();
            assert!(g.step_weights.windows(2).all(|w| w[0] <= w[1]));
            let f = make_factorized(4, 4, RngSpec::new(seed, 4)).unwrap();
            let g = global_greedy(&f).unwrap();
            assert!(g.step_weights.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(g.completed.unwrap().side(), 4);
        }
    }

    #[test]
    fn global_greedy_guard() {
        let big = FactorizedInstance::zeros(3, 500).unwrap();
        assert!(matches!(global_greedy(&big), Err(Error::Capacity(_))));
    }

    #[test]
    fn row_steps_are_exact_row_minima() {
        for (d, n) in [(3, 20), (4, 8), (2, 15)] {
            let inst = make_factorized(d, n, RngSpec::new(31, d as u64)).unwrap();
            let trace = row_greedy(&inst, n).unwrap();
            let mut used = vec![vec![false; n]; d];
            for (row, (tuple, &w)) in trace.chosen.iter().zip(&trace.step_weights).enumerate() {
                // brute rescan of every remaining tuple of this row
                let mut best = f64::INFINITY;
                let total = n.pow(d as u32 - 1);
                for lin in 0..total {
                    let mut t = vec![row];
                    t.extend((0..d - 1).map(|s| lin / n.pow((d - 2 - s) as u32) % n));
                    if (1..d).any(|s| used[s][t[s]]) {
                        continue;
                    }
                    best = best.min(inst.weight(&t).unwrap());
                }
                assert_eq!(w, best);
                assert_eq!(inst.weight(tuple).unwrap(), w);
                for s in 0..d {
                    used[s][tuple[s]] = true;
                }
            }
        }
    }

    #[test]
    fn evaluation_counter_is_exact() {
        for (d, n, m) in [(3, 25, 20), (4, 9, 9), (2, 40, 13), (5, 4, 3)] {
            let inst = make_factorized(d, n, RngSpec::new(2, 2)).unwrap();
            let trace = row_greedy(&inst, m).unwrap();
            let expected: u64 = (1..=m).map(|i| ((n - i + 1) as u64).pow(d as u32 - 1)).sum();
            assert_eq!(trace.evaluations, expected);
            let exp = make_independent(d, n, CostModel::Exp1, None, RngSpec::new(2, 3)).unwrap();
            assert_eq!(row_greedy(&exp, m).unwrap().evaluations, expected);
        }
    }

    #[test]
    fn ceil_root_is_exact() {
        assert_eq!(ceil_root(16, 4), 2);
        assert_eq!(ceil_root(17, 4), 3);
        assert_eq!(ceil_root(1024, 4), 6);
        assert_eq!(ceil_root(1, 4), 1);
        assert_eq!(ceil_root(1_000_000, 3), 100);
        assert_eq!(ceil_root(1_000_001, 3), 101);
        for n in 1..2000 {
            let r = ceil_root(n, 4);
            assert!(r.pow(4) >= n && (r - 1).pow(4) < n);
        }
        assert_eq!(default_steps(1024, 3), 1018);
        assert_eq!(default_steps(512, 3), 507);
        assert_eq!(default_steps(1, 3), 0);
        assert_eq!(default_steps(256, 4), 252);
    }
}
