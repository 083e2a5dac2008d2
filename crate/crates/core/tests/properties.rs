use axial_lab::analytic::{fit_power_law, ks_statistic, lower_bound};
use axial_lab::exact::{brute_force_opt, hungarian, hybrid_opt};
use axial_lab::harness::{read_step_csv, read_trial_csv, write_step_csv, write_trial_csv};
use axial_lab::io::{instance_from_json, instance_to_json};
use axial_lab::{
    complete_in_order, make_factorized, make_independent, row_greedy, total_cost, Algo, CostModel, CostTensor, Instance,
    RngSpec, StepRecord, TrialRecord,
};
use proptest::prelude::*;

fn model_strategy() -> impl Strategy<Value = CostModel> {
    prop_oneof![
        Just(CostModel::Factorized),
        Just(CostModel::Exp1),
        Just(CostModel::UniformInt)
    ]
}

fn build(model: CostModel, d: usize, n: usize, seed: u64) -> Instance {
    let rng = RngSpec::new(seed, 0);
    match model {
        CostModel::Factorized => make_factorized(d, n, rng).unwrap().into(),
        CostModel::UniformInt => make_independent(d, n, model, Some(4), rng).unwrap().into(),
        CostModel::Exp1 => make_independent(d, n, model, None, rng).unwrap().into(),
    }
}

/// Every permutation of `0..n`, by recursion.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_sandwich(model in model_strategy(), d in 2usize..=4, n in 1usize..=4, seed: u64, m_frac in 0.0f64..=1.0) {
        let inst = build(model, d, n, seed);
        let opt = brute_force_opt(&inst).unwrap();
        let lb = lower_bound(&inst);
        let m = (m_frac * n as f64).round() as usize;
        let done = complete_in_order(&row_greedy(&inst, m).unwrap(), &inst).unwrap();
        let greedy = done.total.unwrap();
        prop_assert!(lb <= opt.value + 1e-12);
        prop_assert!(opt.value <= greedy + 1e-12);
        prop_assert_eq!(total_cost(&inst, &opt.argmin).unwrap(), opt.value);
        if d >= 3 {
            prop_assert_eq!(hybrid_opt(&inst).unwrap().value, opt.value);
        }
    }

    #[test]
    fn greedy_outputs_are_assignments(model in model_strategy(), d in 2usize..=4, n in 1usize..=9, seed: u64) {
        let inst = build(model, d, n, seed);
        let done = complete_in_order(&row_greedy(&inst, n / 2).unwrap(), &inst).unwrap();
        let a = done.completed.clone().unwrap();
        for coord in 0..d {
            let mut seen = vec![false; n];
            for row in 0..n {
                let v = a.tuple(row)[coord];
                prop_assert!(!seen[v]);
                seen[v] = true;
            }
        }
        let recomputed = total_cost(&inst, &a).unwrap();
        prop_assert!((recomputed - done.total.unwrap()).abs() <= 1e-12 * (1.0 + recomputed));
    }

    #[test]
    fn generation_is_deterministic(model in model_strategy(), d in 2usize..=4, n in 1usize..=6, seed: u64) {
        let a = build(model, d, n, seed);
        let b = build(model, d, n, seed);
        let tuple = vec![n - 1; d];
        prop_assert_eq!(a.weight(&tuple).unwrap(), b.weight(&tuple).unwrap());
        prop_assert_eq!(instance_to_json(&a), instance_to_json(&b));
    }

    #[test]
    fn instance_json_round_trips(model in model_strategy(), d in 2usize..=4, n in 1usize..=4, seed: u64) {
        let inst = build(model, d, n, seed);
        let text = instance_to_json(&inst);
        let back = instance_from_json(&text).unwrap();
        prop_assert_eq!(instance_to_json(&back), text);
        let mut idx = vec![0usize; d];
        loop {
            prop_assert_eq!(inst.weight(&idx).unwrap(), back.weight(&idx).unwrap());
            let mut k = d;
            while k > 0 && idx[k - 1] + 1 == n {
                idx[k - 1] = 0;
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
        }
    }

    #[test]
    fn hungarian_matches_enumeration(n in 1usize..=6, cells in prop::collection::vec(0.0f64..10.0, 36)) {
        let cost: Vec<Vec<f64>> = (0..n).map(|i| cells[i * n..(i + 1) * n].to_vec()).collect();
        let (value, perm) = hungarian(&cost).unwrap();
        let best = permutations(n)
            .iter()
            .map(|p| p.iter().enumerate().map(|(i, &j)| cost[i][j]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        prop_assert!((value - best).abs() < 1e-9);
        let direct: f64 = perm.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
        prop_assert!((direct - value).abs() < 1e-9);
    }

    #[test]
    fn exact_power_laws_are_recovered(coef in 0.01f64..100.0, exponent in -3.0f64..3.0, xs in prop::collection::btree_set(1u32..10_000, 2..12)) {
        let points: Vec<(f64, f64)> = xs.iter().map(|&x| (f64::from(x), coef * f64::from(x).powf(exponent))).collect();
        let fit = fit_power_law(&points).unwrap();
        prop_assert!((fit.exponent - exponent).abs() < 1e-9);
        prop_assert!((fit.coefficient() - coef).abs() < 1e-7 * coef);
    }

    #[test]
    fn ks_is_a_symmetric_distance(a in prop::collection::vec(-5.0f64..5.0, 1..40), b in prop::collection::vec(-5.0f64..5.0, 1..40)) {
        let ab = ks_statistic(&a, &b).unwrap();
        prop_assert_eq!(ab, ks_statistic(&b, &a).unwrap());
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(ks_statistic(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn trial_csv_round_trips(rows in prop::collection::vec(trial_record(), 0..20)) {
        let mut buf = Vec::new();
        write_trial_csv(&mut buf, &rows).unwrap();
        prop_assert_eq!(read_trial_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn step_csv_round_trips(rows in prop::collection::vec(step_record(), 0..20)) {
        let mut buf = Vec::new();
        write_step_csv(&mut buf, &rows).unwrap();
        prop_assert_eq!(read_step_csv(buf.as_slice()).unwrap(), rows);
    }
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        0.0f64..10.0,
    ]
}

fn algo() -> impl Strategy<Value = Algo> {
    prop_oneof![Just(Algo::RowGreedy), Just(Algo::GlobalGreedy)]
}

prop_compose! {
    fn trial_record()(model in model_strategy(), d in 2usize..8, n in 1usize..5000, m in 0usize..5000,
                      algo in algo(), trial in 0usize..1000, seed: u64, total in finite(), partial_total in finite(),
                      lower_bound in prop::option::of(finite()), runtime_ms in prop::option::of(0.0f64..1e6)) -> TrialRecord {
        TrialRecord { model, d, n, m, algo, trial, seed, total, partial_total, lower_bound, runtime_ms }
    }
}

prop_compose! {
    fn step_record()(model in model_strategy(), d in 2usize..8, n in 1usize..5000, algo in algo(),
                     trial in 0usize..1000, step in 1usize..5000, remaining in 1usize..5000,
                     step_weight in finite()) -> StepRecord {
        StepRecord { model, d, n, algo, trial, step, remaining, step_weight }
    }
}
