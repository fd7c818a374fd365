mod common;

use common::{arbitrary_source, connected_gnp, oracle};
use proptest::prelude::*;
use unique_games::gen::{GenSpec, LabelSource, Model};
use unique_games::lift::{
    build_lift, component_analysis, consistent_assignments_from_components,
    lift_self_labeling_check,
};
use unique_games::solve::{brute_force, solve, solve_with, SolverConfig, Strategy};

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn small(seed: u64, vertices: usize, n: usize) -> unique_games::LabeledGraph {
    GenSpec {
        model: Model::Gnp { vertices, p: 0.5 },
        n,
        labels: arbitrary_source(seed),
        seed,
    }
    .generate()
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn every_strategy_matches_the_oracle(seed in any::<u64>(), vertices in 1usize..=6, n in 1usize..=4) {
        let g = small(seed, vertices, n);
        let (beta, beta_prime) = oracle(&g);
        for strategy in [Strategy::Auto, Strategy::BranchAndBound, Strategy::BruteForce] {
            let r = solve_with(&g, strategy, &cfg()).unwrap();
            prop_assert_eq!(r.beta_c, beta, "{:?}", strategy);
            prop_assert_eq!(r.beta_c_prime, beta_prime, "{:?}", strategy);
            prop_assert_eq!(g.contradictions(&r.optimal).unwrap().len(), beta);
            prop_assert_eq!(&r.contradiction_edges, &g.contradictions(&r.optimal).unwrap());
        }
    }

    #[test]
    fn optimum_is_lexicographically_least(seed in any::<u64>(), vertices in 2usize..=5, n in 2usize..=3) {
        let g = small(seed, vertices, n);
        let all = brute_force(&g, 1 << 20).unwrap();
        let r = solve_with(&g, Strategy::BranchAndBound, &cfg()).unwrap();
        prop_assert_eq!(&r.optimal, &all.all_optimal_assignments[0]);
    }

    #[test]
    fn lift_components_are_the_consistent_assignments(seed in any::<u64>(), vertices in 1usize..=6, n in 1usize..=4) {
        let g = connected_gnp(seed % 100_000, vertices, n, arbitrary_source(seed));
        let lift = build_lift(&g);
        prop_assert!(lift.fiber_degree_check());
        prop_assert!(lift_self_labeling_check(&lift));
        let summary = component_analysis(&lift);
        let mut from_lift = consistent_assignments_from_components(&lift).unwrap();
        from_lift.sort_by(|a, b| a.values().cmp(b.values()));
        let mut from_oracle: Vec<_> = brute_force(&g, 1 << 20)
            .unwrap()
            .all_optimal_assignments
            .into_iter()
            .filter(|k| g.is_consistent(k).unwrap())
            .collect();
        from_oracle.sort_by(|a, b| a.values().cmp(b.values()));
        prop_assert_eq!(summary.isomorphic_to_base_count, from_oracle.len());
        prop_assert_eq!(from_lift, from_oracle);
        let r = solve_with(&g, Strategy::Lift, &cfg()).unwrap();
        prop_assert_eq!(r.beta_c_prime, oracle(&g).1);
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let pools: Vec<_> = [1, 4]
        .into_iter()
        .map(|t| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap()
        })
        .collect();
    for seed in 0..40 {
        let g = connected_gnp(seed, 7, 3, LabelSource::UniformSn);
        let a = pools[0].install(|| solve_with(&g, Strategy::BranchAndBound, &cfg()).unwrap());
        let b = pools[1].install(|| solve_with(&g, Strategy::BranchAndBound, &cfg()).unwrap());
        assert_eq!(a, b, "seed {seed}");
    }
}

#[test]
fn disconnected_counts_multiply() {
    for seed in 0..60 {
        let g = small(seed, 6, 3);
        let r = solve(&g, &cfg()).unwrap();
        assert_eq!(
            r.component_beta_c_prime.iter().product::<u64>(),
            r.beta_c_prime
        );
        assert_eq!((r.beta_c, r.beta_c_prime), oracle(&g), "seed {seed}");
    }
}

#[test]
fn caps_are_reported() {
    let g = connected_gnp(3, 6, 4, LabelSource::UniformSn);
    let err = brute_force(&g, 10).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}
