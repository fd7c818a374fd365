mod common;

use std::collections::BTreeSet;

use common::{arbitrary_source, connected, oracle};
use unique_games::gen::{GenSpec, Model};
use unique_games::solve::{consistent_root_values, SolverConfig};
use unique_games::xform::{
    check_identify_bounds, delete_edge, identify, restrict_vertices, ConflictPolicy, IdentifySpec,
};
use unique_games::LabeledGraph;

fn instance(seed: u64) -> LabeledGraph {
    GenSpec {
        model: Model::Gnp {
            vertices: 3 + (seed as usize % 4),
            p: 0.45,
        },
        n: 2 + (seed as usize % 3),
        labels: arbitrary_source(seed),
        seed,
    }
    .generate()
    .unwrap()
}

#[test]
fn edge_deletion_bounds() {
    for seed in 0..120 {
        let g = instance(seed);
        let (beta, beta_prime) = oracle(&g);
        for e in 0..g.edge_count() {
            let (b, bp) = oracle(&delete_edge(&g, e).unwrap());
            assert!(beta <= b + 1 && b <= beta, "seed {seed} edge {e}");
            assert!(bp >= beta_prime, "seed {seed} edge {e}");
        }
    }
}

#[test]
fn induced_subgraph_monotonicity() {
    for seed in 0..120 {
        let g = instance(seed);
        let (beta, beta_prime) = oracle(&g);
        let count = g.vertex_count();
        for mask in 1u32..(1 << count) {
            let keep: Vec<usize> = (0..count).filter(|&v| mask >> v & 1 == 1).collect();
            let h = restrict_vertices(&g, &keep).unwrap();
            let (b, bp) = oracle(&h);
            assert!(b <= beta);
            // Consistent assignments of a connected graph differ at every vertex,
            // so restriction is injective.
            if connected(&g) && connected(&h) {
                assert!(bp >= beta_prime, "seed {seed} mask {mask:b}");
            }
        }
    }
}

#[test]
fn identify_shape_and_assignment_characterization() {
    for seed in 0..120 {
        let g = instance(seed);
        for v1 in 0..g.vertex_count() {
            for v2 in 0..g.vertex_count() {
                if v1 == v2 {
                    continue;
                }
                let spec = IdentifySpec {
                    v1,
                    v2,
                    new_name: "m".into(),
                    policy: ConflictPolicy::PreferV1,
                };
                let (h, report) = identify(&g, &spec).unwrap();
                assert_eq!(h.n(), g.n());
                assert_eq!(h.vertex_count(), g.vertex_count() - 1);
                assert!(h.validate().iter().all(|v| !v.is_fatal()), "seed {seed}");
                let mut pairs = BTreeSet::new();
                assert!(h
                    .edges()
                    .iter()
                    .all(|e| pairs.insert((e.from.min(e.to), e.from.max(e.to)))));
                assert_eq!(
                    h.edge_count()
                        + report.dropped_internal.len()
                        + report.dropped_conflicts.len()
                        + report.merged_duplicates.len(),
                    g.edge_count()
                );

                let b = check_identify_bounds(&g, &spec, &SolverConfig::default()).unwrap();
                assert!(
                    b.upper_holds && b.lost_edge_bound_holds,
                    "seed {seed} {v1} {v2}"
                );
                if b.lost_edges <= 1 {
                    assert!(b.lower_holds, "seed {seed} {v1} {v2}");
                }
                if let Some(c) = &b.cross_component {
                    let a1: BTreeSet<_> = consistent_root_values(&g, v1).into_iter().collect();
                    let a2: BTreeSet<_> = consistent_root_values(&g, v2).into_iter().collect();
                    assert_eq!(c.beta_prime_h, a1.intersection(&a2).count() as u64);
                    assert!(c.lower_holds && c.upper_holds && c.exact_holds && c.corollary_holds);
                }
                // With no lost constraints, consistent assignments of H are those of G agreeing on v1, v2.
                let (beta, beta_prime) = oracle(&g);
                if beta == 0 && b.lost_edges == 0 && connected(&g) {
                    let agreeing = unique_games::solve::brute_force(&g, 1 << 20)
                        .unwrap()
                        .all_optimal_assignments
                        .iter()
                        .filter(|k| k.get(v1) == k.get(v2))
                        .count() as u64;
                    assert!(beta_prime > 0);
                    assert_eq!(oracle(&h).1, agreeing, "seed {seed} {v1} {v2}");
                }
            }
        }
    }
}
