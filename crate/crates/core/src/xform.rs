//! Structural operations: induced and edge subgraphs, edge deletion and
//! vertex identification, plus checks of the inequalities they satisfy.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph};
use crate::solve::{self, consistent_root_values, SolverConfig};

/// Induced subgraph on `vertices`, kept in their original order.
pub fn restrict_vertices(g: &LabeledGraph, vertices: &[usize]) -> Result<LabeledGraph> {
    let keep: BTreeSet<usize> = vertices.iter().copied().collect();
    if let Some(&bad) = keep.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::UnknownVertex(format!("#{bad}")));
    }
    let mut new_index = vec![usize::MAX; g.vertex_count()];
    let mut names = Vec::with_capacity(keep.len());
    for (i, &v) in keep.iter().enumerate() {
        new_index[v] = i;
        names.push(g.vertex_name(v).to_string());
    }
    let edges = g
        .edges()
        .iter()
        .filter(|e| keep.contains(&e.from) && keep.contains(&e.to))
        .map(|e| Edge::new(new_index[e.from], new_index[e.to], e.label.clone()))
        .collect();
    Ok(LabeledGraph::from_parts(g.n(), g.mode(), names, edges))
}

pub fn restrict_vertices_named(g: &LabeledGraph, names: &[&str]) -> Result<LabeledGraph> {
    let idx = names
        .iter()
        .map(|n| g.require_vertex(n))
        .collect::<Result<Vec<_>>>()?;
    restrict_vertices(g, &idx)
}

/// Spanning subgraph keeping every vertex and only the listed edges.
pub fn restrict_edges(g: &LabeledGraph, edges: &[usize]) -> Result<LabeledGraph> {
    let keep: BTreeSet<usize> = edges.iter().copied().collect();
    if let Some(&bad) = keep.iter().find(|&&i| i >= g.edge_count()) {
        return Err(Error::UnknownEdge {
            index: bad,
            count: g.edge_count(),
        });
    }
    Ok(g.with_edges(keep.iter().map(|&i| g.edges()[i].clone()).collect()))
}

pub fn delete_edge(g: &LabeledGraph, idx: usize) -> Result<LabeledGraph> {
    g.edge(idx)?;
    let mut edges = g.edges().to_vec();
    edges.remove(idx);
    Ok(g.with_edges(edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConflictPolicy {
    /// Keep the edge to `v1` and drop the edge to `v2`.
    PreferV1,
    /// Fail when a common neighbour carries two different constraints.
    Reject,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentifySpec {
    pub v1: usize,
    pub v2: usize,
    pub new_name: String,
    pub policy: ConflictPolicy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentifyReport {
    /// Index of the merged vertex in the new graph.
    pub merged: usize,
    /// Edges of `g` between `v1` and `v2`; they disappear.
    pub dropped_internal: Vec<usize>,
    /// Edges of `g` from `v2` to a common neighbour whose constraint differed
    /// from the kept `v1` edge.
    pub dropped_conflicts: Vec<usize>,
    /// Edges of `g` from `v2` to a common neighbour carrying the same constraint
    /// as the kept `v1` edge.
    pub merged_duplicates: Vec<usize>,
}

/// Replaces `v1` and `v2` by one vertex placed at the earlier of their
/// positions. Inherited edges keep their orientation and label.
pub fn identify(g: &LabeledGraph, spec: &IdentifySpec) -> Result<(LabeledGraph, IdentifyReport)> {
    let (v1, v2) = (spec.v1, spec.v2);
    for v in [v1, v2] {
        if v >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
    }
    if v1 == v2 {
        return Err(Error::precondition("cannot identify a vertex with itself"));
    }
    let merged_pos = v1.min(v2);
    let mut new_index = vec![0; g.vertex_count()];
    let mut names = Vec::with_capacity(g.vertex_count() - 1);
    for v in 0..g.vertex_count() {
        if v == v1 || v == v2 {
            if v == merged_pos {
                new_index[v] = names.len();
                names.push(spec.new_name.clone());
            }
        } else {
            new_index[v] = names.len();
            names.push(g.vertex_name(v).to_string());
        }
    }
    let merged = new_index[merged_pos];
    new_index[v1] = merged;
    new_index[v2] = merged;

    let mut report = IdentifyReport {
        merged,
        dropped_internal: Vec::new(),
        dropped_conflicts: Vec::new(),
        merged_duplicates: Vec::new(),
    };
    let neighbours = |v: usize| -> BTreeSet<usize> {
        g.edges()
            .iter()
            .filter(|e| e.from == v || e.to == v)
            .map(|e| e.other(v))
            .collect()
    };
    let common: BTreeSet<usize> = neighbours(v1)
        .intersection(&neighbours(v2))
        .copied()
        .collect();

    let mut edges = Vec::with_capacity(g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        let touches = |v: usize| e.from == v || e.to == v;
        if touches(v1) && touches(v2) {
            report.dropped_internal.push(i);
            continue;
        }
        if touches(v2) && common.contains(&e.other(v2)) {
            let u = e.other(v2);
            // Constraint from u towards the merged vertex, compared with v1's.
            let ours = e.label_from(u);
            let duplicate = g
                .edges()
                .iter()
                .filter(|f| (f.from == v1 && f.to == u) || (f.from == u && f.to == v1))
                .any(|f| f.label_from(u) == ours);
            if duplicate {
                report.merged_duplicates.push(i);
                continue;
            }
            match spec.policy {
                ConflictPolicy::PreferV1 => {
                    report.dropped_conflicts.push(i);
                    continue;
                }
                ConflictPolicy::Reject => {
                    return Err(Error::precondition(format!(
                        "{} is adjacent to both {} and {} with different labels",
                        g.vertex_name(u),
                        g.vertex_name(v1),
                        g.vertex_name(v2)
                    )));
                }
            }
        }
        edges.push(Edge::new(
            new_index[e.from],
            new_index[e.to],
            e.label.clone(),
        ));
    }
    Ok((
        LabeledGraph::from_parts(g.n(), g.mode(), names, edges),
        report,
    ))
}

/// Bounds for identifying vertices in different components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossComponentBounds {
    pub beta_prime_g1: u64,
    pub beta_prime_g2: u64,
    /// Assignment number of the merged component of `H`.
    pub beta_prime_h: u64,
    /// `|A1 ∩ A2|`, the root values extendable on both sides.
    pub common_root_values: u64,
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub exact_holds: bool,
    /// Whether `beta'_1 + beta'_2 > n`, in which case the merged component must be consistent.
    pub corollary_applies: bool,
    pub corollary_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentifyBounds {
    pub beta_c_g: usize,
    pub beta_c_h: usize,
    pub deg_v1: usize,
    pub deg_v2: usize,
    /// `beta_c(G) - 1 <= beta_c(H)`.
    pub lower_holds: bool,
    /// `beta_c(H) <= beta_c(G) + min(deg v1, deg v2)`.
    pub upper_holds: bool,
    /// Edges of `G` with no counterpart in `H`.
    pub lost_edges: usize,
    /// `beta_c(G) <= beta_c(H) + lost_edges`, which holds for every identification.
    /// It implies `lower_holds` when at most one edge is lost.
    pub lost_edge_bound_holds: bool,
    pub report: IdentifyReport,
    pub cross_component: Option<CrossComponentBounds>,
}

impl IdentifyBounds {
    pub fn all_hold(&self) -> bool {
        self.lower_holds
            && self.upper_holds
            && self.lost_edge_bound_holds
            && self.cross_component.as_ref().map_or(true, |c| {
                c.lower_holds && c.upper_holds && c.exact_holds && c.corollary_holds
            })
    }
}

pub fn check_identify_bounds(
    g: &LabeledGraph,
    spec: &IdentifySpec,
    config: &SolverConfig,
) -> Result<IdentifyBounds> {
    let (h, report) = identify(g, spec)?;
    let beta_c_g = solve::solve(g, config)?.beta_c;
    let beta_c_h = solve::solve(&h, config)?.beta_c;
    let deg_v1 = g.degree(spec.v1);
    let deg_v2 = g.degree(spec.v2);

    let props = g.underlying_properties();
    let comp_of = |v: usize| props.components.iter().find(|c| c.contains(&v)).unwrap();
    let c1 = comp_of(spec.v1);
    let cross_component = if c1.contains(&spec.v2) {
        None
    } else {
        let c2 = comp_of(spec.v2);
        let beta_prime = |comp: &[usize], graph: &LabeledGraph| -> Result<u64> {
            Ok(solve::solve(&restrict_vertices(graph, comp)?, config)?.beta_c_prime)
        };
        let beta_prime_g1 = beta_prime(c1, g)?;
        let beta_prime_g2 = beta_prime(c2, g)?;
        let h_props = h.underlying_properties();
        let h_comp = h_props
            .components
            .iter()
            .find(|c| c.contains(&report.merged))
            .unwrap();
        let merged = solve::solve(&restrict_vertices(&h, h_comp)?, config)?;
        let a1: BTreeSet<usize> = consistent_root_values(g, spec.v1).into_iter().collect();
        let a2: BTreeSet<usize> = consistent_root_values(g, spec.v2).into_iter().collect();
        let common = a1.intersection(&a2).count() as u64;
        let n = g.n() as u64;
        let sum = beta_prime_g1 + beta_prime_g2;
        let corollary_applies = sum > n;
        Some(CrossComponentBounds {
            beta_prime_g1,
            beta_prime_g2,
            beta_prime_h: merged.beta_c_prime,
            common_root_values: common,
            lower_holds: sum <= merged.beta_c_prime + n,
            upper_holds: merged.beta_c_prime <= beta_prime_g1.min(beta_prime_g2),
            exact_holds: merged.beta_c_prime == common,
            corollary_applies,
            corollary_holds: !corollary_applies || merged.beta_c == 0,
        })
    };
    let lost_edges = g.edge_count() - h.edge_count();
    Ok(IdentifyBounds {
        beta_c_g,
        beta_c_h,
        deg_v1,
        deg_v2,
        lower_holds: beta_c_g <= beta_c_h + 1,
        lost_edges,
        lost_edge_bound_holds: beta_c_g <= beta_c_h + lost_edges,
        upper_holds: beta_c_h <= beta_c_g + deg_v1.min(deg_v2),
        report,
        cross_component,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Mode;
    use crate::perm::Permutation;
    use crate::solve::{solve, Method};

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn figure_one() -> LabeledGraph {
        let mut g = LabeledGraph::with_vertex_count(3, Mode::Undirected, 4).unwrap();
        for (a, b, l) in [
            (0, 1, "(0 2)"),
            (1, 2, "(0 1)"),
            (2, 3, "(1 2)"),
            (3, 0, "(1 2)"),
        ] {
            g.add_edge(a, b, perm(l, 3)).unwrap();
        }
        g
    }

    fn spec(v1: usize, v2: usize, policy: ConflictPolicy) -> IdentifySpec {
        IdentifySpec {
            v1,
            v2,
            new_name: "v".into(),
            policy,
        }
    }

    #[test]
    fn restrict_examples() {
        let g = figure_one();
        let p = restrict_vertices_named(&g, &["v0", "v1", "v2"]).unwrap();
        assert_eq!(p.edge_count(), 2);
        assert_eq!(p.edges()[0].label, perm("(0 2)", 3));
        assert_eq!(p.edges()[1].label, perm("(0 1)", 3));
        let r = solve(&p, &SolverConfig::default()).unwrap();
        assert_eq!((r.beta_c, r.method), (0, Method::ClosedFormTree));
        assert_eq!(restrict_vertices(&g, &[0, 1, 2, 3]).unwrap(), g);
        let empty = restrict_vertices(&g, &[]).unwrap();
        assert_eq!((empty.vertex_count(), empty.edge_count()), (0, 0));
        assert!(restrict_vertices(&g, &[9]).is_err());
        assert_eq!(restrict_edges(&g, &[0, 1, 2, 3]).unwrap(), g);
        assert!(restrict_edges(&g, &[4]).is_err());
    }

    #[test]
    fn delete_edge_from_figure_one_gives_a_tree() {
        let g = figure_one();
        for e in 0..4 {
            let h = delete_edge(&g, e).unwrap();
            assert!(h.is_forest());
            assert_eq!(solve(&h, &SolverConfig::default()).unwrap().beta_c, 0);
        }
        assert!(delete_edge(&g, 4).is_err());
    }

    #[test]
    fn identify_disjoint_edges() {
        // u1 -> v1 (identity), u2 -> v2 ((0 1)), n = 2.
        let mut g = LabeledGraph::new(2, Mode::Undirected).unwrap();
        for name in ["u1", "v1", "u2", "v2"] {
            g.add_vertex(name);
        }
        g.add_edge_named("u1", "v1", perm("()", 2)).unwrap();
        g.add_edge_named("u2", "v2", perm("(0 1)", 2)).unwrap();
        let s = spec(1, 3, ConflictPolicy::PreferV1);
        let (h, report) = identify(&g, &s).unwrap();
        assert_eq!(h.vertices(), &["u1", "v", "u2"]);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(report.merged, 1);
        let r = solve(&h, &SolverConfig::default()).unwrap();
        assert_eq!(r.beta_c_prime, 2);
        let b = check_identify_bounds(&g, &s, &SolverConfig::default()).unwrap();
        let c = b.cross_component.clone().unwrap();
        assert_eq!(
            (c.beta_prime_g1, c.beta_prime_g2, c.beta_prime_h),
            (2, 2, 2)
        );
        assert!(c.corollary_applies && c.corollary_holds);
        assert!(b.all_hold());
    }

    #[test]
    fn identify_endpoints_of_an_edge() {
        let mut g = LabeledGraph::with_vertex_count(3, Mode::Undirected, 2).unwrap();
        g.add_edge(0, 1, perm("(0 1)", 3)).unwrap();
        let (h, report) = identify(&g, &spec(0, 1, ConflictPolicy::Reject)).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (1, 0));
        assert_eq!(report.dropped_internal, vec![0]);
    }

    #[test]
    fn common_neighbour_conflicts() {
        // Triangle u, a, b with u adjacent to both a and b.
        let mut g = LabeledGraph::new(3, Mode::Undirected).unwrap();
        for name in ["u", "a", "b"] {
            g.add_vertex(name);
        }
        g.add_edge_named("u", "a", perm("(0 1)", 3)).unwrap();
        g.add_edge_named("u", "b", perm("(1 2)", 3)).unwrap();
        g.add_edge_named("a", "b", perm("()", 3)).unwrap();
        assert!(matches!(
            identify(&g, &spec(1, 2, ConflictPolicy::Reject)),
            Err(Error::Precondition(_))
        ));
        let (h, report) = identify(&g, &spec(1, 2, ConflictPolicy::PreferV1)).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.edges()[0].label, perm("(0 1)", 3));
        assert_eq!(report.dropped_conflicts, vec![1]);
        assert_eq!(report.dropped_internal, vec![2]);

        // Same constraint written in the other orientation merges silently.
        let mut g2 = g.clone();
        g2 = g2.with_edges(vec![
            Edge::new(0, 1, perm("(0 1)", 3)),
            Edge::new(2, 0, perm("(0 1)", 3)),
        ]);
        let (h, report) = identify(&g2, &spec(1, 2, ConflictPolicy::Reject)).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(report.merged_duplicates, vec![1]);
    }

    #[test]
    fn beta_bounds_on_figure_one() {
        let g = figure_one();
        let b = check_identify_bounds(
            &g,
            &spec(0, 2, ConflictPolicy::PreferV1),
            &SolverConfig::default(),
        )
        .unwrap();
        assert_eq!((b.beta_c_g, b.deg_v1, b.deg_v2), (1, 2, 2));
        assert!(b.beta_c_h <= 3);
        assert!(b.lower_holds && b.upper_holds);
        assert!(b.cross_component.is_none());
    }

    #[test]
    fn lower_bound_fails_when_common_neighbours_disagree() {
        // K_{2,5}: a and b see u1..u5; the a-u_i paths to b have parities 0,0,1,1,1.
        let mut g = LabeledGraph::with_vertex_count(2, Mode::Undirected, 7).unwrap();
        for (i, b_label) in ["()", "()", "(0 1)", "(0 1)", "(0 1)"]
            .into_iter()
            .enumerate()
        {
            g.add_edge(0, 2 + i, perm("()", 2)).unwrap();
            g.add_edge(1, 2 + i, perm(b_label, 2)).unwrap();
        }
        let b = check_identify_bounds(
            &g,
            &spec(0, 1, ConflictPolicy::PreferV1),
            &SolverConfig::default(),
        )
        .unwrap();
        assert_eq!((b.beta_c_g, b.beta_c_h), (2, 0));
        assert!(!b.lower_holds);
        assert_eq!(b.lost_edges, 5);
        assert!(b.lost_edge_bound_holds && b.upper_holds);
        assert_eq!(b.report.dropped_conflicts, vec![5, 7, 9]);
        assert_eq!(b.report.merged_duplicates, vec![1, 3]);
    }

    #[test]
    fn two_identity_trees_merge_consistently() {
        let mut g = LabeledGraph::with_vertex_count(3, Mode::Undirected, 5).unwrap();
        g.add_edge(0, 1, perm("()", 3)).unwrap();
        g.add_edge(1, 2, perm("()", 3)).unwrap();
        g.add_edge(3, 4, perm("()", 3)).unwrap();
        let b = check_identify_bounds(
            &g,
            &spec(2, 3, ConflictPolicy::PreferV1),
            &SolverConfig::default(),
        )
        .unwrap();
        let c = b.cross_component.unwrap();
        assert_eq!(
            (c.beta_prime_g1, c.beta_prime_g2, c.beta_prime_h),
            (3, 3, 3)
        );
        assert!(c.corollary_applies && c.corollary_holds);
        assert_eq!(b.beta_c_h, 0);
    }
}
