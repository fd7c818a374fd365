//! Exact contradiction number `beta_c` and assignment number `beta_c_prime`.
//!
//! Trees and single cycles have closed forms. Everything else goes through
//! root propagation (which decides `beta_c_prime` and settles `beta_c = 0`
//! whenever a consistent assignment exists) and, for components without one,
//! a branch-and-bound search. [`brute_force`] enumerates every assignment and
//! serves as the reference oracle.
//!
//! The reported optimal assignment is always the lexicographically least one
//! in vertex-list order, independent of the search order or thread count.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexAssignment};
use crate::lift;
use crate::perm::Permutation;

pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 10_000_000;
pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of assignments `n^|V|` the oracle will enumerate.
    pub brute_force_cap: u64,
    /// Maximum number of search-tree nodes visited by branch and bound.
    pub node_cap: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedFormTree,
    ClosedFormCycle,
    Propagate,
    Lift,
    BranchAndBound,
    BruteForce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedFormTree => "closed_form_tree",
            Method::ClosedFormCycle => "closed_form_cycle",
            Method::Propagate => "propagate",
            Method::Lift => "lift",
            Method::BranchAndBound => "branch_and_bound",
            Method::BruteForce => "brute_force",
        }
    }
}

/// Forces a particular route through the solver; `Auto` picks the cheapest applicable one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Auto,
    TreeClosedForm,
    CycleClosedForm,
    BranchAndBound,
    Lift,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub beta_c: usize,
    /// Consistent assignments of the whole graph (product over components).
    pub beta_c_prime: u64,
    /// Consistent assignments of each connected component, in component order.
    pub component_beta_c_prime: Vec<u64>,
    /// `None` when the graph has no edges.
    pub omega: Option<Ratio<u64>>,
    pub optimal: VertexAssignment,
    pub contradiction_edges: Vec<usize>,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub beta_c: usize,
    pub beta_c_prime: u64,
    /// Every optimal assignment, in lexicographic order.
    pub all_optimal_assignments: Vec<VertexAssignment>,
    pub enumerated: u64,
}

/// Enumerates all `n^|V|` assignments.
pub fn brute_force(g: &LabeledGraph, cap: u64) -> Result<OracleReport> {
    g.ensure_valid()?;
    let n = g.n();
    let count = g.vertex_count();
    let total = (n as u64)
        .checked_pow(count as u32)
        .filter(|&t| t <= cap)
        .ok_or(Error::Resource {
            what: "brute-force assignments",
            cap,
        })?;
    let mut values = vec![0usize; count];
    let mut best = usize::MAX;
    let mut consistent = 0u64;
    let mut optima = Vec::new();
    for _ in 0..total {
        let c = g.count_contradictions(&values);
        if c < best {
            best = c;
            optima.clear();
        }
        if c == best {
            optima.push(VertexAssignment(values.clone()));
        }
        if c == 0 {
            consistent += 1;
        }
        // Odometer with the last vertex fastest gives lexicographic order.
        for slot in values.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    Ok(OracleReport {
        beta_c: best,
        beta_c_prime: consistent,
        all_optimal_assignments: optima,
        enumerated: total,
    })
}

/// BFS spanning tree of one component.
struct SpanningTree {
    order: Vec<usize>,
    /// `(edge, parent)` for every non-root vertex in `order`.
    parent: Vec<Option<(usize, usize)>>,
}

impl SpanningTree {
    fn build(g: &LabeledGraph, inc: &[Vec<(usize, usize)>], root: usize) -> Self {
        let mut parent = vec![None; g.vertex_count()];
        let mut seen = vec![false; g.vertex_count()];
        seen[root] = true;
        let mut order = vec![root];
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &(e, w) in &inc[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((e, u));
                    order.push(w);
                }
            }
        }
        Self { order, parent }
    }

    /// Writes the propagated values for this component into `values`.
    fn propagate(&self, g: &LabeledGraph, root_value: usize, values: &mut [usize]) {
        values[self.order[0]] = root_value;
        for &v in &self.order[1..] {
            let (e, p) = self.parent[v].expect("non-root vertex has a parent");
            values[v] = g.edges()[e].carry(p, values[p]);
        }
    }
}

fn component_edges(g: &LabeledGraph, comp: &[usize]) -> Vec<usize> {
    let mut member = vec![false; g.vertex_count()];
    for &v in comp {
        member[v] = true;
    }
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| member[e.from])
        .map(|(i, _)| i)
        .collect()
}

fn violated(g: &LabeledGraph, edges: &[usize], values: &[usize]) -> usize {
    edges
        .iter()
        .filter(|&&i| !g.edges()[i].is_satisfied(values))
        .count()
}

/// Root values `t` for which the component containing `root` has a consistent
/// assignment with `k(root) = t`, ascending.
pub fn consistent_root_values(g: &LabeledGraph, root: usize) -> Vec<usize> {
    let inc = g.incidence();
    let tree = SpanningTree::build(g, &inc, root);
    let edges = component_edges(g, &tree.order);
    let mut values = vec![0; g.vertex_count()];
    (0..g.n())
        .filter(|&c| {
            tree.propagate(g, c, &mut values);
            violated(g, &edges, &values) == 0
        })
        .collect()
}

/// `beta_c_prime` of a connected graph by propagating each root value along a
/// spanning tree and checking the remaining edges.
pub fn beta_c_prime_fast(g: &LabeledGraph) -> Result<u64> {
    g.ensure_valid()?;
    if g.vertex_count() == 0 {
        return Err(Error::precondition("graph has no vertices"));
    }
    if !g.underlying_properties().connected {
        return Err(Error::precondition("graph is not connected"));
    }
    Ok(consistent_root_values(g, 0).len() as u64)
}

/// The composed label around a single cycle, walked from vertex 0 along its
/// lowest-indexed edge. Returns the vertex walk (without repeating the start)
/// and the permutation `p_C` with `p_C(k(v0)) = k(v0)` for consistent `k`.
pub fn cycle_permutation(g: &LabeledGraph) -> Result<(Vec<usize>, Permutation)> {
    let count = g.vertex_count();
    if count < 2 || g.edge_count() != count || !g.underlying_properties().connected {
        return Err(Error::precondition(
            "underlying graph is not a single cycle",
        ));
    }
    let inc = g.incidence();
    if inc.iter().any(|i| i.len() != 2) {
        return Err(Error::precondition(
            "underlying graph is not a single cycle",
        ));
    }
    let mut walk = Vec::with_capacity(count);
    let mut pi = Permutation::identity(g.n())?;
    let mut cur = 0;
    let mut edge = inc[0][0].0;
    loop {
        walk.push(cur);
        let e = &g.edges()[edge];
        pi = e.label_from(cur).compose(&pi)?;
        cur = e.other(cur);
        if cur == 0 {
            break;
        }
        edge = inc[cur]
            .iter()
            .map(|&(i, _)| i)
            .find(|&i| i != edge)
            .expect("cycle vertex has two edges");
    }
    Ok((walk, pi))
}

/// Closed form for a single cycle: consistent assignments are exactly the
/// fixed points of the composed label.
pub fn cycle_closed_form(g: &LabeledGraph, config: &SolverConfig) -> Result<SolveResult> {
    g.ensure_valid()?;
    let (_, pi) = cycle_permutation(g)?;
    let fixed = pi.fixed_points();
    let beta_c_prime = fixed.len() as u64;
    let optimal = match fixed.first() {
        Some(&c) => {
            // Vertex 0 comes first in list order, so the least fixed point wins.
            let inc = g.incidence();
            let mut values = vec![0; g.vertex_count()];
            SpanningTree::build(g, &inc, 0).propagate(g, c, &mut values);
            values
        }
        None => {
            let all: Vec<usize> = (0..g.vertex_count()).collect();
            lex_least_with(g, &all, &component_edges(g, &all), 1, config.node_cap)?
        }
    };
    finish(
        g,
        optimal,
        vec![beta_c_prime],
        if beta_c_prime > 0 { 0 } else { 1 },
        Method::ClosedFormCycle,
    )
}

/// Closed form for forests: every labeling is consistent, with `n` consistent
/// assignments per tree component.
pub fn tree_closed_form(g: &LabeledGraph) -> Result<SolveResult> {
    g.ensure_valid()?;
    if !g.is_forest() {
        return Err(Error::precondition("underlying graph is not a forest"));
    }
    let props = g.underlying_properties();
    let inc = g.incidence();
    let mut values = vec![0; g.vertex_count()];
    for comp in &props.components {
        SpanningTree::build(g, &inc, comp[0]).propagate(g, 0, &mut values);
    }
    let per = vec![g.n() as u64; props.components.len()];
    finish(g, values, per, 0, Method::ClosedFormTree)
}

/// Exact `beta_c` by branch and bound, per connected component.
pub fn beta_c_exact(g: &LabeledGraph, config: &SolverConfig) -> Result<SolveResult> {
    g.ensure_valid()?;
    solve_components(g, config, Method::BranchAndBound, true)
}

pub fn solve(g: &LabeledGraph, config: &SolverConfig) -> Result<SolveResult> {
    solve_with(g, Strategy::Auto, config)
}

pub fn solve_with(
    g: &LabeledGraph,
    strategy: Strategy,
    config: &SolverConfig,
) -> Result<SolveResult> {
    g.ensure_valid()?;
    match strategy {
        Strategy::Auto => {
            if g.is_forest() {
                tree_closed_form(g)
            } else if cycle_permutation(g).is_ok() {
                cycle_closed_form(g, config)
            } else {
                solve_components(g, config, Method::Propagate, false)
            }
        }
        Strategy::TreeClosedForm => tree_closed_form(g),
        Strategy::CycleClosedForm => cycle_closed_form(g, config),
        Strategy::BranchAndBound => beta_c_exact(g, config),
        Strategy::Lift => solve_via_lift(g, config),
        Strategy::BruteForce => {
            let report = brute_force(g, config.brute_force_cap)?;
            let props = g.underlying_properties();
            let per = props
                .components
                .iter()
                .map(|c| consistent_root_values(g, c[0]).len() as u64)
                .collect();
            let optimal = report
                .all_optimal_assignments
                .into_iter()
                .next()
                .expect("at least one assignment is enumerated");
            finish(g, optimal.0, per, report.beta_c, Method::BruteForce)
        }
    }
}

/// `beta_c_prime` from the lift components; `beta_c` is settled by search only
/// for base components with no consistent assignment.
fn solve_via_lift(g: &LabeledGraph, config: &SolverConfig) -> Result<SolveResult> {
    let lifted = lift::build_lift(g);
    let summary = lift::component_analysis(&lifted);
    let props = g.underlying_properties();
    let mut values = vec![0; g.vertex_count()];
    let mut per = Vec::with_capacity(props.components.len());
    let mut beta_c = 0;
    for (comp, base) in props.components.iter().zip(&summary.per_base_component) {
        per.push(base.isomorphic_count as u64);
        let edges = component_edges(g, comp);
        let (beta, assignment) = if base.isomorphic_count > 0 {
            (0, lex_least_with(g, comp, &edges, 0, config.node_cap)?)
        } else {
            let beta = minimum_contradictions(g, comp, &edges, config.node_cap)?;
            (
                beta,
                lex_least_with(g, comp, &edges, beta, config.node_cap)?,
            )
        };
        beta_c += beta;
        for &v in comp {
            values[v] = assignment[v];
        }
    }
    finish(g, values, per, beta_c, Method::Lift)
}

fn solve_components(
    g: &LabeledGraph,
    config: &SolverConfig,
    quiet_method: Method,
    always_search: bool,
) -> Result<SolveResult> {
    let props = g.underlying_properties();
    let mut values = vec![0; g.vertex_count()];
    let mut per = Vec::with_capacity(props.components.len());
    let mut beta_c = 0;
    let mut searched = always_search;
    for comp in &props.components {
        let edges = component_edges(g, comp);
        let roots = consistent_root_values(g, comp[0]);
        per.push(roots.len() as u64);
        if let Some(&c) = roots.first() {
            // comp[0] is the component's first vertex in list order.
            let inc = g.incidence();
            SpanningTree::build(g, &inc, comp[0]).propagate(g, c, &mut values);
            continue;
        }
        searched = true;
        let beta = minimum_contradictions(g, comp, &edges, config.node_cap)?;
        let assignment = lex_least_with(g, comp, &edges, beta, config.node_cap)?;
        for &v in comp {
            values[v] = assignment[v];
        }
        beta_c += beta;
    }
    let method = if searched {
        Method::BranchAndBound
    } else {
        quiet_method
    };
    finish(g, values, per, beta_c, method)
}

fn finish(
    g: &LabeledGraph,
    values: Vec<usize>,
    per: Vec<u64>,
    beta_c: usize,
    method: Method,
) -> Result<SolveResult> {
    let contradiction_edges = g.contradictions_of(&values);
    debug_assert_eq!(contradiction_edges.len(), beta_c);
    let beta_c_prime = per
        .iter()
        .try_fold(1u64, |acc, &c| acc.checked_mul(c))
        .ok_or(Error::Resource {
            what: "assignment count exceeds u64",
            cap: u64::MAX,
        })?;
    let omega = g.game_value(beta_c).ok().map(|v| v.omega);
    Ok(SolveResult {
        beta_c,
        beta_c_prime,
        component_beta_c_prime: per,
        omega,
        optimal: VertexAssignment(values),
        contradiction_edges,
        method,
    })
}

/// Search order plus, for each position, the edges whose later endpoint sits there.
struct SearchPlan<'g> {
    g: &'g LabeledGraph,
    order: Vec<usize>,
    checks: Vec<Vec<usize>>,
}

impl<'g> SearchPlan<'g> {
    fn new(g: &'g LabeledGraph, order: Vec<usize>, edges: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for &i in edges {
            let e = &g.edges()[i];
            checks[pos[e.from].max(pos[e.to])].push(i);
        }
        Self { g, order, checks }
    }

    fn new_violations(&self, depth: usize, values: &[usize]) -> usize {
        violated(self.g, &self.checks[depth], values)
    }
}

fn tick(nodes: &AtomicU64, cap: u64) -> Result<()> {
    if nodes.fetch_add(1, Ordering::Relaxed) >= cap {
        Err(Error::Resource {
            what: "branch-and-bound nodes",
            cap,
        })
    } else {
        Ok(())
    }
}

/// Minimum contradictions within one component.
///
/// Vertices are searched in BFS order from the highest-degree vertex; the
/// incumbent starts at the best root propagation and a branch is cut as soon
/// as its violated edges reach the incumbent. The top level is split across
/// the rayon pool; the minimum found does not depend on the split.
fn minimum_contradictions(
    g: &LabeledGraph,
    comp: &[usize],
    edges: &[usize],
    node_cap: u64,
) -> Result<usize> {
    let inc = g.incidence();
    let root = *comp
        .iter()
        .max_by_key(|&&v| (inc[v].len(), std::cmp::Reverse(v)))
        .expect("component is non-empty");
    let tree = SpanningTree::build(g, &inc, root);
    let mut scratch = vec![0; g.vertex_count()];
    let heuristic = (0..g.n())
        .map(|c| {
            tree.propagate(g, c, &mut scratch);
            violated(g, edges, &scratch)
        })
        .min()
        .unwrap_or(0);
    if heuristic == 0 {
        return Ok(0);
    }
    let plan = SearchPlan::new(g, tree.order, edges);
    let best = AtomicUsize::new(heuristic);
    let nodes = AtomicU64::new(0);
    (0..g.n()).into_par_iter().try_for_each(|c| {
        let mut values = vec![0; g.vertex_count()];
        values[plan.order[0]] = c;
        tick(&nodes, node_cap)?;
        improve(&plan, 1, 0, &mut values, &best, &nodes, node_cap)
    })?;
    Ok(best.load(Ordering::Relaxed))
}

fn improve(
    plan: &SearchPlan<'_>,
    depth: usize,
    so_far: usize,
    values: &mut [usize],
    best: &AtomicUsize,
    nodes: &AtomicU64,
    cap: u64,
) -> Result<()> {
    if depth == plan.order.len() {
        best.fetch_min(so_far, Ordering::Relaxed);
        return Ok(());
    }
    let v = plan.order[depth];
    for x in 0..plan.g.n() {
        values[v] = x;
        tick(nodes, cap)?;
        let total = so_far + plan.new_violations(depth, values);
        if total < best.load(Ordering::Relaxed) {
            improve(plan, depth + 1, total, values, best, nodes, cap)?;
        }
    }
    Ok(())
}

/// The lexicographically least assignment of `comp` (in vertex-list order)
/// with exactly `beta` violated edges, given that `beta` is the minimum.
fn lex_least_with(
    g: &LabeledGraph,
    comp: &[usize],
    edges: &[usize],
    beta: usize,
    node_cap: u64,
) -> Result<Vec<usize>> {
    let plan = SearchPlan::new(g, comp.to_vec(), edges);
    let nodes = AtomicU64::new(0);
    let mut values = vec![0; g.vertex_count()];
    if first_within(&plan, 0, 0, beta, &mut values, &nodes, node_cap)? {
        Ok(values)
    } else {
        Err(Error::LawViolation(format!(
            "no assignment reaches the claimed minimum {beta}"
        )))
    }
}

fn first_within(
    plan: &SearchPlan<'_>,
    depth: usize,
    so_far: usize,
    beta: usize,
    values: &mut [usize],
    nodes: &AtomicU64,
    cap: u64,
) -> Result<bool> {
    if depth == plan.order.len() {
        return Ok(true);
    }
    let v = plan.order[depth];
    for x in 0..plan.g.n() {
        values[v] = x;
        tick(nodes, cap)?;
        let total = so_far + plan.new_violations(depth, values);
        if total <= beta && first_within(plan, depth + 1, total, beta, values, nodes, cap)? {
            return Ok(true);
        }
    }
    Ok(false)
}
