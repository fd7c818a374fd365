//! Specializations: signed graphs over S_2, edge bipartization and
//! Latin-square labelings.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Mode};
use crate::lift::Classification;
use crate::perm::{LatinFamily, LatinKind, Permutation};
use crate::solve::{self, SolverConfig};
use crate::xform::restrict_vertices;

/// Longest chordless cycle considered by [`bipartite_bad_witness`].
pub const CHORDLESS_MAX_LEN: usize = 12;
/// Most chordless cycles examined by [`bipartite_bad_witness`].
pub const CHORDLESS_MAX_CYCLES: u64 = 100_000;

fn names(g: &LabeledGraph, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter()
        .map(|v| g.vertex_name(v).to_string())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedReport {
    pub balanced: bool,
    /// Vertices on each side; identity edges stay inside a part, `(0 1)` edges cross.
    pub harary_partition: Option<(Vec<String>, Vec<String>)>,
    pub frustration: usize,
}

fn two_colouring(g: &LabeledGraph) -> Option<Vec<usize>> {
    let inc = g.incidence();
    let mut colour = vec![usize::MAX; g.vertex_count()];
    for start in 0..g.vertex_count() {
        if colour[start] != usize::MAX {
            continue;
        }
        colour[start] = 0;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(e, w) in &inc[u] {
                let want = g.edges()[e].carry(u, colour[u]);
                if colour[w] == usize::MAX {
                    colour[w] = want;
                    stack.push(w);
                } else if colour[w] != want {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

/// Balance of an `n = 2` labeling read as a signed graph.
pub fn signed_analyze(g: &LabeledGraph, config: &SolverConfig) -> Result<SignedReport> {
    if g.n() != 2 {
        return Err(Error::precondition(format!(
            "signed analysis needs n = 2, got n = {}",
            g.n()
        )));
    }
    let by_colouring = two_colouring(g).is_some();
    let r = solve::beta_c_exact(g, config)?;
    if by_colouring != (r.beta_c == 0) {
        return Err(Error::LawViolation(format!(
            "two-colouring says balanced={by_colouring} but frustration is {}",
            r.beta_c
        )));
    }
    let harary_partition = (r.beta_c == 0).then(|| {
        let opt = &r.optimal;
        let side = |c| (0..g.vertex_count()).filter(move |&v| opt.get(v) == c);
        (names(g, side(0)), names(g, side(1)))
    });
    Ok(SignedReport {
        balanced: r.beta_c == 0,
        harary_partition,
        frustration: r.beta_c,
    })
}

/// For a graph whose every label is the same transposition `(a b)`: whether
/// the underlying graph is bipartite.
///
/// Cross-checks the consistent-assignment count: with `n = 2` a consistent
/// assignment exists exactly when the graph is bipartite, and on a connected
/// non-bipartite graph the consistent assignments are the constants at the
/// `n - 2` fixed points.
pub fn all_negative_check(g: &LabeledGraph, config: &SolverConfig) -> Result<bool> {
    let first = g
        .edges()
        .first()
        .ok_or_else(|| Error::precondition("graph has no edges"))?;
    let t = &first.label;
    if !(t.is_involution() && t.fixed_point_count() + 2 == t.degree())
        || g.edges().iter().any(|e| &e.label != t)
    {
        return Err(Error::precondition(
            "labels are not all the same transposition",
        ));
    }
    let props = g.underlying_properties();
    let r = solve::solve(g, config)?;
    let holds = if g.n() == 2 {
        (r.beta_c_prime > 0) == props.bipartite
    } else if props.connected && !props.bipartite {
        r.beta_c_prime == (g.n() - 2) as u64
    } else {
        true
    };
    if !holds {
        return Err(Error::LawViolation(format!(
            "all-transposition labeling: bipartite={} but beta_c_prime={}",
            props.bipartite, r.beta_c_prime
        )));
    }
    Ok(props.bipartite)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartizationResult {
    pub beta_c2: usize,
    /// Indices into the input edge list.
    pub deleted_edges: Vec<usize>,
    pub residual_bipartition: (Vec<String>, Vec<String>),
}

/// The all-`(0 1)` labeling with `n = 2` of an unlabeled undirected graph.
pub fn all_negative_labeling(
    vertices: &[String],
    edges: &[(usize, usize)],
) -> Result<LabeledGraph> {
    let mut g = LabeledGraph::new(2, Mode::Undirected)?;
    for v in vertices {
        g.add_vertex(v.clone());
    }
    let t = Permutation::transposition(2, 0, 1)?;
    for &(a, b) in edges {
        g.add_edge(a, b, t.clone())?;
    }
    g.ensure_valid()?;
    Ok(g)
}

/// Minimum number of edge deletions leaving a bipartite graph.
pub fn edge_bipartization(
    vertices: &[String],
    edges: &[(usize, usize)],
    config: &SolverConfig,
) -> Result<BipartizationResult> {
    let g = all_negative_labeling(vertices, edges)?;
    let r = solve::solve(&g, config)?;
    let opt = &r.optimal;
    let side = |c| (0..g.vertex_count()).filter(move |&v| opt.get(v) == c);
    Ok(BipartizationResult {
        beta_c2: r.beta_c,
        deleted_edges: r.contradiction_edges.clone(),
        residual_bipartition: (names(&g, side(0)), names(&g, side(1))),
    })
}

/// [`edge_bipartization`] on the underlying graph of `g`, ignoring labels.
pub fn edge_bipartization_of(
    g: &LabeledGraph,
    config: &SolverConfig,
) -> Result<BipartizationResult> {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.from, e.to)).collect();
    edge_bipartization(g.vertices(), &edges, config)
}

fn is_bipartite_without(vertex_count: usize, edges: &[(usize, usize)], skip: &[usize]) -> bool {
    let mut adj = vec![Vec::new(); vertex_count];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if !skip.contains(&i) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut colour = vec![u8::MAX; vertex_count];
    for s in 0..vertex_count {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[u];
                    stack.push(w);
                } else if colour[w] == colour[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Edge bipartization by trying every deletion set of size 0, 1, 2, ... in
/// lexicographic order. Returns the first set that leaves a bipartite graph.
pub fn bipartization_by_deletion(vertex_count: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let m = edges.len();
    for k in 0..=m {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if is_bipartite_without(vertex_count, edges, &combo) {
                return combo;
            }
            // Next k-subset of 0..m.
            let Some(i) = (0..k).rev().find(|&i| combo[i] < m - k + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    unreachable!("deleting every edge leaves a bipartite graph")
}

fn require_family(g: &LabeledGraph, kind: LatinKind) -> Result<LatinFamily> {
    let family = LatinFamily::new(g.n(), kind)?;
    if kind == LatinKind::Lprime && g.mode() != Mode::Directed {
        return Err(Error::precondition("L' labels need a directed graph"));
    }
    if let Some((i, _)) = g
        .edges()
        .iter()
        .enumerate()
        .find(|(_, e)| !family.contains(&e.label))
    {
        return Err(Error::precondition(format!(
            "label of edge {i} is not in the {} family",
            kind_name(kind)
        )));
    }
    Ok(family)
}

fn kind_name(kind: LatinKind) -> &'static str {
    match kind {
        LatinKind::L => "L",
        LatinKind::Lprime => "L'",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleClassification {
    pub cycle: Vec<String>,
    pub pi_c: Permutation,
    pub verdict: Classification,
    pub assignment_count: u64,
}

/// Whether a consistent-assignment count is allowed for a Latin-labeled cycle.
pub fn cycle_count_allowed(kind: LatinKind, length: usize, n: usize, count: u64) -> bool {
    let n64 = n as u64;
    match kind {
        LatinKind::Lprime => count == 0 || count == n64,
        LatinKind::L if length % 2 == 0 => count == 0 || count == n64,
        LatinKind::L if n % 2 == 1 => count == 1,
        LatinKind::L => count == 0 || count == 2,
    }
}

/// Classifies a single cycle labeled from `kind` and checks the count against
/// the parity laws.
pub fn classify_cycle_latin(g: &LabeledGraph, kind: LatinKind) -> Result<CycleClassification> {
    g.ensure_valid()?;
    require_family(g, kind)?;
    let (walk, pi_c) = solve::cycle_permutation(g)?;
    let count = pi_c.fixed_point_count() as u64;
    if !cycle_count_allowed(kind, walk.len(), g.n(), count) {
        return Err(Error::LawViolation(format!(
            "{}-labeled cycle of length {} with n = {} has {count} consistent assignments",
            kind_name(kind),
            walk.len(),
            g.n()
        )));
    }
    Ok(CycleClassification {
        cycle: names(g, walk),
        pi_c,
        verdict: Classification::from_count(count, g.n()),
        assignment_count: count,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LprimeReport {
    pub component_counts: Vec<u64>,
    pub component_verdicts: Vec<Classification>,
    /// Good when every component is good, bad otherwise.
    pub verdict: Classification,
}

/// Good/bad verdict for a directed graph labeled from L'_n.
pub fn directed_lprime_classify(g: &LabeledGraph, config: &SolverConfig) -> Result<LprimeReport> {
    g.ensure_valid()?;
    require_family(g, LatinKind::Lprime)?;
    let r = solve::solve(g, config)?;
    let n = g.n() as u64;
    if let Some(&c) = r.component_beta_c_prime.iter().find(|&&c| c != 0 && c != n) {
        return Err(Error::LawViolation(format!(
            "L'-labeled component has {c} consistent assignments"
        )));
    }
    let component_verdicts: Vec<Classification> = r
        .component_beta_c_prime
        .iter()
        .map(|&c| Classification::from_count(c, g.n()))
        .collect();
    let verdict = if component_verdicts
        .iter()
        .all(|&v| v == Classification::Good)
    {
        Classification::Good
    } else {
        Classification::Bad
    };
    Ok(LprimeReport {
        component_counts: r.component_beta_c_prime,
        component_verdicts,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadCycleWitness {
    pub cycle: Vec<String>,
    #[serde(skip)]
    pub vertices: Vec<usize>,
    pub pi_c: Permutation,
}

fn adjacency(g: &LabeledGraph) -> Vec<Vec<Option<usize>>> {
    let mut adj = vec![vec![None; g.vertex_count()]; g.vertex_count()];
    for (i, e) in g.edges().iter().enumerate() {
        adj[e.from][e.to].get_or_insert(i);
        adj[e.to][e.from].get_or_insert(i);
    }
    adj
}

/// Composed label around a closed walk through `cycle`.
fn walk_permutation(g: &LabeledGraph, adj: &[Vec<Option<usize>>], cycle: &[usize]) -> Permutation {
    let mut pi = Permutation::identity(g.n()).expect("n >= 1");
    for (i, &a) in cycle.iter().enumerate() {
        let b = cycle[(i + 1) % cycle.len()];
        let e = &g.edges()[adj[a][b].expect("consecutive cycle vertices are adjacent")];
        pi = e.label_from(a).compose(&pi).expect("same degree");
    }
    pi
}

/// Chordless cycles of exactly `len` vertices, each listed once, starting at
/// its least vertex with the smaller neighbour second.
struct ChordlessCycles<'a> {
    adj: &'a [Vec<Option<usize>>],
    len: usize,
    seen: u64,
    cap: u64,
}

impl ChordlessCycles<'_> {
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<Option<Vec<usize>>> {
        let count = self.adj.len();
        let mut path = Vec::with_capacity(self.len);
        for s in 0..count {
            path.clear();
            path.push(s);
            if let Some(c) = self.extend(&mut path, visit)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn extend(
        &mut self,
        path: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<Option<Vec<usize>>> {
        let s = path[0];
        let last = *path.last().unwrap();
        if path.len() == self.len {
            if self.adj[last][s].is_none() || path[1] > last {
                return Ok(None);
            }
            self.seen += 1;
            if self.seen > self.cap {
                return Err(Error::Resource {
                    what: "chordless cycles",
                    cap: self.cap,
                });
            }
            return Ok(visit(path).then(|| path.clone()));
        }
        for w in s + 1..self.adj.len() {
            if self.adj[last][w].is_none() || path.contains(&w) {
                continue;
            }
            // The path must stay induced; `w` may touch `s` only as the closing vertex.
            let inner = if path.len() > 1 {
                &path[1..path.len() - 1]
            } else {
                &[][..]
            };
            if inner.iter().any(|&p| self.adj[p][w].is_some()) {
                continue;
            }
            let closing = path.len() + 1 == self.len;
            if path.len() > 1 && !closing && self.adj[s][w].is_some() {
                continue;
            }
            path.push(w);
            let found = self.extend(path, visit)?;
            path.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// All chordless cycles of length `3..=max_len`, shortest first.
pub fn chordless_cycles(g: &LabeledGraph, max_len: usize, cap: u64) -> Result<Vec<Vec<usize>>> {
    let adj = adjacency(g);
    let mut out = Vec::new();
    let mut seen = 0;
    for len in 3..=max_len {
        let mut e = ChordlessCycles {
            adj: &adj,
            len,
            seen,
            cap,
        };
        e.run(&mut |c| {
            out.push(c.to_vec());
            false
        })?;
        seen = e.seen;
    }
    Ok(out)
}

fn complete_bipartite(g: &LabeledGraph, sides: &(Vec<usize>, Vec<usize>)) -> bool {
    let adj = adjacency(g);
    g.underlying_properties().connected
        && sides
            .0
            .iter()
            .all(|&a| sides.1.iter().all(|&b| adj[a][b].is_some()))
}

/// A chordless cycle with no consistent assignment in a bipartite graph
/// labeled from L_n, or `None` when the graph has a consistent assignment.
/// On a complete bipartite graph only 4-cycles are examined.
pub fn bipartite_bad_witness(
    g: &LabeledGraph,
    config: &SolverConfig,
) -> Result<Option<BadCycleWitness>> {
    g.ensure_valid()?;
    require_family(g, LatinKind::L)?;
    let props = g.underlying_properties();
    let Some(sides) = props.bipartition.as_ref() else {
        return Err(Error::precondition("underlying graph is not bipartite"));
    };
    let adj = adjacency(g);
    let mut pairs = BTreeSet::new();
    if !g
        .edges()
        .iter()
        .all(|e| pairs.insert((e.from.min(e.to), e.from.max(e.to))))
    {
        return Err(Error::precondition("underlying graph has parallel edges"));
    }
    if solve::solve(g, config)?.beta_c_prime > 0 {
        return Ok(None);
    }
    let lengths = if complete_bipartite(g, sides) {
        4..=4
    } else {
        4..=CHORDLESS_MAX_LEN
    };
    let mut seen = 0;
    for len in lengths.step_by(2) {
        let mut e = ChordlessCycles {
            adj: &adj,
            len,
            seen,
            cap: CHORDLESS_MAX_CYCLES,
        };
        let found = e.run(&mut |c| walk_permutation(g, &adj, c).fixed_point_count() == 0)?;
        seen = e.seen;
        if let Some(c) = found {
            return Ok(Some(BadCycleWitness {
                cycle: names(g, c.iter().copied()),
                pi_c: walk_permutation(g, &adj, &c),
                vertices: c,
            }));
        }
    }
    Err(Error::LawViolation(format!(
        "no bad chordless cycle of length <= {CHORDLESS_MAX_LEN} in a bad bipartite graph"
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatinBound {
    pub beta_c_prime: u64,
    /// 1 for odd `n`, 2 for even `n`.
    pub bound: u64,
}

/// Checks `beta_c_prime <= 1` (odd `n`) or `<= 2` (even `n`) on a connected
/// non-bipartite graph labeled from L_n.
pub fn nonbipartite_latin_bound(g: &LabeledGraph, config: &SolverConfig) -> Result<LatinBound> {
    g.ensure_valid()?;
    if g.n() < 3 {
        return Err(Error::precondition("needs n >= 3"));
    }
    require_family(g, LatinKind::L)?;
    let props = g.underlying_properties();
    if !props.connected {
        return Err(Error::precondition("graph is not connected"));
    }
    if props.bipartite {
        return Err(Error::precondition("underlying graph is bipartite"));
    }
    let beta_c_prime = solve::solve(g, config)?.beta_c_prime;
    let bound = if g.n() % 2 == 1 { 1 } else { 2 };
    if beta_c_prime > bound {
        return Err(Error::LawViolation(format!(
            "non-bipartite L-labeled graph has {beta_c_prime} consistent assignments, bound {bound}"
        )));
    }
    Ok(LatinBound {
        beta_c_prime,
        bound,
    })
}

/// Per-component consistent-assignment counts of an L_n-labeled graph, each
/// checked to lie in `{0, 1, 2, n}`.
pub fn latin_component_counts(g: &LabeledGraph, config: &SolverConfig) -> Result<Vec<u64>> {
    g.ensure_valid()?;
    require_family(g, LatinKind::L)?;
    let props = g.underlying_properties();
    let mut counts = Vec::with_capacity(props.components.len());
    for comp in &props.components {
        let c = solve::solve(&restrict_vertices(g, comp)?, config)?.beta_c_prime;
        if ![0, 1, 2, g.n() as u64].contains(&c) {
            return Err(Error::LawViolation(format!(
                "L-labeled component has {c} consistent assignments"
            )));
        }
        counts.push(c);
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::latin_family;

    fn cycle(n: usize, mode: Mode, labels: &[Permutation]) -> LabeledGraph {
        let len = labels.len();
        let mut g = LabeledGraph::with_vertex_count(n, mode, len).unwrap();
        for (i, l) in labels.iter().enumerate() {
            g.add_edge(i, (i + 1) % len, l.clone()).unwrap();
        }
        g
    }

    fn neg(n: usize) -> Permutation {
        Permutation::transposition(n, 0, 1).unwrap()
    }

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn plain(count: usize) -> Vec<String> {
        (0..count).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn signed_examples() {
        let c4 = cycle(2, Mode::Undirected, &vec![neg(2); 4]);
        let r = signed_analyze(&c4, &cfg()).unwrap();
        assert!(r.balanced);
        assert_eq!(r.frustration, 0);
        let (a, b) = r.harary_partition.unwrap();
        assert_eq!(
            (a, b),
            (
                vec!["v0".into(), "v2".into()],
                vec!["v1".into(), "v3".into()]
            )
        );

        let c3 = cycle(2, Mode::Undirected, &vec![neg(2); 3]);
        let r = signed_analyze(&c3, &cfg()).unwrap();
        assert!(!r.balanced);
        assert_eq!(r.frustration, 1);
        assert!(r.harary_partition.is_none());

        let id = Permutation::identity(2).unwrap();
        let r = signed_analyze(&cycle(2, Mode::Undirected, &vec![id; 5]), &cfg()).unwrap();
        let (a, b) = r.harary_partition.unwrap();
        assert_eq!((a.len(), b.len()), (5, 0));

        assert!(signed_analyze(&cycle(3, Mode::Undirected, &vec![neg(3); 3]), &cfg()).is_err());
    }

    #[test]
    fn all_negative_examples() {
        assert!(all_negative_check(&cycle(2, Mode::Undirected, &vec![neg(2); 4]), &cfg()).unwrap());
        assert!(
            !all_negative_check(&cycle(2, Mode::Undirected, &vec![neg(2); 5]), &cfg()).unwrap()
        );
        let c5 = cycle(3, Mode::Undirected, &vec![neg(3); 5]);
        assert!(!all_negative_check(&c5, &cfg()).unwrap());
        let r = solve::brute_force(&c5, 1000).unwrap();
        assert_eq!(r.beta_c_prime, 1);
        assert_eq!(r.all_optimal_assignments[0].values(), &[2; 5]);
        let mixed = cycle(
            3,
            Mode::Undirected,
            &[neg(3), neg(3), Permutation::transposition(3, 1, 2).unwrap()],
        );
        assert!(all_negative_check(&mixed, &cfg()).is_err());
    }

    fn complete(k: usize) -> Vec<(usize, usize)> {
        (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .collect()
    }

    #[test]
    fn bipartization_examples() {
        let c5: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let r = edge_bipartization(&plain(5), &c5, &cfg()).unwrap();
        assert_eq!(r.beta_c2, 1);
        assert_eq!(r.deleted_edges.len(), 1);
        assert_eq!(bipartization_by_deletion(5, &c5).len(), 1);

        let k5 = complete(5);
        let r = edge_bipartization(&plain(5), &k5, &cfg()).unwrap();
        assert_eq!(r.beta_c2, 4);
        assert!(is_bipartite_without(5, &k5, &r.deleted_edges));
        assert_eq!(bipartization_by_deletion(5, &k5).len(), 4);

        let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let r = edge_bipartization(&plain(6), &k33, &cfg()).unwrap();
        assert_eq!(r.beta_c2, 0);
        assert_eq!(r.residual_bipartition.0.len(), 3);
    }

    #[test]
    fn cycle_latin_examples() {
        let l3 = latin_family(3, LatinKind::L).unwrap();
        let p1 = l3.member(1).clone();
        let r = classify_cycle_latin(
            &cycle(3, Mode::Undirected, &vec![p1.clone(); 4]),
            LatinKind::L,
        )
        .unwrap();
        assert_eq!((r.verdict, r.assignment_count), (Classification::Good, 3));
        let r = classify_cycle_latin(
            &cycle(3, Mode::Undirected, &vec![p1.clone(); 3]),
            LatinKind::L,
        )
        .unwrap();
        assert_eq!((r.verdict, r.assignment_count), (Classification::Ugly, 1));
        assert_eq!(
            r.pi_c.fixed_points().into_iter().collect::<Vec<_>>(),
            vec![2]
        );

        let l4 = latin_family(4, LatinKind::L).unwrap();
        let labels = [
            l4.member(0).clone(),
            l4.member(0).clone(),
            l4.member(1).clone(),
        ];
        let g = cycle(4, Mode::Undirected, &labels);
        let r = classify_cycle_latin(&g, LatinKind::L).unwrap();
        assert!([0, 2].contains(&r.assignment_count));
        assert_eq!(
            r.assignment_count,
            solve::brute_force(&g, 1000).unwrap().beta_c_prime
        );

        let bad = cycle(
            3,
            Mode::Undirected,
            &vec![Permutation::identity(3).unwrap(); 3],
        );
        assert!(classify_cycle_latin(&bad, LatinKind::L).is_err());
    }

    #[test]
    fn lprime_examples() {
        let f = latin_family(3, LatinKind::Lprime).unwrap();
        let s1 = f.member(1).clone();
        let g = cycle(3, Mode::Directed, &vec![s1.clone(); 3]);
        let r = directed_lprime_classify(&g, &cfg()).unwrap();
        assert_eq!(
            (r.verdict, r.component_counts.clone()),
            (Classification::Good, vec![3])
        );
        let g = cycle(
            3,
            Mode::Directed,
            &[s1.clone(), s1.clone(), f.member(0).clone()],
        );
        assert_eq!(
            directed_lprime_classify(&g, &cfg()).unwrap().verdict,
            Classification::Bad
        );

        let mut tree = LabeledGraph::with_vertex_count(3, Mode::Directed, 4).unwrap();
        tree.add_edge(0, 1, s1.clone()).unwrap();
        tree.add_edge(2, 1, f.member(2).clone()).unwrap();
        tree.add_edge(1, 3, s1.clone()).unwrap();
        assert_eq!(
            directed_lprime_classify(&tree, &cfg()).unwrap().verdict,
            Classification::Good
        );

        let undirected = cycle(3, Mode::Undirected, &vec![s1; 3]);
        assert!(directed_lprime_classify(&undirected, &cfg()).is_err());
    }

    fn k_st(s: usize, t: usize, labels: &[Permutation]) -> LabeledGraph {
        let mut g =
            LabeledGraph::with_vertex_count(labels[0].degree(), Mode::Undirected, s + t).unwrap();
        let mut i = 0;
        for a in 0..s {
            for b in s..s + t {
                g.add_edge(a, b, labels[i].clone()).unwrap();
                i += 1;
            }
        }
        g
    }

    #[test]
    fn bad_witness_examples() {
        let l3 = latin_family(3, LatinKind::L).unwrap();
        let p0 = l3.member(0).clone();
        let p1 = l3.member(1).clone();
        let good = cycle(3, Mode::Undirected, &vec![p0.clone(); 6]);
        assert!(bipartite_bad_witness(&good, &cfg()).unwrap().is_none());

        let k22 = k_st(2, 2, &[p0.clone(), p0.clone(), p0.clone(), p1.clone()]);
        let w = bipartite_bad_witness(&k22, &cfg()).unwrap().unwrap();
        assert_eq!(w.vertices.len(), 4);
        assert_eq!(w.pi_c.fixed_point_count(), 0);

        let k33 = k_st(3, 3, &vec![p0.clone(); 9]);
        assert!(bipartite_bad_witness(&k33, &cfg()).unwrap().is_none());
        assert_eq!(solve::solve(&k33, &cfg()).unwrap().beta_c_prime, 3);

        let c3 = cycle(3, Mode::Undirected, &vec![p1; 3]);
        assert!(bipartite_bad_witness(&c3, &cfg()).is_err());
    }

    #[test]
    fn bad_witness_on_long_cycle_with_pendant_square() {
        // C6 with π_C = π_1 ∘ π_0 repeated: a bad 6-cycle, plus a good 4-cycle hanging off it.
        let l3 = latin_family(3, LatinKind::L).unwrap();
        let (p0, p1) = (l3.member(0).clone(), l3.member(1).clone());
        let mut g = cycle(
            3,
            Mode::Undirected,
            &[
                p0.clone(),
                p0.clone(),
                p0.clone(),
                p0.clone(),
                p0.clone(),
                p1,
            ],
        );
        for _ in 0..2 {
            g.add_vertex(format!("w{}", g.vertex_count()));
        }
        g.add_edge(0, 6, p0.clone()).unwrap();
        g.add_edge(6, 7, p0.clone()).unwrap();
        g.add_edge(7, 1, p0).unwrap();
        let w = bipartite_bad_witness(&g, &cfg()).unwrap().unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn chordless_enumeration() {
        let id = Permutation::identity(2).unwrap();
        let mut k4 = LabeledGraph::with_vertex_count(2, Mode::Undirected, 4).unwrap();
        for (a, b) in complete(4) {
            k4.add_edge(a, b, id.clone()).unwrap();
        }
        let cycles = chordless_cycles(&k4, 6, 1000).unwrap();
        assert_eq!(cycles.len(), 4);
        assert!(cycles.iter().all(|c| c.len() == 3));
        let c6 = cycle(2, Mode::Undirected, &vec![id; 6]);
        assert_eq!(
            chordless_cycles(&c6, 8, 1000).unwrap(),
            vec![vec![0, 1, 2, 3, 4, 5]]
        );
        assert!(matches!(
            chordless_cycles(&k4, 6, 2),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn latin_bound_examples() {
        let l3 = latin_family(3, LatinKind::L).unwrap();
        let r = nonbipartite_latin_bound(
            &cycle(3, Mode::Undirected, &vec![l3.member(1).clone(); 3]),
            &cfg(),
        )
        .unwrap();
        assert_eq!((r.beta_c_prime, r.bound), (1, 1));
        let l4 = latin_family(4, LatinKind::L).unwrap();
        let r = nonbipartite_latin_bound(
            &cycle(4, Mode::Undirected, &vec![l4.member(0).clone(); 3]),
            &cfg(),
        )
        .unwrap();
        assert_eq!((r.beta_c_prime, r.bound), (2, 2));
        let even = cycle(4, Mode::Undirected, &vec![l4.member(0).clone(); 4]);
        assert!(nonbipartite_latin_bound(&even, &cfg()).is_err());
        assert_eq!(latin_component_counts(&even, &cfg()).unwrap(), vec![4]);
    }
}
