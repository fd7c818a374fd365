//! Switching, edge reversal and equivalence of labeled graphs.
//!
//! Two labeled graphs are equivalent when one becomes the other through an
//! isomorphism of underlying graphs, reversals (`u -> v` labelled `p` becomes
//! `v -> u` labelled `p^-1`) and switches `s(v, sigma)`, which replace the label
//! `p` of every edge entering `v` by `sigma . p` and of every edge leaving `v`
//! by `p . sigma^-1`.
//!
//! [`are_equivalent`] searches underlying isomorphisms `f` in lexicographic
//! order. Once `f` and the switch at a component root are fixed, the switch at
//! every other vertex is forced along a spanning tree, so each `f` costs at
//! most `n!` propagations per component.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, VertexAssignment};
use crate::lift::{build_lift, LiftVertex};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchOp {
    pub vertex: usize,
    pub sigma: Permutation,
}

pub fn switch(g: &LabeledGraph, op: &SwitchOp) -> Result<LabeledGraph> {
    if op.vertex >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", op.vertex)));
    }
    if op.sigma.degree() != g.n() {
        return Err(crate::perm::PermError::DegreeMismatch {
            left: op.sigma.degree(),
            right: g.n(),
        }
        .into());
    }
    let inv = op.sigma.inverse();
    let mut edges = g.edges().to_vec();
    for e in &mut edges {
        if e.to == op.vertex {
            e.label = op.sigma.compose(&e.label)?;
        }
        if e.from == op.vertex {
            e.label = e.label.compose(&inv)?;
        }
    }
    Ok(g.with_edges(edges))
}

pub fn reverse_edge(g: &LabeledGraph, idx: usize) -> Result<LabeledGraph> {
    let mut edges = g.edges().to_vec();
    let e = g.edge(idx)?;
    edges[idx] = e.reversed();
    Ok(g.with_edges(edges))
}

/// Reversals of `g1` edges, then a switch at every vertex, then renaming by
/// `iso` turns `(G1, K1)` into `(G2, K2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    /// `iso[v]` is the `g2` vertex that `g1` vertex `v` maps to.
    pub iso: Vec<usize>,
    /// Switch applied at each `g1` vertex.
    pub sigma: Vec<Permutation>,
    /// `g1` edge indices that are reversed, ascending.
    pub reversed: Vec<usize>,
    /// `edge_map[e]` is the `g2` edge that `g1` edge `e` becomes.
    pub edge_map: Vec<usize>,
}

/// Serialized witness with vertex names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub iso: BTreeMap<String, String>,
    pub sigma: BTreeMap<String, String>,
    pub reversed: Vec<usize>,
}

impl EquivalenceWitness {
    pub fn to_json(&self, g1: &LabeledGraph, g2: &LabeledGraph) -> WitnessJson {
        WitnessJson {
            iso: (0..g1.vertex_count())
                .map(|v| {
                    (
                        g1.vertex_name(v).to_string(),
                        g2.vertex_name(self.iso[v]).to_string(),
                    )
                })
                .collect(),
            sigma: (0..g1.vertex_count())
                .map(|v| (g1.vertex_name(v).to_string(), self.sigma[v].to_string()))
                .collect(),
            reversed: self.reversed.clone(),
        }
    }

    /// Maps an assignment of `g1` to `g2`: `k'(f(v)) = sigma_v(k(v))`.
    pub fn transport(&self, k: &VertexAssignment) -> VertexAssignment {
        let mut values = vec![0; k.0.len()];
        for (v, &x) in k.0.iter().enumerate() {
            values[self.iso[v]] = self.sigma[v].apply(x);
        }
        VertexAssignment(values)
    }
}

/// The graph obtained from `g1` by the witness moves, with `g2`'s vertex
/// names and ordering and edges in `g1` order.
pub fn apply_witness(
    w: &EquivalenceWitness,
    g1: &LabeledGraph,
    g2: &LabeledGraph,
) -> Result<LabeledGraph> {
    let mut g = g1.clone();
    for &e in &w.reversed {
        g = reverse_edge(&g, e)?;
    }
    for (v, sigma) in w.sigma.iter().enumerate() {
        g = switch(
            &g,
            &SwitchOp {
                vertex: v,
                sigma: sigma.clone(),
            },
        )?;
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge::new(w.iso[e.from], w.iso[e.to], e.label.clone()))
        .collect();
    Ok(LabeledGraph::from_parts(
        g2.n(),
        g2.mode(),
        g2.vertices().to_vec(),
        edges,
    ))
}

/// Whether applying `w` to `g1` yields exactly the edge multiset of `g2`.
pub fn verify_witness(w: &EquivalenceWitness, g1: &LabeledGraph, g2: &LabeledGraph) -> bool {
    if g1.n() != g2.n()
        || g1.vertex_count() != g2.vertex_count()
        || g1.edge_count() != g2.edge_count()
    {
        return false;
    }
    let mut seen = vec![false; g2.vertex_count()];
    if w.iso.len() != g1.vertex_count()
        || w.sigma.len() != g1.vertex_count()
        || w.iso
            .iter()
            .any(|&u| u >= seen.len() || std::mem::replace(&mut seen[u], true))
    {
        return false;
    }
    let Ok(h) = apply_witness(w, g1, g2) else {
        return false;
    };
    let key = |e: &Edge| (e.from, e.to, e.label.image().to_vec());
    let mut a: Vec<_> = h.edges().iter().map(key).collect();
    let mut b: Vec<_> = g2.edges().iter().map(key).collect();
    a.sort();
    b.sort();
    a == b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivConfig {
    pub max_vertices: usize,
    /// Largest alphabet for which all `n!` root switches are tried.
    pub max_n: usize,
}

impl Default for EquivConfig {
    fn default() -> Self {
        Self {
            max_vertices: 10,
            max_n: 6,
        }
    }
}

pub fn are_equivalent(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    config: &EquivConfig,
) -> Result<Option<EquivalenceWitness>> {
    g1.ensure_valid()?;
    g2.ensure_valid()?;
    if g1.n() != g2.n() {
        return Err(Error::precondition(format!(
            "alphabet sizes differ: {} vs {}",
            g1.n(),
            g2.n()
        )));
    }
    if g1.vertex_count().max(g2.vertex_count()) > config.max_vertices {
        return Err(Error::Resource {
            what: "equivalence vertex count",
            cap: config.max_vertices as u64,
        });
    }
    if g1.n() > config.max_n {
        return Err(Error::Resource {
            what: "equivalence alphabet size",
            cap: config.max_n as u64,
        });
    }
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let search = Search::new(g1, g2);
    let mut degs1: Vec<usize> = search.deg1.clone();
    let mut degs2: Vec<usize> = search.deg2.clone();
    degs1.sort_unstable();
    degs2.sort_unstable();
    if degs1 != degs2 {
        return Ok(None);
    }
    let mut f = vec![usize::MAX; g1.vertex_count()];
    let mut used = vec![false; g2.vertex_count()];
    Ok(search.extend(0, &mut f, &mut used))
}

struct Search<'a> {
    g1: &'a LabeledGraph,
    g2: &'a LabeledGraph,
    adj1: Vec<Vec<usize>>,
    adj2: Vec<Vec<usize>>,
    deg1: Vec<usize>,
    deg2: Vec<usize>,
    /// `g2` edges grouped by unordered endpoint pair.
    pairs2: HashMap<(usize, usize), Vec<usize>>,
    all_perms: Vec<Permutation>,
}

fn multiplicity(g: &LabeledGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![vec![0; g.vertex_count()]; g.vertex_count()];
    for e in g.edges() {
        adj[e.from][e.to] += 1;
        adj[e.to][e.from] += 1;
    }
    adj
}

fn unordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// All permutations of `[n]` in lexicographic order of their image tables.
pub(crate) fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_image(cur.clone()).expect("valid image"));
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

impl<'a> Search<'a> {
    fn new(g1: &'a LabeledGraph, g2: &'a LabeledGraph) -> Self {
        let adj1 = multiplicity(g1);
        let adj2 = multiplicity(g2);
        let deg1 = adj1.iter().map(|r| r.iter().sum()).collect();
        let deg2 = adj2.iter().map(|r| r.iter().sum()).collect();
        let mut pairs2: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, e) in g2.edges().iter().enumerate() {
            pairs2.entry(unordered(e.from, e.to)).or_default().push(i);
        }
        Self {
            g1,
            g2,
            adj1,
            adj2,
            deg1,
            deg2,
            pairs2,
            all_perms: all_permutations(g1.n()),
        }
    }

    fn extend(
        &self,
        v: usize,
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> Option<EquivalenceWitness> {
        if v == f.len() {
            return self.try_isomorphism(f);
        }
        for w in 0..used.len() {
            if used[w] || self.deg1[v] != self.deg2[w] {
                continue;
            }
            if (0..v).any(|u| self.adj1[v][u] != self.adj2[w][f[u]]) {
                continue;
            }
            f[v] = w;
            used[w] = true;
            if let Some(found) = self.extend(v + 1, f, used) {
                return Some(found);
            }
            used[w] = false;
        }
        f[v] = usize::MAX;
        None
    }

    /// Tries every way of matching parallel (antiparallel) edges under `f`.
    fn try_isomorphism(&self, f: &[usize]) -> Option<EquivalenceWitness> {
        let mut groups1: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, e) in self.g1.edges().iter().enumerate() {
            groups1.entry(unordered(e.from, e.to)).or_default().push(i);
        }
        let groups: Vec<(Vec<usize>, Vec<usize>)> = groups1
            .into_iter()
            .map(|((a, b), es)| (es, self.pairs2[&unordered(f[a], f[b])].clone()))
            .collect();
        let mut edge_map = vec![usize::MAX; self.g1.edge_count()];
        self.match_groups(f, &groups, 0, &mut edge_map)
    }

    fn match_groups(
        &self,
        f: &[usize],
        groups: &[(Vec<usize>, Vec<usize>)],
        at: usize,
        edge_map: &mut Vec<usize>,
    ) -> Option<EquivalenceWitness> {
        if at == groups.len() {
            return self.try_switches(f, edge_map);
        }
        let (ours, theirs) = &groups[at];
        for order in permutations_of(theirs) {
            for (&e1, &e2) in ours.iter().zip(&order) {
                edge_map[e1] = e2;
            }
            if let Some(found) = self.match_groups(f, groups, at + 1, edge_map) {
                return Some(found);
            }
        }
        None
    }

    fn try_switches(&self, f: &[usize], edge_map: &[usize]) -> Option<EquivalenceWitness> {
        let g1 = self.g1;
        let g2 = self.g2;
        // Orient each g1 edge like its image; reversed ones carry the inverse label.
        let mut reversed = Vec::new();
        let aligned: Vec<Edge> = g1
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let target = &g2.edges()[edge_map[i]];
                if f[e.from] == target.from && f[e.to] == target.to {
                    e.clone()
                } else {
                    reversed.push(i);
                    e.reversed()
                }
            })
            .collect();
        let aligned_graph = g1.with_edges(aligned);
        let inc = aligned_graph.incidence();
        let props = aligned_graph.underlying_properties();
        let mut sigma: Vec<Option<Permutation>> = vec![None; g1.vertex_count()];
        for comp in &props.components {
            let order = spanning_order(&inc, comp[0], g1.vertex_count());
            let comp_edges: Vec<usize> = (0..g1.edge_count())
                .filter(|&i| comp.binary_search(&aligned_graph.edges()[i].from).is_ok())
                .collect();
            let mut solved = false;
            for root_sigma in &self.all_perms {
                sigma[comp[0]] = Some(root_sigma.clone());
                for &(v, e, parent) in &order {
                    let edge = &aligned_graph.edges()[e];
                    let target = &g2.edges()[edge_map[e]].label;
                    let sp = sigma[parent].as_ref().unwrap();
                    // target = sigma_to . label . sigma_from^-1
                    let s = if edge.to == v {
                        target
                            .compose(sp)
                            .unwrap()
                            .compose(&edge.label.inverse())
                            .unwrap()
                    } else {
                        target
                            .inverse()
                            .compose(sp)
                            .unwrap()
                            .compose(&edge.label)
                            .unwrap()
                    };
                    sigma[v] = Some(s);
                }
                let ok = comp_edges.iter().all(|&i| {
                    let edge = &aligned_graph.edges()[i];
                    let expected = sigma[edge.to]
                        .as_ref()
                        .unwrap()
                        .compose(&edge.label)
                        .unwrap()
                        .compose(&sigma[edge.from].as_ref().unwrap().inverse())
                        .unwrap();
                    expected == g2.edges()[edge_map[i]].label
                });
                if ok {
                    solved = true;
                    break;
                }
            }
            if !solved {
                return None;
            }
        }
        Some(EquivalenceWitness {
            iso: f.to_vec(),
            sigma: sigma.into_iter().map(Option::unwrap).collect(),
            reversed,
            edge_map: edge_map.to_vec(),
        })
    }
}

/// `(vertex, tree edge, parent)` in BFS order, root excluded.
fn spanning_order(
    inc: &[Vec<(usize, usize)>],
    root: usize,
    count: usize,
) -> Vec<(usize, usize, usize)> {
    let mut seen = vec![false; count];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut out = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &(e, w) in &inc[u] {
            if !seen[w] {
                seen[w] = true;
                out.push((w, e, u));
                queue.push_back(w);
            }
        }
    }
    out
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    all_permutations(items.len())
        .into_iter()
        .map(|p| p.image().iter().map(|&i| items[i]).collect())
        .collect()
}

/// An explicit isomorphism between the lifts of two equivalent graphs that
/// carries fibers onto fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftIsomorphism {
    /// `(g1 lift vertex, g2 lift vertex)` for every `g1` lift vertex, in order.
    pub map: Vec<(LiftVertex, LiftVertex)>,
}

/// Builds `(i, j) -> (f(i), sigma_i(j))` and checks it is an isomorphism of
/// the lifts; a failure means the witness was wrong.
pub fn witness_to_lift_isomorphism(
    w: &EquivalenceWitness,
    g1: &LabeledGraph,
    g2: &LabeledGraph,
) -> Result<LiftIsomorphism> {
    let bad = |what: &str| {
        Error::LawViolation(format!(
            "witness does not induce a lift isomorphism: {what}"
        ))
    };
    if g1.n() != g2.n()
        || w.iso.len() != g1.vertex_count()
        || g1.vertex_count() != g2.vertex_count()
    {
        return Err(bad("shape mismatch"));
    }
    let n = g1.n();
    let lift1 = build_lift(g1);
    let lift2 = build_lift(g2);
    let map: Vec<(LiftVertex, LiftVertex)> = lift1
        .vertices()
        .map(|v| {
            (
                v,
                LiftVertex::new(w.iso[v.base], w.sigma[v.base].apply(v.level)),
            )
        })
        .collect();
    let mut hit = vec![false; lift2.vertex_count()];
    for &(_, img) in &map {
        if img.base >= g2.vertex_count() || std::mem::replace(&mut hit[lift2.index(img)], true) {
            return Err(bad("not a bijection"));
        }
    }
    let image = |v: LiftVertex| map[v.base * n + v.level].1;
    let key = |a: LiftVertex, b: LiftVertex| if a <= b { (a, b) } else { (b, a) };
    let mut mapped: Vec<_> = lift1
        .edges()
        .iter()
        .map(|&(a, b)| key(image(a), image(b)))
        .collect();
    let mut target: Vec<_> = lift2.edges().iter().map(|&(a, b)| key(a, b)).collect();
    mapped.sort();
    target.sort();
    if mapped != target {
        return Err(bad("edges differ"));
    }
    Ok(LiftIsomorphism { map })
}
