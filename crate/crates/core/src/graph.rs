//! Labeled graphs `(G, K)`: vertices, oriented permutation-labeled edges,
//! vertex assignments and contradiction counting.
//!
//! Every edge is stored as an ordered pair with the constraint
//! `label(k(from)) == k(to)`. Walking an edge backwards uses the inverse
//! label, so undirected and directed instances share one representation.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Undirected,
    Directed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: Permutation,
}

impl Edge {
    pub fn new(from: usize, to: usize, label: Permutation) -> Self {
        Self { from, to, label }
    }

    /// The endpoint opposite `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.from == v {
            self.to
        } else {
            self.from
        }
    }

    /// The permutation carrying a value at `v` to the opposite endpoint.
    pub fn label_from(&self, v: usize) -> Permutation {
        if self.from == v {
            self.label.clone()
        } else {
            self.label.inverse()
        }
    }

    /// Image of `value` when crossing the edge starting at `v`.
    #[inline]
    pub fn carry(&self, v: usize, value: usize) -> usize {
        if self.from == v {
            self.label.apply(value)
        } else {
            self.label.image().iter().position(|&y| y == value).unwrap()
        }
    }

    #[inline]
    pub fn is_satisfied(&self, values: &[usize]) -> bool {
        self.label.apply(values[self.from]) == values[self.to]
    }

    pub fn reversed(&self) -> Edge {
        Edge {
            from: self.to,
            to: self.from,
            label: self.label.inverse(),
        }
    }
}

/// A total map from vertex index to a value in `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexAssignment(pub Vec<usize>);

impl VertexAssignment {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn constant(len: usize, value: usize) -> Self {
        Self(vec![value; len])
    }

    /// Vertex name to value, for reports.
    pub fn named(&self, g: &LabeledGraph) -> BTreeMap<String, usize> {
        g.vertices()
            .iter()
            .cloned()
            .zip(self.0.iter().copied())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    SelfLoop {
        edge: usize,
        vertex: String,
    },
    DuplicateEdge {
        edge: usize,
        first: usize,
    },
    LabelDegree {
        edge: usize,
        degree: usize,
        expected: usize,
    },
    NonInvolution {
        edge: usize,
    },
    DuplicateVertex {
        name: String,
    },
}

impl Violation {
    /// Non-involution labels in undirected mode are flagged but allowed.
    pub fn is_fatal(&self) -> bool {
        !matches!(self, Violation::NonInvolution { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop { edge, vertex } => {
                write!(f, "self-loop at {vertex} (edge {edge})")
            }
            Violation::DuplicateEdge { edge, first } => {
                write!(f, "edge {edge} duplicates edge {first}")
            }
            Violation::LabelDegree {
                edge,
                degree,
                expected,
            } => write!(
                f,
                "edge {edge} label has degree {degree}, expected {expected}"
            ),
            Violation::NonInvolution { edge } => {
                write!(f, "non-involution label on undirected edge {edge}")
            }
            Violation::DuplicateVertex { name } => write!(f, "duplicate vertex name {name:?}"),
        }
    }
}

/// The classical value `1 - beta_c / |E|`, kept as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameValue {
    pub beta_c: usize,
    pub edge_count: usize,
    pub omega: Ratio<u64>,
}

/// Facts about the unlabeled underlying graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderlyingProperties {
    pub connected: bool,
    pub bipartite: bool,
    /// Two colour classes; the first vertex of every component is in the first class.
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    pub components: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    mode: Mode,
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(n: usize, mode: Mode) -> Result<Self> {
        if n == 0 {
            return Err(crate::perm::PermError::ZeroDegree.into());
        }
        Ok(Self {
            n,
            mode,
            vertices: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
        })
    }

    /// A graph on vertices named `v0, v1, ..`.
    pub fn with_vertex_count(n: usize, mode: Mode, count: usize) -> Result<Self> {
        let mut g = Self::new(n, mode)?;
        for i in 0..count {
            g.add_vertex(format!("v{i}"));
        }
        Ok(g)
    }

    /// Adds a vertex and returns its index. A repeated name is kept (and
    /// reported by [`validate`](Self::validate)); lookups resolve to the first.
    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        let idx = self.vertices.len();
        self.index.entry(name.clone()).or_insert(idx);
        self.vertices.push(name);
        idx
    }

    pub fn add_edge(&mut self, from: usize, to: usize, label: Permutation) -> Result<usize> {
        for v in [from, to] {
            if v >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        self.edges.push(Edge { from, to, label });
        Ok(self.edges.len() - 1)
    }

    pub fn add_edge_named(&mut self, from: &str, to: &str, label: Permutation) -> Result<usize> {
        let f = self.require_vertex(from)?;
        let t = self.require_vertex(to)?;
        self.add_edge(f, t, label)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Result<&Edge> {
        self.edges.get(idx).ok_or(Error::UnknownEdge {
            index: idx,
            count: self.edges.len(),
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Rebuilds with the same vertices, mode and degree but a new edge list.
    pub(crate) fn with_edges(&self, edges: Vec<Edge>) -> Self {
        Self {
            n: self.n,
            mode: self.mode,
            vertices: self.vertices.clone(),
            index: self.index.clone(),
            edges,
        }
    }

    pub(crate) fn from_parts(
        n: usize,
        mode: Mode,
        vertices: Vec<String>,
        edges: Vec<Edge>,
    ) -> Self {
        let mut index = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            index.entry(name.clone()).or_insert(i);
        }
        Self {
            n,
            mode,
            vertices,
            index,
            edges,
        }
    }

    /// For each vertex, the incident `(edge index, other endpoint)` pairs in edge order.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.from].push((i, e.to));
            if e.to != e.from {
                inc[e.to].push((i, e.from));
            }
        }
        inc
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.from == v) + usize::from(e.to == v))
            .sum()
    }

    /// One entry per violated invariant; empty iff the instance is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen_names = HashMap::new();
        for name in &self.vertices {
            if seen_names.insert(name.as_str(), ()).is_some() {
                out.push(Violation::DuplicateVertex { name: name.clone() });
            }
        }
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.from == e.to {
                out.push(Violation::SelfLoop {
                    edge: i,
                    vertex: self.vertices[e.from].clone(),
                });
            }
            let key = match self.mode {
                Mode::Directed => (e.from, e.to),
                Mode::Undirected => (e.from.min(e.to), e.from.max(e.to)),
            };
            if let Some(&first) = pairs.get(&key) {
                out.push(Violation::DuplicateEdge { edge: i, first });
            } else {
                pairs.insert(key, i);
            }
            if e.label.degree() != self.n {
                out.push(Violation::LabelDegree {
                    edge: i,
                    degree: e.label.degree(),
                    expected: self.n,
                });
            } else if self.mode == Mode::Undirected && !e.label.is_involution() {
                out.push(Violation::NonInvolution { edge: i });
            }
        }
        out
    }

    /// Fails on any fatal violation.
    pub fn ensure_valid(&self) -> Result<()> {
        let fatal: Vec<Violation> = self
            .validate()
            .into_iter()
            .filter(Violation::is_fatal)
            .collect();
        if fatal.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(fatal))
        }
    }

    pub fn check_assignment(&self, k: &VertexAssignment) -> Result<()> {
        if k.0.len() != self.vertices.len() {
            return Err(Error::InvalidAssignment(format!(
                "{} values for {} vertices",
                k.0.len(),
                self.vertices.len()
            )));
        }
        if let Some((v, &x)) = k.0.iter().enumerate().find(|(_, &x)| x >= self.n) {
            return Err(Error::InvalidAssignment(format!(
                "value {x} at {} out of range for n = {}",
                self.vertices[v], self.n
            )));
        }
        Ok(())
    }

    /// Indices of the edges whose constraint fails under `k`, ascending.
    pub fn contradictions(&self, k: &VertexAssignment) -> Result<Vec<usize>> {
        self.check_assignment(k)?;
        Ok(self.contradictions_of(&k.0))
    }

    pub(crate) fn contradictions_of(&self, values: &[usize]) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_satisfied(values))
            .map(|(i, _)| i)
            .collect()
    }

    pub(crate) fn count_contradictions(&self, values: &[usize]) -> usize {
        self.edges
            .iter()
            .filter(|e| !e.is_satisfied(values))
            .count()
    }

    pub fn is_consistent(&self, k: &VertexAssignment) -> Result<bool> {
        self.check_assignment(k)?;
        Ok(self.edges.iter().all(|e| e.is_satisfied(&k.0)))
    }

    pub fn game_value(&self, beta_c: usize) -> Result<GameValue> {
        let m = self.edges.len();
        if m == 0 {
            return Err(Error::precondition("game value undefined without edges"));
        }
        if beta_c > m {
            return Err(Error::precondition(format!(
                "beta_c = {beta_c} exceeds edge count {m}"
            )));
        }
        Ok(GameValue {
            beta_c,
            edge_count: m,
            omega: Ratio::new((m - beta_c) as u64, m as u64),
        })
    }

    pub fn underlying_properties(&self) -> UnderlyingProperties {
        let inc = self.incidence();
        let count = self.vertices.len();
        let mut colour: Vec<Option<bool>> = vec![None; count];
        let mut components = Vec::new();
        let mut bipartite = true;
        for start in 0..count {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &(_, w) in &inc[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            comp.push(w);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => bipartite = false,
                        Some(_) => {}
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        let bipartition = bipartite.then(|| {
            let (a, b): (Vec<usize>, Vec<usize>) =
                (0..count).partition(|&v| colour[v] == Some(false));
            (a, b)
        });
        UnderlyingProperties {
            connected: components.len() <= 1,
            bipartite,
            bipartition,
            components,
        }
    }

    /// Edge count minus vertex count plus component count.
    pub fn cycle_rank(&self) -> usize {
        let comps = self.underlying_properties().components.len();
        self.edges.len() + comps - self.vertices.len()
    }

    pub fn is_forest(&self) -> bool {
        self.cycle_rank() == 0
    }
}
