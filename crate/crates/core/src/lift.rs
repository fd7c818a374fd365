//! The lift graph `KG`: each base vertex `v_i` becomes a fiber of `n` vertices
//! `(i, 0) .. (i, n-1)`, and a base edge `v_i -> v_s` labelled `p` becomes the
//! `n` edges `(i, j) -- (s, p(j))`.
//!
//! For a connected base, lift components with exactly `|V(G)|` vertices are
//! copies of `G` and correspond one-to-one with consistent assignments.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexAssignment};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LiftVertex {
    pub base: usize,
    pub level: usize,
}

impl LiftVertex {
    pub fn new(base: usize, level: usize) -> Self {
        Self { base, level }
    }
}

#[derive(Debug, Clone)]
pub struct LiftGraph<'g> {
    base: &'g LabeledGraph,
    edges: Vec<(LiftVertex, LiftVertex)>,
    origin: Vec<usize>,
}

pub fn build_lift(g: &LabeledGraph) -> LiftGraph<'_> {
    let n = g.n();
    let mut edges = Vec::with_capacity(g.edge_count() * n);
    let mut origin = Vec::with_capacity(g.edge_count() * n);
    for (i, e) in g.edges().iter().enumerate() {
        for j in 0..n {
            edges.push((
                LiftVertex::new(e.from, j),
                LiftVertex::new(e.to, e.label.apply(j)),
            ));
            origin.push(i);
        }
    }
    LiftGraph {
        base: g,
        edges,
        origin,
    }
}

impl<'g> LiftGraph<'g> {
    pub fn base(&self) -> &'g LabeledGraph {
        self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count() * self.n()
    }

    pub fn vertices(&self) -> impl Iterator<Item = LiftVertex> + '_ {
        let n = self.n();
        (0..self.vertex_count()).map(move |x| LiftVertex::new(x / n, x % n))
    }

    pub fn edges(&self) -> &[(LiftVertex, LiftVertex)] {
        &self.edges
    }

    /// Base edge index each lift edge came from.
    pub fn origins(&self) -> &[usize] {
        &self.origin
    }

    pub fn fiber(&self, base: usize) -> Vec<LiftVertex> {
        (0..self.n()).map(|j| LiftVertex::new(base, j)).collect()
    }

    pub fn index(&self, v: LiftVertex) -> usize {
        v.base * self.n() + v.level
    }

    /// Every base edge lifts to a perfect matching between the two fibers, so
    /// each lift vertex has exactly one neighbour per incident base edge.
    pub fn fiber_degree_check(&self) -> bool {
        let n = self.n();
        if self.edges.len() != self.base.edge_count() * n {
            return false;
        }
        let mut from_seen = vec![vec![false; n]; self.base.edge_count()];
        let mut to_seen = vec![vec![false; n]; self.base.edge_count()];
        for (&(a, b), &e) in self.edges.iter().zip(&self.origin) {
            let base = &self.base.edges()[e];
            if a.base != base.from || b.base != base.to || a.level >= n || b.level >= n {
                return false;
            }
            if std::mem::replace(&mut from_seen[e][a.level], true)
                || std::mem::replace(&mut to_seen[e][b.level], true)
            {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Good,
    Bad,
    Ugly,
}

impl Classification {
    pub fn from_count(count: u64, n: usize) -> Self {
        if count == n as u64 {
            Classification::Good
        } else if count == 0 {
            Classification::Bad
        } else {
            Classification::Ugly
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Good => "good",
            Classification::Bad => "bad",
            Classification::Ugly => "ugly",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftComponent {
    /// Sorted by `(base, level)`.
    pub vertices: Vec<LiftVertex>,
    /// Index into [`ComponentSummary::per_base_component`].
    pub base_component: usize,
    /// `(base vertex, number of this component's vertices in its fiber)`.
    pub fiber_counts: Vec<(usize, usize)>,
}

impl LiftComponent {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseComponentSummary {
    pub vertices: Vec<usize>,
    /// Lift components over this base component with as many vertices as it has.
    pub isomorphic_count: usize,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub components: Vec<LiftComponent>,
    /// Lift components with exactly `|V(G)|` vertices.
    pub isomorphic_to_base_count: usize,
    /// Present only for a connected base.
    pub classification: Option<Classification>,
    pub per_base_component: Vec<BaseComponentSummary>,
    /// Whether every component meets all fibers of its base component equally.
    pub fibers_uniform: bool,
}

impl ComponentSummary {
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(LiftComponent::size).collect()
    }
}

pub fn component_analysis(lift: &LiftGraph<'_>) -> ComponentSummary {
    let g = lift.base();
    let n = lift.n();
    let mut uf = UnionFind::new(lift.vertex_count());
    for &(a, b) in lift.edges() {
        uf.union(lift.index(a), lift.index(b));
    }
    let props = g.underlying_properties();
    let mut base_comp_of = vec![0; g.vertex_count()];
    for (c, comp) in props.components.iter().enumerate() {
        for &v in comp {
            base_comp_of[v] = c;
        }
    }
    let mut fibers_uniform = true;
    let components: Vec<LiftComponent> = uf
        .groups()
        .into_iter()
        .map(|group| {
            let vertices: Vec<LiftVertex> = group
                .into_iter()
                .map(|x| LiftVertex::new(x / n, x % n))
                .collect();
            let base_component = base_comp_of[vertices[0].base];
            let mut counts = vec![0usize; g.vertex_count()];
            for v in &vertices {
                counts[v.base] += 1;
            }
            let fiber_counts: Vec<(usize, usize)> = props.components[base_component]
                .iter()
                .map(|&b| (b, counts[b]))
                .collect();
            if fiber_counts.iter().any(|&(_, c)| c != fiber_counts[0].1) {
                fibers_uniform = false;
            }
            LiftComponent {
                vertices,
                base_component,
                fiber_counts,
            }
        })
        .collect();
    let per_base_component: Vec<BaseComponentSummary> = props
        .components
        .iter()
        .enumerate()
        .map(|(c, verts)| {
            let count = components
                .iter()
                .filter(|lc| lc.base_component == c && lc.size() == verts.len())
                .count();
            BaseComponentSummary {
                vertices: verts.clone(),
                isomorphic_count: count,
                classification: Classification::from_count(count as u64, n),
            }
        })
        .collect();
    let isomorphic_to_base_count = components
        .iter()
        .filter(|lc| lc.size() == g.vertex_count())
        .count();
    let classification = (props.connected && g.vertex_count() > 0)
        .then(|| Classification::from_count(isomorphic_to_base_count as u64, n));
    ComponentSummary {
        components,
        isomorphic_to_base_count,
        classification,
        per_base_component,
        fibers_uniform,
    }
}

/// Labels each lift edge with its base edge's permutation and checks that
/// `k'((i, j)) = j` satisfies every one of them.
pub fn lift_self_labeling_check(lift: &LiftGraph<'_>) -> bool {
    let g = lift.base();
    lift.edges()
        .iter()
        .zip(lift.origins())
        .all(|(&(a, b), &e)| g.edges()[e].label.apply(a.level) == b.level)
}

/// One consistent assignment per lift component isomorphic to the (connected)
/// base, read off from the component's vertex in each fiber.
pub fn consistent_assignments_from_components(
    lift: &LiftGraph<'_>,
) -> Result<Vec<VertexAssignment>> {
    let g = lift.base();
    if g.vertex_count() == 0 || !g.underlying_properties().connected {
        return Err(Error::precondition(
            "base graph must be connected and non-empty",
        ));
    }
    let summary = component_analysis(lift);
    let mut out = Vec::new();
    for comp in summary
        .components
        .iter()
        .filter(|c| c.size() == g.vertex_count())
    {
        let mut values = vec![usize::MAX; g.vertex_count()];
        for v in &comp.vertices {
            values[v.base] = v.level;
        }
        let k = VertexAssignment(values);
        // The map v_i -> (i, k(v_i)) must carry every base edge to a lift edge.
        if !g.is_consistent(&k)? {
            return Err(Error::LawViolation(
                "size-|V| lift component is not a copy of the base".into(),
            ));
        }
        out.push(k);
    }
    Ok(out)
}
