#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unique_games::equiv::{reverse_edge, switch, SwitchOp};
use unique_games::gen::{GenSpec, LabelSource, Model};
use unique_games::{LabeledGraph, Permutation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum contradictions and number of consistent assignments, by counting
/// over every assignment. Uses only the raw edge list.
pub fn oracle(g: &LabeledGraph) -> (usize, u64) {
    let n = g.n();
    let count = g.vertex_count();
    let edges: Vec<(usize, usize, Vec<usize>)> = g
        .edges()
        .iter()
        .map(|e| (e.from, e.to, e.label.image().to_vec()))
        .collect();
    let mut k = vec![0usize; count];
    let (mut best, mut zero) = (usize::MAX, 0u64);
    loop {
        let bad = edges
            .iter()
            .filter(|(a, b, img)| img[k[*a]] != k[*b])
            .count();
        best = best.min(bad);
        if bad == 0 {
            zero += 1;
        }
        let mut i = 0;
        loop {
            if i == count {
                return (best, zero);
            }
            k[i] += 1;
            if k[i] < n {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// Largest cut over all two-sided vertex partitions.
pub fn max_cut(vertex_count: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << vertex_count)
        .map(|mask| {
            edges
                .iter()
                .filter(|&&(a, b)| (mask >> a & 1) != (mask >> b & 1))
                .count()
        })
        .max()
        .unwrap()
}

pub fn connected(g: &LabeledGraph) -> bool {
    g.vertex_count() > 0 && g.underlying_properties().connected
}

/// A connected gnp instance, redrawn with successive sub-seeds until connected.
pub fn connected_gnp(seed: u64, vertices: usize, n: usize, labels: LabelSource) -> LabeledGraph {
    (0..)
        .map(|i| {
            GenSpec {
                model: Model::Gnp { vertices, p: 0.6 },
                n,
                labels,
                seed: seed * 1_000 + i,
            }
            .generate()
            .unwrap()
        })
        .find(connected)
        .unwrap()
}

/// Arbitrary labels: involutions on an undirected graph or any permutation on
/// a directed one, chosen by seed.
pub fn arbitrary_source(seed: u64) -> LabelSource {
    if seed % 2 == 0 {
        LabelSource::UniformInvolutions
    } else {
        LabelSource::UniformSn
    }
}

/// `g` with its vertices listed in a shuffled order.
pub fn shuffle_vertices(g: &LabeledGraph, rng: &mut impl Rng) -> LabeledGraph {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.shuffle(rng);
    let mut pos = vec![0; order.len()];
    let mut h = LabeledGraph::new(g.n(), g.mode()).unwrap();
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
        h.add_vertex(g.vertex_name(v));
    }
    for e in g.edges() {
        h.add_edge(pos[e.from], pos[e.to], e.label.clone()).unwrap();
    }
    h
}

/// Every tuple of `len` indices below `base`, in lexicographic order.
pub fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn random_perm(n: usize, r: &mut impl Rng) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(r);
    Permutation::from_image(image).unwrap()
}

/// 1 to 5 random switches and edge reversals, then a shuffled vertex order.
pub fn scramble(g: &LabeledGraph, seed: u64) -> LabeledGraph {
    let mut r = rng(seed ^ 0x5eed);
    let mut h = g.clone();
    for _ in 0..r.gen_range(1..=5) {
        if h.edge_count() > 0 && r.gen_bool(0.4) {
            let e = r.gen_range(0..h.edge_count());
            let flipped = reverse_edge(&h, e).unwrap();
            // Reversing one edge of an antiparallel pair would duplicate the other.
            if flipped.validate().iter().all(|v| !v.is_fatal()) {
                h = flipped;
            }
        } else {
            let vertex = r.gen_range(0..h.vertex_count());
            let sigma = random_perm(h.n(), &mut r);
            h = switch(&h, &SwitchOp { vertex, sigma }).unwrap();
        }
    }
    shuffle_vertices(&h, &mut r)
}
