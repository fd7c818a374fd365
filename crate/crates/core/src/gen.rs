//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Mode};
use crate::perm::{LatinFamily, LatinKind, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
    /// Each of the `vertices choose 2` pairs is an edge with probability `p`.
    Gnp {
        vertices: usize,
        p: f64,
    },
    Cycle {
        len: usize,
    },
    /// Vertex `i > 0` hangs off a uniformly chosen earlier vertex.
    Tree {
        vertices: usize,
    },
    CompleteBipartite {
        s: usize,
        t: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum LabelSource {
    UniformInvolutions,
    /// Any permutation; produces a directed graph.
    UniformSn,
    #[value(name = "latin_L")]
    #[serde(rename = "latin_L")]
    LatinL,
    /// Produces a directed graph.
    #[value(name = "latin_Lprime")]
    #[serde(rename = "latin_Lprime")]
    LatinLprime,
    /// Every label is `(0 1)`.
    AllNeg,
}

impl LabelSource {
    pub fn mode(self) -> Mode {
        match self {
            LabelSource::UniformSn | LabelSource::LatinLprime => Mode::Directed,
            _ => Mode::Undirected,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub model: Model,
    pub n: usize,
    pub labels: LabelSource,
    pub seed: u64,
}

/// All involutions of `[n]` in lexicographic order of their images.
pub fn involutions(n: usize) -> Vec<Permutation> {
    fn go(image: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = image.iter().position(|&x| x == usize::MAX) else {
            out.push(image.clone());
            return;
        };
        image[i] = i;
        go(image, out);
        for j in i + 1..image.len() {
            if image[j] == usize::MAX {
                image[i] = j;
                image[j] = i;
                go(image, out);
                image[j] = usize::MAX;
            }
        }
        image[i] = usize::MAX;
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; n], &mut out);
    out.sort();
    out.into_iter()
        .map(|im| Permutation::from_image(im).expect("valid involution"))
        .collect()
}

struct Labeler {
    source: LabelSource,
    n: usize,
    pool: Vec<Permutation>,
}

impl Labeler {
    fn new(source: LabelSource, n: usize) -> Result<Self> {
        let pool = match source {
            LabelSource::UniformInvolutions => involutions(n),
            LabelSource::UniformSn => Vec::new(),
            LabelSource::LatinL => LatinFamily::new(n, LatinKind::L)?.members().to_vec(),
            LabelSource::LatinLprime => LatinFamily::new(n, LatinKind::Lprime)?.members().to_vec(),
            LabelSource::AllNeg => vec![Permutation::transposition(n, 0, 1)?],
        };
        Ok(Labeler { source, n, pool })
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Permutation {
        if self.source == LabelSource::UniformSn {
            let mut image: Vec<usize> = (0..self.n).collect();
            image.shuffle(rng);
            Permutation::from_image(image).expect("shuffled identity")
        } else {
            self.pool.choose(rng).expect("non-empty pool").clone()
        }
    }
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::precondition(msg.to_string()));
        if self.n == 0 {
            return bad("n must be positive");
        }
        if self.labels == LabelSource::AllNeg && self.n < 2 {
            return bad("all_neg labels need n >= 2");
        }
        match self.model {
            Model::Gnp { p, .. } if !(0.0..=1.0).contains(&p) => bad("p must lie in [0, 1]"),
            Model::Cycle { len } if len < 3 => bad("cycle length must be at least 3"),
            Model::Tree { vertices: 0 } => bad("tree needs at least one vertex"),
            Model::CompleteBipartite { s, t } if s == 0 || t == 0 => {
                bad("both sides must be non-empty")
            }
            _ => Ok(()),
        }
    }

    /// Builds the instance; identical specs give identical graphs.
    pub fn generate(&self) -> Result<LabeledGraph> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let labeler = Labeler::new(self.labels, self.n)?;
        let mode = self.labels.mode();
        let (count, pairs) = match self.model {
            Model::Gnp { vertices, p } => {
                let mut pairs = Vec::new();
                for a in 0..vertices {
                    for b in a + 1..vertices {
                        if rng.gen_bool(p) {
                            pairs.push((a, b));
                        }
                    }
                }
                (vertices, pairs)
            }
            Model::Cycle { len } => (len, (0..len).map(|i| (i, (i + 1) % len)).collect()),
            Model::Tree { vertices } => {
                let pairs = (1..vertices).map(|i| (rng.gen_range(0..i), i)).collect();
                (vertices, pairs)
            }
            Model::CompleteBipartite { s, t } => {
                let pairs = (0..s)
                    .flat_map(|a| (s..s + t).map(move |b| (a, b)))
                    .collect();
                (s + t, pairs)
            }
        };
        let mut g = LabeledGraph::with_vertex_count(self.n, mode, count)?;
        let flip = mode == Mode::Directed && !matches!(self.model, Model::Cycle { .. });
        for (a, b) in pairs {
            let (from, to) = if flip && rng.gen_bool(0.5) {
                (b, a)
            } else {
                (a, b)
            };
            let label = labeler.draw(&mut rng);
            g.add_edge(from, to, label)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(model: Model, labels: LabelSource, seed: u64) -> GenSpec {
        GenSpec {
            model,
            n: 3,
            labels,
            seed,
        }
    }

    #[test]
    fn involution_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| involutions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 10, 26, 76]);
        assert!(involutions(4).iter().all(Permutation::is_involution));
    }

    #[test]
    fn deterministic_and_valid() {
        let models = [
            Model::Gnp {
                vertices: 6,
                p: 0.5,
            },
            Model::Cycle { len: 4 },
            Model::Tree { vertices: 7 },
            Model::CompleteBipartite { s: 2, t: 3 },
        ];
        let sources = [
            LabelSource::UniformInvolutions,
            LabelSource::UniformSn,
            LabelSource::LatinL,
            LabelSource::LatinLprime,
            LabelSource::AllNeg,
        ];
        for model in models {
            for labels in sources {
                let s = spec(model, labels, 42);
                let a = s.generate().unwrap();
                assert_eq!(a, s.generate().unwrap());
                assert!(a.validate().is_empty(), "{model:?} {labels:?}");
                assert_eq!(a.mode(), labels.mode());
            }
        }
        let t = spec(Model::Tree { vertices: 9 }, LabelSource::UniformSn, 1)
            .generate()
            .unwrap();
        assert!(t.is_forest() && t.underlying_properties().connected);
        let c = spec(Model::Cycle { len: 4 }, LabelSource::LatinL, 0)
            .generate()
            .unwrap();
        let l3 = LatinFamily::new(3, LatinKind::L).unwrap();
        assert!(c.edges().iter().all(|e| l3.contains(&e.label)));
        assert_eq!(c.edge_count(), 4);
    }

    #[test]
    fn seeds_differ() {
        let s = |seed| {
            spec(
                Model::Gnp {
                    vertices: 8,
                    p: 0.5,
                },
                LabelSource::UniformSn,
                seed,
            )
        };
        assert_ne!(s(1).generate().unwrap(), s(2).generate().unwrap());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(spec(Model::Cycle { len: 2 }, LabelSource::LatinL, 0)
            .generate()
            .is_err());
        assert!(spec(
            Model::Gnp {
                vertices: 3,
                p: 1.5
            },
            LabelSource::LatinL,
            0
        )
        .generate()
        .is_err());
        let mut s = spec(Model::Tree { vertices: 3 }, LabelSource::AllNeg, 0);
        s.n = 1;
        assert!(s.generate().is_err());
    }
}
