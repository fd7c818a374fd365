//! JSON instance files.
//!
//! ```json
//! { "n": 3, "mode": "undirected", "vertices": ["a", "b"],
//!   "edges": [{ "from": "a", "to": "b", "perm": "(0 2)" }] }
//! ```
//!
//! `perm` accepts either permutation syntax; [`to_json`] always writes the
//! image-list form, so a saved file reloads and re-saves byte for byte.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Mode};
use crate::perm::Permutation;

/// Version of the on-disk layout produced by [`to_json`].
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub mode: Mode,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub from: String,
    pub to: String,
    pub perm: String,
}

impl InstanceFile {
    pub fn from_graph(g: &LabeledGraph) -> Self {
        Self {
            n: g.n(),
            mode: g.mode(),
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeEntry {
                    from: g.vertex_name(e.from).to_string(),
                    to: g.vertex_name(e.to).to_string(),
                    perm: e.label.to_string(),
                })
                .collect(),
        }
    }

    pub fn into_graph(self) -> Result<LabeledGraph> {
        let mut g = LabeledGraph::new(self.n, self.mode)?;
        for name in self.vertices {
            if g.vertex_index(&name).is_some() {
                return Err(Error::Instance(format!("duplicate vertex {name:?}")));
            }
            g.add_vertex(name);
        }
        for (i, e) in self.edges.iter().enumerate() {
            let label = Permutation::parse(&e.perm, self.n)
                .map_err(|err| Error::Instance(format!("edge {i}: {err}")))?;
            g.add_edge_named(&e.from, &e.to, label)?;
        }
        Ok(g)
    }
}

pub fn from_json(text: &str) -> Result<LabeledGraph> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.into_graph()
}

/// Canonical pretty-printed form with a trailing newline.
pub fn to_json(g: &LabeledGraph) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from_graph(g))
        .expect("instance serialization cannot fail");
    s.push('\n');
    s
}

pub fn load(path: impl AsRef<Path>) -> Result<LabeledGraph> {
    from_json(&fs::read_to_string(path)?)
}

pub fn save(g: &LabeledGraph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json(g))?;
    Ok(())
}
