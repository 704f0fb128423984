use serde::{Deserialize, Serialize};

use crate::{build_semiregular, Result, TreeError, TruncatedTree, V};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: V,
    #[serde(rename = "type")]
    pub vtype: u8,
}

/// On-disk tree format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeFile {
    pub degrees: Vec<usize>,
    pub radius: usize,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<[V; 2]>,
    pub base: V,
}

impl TreeFile {
    pub fn from_tree(t: &TruncatedTree) -> Self {
        TreeFile {
            degrees: t.kind_degrees.clone(),
            radius: t.radius,
            vertices: (0..t.len() as V).map(|id| VertexRecord { id, vtype: t.vtype[id as usize] }).collect(),
            edges: t.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            base: t.base,
        }
    }

    /// Rebuilds a semi-regular tree and checks it matches the file exactly.
    pub fn to_semiregular(&self) -> Result<TruncatedTree> {
        let [d0, d1] = self.degrees[..] else {
            return Err(TreeError::Input("semi-regular file needs two degrees".into()));
        };
        let t = build_semiregular(d0, d1, self.radius)?;
        if &TreeFile::from_tree(&t) != self {
            return Err(TreeError::Input("tree file does not match its declared parameters".into()));
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree file serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| TreeError::Input(e.to_string()))
    }
}
