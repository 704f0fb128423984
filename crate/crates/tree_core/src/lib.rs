//! Finite truncations of locally finite bicolored trees and the subtree
//! combinatorics used by the filtration checks.
//!
//! A tree is grown breadth-first from a base vertex by a [`TreeRule`], which
//! fixes the kind, degree and edge coloring of every vertex. Ids follow the
//! breadth-first order, so a tree of radius `R` is an id-prefix of the tree of
//! radius `R + 1` grown by the same rule.

mod io;
mod subtree;

pub use io::{TreeFile, VertexRecord};
pub use subtree::*;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type V = u32;

/// Marks a missing neighbor (beyond the truncation).
pub const NONE: V = V::MAX;

pub const DEFAULT_MAX_VERTICES: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("window error: need margin {need}, have {have}")]
    Window { need: usize, have: usize },
    #[error("capacity error: {what} exceeds {limit}")]
    Capacity { what: String, limit: usize },
    #[error("empty subtree")]
    Empty,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(V, V),
    #[error("vertex set is not a subtree")]
    NotSubtree,
    #[error("vertex {0} is not in the tree")]
    Unknown(V),
    #[error("bad input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, TreeError>;

/// What a new vertex looks like when reached through `color` of its parent.
#[derive(Clone, Debug)]
pub struct Child {
    pub kind: usize,
    /// Color of the parent edge as seen from the child.
    pub entry: usize,
    pub state: Vec<u8>,
}

/// Generating rule of an infinite colored tree.
///
/// Every vertex has a kind; a vertex of kind `k` has `degree(k)` incident
/// edges colored bijectively by `0..degree(k)` at its own end.
pub trait TreeRule {
    fn kinds(&self) -> usize;
    fn degree(&self, kind: usize) -> usize;
    fn vtype(&self, kind: usize) -> u8;
    fn root_state(&self, kind: usize) -> Vec<u8>;
    fn child(&self, kind: usize, state: &[u8], color: usize) -> Child;
}

/// The `(d0, d1)`-semi-regular tree. Kinds are the two types; the parent
/// edge of every non-base vertex carries color 0 at the child's end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiRegular {
    pub d: [usize; 2],
}

impl TreeRule for SemiRegular {
    fn kinds(&self) -> usize {
        2
    }
    fn degree(&self, kind: usize) -> usize {
        self.d[kind]
    }
    fn vtype(&self, kind: usize) -> u8 {
        kind as u8
    }
    fn root_state(&self, _kind: usize) -> Vec<u8> {
        Vec::new()
    }
    fn child(&self, kind: usize, _state: &[u8], _color: usize) -> Child {
        Child { kind: 1 - kind, entry: 0, state: Vec::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrientedEdge {
    pub origin: V,
    pub terminus: V,
}

impl OrientedEdge {
    pub fn reversed(self) -> Self {
        OrientedEdge { origin: self.terminus, terminus: self.origin }
    }
}

/// A ball of radius `radius` around `base` in a rule-generated tree.
#[derive(Clone, Debug)]
pub struct TruncatedTree {
    pub radius: usize,
    pub base: V,
    pub kind_degrees: Vec<usize>,
    pub vtype: Vec<u8>,
    pub kind: Vec<u16>,
    pub depth: Vec<u32>,
    pub parent: Vec<V>,
    /// Color at `v` of the edge towards the parent (`u16::MAX` at the base).
    pub entry: Vec<u16>,
    /// `nbr[v][c]` is the neighbor through color `c`, or [`NONE`].
    pub nbr: Vec<Vec<V>>,
    pub state: Vec<Vec<u8>>,
    adj: Vec<Vec<V>>,
}

impl TruncatedTree {
    pub fn grow(rule: &dyn TreeRule, root_kind: usize, radius: usize, cap: usize) -> Result<Self> {
        let mut t = TruncatedTree {
            radius,
            base: 0,
            kind_degrees: (0..rule.kinds()).map(|k| rule.degree(k)).collect(),
            vtype: vec![rule.vtype(root_kind)],
            kind: vec![root_kind as u16],
            depth: vec![0],
            parent: vec![NONE],
            entry: vec![u16::MAX],
            nbr: vec![vec![NONE; rule.degree(root_kind)]],
            state: vec![rule.root_state(root_kind)],
            adj: Vec::new(),
        };
        let mut head = 0usize;
        while head < t.kind.len() {
            let v = head as V;
            head += 1;
            if t.depth[v as usize] as usize >= radius {
                continue;
            }
            let k = t.kind[v as usize] as usize;
            for c in 0..rule.degree(k) {
                if t.nbr[v as usize][c] != NONE {
                    continue;
                }
                if t.kind.len() >= cap {
                    return Err(TreeError::Capacity { what: "vertex count".into(), limit: cap });
                }
                let ch = rule.child(k, &t.state[v as usize], c);
                let id = t.kind.len() as V;
                let mut row = vec![NONE; rule.degree(ch.kind)];
                row[ch.entry] = v;
                t.nbr.push(row);
                t.nbr[v as usize][c] = id;
                t.vtype.push(rule.vtype(ch.kind));
                t.kind.push(ch.kind as u16);
                t.depth.push(t.depth[v as usize] + 1);
                t.parent.push(v);
                t.entry.push(ch.entry as u16);
                t.state.push(ch.state);
            }
        }
        t.adj = t
            .nbr
            .iter()
            .map(|row| {
                let mut a: Vec<V> = row.iter().copied().filter(|&x| x != NONE).collect();
                a.sort_unstable();
                a
            })
            .collect();
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.kind.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kind.is_empty()
    }

    pub fn neighbors(&self, v: V) -> &[V] {
        &self.adj[v as usize]
    }

    /// Degree of `v` in the infinite tree.
    pub fn target_degree(&self, v: V) -> usize {
        self.nbr[v as usize].len()
    }

    pub fn is_full(&self, v: V) -> bool {
        self.adj[v as usize].len() == self.nbr[v as usize].len()
    }

    pub fn edges(&self) -> Vec<(V, V)> {
        (1..self.len() as V).map(|v| (self.parent[v as usize], v)).collect()
    }

    pub fn adjacent(&self, u: V, v: V) -> bool {
        self.parent[u as usize] == v || self.parent[v as usize] == u
    }

    /// Color at `u` of the edge `{u, v}`.
    pub fn color(&self, u: V, v: V) -> Option<usize> {
        self.nbr[u as usize].iter().position(|&x| x == v)
    }

    pub fn dist(&self, mut u: V, mut v: V) -> usize {
        let mut d = 0;
        while self.depth[u as usize] > self.depth[v as usize] {
            u = self.parent[u as usize];
            d += 1;
        }
        while self.depth[v as usize] > self.depth[u as usize] {
            v = self.parent[v as usize];
            d += 1;
        }
        while u != v {
            u = self.parent[u as usize];
            v = self.parent[v as usize];
            d += 2;
        }
        d
    }

    /// Vertices of the geodesic from `u` to `v`, in order.
    pub fn path(&self, mut u: V, mut v: V) -> Vec<V> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        while self.depth[u as usize] > self.depth[v as usize] {
            left.push(u);
            u = self.parent[u as usize];
        }
        while self.depth[v as usize] > self.depth[u as usize] {
            right.push(v);
            v = self.parent[v as usize];
        }
        while u != v {
            left.push(u);
            right.push(v);
            u = self.parent[u as usize];
            v = self.parent[v as usize];
        }
        left.push(u);
        left.extend(right.into_iter().rev());
        left
    }

    pub fn check(&self, v: V) -> Result<()> {
        if (v as usize) < self.len() {
            Ok(())
        } else {
            Err(TreeError::Unknown(v))
        }
    }
}

pub fn build_semiregular(d0: usize, d1: usize, radius: usize) -> Result<TruncatedTree> {
    build_semiregular_capped(d0, d1, radius, DEFAULT_MAX_VERTICES)
}

pub fn build_semiregular_capped(d0: usize, d1: usize, radius: usize, cap: usize) -> Result<TruncatedTree> {
    if d0 < 2 || d1 < 2 {
        return Err(TreeError::Input(format!("degrees must be at least 2, got ({d0},{d1})")));
    }
    TruncatedTree::grow(&SemiRegular { d: [d0, d1] }, 0, radius, cap)
}
