use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{OrientedEdge, Result, TreeError, TruncatedTree, V};

/// A finite subtree, identified with its sorted vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subtree(Vec<V>);

impl Subtree {
    /// Validates that `verts` spans a connected subgraph.
    pub fn new(tree: &TruncatedTree, verts: impl IntoIterator<Item = V>) -> Result<Self> {
        let mut v: Vec<V> = verts.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(TreeError::Empty);
        }
        for &x in &v {
            tree.check(x)?;
        }
        let s = Subtree(v);
        if !s.connected(tree) {
            return Err(TreeError::NotSubtree);
        }
        Ok(s)
    }

    /// Caller guarantees `verts` is sorted, deduplicated and connected.
    pub fn from_sorted(verts: Vec<V>) -> Self {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        Subtree(verts)
    }

    pub fn vertex(v: V) -> Self {
        Subtree(vec![v])
    }

    pub fn verts(&self) -> &[V] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: V) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Subtree) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|&v| other.contains(v))
    }

    fn connected(&self, tree: &TruncatedTree) -> bool {
        // A vertex set of a tree is connected iff it has exactly |S|-1 internal edges.
        let edges: usize = self
            .0
            .iter()
            .map(|&v| tree.neighbors(v).iter().filter(|&&u| u < v && self.contains(u)).count())
            .sum();
        edges + 1 == self.0.len()
    }

    pub fn degree_in(&self, tree: &TruncatedTree, v: V) -> usize {
        tree.neighbors(v).iter().filter(|&&u| self.contains(u)).count()
    }

    pub fn leaves(&self, tree: &TruncatedTree) -> Vec<V> {
        self.0.iter().copied().filter(|&v| self.degree_in(tree, v) == 1).collect()
    }

    pub fn interior(&self, tree: &TruncatedTree) -> Vec<V> {
        self.0.iter().copied().filter(|&v| self.degree_in(tree, v) >= 2).collect()
    }

    /// Every vertex has degree 0, 1 or its full degree in the infinite tree.
    pub fn is_complete(&self, tree: &TruncatedTree) -> bool {
        self.0.iter().all(|&v| {
            let d = self.degree_in(tree, v);
            d <= 1 || d == tree.target_degree(v)
        })
    }

    /// Largest `m` with `ball(S, m)` inside the truncation.
    pub fn margin(&self, tree: &TruncatedTree) -> usize {
        let far = self.0.iter().map(|&v| tree.depth[v as usize] as usize).max().unwrap_or(0);
        tree.radius.saturating_sub(far)
    }

    pub fn edges(&self, tree: &TruncatedTree) -> Vec<(V, V)> {
        let mut out = Vec::new();
        for &v in &self.0 {
            for &u in tree.neighbors(v) {
                if u > v && self.contains(u) {
                    out.push((v, u));
                }
            }
        }
        out
    }

    pub fn union(&self, other: &Subtree) -> Vec<V> {
        let mut v: Vec<V> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn bfs_ball(tree: &TruncatedTree, seeds: &[V], r: usize) -> Vec<V> {
    let mut dist = vec![usize::MAX; tree.len()];
    let mut q = VecDeque::new();
    for &s in seeds {
        dist[s as usize] = 0;
        q.push_back(s);
    }
    let mut out = Vec::new();
    while let Some(v) = q.pop_front() {
        out.push(v);
        let d = dist[v as usize];
        if d == r {
            continue;
        }
        for &u in tree.neighbors(v) {
            if dist[u as usize] == usize::MAX {
                dist[u as usize] = d + 1;
                q.push_back(u);
            }
        }
    }
    out.sort_unstable();
    out
}

/// `S^(r)`: all vertices within distance `r` of `S`.
pub fn ball(tree: &TruncatedTree, s: &Subtree, r: usize) -> Result<Subtree> {
    if s.is_empty() {
        return Err(TreeError::Empty);
    }
    let m = s.margin(tree);
    if m < r {
        return Err(TreeError::Window { need: r, have: m });
    }
    Ok(Subtree(bfs_ball(tree, s.verts(), r)))
}

pub fn ball_vertex(tree: &TruncatedTree, v: V, r: usize) -> Result<Subtree> {
    tree.check(v)?;
    ball(tree, &Subtree::vertex(v), r)
}

pub fn ball_edge(tree: &TruncatedTree, u: V, v: V, r: usize) -> Result<Subtree> {
    if !tree.adjacent(u, v) {
        return Err(TreeError::NotAdjacent(u, v));
    }
    let mut e = vec![u, v];
    e.sort_unstable();
    ball(tree, &Subtree(e), r)
}

/// `T(w,v)`: vertices strictly closer to `w` than to its neighbor `v`.
pub fn half_tree(tree: &TruncatedTree, w: V, v: V) -> Result<Vec<V>> {
    tree.check(w)?;
    tree.check(v)?;
    if !tree.adjacent(w, v) {
        return Err(TreeError::NotAdjacent(w, v));
    }
    let mut seen = vec![false; tree.len()];
    seen[w as usize] = true;
    seen[v as usize] = true;
    let mut stack = vec![w];
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        out.push(x);
        for &u in tree.neighbors(x) {
            if !seen[u as usize] {
                seen[u as usize] = true;
                stack.push(u);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// All complete subtrees inside `window` with at most `max_interior` interior
/// vertices, ordered by (interior count, size, vertex list).
pub fn complete_subtrees(tree: &TruncatedTree, window: &Subtree, max_interior: usize) -> Result<Vec<Subtree>> {
    complete_subtrees_capped(tree, window, max_interior, 1 << 22)
}

pub fn complete_subtrees_capped(
    tree: &TruncatedTree,
    window: &Subtree,
    max_interior: usize,
    cap: usize,
) -> Result<Vec<Subtree>> {
    let mut out: Vec<(usize, Subtree)> = Vec::new();
    for &v in window.verts() {
        out.push((0, Subtree(vec![v])));
    }
    for (u, v) in window.edges(tree) {
        out.push((0, Subtree(vec![u, v])));
    }
    // Interior vertices need their whole star inside the window.
    let eligible: Vec<bool> = (0..tree.len() as V)
        .map(|v| {
            window.contains(v)
                && tree.is_full(v)
                && tree.target_degree(v) >= 2
                && tree.neighbors(v).iter().all(|&u| window.contains(u))
        })
        .collect();
    let mut layer: BTreeSet<Vec<V>> =
        (0..tree.len() as V).filter(|&v| eligible[v as usize]).map(|v| vec![v]).collect();
    let mut size = 1;
    while size <= max_interior && !layer.is_empty() {
        for core in &layer {
            let mut all: Vec<V> = core.clone();
            for &c in core {
                all.extend_from_slice(tree.neighbors(c));
            }
            all.sort_unstable();
            all.dedup();
            out.push((size, Subtree(all)));
            if out.len() > cap {
                return Err(TreeError::Capacity { what: "complete subtree count".into(), limit: cap });
            }
        }
        if size == max_interior {
            break;
        }
        let mut next = BTreeSet::new();
        for core in &layer {
            for &c in core {
                for &u in tree.neighbors(c) {
                    if eligible[u as usize] && core.binary_search(&u).is_err() {
                        let mut n = core.clone();
                        n.push(u);
                        n.sort_unstable();
                        next.insert(n);
                    }
                }
            }
        }
        layer = next;
        size += 1;
    }
    out.sort_by(|a, b| (a.0, a.1.len(), &a.1).cmp(&(b.0, b.1.len(), &b.1)));
    Ok(out.into_iter().map(|x| x.1).collect())
}

fn ball2_inside(tree: &TruncatedTree, s: &Subtree, v: V) -> bool {
    if !tree.is_full(v) {
        return false;
    }
    tree.neighbors(v).iter().all(|&u| {
        s.contains(u) && tree.is_full(u) && tree.neighbors(u).iter().all(|&x| s.contains(x))
    })
}

/// `Q_S`: type-0 vertices whose 2-ball lies in `S`.
pub fn q_set(tree: &TruncatedTree, s: &Subtree) -> Result<Vec<V>> {
    if s.is_empty() {
        return Err(TreeError::Empty);
    }
    Ok(s.verts().iter().copied().filter(|&v| tree.vtype[v as usize] == 0 && ball2_inside(tree, s, v)).collect())
}

/// Union of the geodesics between pairs of `q`.
pub fn convex_hull(tree: &TruncatedTree, q: &[V]) -> Result<Vec<V>> {
    let Some(&first) = q.first() else {
        return Err(TreeError::Empty);
    };
    for &v in q {
        tree.check(v)?;
    }
    // Geodesics to a fixed point of Q already cover every pairwise geodesic.
    let mut set: HashSet<V> = HashSet::new();
    for &v in q {
        set.extend(tree.path(first, v));
    }
    let mut out: Vec<V> = set.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// `∂E_o(S)`: edges of `S` oriented towards a leaf.
pub fn boundary_edges(tree: &TruncatedTree, s: &Subtree) -> Result<Vec<OrientedEdge>> {
    if s.len() < 2 {
        return Err(TreeError::Empty);
    }
    let mut out = Vec::new();
    for leaf in s.leaves(tree) {
        let o = *tree.neighbors(leaf).iter().find(|&&u| s.contains(u)).expect("leaf has a neighbor");
        out.push(OrientedEdge { origin: o, terminus: leaf });
    }
    out.sort();
    Ok(out)
}

/// Vertexwise image of `S` under the permutation `g` (an image array).
pub fn translate(tree: &TruncatedTree, s: &Subtree, g: &[V]) -> Result<Subtree> {
    let mut img = Vec::with_capacity(s.len());
    for &v in s.verts() {
        let x = *g.get(v as usize).ok_or(TreeError::Unknown(v))?;
        if x as usize >= tree.len() {
            return Err(TreeError::Window { need: 1, have: 0 });
        }
        img.push(x);
    }
    Subtree::new(tree, img)
}
