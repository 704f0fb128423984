use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use tree_core::{TreeError, TruncatedTree, NONE, V};

use crate::perm::Perm;
use crate::{GroupError, PermGroup, Result};

const LOCAL_ORDER_LIMIT: usize = 40_320;

/// A permutation group on a color alphabet `0..degree`, stored by its elements.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "LocalSpec", try_from = "LocalSpec")]
pub struct LocalGroup {
    pub degree: usize,
    gens: Vec<Vec<u16>>,
    /// Sorted; the identity is element 0.
    elements: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalSpec {
    pub degree: usize,
    pub generators: Vec<Vec<u16>>,
}

impl From<LocalGroup> for LocalSpec {
    fn from(g: LocalGroup) -> Self {
        LocalSpec { degree: g.degree, generators: g.gens }
    }
}

impl TryFrom<LocalSpec> for LocalGroup {
    type Error = GroupError;
    fn try_from(s: LocalSpec) -> Result<Self> {
        LocalGroup::from_gens(s.degree, s.generators)
    }
}

fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    b.iter().map(|&x| a[x as usize]).collect()
}

impl LocalGroup {
    pub fn from_gens(degree: usize, gens: Vec<Vec<u16>>) -> Result<Self> {
        for g in &gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| (x as usize) >= degree || std::mem::replace(&mut seen[x as usize], true)) {
                return Err(GroupError::Inconsistent(format!("local generator {g:?} is not a permutation of {degree} colors")));
            }
        }
        let id: Vec<u16> = (0..degree as u16).collect();
        let mut elements = vec![id];
        let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &gens {
                let y = compose(g, &x);
                if !index.contains_key(&y) {
                    if elements.len() >= LOCAL_ORDER_LIMIT {
                        return Err(GroupError::Capacity { what: "local group order".into(), limit: LOCAL_ORDER_LIMIT });
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
        }
        elements.sort();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        Ok(LocalGroup { degree, gens, elements, index })
    }

    pub fn symmetric(d: usize) -> Self {
        let mut gens = Vec::new();
        if d >= 2 {
            let mut t: Vec<u16> = (0..d as u16).collect();
            t.swap(0, 1);
            gens.push(t);
            let c: Vec<u16> = (0..d as u16).map(|i| (i + 1) % d as u16).collect();
            gens.push(c);
        }
        Self::from_gens(d, gens).expect("symmetric group")
    }

    pub fn alternating(d: usize) -> Self {
        let gens = (2..d as u16)
            .map(|k| {
                let mut t: Vec<u16> = (0..d as u16).collect();
                t[0] = 1;
                t[1] = k;
                t[k as usize] = 0;
                t
            })
            .collect();
        Self::from_gens(d, gens).expect("alternating group")
    }

    pub fn cyclic(d: usize) -> Self {
        let c: Vec<u16> = (0..d as u16).map(|i| (i + 1) % d as u16).collect();
        Self::from_gens(d, vec![c]).expect("cyclic group")
    }

    pub fn trivial(d: usize) -> Self {
        Self::from_gens(d, Vec::new()).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Vec<u16>] {
        &self.gens
    }

    pub fn element(&self, i: u32) -> &[u16] {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Vec<u16>] {
        &self.elements
    }

    pub fn index_of(&self, p: &[u16]) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &[u16]) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        for e in &self.elements {
            seen[e[0] as usize] = true;
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_two_transitive(&self) -> bool {
        if self.degree < 2 {
            return false;
        }
        let mut seen = vec![false; self.degree * self.degree];
        for e in &self.elements {
            seen[e[0] as usize * self.degree + e[1] as usize] = true;
        }
        (0..self.degree).all(|a| (0..self.degree).all(|b| a == b || seen[a * self.degree + b]))
    }

    pub fn orbit(&self, a: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        for e in &self.elements {
            seen[e[a] as usize] = true;
        }
        (0..self.degree).filter(|&i| seen[i]).collect()
    }

    /// Greedy generating set of the subgroup formed by `subset` (which must be closed).
    pub fn small_gens(&self, subset: &[u32]) -> Vec<u32> {
        let mut have = vec![false; self.elements.len()];
        have[0] = true;
        let mut got = vec![0u32];
        let mut gens = Vec::new();
        for &s in subset {
            if have[s as usize] {
                continue;
            }
            gens.push(s);
            // Re-close under all chosen generators.
            let mut head = 0;
            got.clear();
            got.extend((0..self.elements.len() as u32).filter(|&i| have[i as usize]));
            while head < got.len() {
                let x = got[head];
                head += 1;
                for &g in &gens {
                    let y = self.index[&compose(&self.elements[g as usize], &self.elements[x as usize])];
                    if !have[y as usize] {
                        have[y as usize] = true;
                        got.push(y);
                    }
                }
            }
        }
        gens
    }
}

/// Which automorphism group of the tree is modeled.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum GroupSpec {
    FullAut,
    /// Type-preserving automorphisms.
    FullAutPlus,
    /// Automorphisms whose local action at each vertex, read in edge colors,
    /// lies in the group given for the vertex kind.
    UniversalLocal { locals: Vec<LocalGroup> },
}

/// Local groups per class of interchangeable vertex kinds.
#[derive(Clone, Debug)]
pub struct LocalStructure {
    pub class_of_kind: Vec<usize>,
    pub groups: Vec<LocalGroup>,
}

impl LocalStructure {
    pub fn from_spec(spec: &GroupSpec, kind_degrees: &[usize]) -> Result<Self> {
        match spec {
            GroupSpec::FullAut => {
                let mut degs: Vec<usize> = Vec::new();
                let class_of_kind = kind_degrees
                    .iter()
                    .map(|d| match degs.iter().position(|x| x == d) {
                        Some(i) => i,
                        None => {
                            degs.push(*d);
                            degs.len() - 1
                        }
                    })
                    .collect();
                Ok(LocalStructure { class_of_kind, groups: degs.into_iter().map(LocalGroup::symmetric).collect() })
            }
            GroupSpec::FullAutPlus => Ok(LocalStructure {
                class_of_kind: (0..kind_degrees.len()).collect(),
                groups: kind_degrees.iter().map(|&d| LocalGroup::symmetric(d)).collect(),
            }),
            GroupSpec::UniversalLocal { locals } => {
                if locals.len() != kind_degrees.len() {
                    return Err(GroupError::Inconsistent(format!(
                        "{} local groups for {} vertex kinds",
                        locals.len(),
                        kind_degrees.len()
                    )));
                }
                for (k, (g, &d)) in locals.iter().zip(kind_degrees).enumerate() {
                    if g.degree != d {
                        return Err(GroupError::Inconsistent(format!("local group of kind {k} acts on {} colors, degree is {d}", g.degree)));
                    }
                    if !g.is_transitive() && !g.is_trivial() {
                        return Err(GroupError::Inconsistent(format!("local group of kind {k} is neither transitive nor trivial")));
                    }
                }
                Ok(LocalStructure { class_of_kind: (0..kind_degrees.len()).collect(), groups: locals.clone() })
            }
        }
    }

    pub fn group_of_kind(&self, kind: usize) -> &LocalGroup {
        &self.groups[self.class_of_kind[kind]]
    }
}

/// Centre of a ball model: a vertex, or an edge whose endpoints may be swapped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Centre {
    Vertex(V),
    Edge(V, V),
}

impl Centre {
    pub fn verts(&self) -> Vec<V> {
        match *self {
            Centre::Vertex(v) => vec![v],
            Centre::Edge(a, b) => vec![a, b],
        }
    }
}

/// The ball of radius `radius` around a centre, with the group induced on it
/// by the stabilizer of the centre in the modeled tree group.
///
/// The pointwise stabilizer of the centre is computed vertex by vertex: at
/// every internal vertex `v` the allowed local actions `A_v` are the
/// local-group elements fixing the color towards the centre and sending every
/// other branch to a compatible one. It has order `∏ |A_v|`. An edge centre
/// adds the flip of the edge when its two sides are compatible.
#[derive(Clone, Debug)]
pub struct BallModel {
    pub tree: Arc<TruncatedTree>,
    pub ls: Arc<LocalStructure>,
    pub centre: Centre,
    pub radius: usize,
    /// Local index → tree vertex, breadth-first from the centre.
    pub verts: Vec<V>,
    roots: usize,
    local: Vec<u32>,
    toward: Vec<u32>,
    pub ldist: Vec<u32>,
    /// Color (at the vertex) of the edge towards the centre.
    bcol: Vec<u16>,
    /// `children[x][c]`: local index through color `c`, or NONE (towards centre).
    children: Vec<Vec<u32>>,
    allowed: Vec<Vec<u32>>,
    memo: HashMap<(u32, u32), Option<u32>>,
    flip: Option<Perm>,
}

impl BallModel {
    pub fn new(tree: Arc<TruncatedTree>, ls: Arc<LocalStructure>, centre: Centre, radius: usize) -> Result<Self> {
        let roots = centre.verts();
        for &r in &roots {
            tree.check(r).map_err(GroupError::Tree)?;
        }
        if let Centre::Edge(a, b) = centre {
            if !tree.adjacent(a, b) {
                return Err(GroupError::Tree(TreeError::NotAdjacent(a, b)));
            }
        }
        let far = roots.iter().map(|&r| tree.depth[r as usize] as usize).max().unwrap();
        let have = tree.radius.saturating_sub(far);
        if have < radius {
            return Err(GroupError::Tree(TreeError::Window { need: radius, have }));
        }
        for k in 0..tree.kind_degrees.len() {
            if ls.group_of_kind(k).degree != tree.kind_degrees[k] {
                return Err(GroupError::Inconsistent(format!("local group degree mismatch for kind {k}")));
            }
        }
        let mut m = BallModel {
            local: vec![NONE; tree.len()],
            verts: roots.clone(),
            roots: roots.len(),
            toward: vec![NONE; roots.len()],
            ldist: vec![0; roots.len()],
            bcol: match centre {
                Centre::Vertex(_) => vec![u16::MAX],
                Centre::Edge(a, b) => vec![tree.color(a, b).unwrap() as u16, tree.color(b, a).unwrap() as u16],
            },
            children: Vec::new(),
            allowed: Vec::new(),
            memo: HashMap::new(),
            flip: None,
            tree,
            ls,
            centre,
            radius,
        };
        for (i, &r) in roots.iter().enumerate() {
            m.local[r as usize] = i as u32;
        }
        let mut head = 0;
        while head < m.verts.len() {
            let x = m.verts[head];
            let xi = head as u32;
            head += 1;
            let d = m.ldist[xi as usize];
            let row: Vec<V> = m.tree.nbr[x as usize].clone();
            let mut ch = vec![NONE; row.len()];
            if (d as usize) < radius {
                for (c, &y) in row.iter().enumerate() {
                    if y == NONE {
                        return Err(GroupError::Tree(TreeError::Window { need: radius, have: d as usize }));
                    }
                    if m.local[y as usize] != NONE {
                        continue;
                    }
                    let yi = m.verts.len() as u32;
                    m.local[y as usize] = yi;
                    m.verts.push(y);
                    m.toward.push(xi);
                    m.ldist.push(d + 1);
                    m.bcol.push(m.tree.color(y, x).expect("adjacent") as u16);
                    ch[c] = yi;
                }
            }
            m.children.push(ch);
        }
        let n = m.verts.len();
        let mut allowed = vec![Vec::new(); n];
        for (v, slot) in allowed.iter_mut().enumerate() {
            if (m.ldist[v] as usize) < radius {
                *slot = m.compute_allowed(v as u32);
            }
        }
        m.allowed = allowed;
        if m.roots == 2 && m.compat(0, 1).is_some() && m.compat(1, 0).is_some() {
            let mut img: Vec<u32> = (0..n as u32).collect();
            m.iso(0, 1, &mut img);
            m.iso(1, 0, &mut img);
            m.flip = Some(Perm::from_images_unchecked(img));
        }
        Ok(m)
    }

    pub fn flip(&self) -> Option<&Perm> {
        self.flip.as_ref()
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn local_of(&self, v: V) -> Option<u32> {
        self.local.get(v as usize).copied().filter(|&x| x != NONE)
    }

    pub fn contains(&self, v: V) -> bool {
        self.local_of(v).is_some()
    }

    pub fn is_internal(&self, x: u32) -> bool {
        (self.ldist[x as usize] as usize) < self.radius
    }

    fn group(&self, x: u32) -> &LocalGroup {
        self.ls.group_of_kind(self.tree.kind[self.verts[x as usize] as usize] as usize)
    }

    fn class(&self, x: u32) -> usize {
        self.ls.class_of_kind[self.tree.kind[self.verts[x as usize] as usize] as usize]
    }

    fn compat(&mut self, x: u32, y: u32) -> Option<u32> {
        if x == y {
            return Some(0);
        }
        if let Some(&r) = self.memo.get(&(x, y)) {
            return r;
        }
        let mut res = None;
        if self.class(x) == self.class(y) {
            let f = self.group(x).clone();
            let (bx, by) = (self.bcol[x as usize] as usize, self.bcol[y as usize] as usize);
            let leaf = !self.is_internal(x);
            for (ti, t) in f.elements().iter().enumerate() {
                if t[bx] as usize != by {
                    continue;
                }
                if leaf {
                    res = Some(ti as u32);
                    break;
                }
                let mut ok = true;
                for c in 0..f.degree {
                    if c == bx {
                        continue;
                    }
                    let (cx, cy) = (self.children[x as usize][c], self.children[y as usize][t[c] as usize]);
                    if self.compat(cx, cy).is_none() {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    res = Some(ti as u32);
                    break;
                }
            }
        }
        self.memo.insert((x, y), res);
        res
    }

    fn compute_allowed(&mut self, v: u32) -> Vec<u32> {
        let f = self.group(v).clone();
        let b = self.bcol[v as usize];
        let mut out = Vec::new();
        'el: for (ti, t) in f.elements().iter().enumerate() {
            if b != u16::MAX && t[b as usize] != b {
                continue;
            }
            for c in 0..f.degree {
                if c == b as usize {
                    continue;
                }
                let (x, y) = (self.children[v as usize][c], self.children[v as usize][t[c] as usize]);
                if self.compat(x, y).is_none() {
                    continue 'el;
                }
            }
            out.push(ti as u32);
        }
        out
    }

    /// Allowed local actions at internal local vertex `x` (indices into its local group).
    pub fn allowed(&self, x: u32) -> &[u32] {
        &self.allowed[x as usize]
    }

    fn iso(&self, x: u32, y: u32, img: &mut [u32]) {
        img[x as usize] = y;
        if !self.is_internal(x) {
            return;
        }
        let t = self.memo[&(x, y)].expect("compatible pair");
        let f = self.group(x);
        let tau = f.element(t);
        let bx = self.bcol[x as usize] as usize;
        for c in 0..f.degree {
            if c != bx {
                self.iso(self.children[x as usize][c], self.children[y as usize][tau[c] as usize], img);
            }
        }
    }

    /// The element acting by `sigma` at `v`, by the canonical isomorphisms
    /// below `v`, and trivially elsewhere (local coordinates).
    pub fn element(&self, v: u32, sigma: u32) -> Perm {
        let mut img: Vec<u32> = (0..self.len() as u32).collect();
        let f = self.group(v);
        let s = f.element(sigma);
        let b = self.bcol[v as usize];
        for c in 0..f.degree {
            if c == b as usize {
                continue;
            }
            let (x, y) = (self.children[v as usize][c], self.children[v as usize][s[c] as usize]);
            if x != y {
                self.iso(x, y, &mut img);
            }
        }
        Perm::from_images_unchecked(img)
    }

    fn marks(&self, s: &[V]) -> Result<Vec<bool>> {
        let mut in_s = vec![false; self.len()];
        for &v in s {
            let x = self.local_of(v).ok_or(GroupError::Tree(TreeError::Window { need: self.centre_dist(v), have: self.radius }))?;
            in_s[x as usize] = true;
        }
        Ok(in_s)
    }

    /// Allowed local actions at `x` that also fix every color leading into `in_s`.
    fn stab_at(&self, x: u32, in_s: &[bool]) -> Vec<u32> {
        if !in_s[x as usize] {
            return self.allowed[x as usize].clone();
        }
        let f = self.group(x);
        let ch = &self.children[x as usize];
        self.allowed[x as usize]
            .iter()
            .copied()
            .filter(|&t| {
                let e = f.element(t);
                ch.iter().enumerate().all(|(c, &y)| y == NONE || !in_s[y as usize] || e[c] as usize == c)
            })
            .collect()
    }

    pub fn centre_dist(&self, v: V) -> usize {
        self.centre.verts().iter().map(|&r| self.tree.dist(r, v)).min().unwrap()
    }

    /// Checks that `s` is a connected set containing the centre.
    fn anchored(&self, s: &[V]) -> Result<Vec<bool>> {
        let in_s = self.marks(s)?;
        if !in_s[..self.roots].iter().all(|&b| b) {
            return Err(GroupError::Inconsistent("vertex set does not contain the model centre".into()));
        }
        for x in self.roots..self.len() {
            if in_s[x] && !in_s[self.toward[x] as usize] {
                return Err(GroupError::Tree(TreeError::NotSubtree));
            }
        }
        Ok(in_s)
    }

    /// `|Fix(s)|` for a subtree `s` containing the centre.
    pub fn fix_order(&self, s: &[V]) -> Result<BigUint> {
        let in_s = self.anchored(s)?;
        let mut o = BigUint::one();
        for x in 0..self.len() as u32 {
            if self.is_internal(x) {
                o *= BigUint::from(self.stab_at(x, &in_s).len());
            }
        }
        Ok(o)
    }

    /// Order of the stabilizer of the centre (including the flip, if any).
    pub fn order(&self) -> BigUint {
        let o = self.fix_order(&self.centre.verts()).expect("centre");
        if self.flip.is_some() {
            o * 2u32
        } else {
            o
        }
    }

    /// Generators of `Fix(s)` (local coordinates) for a subtree `s` containing the centre.
    pub fn fix_gens(&self, s: &[V]) -> Result<Vec<Perm>> {
        let in_s = self.anchored(s)?;
        let mut out = Vec::new();
        for x in 0..self.len() as u32 {
            if !self.is_internal(x) {
                continue;
            }
            let st = self.stab_at(x, &in_s);
            for g in self.group(x).small_gens(&st) {
                out.push(self.element(x, g));
            }
        }
        Ok(out)
    }

    pub fn fix_group(&self, s: &[V]) -> Result<PermGroup> {
        let gens = self.fix_gens(s)?;
        let order = self.fix_order(s)?;
        PermGroup::with_order(self.len(), gens, &order)
    }

    pub fn group_all(&self) -> Result<PermGroup> {
        let mut gens = self.fix_gens(&self.centre.verts())?;
        gens.extend(self.flip.clone());
        PermGroup::with_order(self.len(), gens, &self.order())
    }

    /// Tree vertices fixed by `Fix(s)` for a subtree `s` containing the centre.
    pub fn closure(&self, s: &[V]) -> Result<Vec<V>> {
        let in_s = self.anchored(s)?;
        let mut fixed = vec![false; self.len()];
        let mut stack: Vec<u32> = (0..self.roots as u32).collect();
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(self.verts[x as usize]);
            if !self.is_internal(x) {
                continue;
            }
            let st = self.stab_at(x, &in_s);
            let f = self.group(x);
            for (c, &y) in self.children[x as usize].iter().enumerate() {
                if y == NONE {
                    continue;
                }
                if st.iter().all(|&t| f.element(t)[c] as usize == c) {
                    fixed[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// `Fix(s) ⊆ Fix(t)`, both given as vertex sets with `s` containing the centre.
    pub fn fix_within(&self, s: &[V], t: &[V]) -> Result<bool> {
        let cl = self.closure(s)?;
        for &v in t {
            if !self.contains(v) {
                return Err(GroupError::Tree(TreeError::Window { need: self.centre_dist(v), have: self.radius }));
            }
        }
        Ok(t.iter().all(|v| cl.binary_search(v).is_ok()))
    }

    /// Local action of a ball permutation at internal local vertex `x`, as a
    /// color map from `x` to its image.
    pub fn local_action(&self, g: &Perm, x: u32) -> Option<Vec<u16>> {
        let gx = g.apply(x);
        let (vx, vgx) = (self.verts[x as usize], self.verts[gx as usize]);
        let row = &self.tree.nbr[vx as usize];
        let mut out = Vec::with_capacity(row.len());
        for &y in row {
            let yi = self.local_of(y)?;
            let gy = self.verts[g.apply(yi) as usize];
            out.push(self.tree.color(vgx, gy)? as u16);
        }
        Some(out)
    }

    /// Whether a permutation of the ball (local coordinates) is induced by the
    /// modeled group: adjacency and centre preserved, local actions in the
    /// prescribed groups, leaf entries compatible.
    pub fn is_member(&self, g: &Perm) -> bool {
        if g.degree() != self.len() || (0..self.roots as u32).any(|r| g.apply(r) as usize >= self.roots) {
            return false;
        }
        for x in self.roots as u32..self.len() as u32 {
            if self.toward[g.apply(x) as usize] != g.apply(self.toward[x as usize]) {
                return false;
            }
        }
        for x in 0..self.len() as u32 {
            let gx = g.apply(x);
            if self.class(x) != self.class(gx) {
                return false;
            }
            let f = self.group(x);
            if self.is_internal(x) {
                match self.local_action(g, x) {
                    Some(a) if f.contains(&a) => {}
                    _ => return false,
                }
            } else {
                let (bx, by) = (self.bcol[x as usize] as usize, self.bcol[gx as usize] as usize);
                if !f.elements().iter().any(|t| t[bx] as usize == by) {
                    return false;
                }
            }
        }
        true
    }

    /// Converts a local-coordinate permutation into tree-vertex images
    /// (vertices outside the ball map to themselves).
    pub fn to_tree_images(&self, g: &Perm) -> Vec<V> {
        let mut img: Vec<V> = (0..self.tree.len() as V).collect();
        for x in 0..self.len() {
            img[self.verts[x] as usize] = self.verts[g.apply(x as u32) as usize];
        }
        img
    }

    pub fn to_local(&self, vs: &[V]) -> Option<Vec<u32>> {
        vs.iter().map(|&v| self.local_of(v)).collect()
    }
}

/// The group induced on the whole truncation by the base stabilizer, on tree ids.
pub fn truncated_group(tree: &TruncatedTree, spec: &GroupSpec) -> Result<PermGroup> {
    let ls = Arc::new(LocalStructure::from_spec(spec, &tree.kind_degrees)?);
    let m = BallModel::new(Arc::new(tree.clone()), ls, Centre::Vertex(tree.base), tree.radius)?;
    debug_assert!(m.verts.iter().enumerate().all(|(i, &v)| i as V == v));
    m.group_all()
}
