use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use perm_group::{BallModel, Centre, GroupSpec, LocalStructure, Perm, PermGroup};
use tree_core::{SemiRegular, Subtree, TreeError, TreeRule, TruncatedTree, NONE, V};

use crate::{FiltrationError, Result};

pub const MAX_VERTICES: usize = 1 << 21;
pub const ORBIT_CAP: usize = 200_000;
pub const WIDEN_STEPS: usize = 4;

/// A closed subgroup of the automorphism group of an infinite tree, given by
/// the rule growing the tree and the local action prescribed at each kind.
///
/// All finite computations run in ball models anchored at a vertex fixed by
/// every group involved; the tree is regrown on demand so that every model
/// fits. Vertex ids never change under regrowth.
pub struct TreeGroup {
    rule: Box<dyn TreeRule + Send + Sync>,
    root_kind: usize,
    pub spec: GroupSpec,
    pub ls: Arc<LocalStructure>,
    tree: Mutex<Arc<TruncatedTree>>,
    models: Mutex<HashMap<(Centre, usize), Arc<BallModel>>>,
    groups: Mutex<HashMap<(Centre, usize), Arc<PermGroup>>>,
}

impl std::fmt::Debug for TreeGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TreeGroup").field("spec", &self.spec).field("radius", &self.tree().radius).finish()
    }
}

/// A vertex map between two balls realized by an element of the group.
#[derive(Clone, Debug)]
pub struct Carry {
    pub map: HashMap<V, V>,
}

impl Carry {
    pub fn image(&self, s: &[V]) -> Option<Vec<V>> {
        let mut out: Vec<V> = s.iter().map(|v| self.map.get(v).copied()).collect::<Option<_>>()?;
        out.sort_unstable();
        Some(out)
    }

    pub fn preimage(&self, s: &[V]) -> Option<Vec<V>> {
        let inv: HashMap<V, V> = self.map.iter().map(|(&a, &b)| (b, a)).collect();
        let mut out: Vec<V> = s.iter().map(|v| inv.get(v).copied()).collect::<Option<_>>()?;
        out.sort_unstable();
        Some(out)
    }
}

/// `Fix(s)`'s fixed vertices inside a ball around an anchor of `s`.
#[derive(Clone, Debug)]
pub struct Closure {
    pub verts: Vec<V>,
    pub radius: usize,
    /// Some fixed vertex lies on the boundary sphere, so the fixed set may
    /// continue beyond the ball.
    pub open: bool,
}

impl Closure {
    pub fn contains_all(&self, t: &[V]) -> bool {
        t.iter().all(|v| self.verts.binary_search(v).is_ok())
    }
}

impl TreeGroup {
    pub fn new(rule: Box<dyn TreeRule + Send + Sync>, root_kind: usize, spec: GroupSpec, radius: usize) -> Result<Self> {
        let tree = TruncatedTree::grow(rule.as_ref(), root_kind, radius, MAX_VERTICES)?;
        let ls = Arc::new(LocalStructure::from_spec(&spec, &tree.kind_degrees)?);
        Ok(TreeGroup {
            rule,
            root_kind,
            spec,
            ls,
            tree: Mutex::new(Arc::new(tree)),
            models: Mutex::new(HashMap::new()),
            groups: Mutex::new(HashMap::new()),
        })
    }

    pub fn semiregular(d0: usize, d1: usize, spec: GroupSpec, radius: usize) -> Result<Self> {
        if d0 < 2 || d1 < 2 {
            return Err(FiltrationError::Precondition(format!("degrees ({d0},{d1}) must be at least 2")));
        }
        Self::new(Box::new(SemiRegular { d: [d0, d1] }), 0, spec, radius)
    }

    pub fn tree(&self) -> Arc<TruncatedTree> {
        self.tree.lock().unwrap().clone()
    }

    /// The tree, regrown if needed to radius at least `r`.
    pub fn tree_with_radius(&self, r: usize) -> Result<Arc<TruncatedTree>> {
        let mut t = self.tree.lock().unwrap();
        if t.radius < r {
            let grown = TruncatedTree::grow(self.rule.as_ref(), self.root_kind, r, MAX_VERTICES)?;
            *t = Arc::new(grown);
        }
        Ok(t.clone())
    }

    /// Tree covering every vertex of `vs` together with its neighbors.
    pub fn tree_around(&self, vs: &[V]) -> Result<Arc<TruncatedTree>> {
        let t = self.tree();
        let mut need = 0;
        for &v in vs {
            if v as usize >= t.len() {
                return Err(TreeError::Unknown(v).into());
            }
            need = need.max(t.depth[v as usize] as usize + 1);
        }
        self.tree_with_radius(need)
    }

    pub fn class_of(&self, tree: &TruncatedTree, v: V) -> usize {
        self.ls.class_of_kind[tree.kind[v as usize] as usize]
    }

    pub fn model(&self, centre: Centre, radius: usize) -> Result<Arc<BallModel>> {
        if let Some(m) = self.models.lock().unwrap().get(&(centre, radius)) {
            return Ok(m.clone());
        }
        let t = self.tree();
        let far = centre.verts().iter().map(|&v| t.depth[v as usize] as usize).max().unwrap();
        let tree = self.tree_with_radius(far + radius)?;
        let m = Arc::new(BallModel::new(tree, self.ls.clone(), centre, radius)?);
        self.models.lock().unwrap().insert((centre, radius), m.clone());
        Ok(m)
    }

    /// The whole model group, cached.
    pub fn model_group(&self, centre: Centre, radius: usize) -> Result<Arc<PermGroup>> {
        if let Some(g) = self.groups.lock().unwrap().get(&(centre, radius)) {
            return Ok(g.clone());
        }
        let g = Arc::new(self.model(centre, radius)?.group_all()?);
        self.groups.lock().unwrap().insert((centre, radius), g.clone());
        Ok(g)
    }

    /// Model centred at `c` whose ball contains every vertex of `cover`.
    pub fn model_covering(&self, c: V, cover: &[V]) -> Result<Arc<BallModel>> {
        let t = self.tree_around(cover)?;
        let r = cover.iter().map(|&x| t.dist(c, x)).max().unwrap_or(0);
        self.model(Centre::Vertex(c), r)
    }

    /// Fixed set of `Fix(s)` inside the ball around `s[0]` covering `cover`.
    pub fn closure(&self, s: &[V], cover: &[V]) -> Result<Closure> {
        let c = *s.first().ok_or(TreeError::Empty)?;
        let mut all = s.to_vec();
        all.extend_from_slice(cover);
        let t = self.tree_around(&all)?;
        let m = self.model(Centre::Vertex(c), ecc(&t, c, &all) + 1)?;
        let verts = m.closure(s)?;
        let open = verts.iter().any(|&v| m.centre_dist(v) == m.radius);
        Ok(Closure { verts, radius: m.radius, open })
    }

    /// Fixed set of `Fix(s)`, widening the ball while the set reaches its
    /// boundary. Still `open` after `WIDEN_STEPS` extra rings.
    pub fn fixed_set(&self, s: &[V]) -> Result<Closure> {
        let c = *s.first().ok_or(TreeError::Empty)?;
        let t = self.tree_around(s)?;
        let r0 = ecc(&t, c, s) + 1;
        let mut cl = Closure { verts: Vec::new(), radius: r0, open: true };
        for r in r0..=r0 + WIDEN_STEPS {
            let m = self.model(Centre::Vertex(c), r)?;
            let verts = m.closure(s)?;
            let open = verts.iter().any(|&v| m.centre_dist(v) == m.radius);
            cl = Closure { verts, radius: r, open };
            if !open {
                break;
            }
        }
        Ok(cl)
    }

    /// `Fix(a) ≤ Fix(b)`, i.e. every vertex of `b` is fixed by `Fix(a)`.
    pub fn fix_le(&self, a: &[V], b: &[V]) -> Result<bool> {
        Ok(self.closure(a, b)?.contains_all(b))
    }

    /// A group element moving `from` to `to`, restricted to the ball of
    /// radius `radius` around `from`. Local actions are chosen greedily,
    /// which is exhaustive for groups defined by local actions.
    pub fn carry(&self, from: V, to: V, radius: usize) -> Result<Option<Carry>> {
        let t0 = self.tree();
        let need = t0.depth[from as usize].max(t0.depth[to as usize]) as usize + radius;
        let t = self.tree_with_radius(need)?;
        if self.class_of(&t, from) != self.class_of(&t, to) {
            return Ok(None);
        }
        let mut map = HashMap::new();
        map.insert(from, to);
        // (x, x', colour at x towards its predecessor, same at x', distance)
        let mut queue = vec![(from, to, usize::MAX, usize::MAX, 0usize)];
        let mut head = 0;
        while head < queue.len() {
            let (x, y, cx, cy, d) = queue[head];
            head += 1;
            if d == radius {
                continue;
            }
            let f = self.ls.group_of_kind(t.kind[x as usize] as usize);
            let sigma: Vec<u16> = if cx == usize::MAX {
                (0..f.degree as u16).collect()
            } else {
                match f.elements().iter().find(|e| e[cx] as usize == cy) {
                    Some(e) => e.clone(),
                    None => return Ok(None),
                }
            };
            for c in 0..f.degree {
                if c == cx {
                    continue;
                }
                let a = t.nbr[x as usize][c];
                let b = t.nbr[y as usize][sigma[c] as usize];
                if a == NONE || b == NONE {
                    return Err(TreeError::Window { need: d + 1, have: d }.into());
                }
                if self.class_of(&t, a) != self.class_of(&t, b) {
                    return Ok(None);
                }
                map.insert(a, b);
                let ca = t.color(a, x).unwrap();
                let cb = t.color(b, y).unwrap();
                queue.push((a, b, ca, cb, d + 1));
            }
        }
        Ok(Some(Carry { map }))
    }

    /// Orbit of the vertex set `s` under `Stab(c)`, for `c ∈ s`.
    pub fn stab_orbit(&self, c: V, s: &[V]) -> Result<Vec<Vec<V>>> {
        let m = self.model_covering(c, s)?;
        let gens = m.fix_gens(&[c])?;
        let start = {
            let mut l = m.to_local(s).expect("covered");
            l.sort_unstable();
            l
        };
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for p in &gens {
                let mut y: Vec<u32> = x.iter().map(|&i| p.apply(i)).collect();
                y.sort_unstable();
                if !seen.contains(&y) {
                    if seen.len() >= ORBIT_CAP {
                        return Err(FiltrationError::Capacity { what: "subtree orbit".into(), limit: ORBIT_CAP });
                    }
                    seen.insert(y.clone());
                    stack.push(y);
                }
            }
        }
        Ok(seen
            .into_iter()
            .map(|l| {
                let mut v: Vec<V> = l.iter().map(|&i| m.verts[i as usize]).collect();
                v.sort_unstable();
                v
            })
            .collect())
    }

    /// All translates `gS` lying inside `region`.
    pub fn translates_within(&self, s: &Subtree, region: &[V]) -> Result<Vec<Subtree>> {
        let tree = self.tree_around(s.verts())?;
        let anchor = jordan_anchor(&tree, s);
        let ecc = s.verts().iter().map(|&x| tree.dist(anchor, x)).max().unwrap();
        let orbit = self.stab_orbit(anchor, s.verts())?;
        let inside: HashSet<V> = region.iter().copied().collect();
        let mut out = BTreeSet::new();
        for &x0 in region {
            let Some(cr) = self.carry(anchor, x0, ecc)? else { continue };
            for o in &orbit {
                let img = cr.image(o).expect("orbit lies in the carried ball");
                if img.iter().all(|v| inside.contains(v)) {
                    out.insert(img);
                }
            }
        }
        Ok(out.into_iter().map(Subtree::from_sorted).collect())
    }

    /// Image of `pts` under a model permutation, as tree vertices.
    pub fn apply_in(&self, m: &BallModel, g: &Perm, pts: &[V]) -> Vec<V> {
        let mut out: Vec<V> = pts.iter().map(|&v| m.verts[g.apply(m.local_of(v).expect("in model")) as usize]).collect();
        out.sort_unstable();
        out
    }
}

/// Centre of a finite subtree: the vertex or edge left after stripping leaves.
pub fn jordan_centre(tree: &TruncatedTree, s: &Subtree) -> Centre {
    let mut cur: Vec<V> = s.verts().to_vec();
    while cur.len() > 2 {
        let sub = Subtree::from_sorted(cur.clone());
        let leaves = sub.leaves(tree);
        cur.retain(|v| !leaves.contains(v));
    }
    if cur.len() == 2 {
        Centre::Edge(cur[0], cur[1])
    } else {
        Centre::Vertex(cur[0])
    }
}

pub fn jordan_anchor(tree: &TruncatedTree, s: &Subtree) -> V {
    match jordan_centre(tree, s) {
        Centre::Vertex(v) => v,
        Centre::Edge(a, _) => a,
    }
}

pub fn ecc(tree: &TruncatedTree, c: V, s: &[V]) -> usize {
    s.iter().map(|&x| tree.dist(c, x)).max().unwrap_or(0)
}

pub fn set_dist(tree: &TruncatedTree, a: &[V], b: &[V]) -> usize {
    let mut best = usize::MAX;
    for &x in a {
        for &y in b {
            best = best.min(tree.dist(x, y));
        }
    }
    best
}
