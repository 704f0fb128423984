use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use tree_core::{ball, ball_edge, ball_vertex, complete_subtrees, q_set, Subtree, TruncatedTree, V};

use crate::{FiltrationError, Result, TreeGroup};

/// Subtree families whose fixators form the generic filtrations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    /// All complete finite subtrees.
    SFull,
    /// Balls `B(v,r)` and `B(e,r)` above the threshold set by `q`.
    SQ(usize),
    /// The family built on a complete subtree `p` with an interior vertex,
    /// thickened by `k - 1`.
    SP { p: Vec<V>, k: usize },
    /// Unions of 2-balls around type-0 vertices, grown from 1-balls around
    /// type-1 vertices.
    SV1,
}

impl FamilyKind {
    pub fn name(&self) -> String {
        match self {
            FamilyKind::SFull => "sfull".into(),
            FamilyKind::SQ(q) => format!("sq{q}"),
            FamilyKind::SP { p, k } => format!("sp{p:?}k{k}"),
            FamilyKind::SV1 => "sv1".into(),
        }
    }

    pub fn validate(&self, tree: &TruncatedTree) -> Result<()> {
        if let FamilyKind::SP { p, k } = self {
            if *k == 0 {
                return Err(FiltrationError::Precondition("k must be at least 1".into()));
            }
            let s = Subtree::new(tree, p.iter().copied())?;
            if !s.is_complete(tree) || s.interior(tree).is_empty() {
                return Err(FiltrationError::Precondition("P must be complete with an interior vertex".into()));
            }
        }
        Ok(())
    }
}

fn inside(s: &Subtree, window: &Subtree) -> bool {
    s.is_subset(window)
}

fn max_depth(tree: &TruncatedTree, window: &Subtree) -> usize {
    window.verts().iter().map(|&v| tree.depth[v as usize] as usize).max().unwrap_or(0)
}

fn sq_min_radius(q: usize) -> (usize, usize) {
    // (vertex balls, edge balls)
    if q % 2 == 0 {
        (q / 2 + 1, q / 2)
    } else {
        ((q + 1) / 2, (q + 1) / 2)
    }
}

/// Every ball `B(v,r)` (as (v, r)) or `B(e,r)` of the SQ family inside `window`.
fn sq_members(tree: &TruncatedTree, q: usize, window: &Subtree) -> Vec<Subtree> {
    let (rv, re) = sq_min_radius(q);
    let mut out = Vec::new();
    for &v in window.verts() {
        let mut r = rv;
        while let Ok(b) = ball_vertex(tree, v, r) {
            if !inside(&b, window) {
                break;
            }
            out.push(b);
            r += 1;
        }
    }
    for (u, v) in window.edges(tree) {
        let mut r = re;
        while let Ok(b) = ball_edge(tree, u, v, r) {
            if !inside(&b, window) {
                break;
            }
            out.push(b);
            r += 1;
        }
    }
    out.sort();
    out
}

/// The SV1 family inside `window`, level by level up to `max_level`:
/// level 0 holds `B(u,1)` for type-1 `u`, and level `l+1` holds
/// `R ∪ B(w,2)` for `R` at level `l` and type-0 `w ∈ R` outside `Q_R`.
pub fn sv1_levels(tree: &TruncatedTree, window: &Subtree, max_level: usize) -> Result<Vec<Vec<Subtree>>> {
    let mut levels: Vec<Vec<Subtree>> = Vec::new();
    let mut cur: BTreeSet<Subtree> = BTreeSet::new();
    for &u in window.verts() {
        if tree.vtype[u as usize] == 1 {
            if let Ok(b) = ball_vertex(tree, u, 1) {
                if inside(&b, window) {
                    cur.insert(b);
                }
            }
        }
    }
    let mut seen: BTreeSet<Subtree> = cur.clone();
    while !cur.is_empty() {
        levels.push(cur.iter().cloned().collect());
        if levels.len() > max_level {
            break;
        }
        let mut next = BTreeSet::new();
        for r in &cur {
            let q = q_set(tree, r)?;
            for &w in r.verts() {
                if tree.vtype[w as usize] != 0 || q.contains(&w) {
                    continue;
                }
                let Ok(b) = ball_vertex(tree, w, 2) else { continue };
                if !inside(&b, window) {
                    continue;
                }
                let u = Subtree::from_sorted(r.union(&b));
                if seen.insert(u.clone()) {
                    next.insert(u);
                }
            }
        }
        cur = next;
    }
    levels.truncate(max_level.saturating_add(1));
    Ok(levels)
}

/// Maximal complete proper subtrees of `p`.
pub fn sigma_p(tree: &TruncatedTree, p: &Subtree) -> Result<Vec<Subtree>> {
    let all = complete_subtrees(tree, p, usize::MAX)?;
    let proper: Vec<Subtree> = all.into_iter().filter(|s| s != p).collect();
    Ok(proper.iter().filter(|s| !proper.iter().any(|t| t != *s && s.is_subset(t))).cloned().collect())
}

/// `𝔗_P`: members `R` of `Σ_P` such that no other `R'` has
/// `Fix(R'^(k-1)) ⊆ Fix(R^(k-1))`.
pub fn t_p(g: &TreeGroup, p: &Subtree, k: usize) -> Result<(Vec<Subtree>, Vec<Subtree>)> {
    let tree = g.tree_around(p.verts())?;
    let tree = g.tree_with_radius(max_depth(&tree, p) + k + 1)?;
    let sigma = sigma_p(&tree, p)?;
    let thick: Vec<Subtree> = sigma.iter().map(|r| ball(&tree, r, k - 1)).collect::<std::result::Result<_, _>>()?;
    let mut keep = Vec::new();
    for (i, r) in sigma.iter().enumerate() {
        let mut ok = true;
        for (j, _) in sigma.iter().enumerate() {
            if i != j && g.fix_le(thick[j].verts(), thick[i].verts())? {
                ok = false;
                break;
            }
        }
        if ok {
            keep.push(r.clone());
        }
    }
    Ok((sigma, keep))
}

/// All family subtrees inside `window`.
pub fn members(g: &TreeGroup, family: &FamilyKind, window: &Subtree) -> Result<Vec<Subtree>> {
    let tree = g.tree_around(window.verts())?;
    family.validate(&tree)?;
    match family {
        FamilyKind::SFull => Ok(complete_subtrees(&tree, window, usize::MAX)?),
        FamilyKind::SQ(q) => Ok(sq_members(&tree, *q, window)),
        FamilyKind::SV1 => Ok(sv1_levels(&tree, window, usize::MAX)?.into_iter().flatten().collect()),
        FamilyKind::SP { p, k } => {
            let p = Subtree::from_sorted(p.clone());
            let (_, tp) = t_p(g, &p, *k)?;
            let tree = g.tree();
            let mut out = BTreeSet::new();
            let mut seeds: Vec<Subtree> = tp.iter().map(|r| ball(&tree, r, k - 1)).collect::<std::result::Result<_, _>>()?;
            seeds.push(ball(&tree, &p, k - 1)?);
            for s in seeds {
                out.extend(g.translates_within(&s, window.verts())?);
            }
            Ok(out.into_iter().collect())
        }
    }
}

/// The ball description of `s`: `(centre vertices, radius)` when `s` is a
/// ball around a vertex or an edge.
pub fn as_ball(tree: &TruncatedTree, s: &Subtree) -> Option<(Vec<V>, usize)> {
    let c = crate::jordan_centre(tree, s).verts();
    let far = c.iter().map(|&x| crate::ecc(tree, x, s.verts())).max().unwrap();
    let r = if c.len() == 1 { far } else { far.checked_sub(1)? };
    let b = if c.len() == 1 { ball_vertex(tree, c[0], r).ok()? } else { ball_edge(tree, c[0], c[1], r).ok()? };
    (b == *s).then_some((c, r))
}

/// Depth of `s` from its closed-form description, or `None` when `s` is not
/// in the family.
pub fn stratum_of(g: &TreeGroup, family: &FamilyKind, s: &Subtree) -> Result<Option<usize>> {
    let tree = g.tree_around(s.verts())?;
    Ok(match family {
        FamilyKind::SFull => {
            if s.len() == 1 {
                Some(0)
            } else if !s.is_complete(&tree) {
                None
            } else {
                Some(s.interior(&tree).len() + 1)
            }
        }
        FamilyKind::SQ(q) => {
            let q = *q as i64;
            match as_ball(&tree, s) {
                Some((c, r)) if c.len() == 1 => {
                    let l = 2 * r as i64 - q - 1;
                    (l >= 0).then_some(l as usize)
                }
                Some((_, r)) => {
                    let l = 2 * r as i64 - q;
                    (l >= 0).then_some(l as usize)
                }
                None => None,
            }
        }
        FamilyKind::SV1 => {
            if !s.is_complete(&tree) {
                return Ok(None);
            }
            let q = q_set(&tree, s)?;
            if q.is_empty() {
                let ok = s.len() > 1
                    && s.interior(&tree).len() == 1
                    && tree.vtype[s.interior(&tree)[0] as usize] == 1;
                return Ok(ok.then_some(0));
            }
            // s must be the union of the 2-balls around Q_S, with Q_S convex in V_0
            let mut u: BTreeSet<V> = BTreeSet::new();
            for &v in &q {
                u.extend(ball_vertex(&tree, v, 2)?.verts().iter().copied());
            }
            let hull = tree_core::convex_hull(&tree, &q)?;
            let convex = hull.iter().all(|&v| tree.vtype[v as usize] != 0 || q.contains(&v));
            (u.into_iter().collect::<Vec<_>>() == s.verts() && convex).then_some(q.len())
        }
        FamilyKind::SP { p, k } => {
            let pp = Subtree::from_sorted(p.clone());
            let top = ball(&tree, &pp, k - 1)?;
            if g.translates_within(&top, s.verts())?.iter().any(|t| t == s) {
                Some(1)
            } else {
                let (_, tp) = t_p(g, &pp, *k)?;
                let mut hit = false;
                for r in &tp {
                    let th = ball(&g.tree(), r, k - 1)?;
                    if g.translates_within(&th, s.verts())?.iter().any(|t| t == s) {
                        hit = true;
                        break;
                    }
                }
                hit.then_some(0)
            }
        }
    })
}

/// Family subtrees in `window` at depth `l` by the closed-form descriptions.
pub fn stratum(g: &TreeGroup, family: &FamilyKind, l: usize, window: &Subtree) -> Result<Vec<Subtree>> {
    let tree = g.tree_around(window.verts())?;
    family.validate(&tree)?;
    match family {
        FamilyKind::SFull => {
            let all = complete_subtrees(&tree, window, l.saturating_sub(1))?;
            Ok(all
                .into_iter()
                .filter(|s| match l {
                    0 => s.len() == 1,
                    1 => s.len() == 2,
                    _ => s.len() > 2 && s.interior(&tree).len() == l - 1,
                })
                .collect())
        }
        FamilyKind::SQ(q) => {
            let q = *q;
            let mut out = Vec::new();
            if (q + l) % 2 == 0 {
                let r = (l + q) / 2;
                for (u, v) in window.edges(&tree) {
                    if let Ok(b) = ball_edge(&tree, u, v, r) {
                        if inside(&b, window) {
                            out.push(b);
                        }
                    }
                }
            } else {
                let r = (l + q + 1) / 2;
                for &v in window.verts() {
                    if let Ok(b) = ball_vertex(&tree, v, r) {
                        if inside(&b, window) {
                            out.push(b);
                        }
                    }
                }
            }
            out.sort();
            Ok(out)
        }
        FamilyKind::SV1 => Ok(sv1_levels(&tree, window, l)?.into_iter().nth(l).unwrap_or_default()),
        FamilyKind::SP { .. } => {
            let all = members(g, family, window)?;
            let mut out = Vec::new();
            for s in all {
                if stratum_of(g, family, &s)? == Some(l) {
                    out.push(s);
                }
            }
            Ok(out)
        }
    }
}
