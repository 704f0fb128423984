use std::collections::HashMap;

use perm_group::{Centre, PermGroup};
use serde::{Deserialize, Serialize};
use tree_core::{Subtree, TreeError, V};

use crate::{ecc, jordan_centre, members, stratum_of, FamilyKind, FiltrationError, Result, TreeGroup};

/// Height of `Fix(s)` in the poset of family fixators, by a chain search
/// among family subtrees whose fixators contain `Fix(s)`.
///
/// For unimodular groups a conjugate contained in the original subgroup is
/// equal to it, so chains of conjugacy classes below `Fix(s)` are realized by
/// strictly decreasing chains of fixators of family subtrees inside the
/// fixed set of `Fix(s)`.
pub fn height_of(g: &TreeGroup, family: &FamilyKind, s: &Subtree) -> Result<usize> {
    let cl = g.fixed_set(s.verts())?;
    if cl.open {
        return Err(TreeError::Window { need: cl.radius + 1, have: cl.radius }.into());
    }
    let region = Subtree::from_sorted(cl.verts.clone());
    let ms = members(g, family, &region)?;
    let Some(top) = ms.iter().position(|m| m == s) else {
        return Err(FiltrationError::Precondition("subtree is not in the family".into()));
    };
    let closures: Vec<_> = ms.iter().map(|m| g.closure(m.verts(), region.verts())).collect::<Result<_>>()?;
    // le[i][j]: Fix(m_i) ⊆ Fix(m_j)
    let n = ms.len();
    let le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| closures[i].contains_all(ms[j].verts())).collect()).collect();
    let mut memo = vec![usize::MAX; n];
    fn h(i: usize, le: &[Vec<bool>], memo: &mut [usize]) -> usize {
        if memo[i] != usize::MAX {
            return memo[i];
        }
        let mut best = 0;
        for j in 0..le.len() {
            if le[i][j] && !le[j][i] {
                best = best.max(h(j, le, memo) + 1);
            }
        }
        memo[i] = best;
        best
    }
    Ok(h(top, &le, &mut memo))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairFailure {
    pub t: Vec<V>,
    pub t_prime: Vec<V>,
    /// `Fix(T') ≤ Fix(T)` as computed.
    pub fix_le: bool,
    pub subset: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub family: FamilyKind,
    pub subtrees: usize,
    pub pairs: usize,
    pub failures: usize,
    /// The first few failing pairs.
    pub examples: Vec<PairFailure>,
    pub pass: bool,
    /// No pairs were available.
    pub vacuous: bool,
}

/// `Fix(T') ≤ Fix(T) ⇔ T ⊆ T'` for all family pairs in the window.
pub fn verify_hypothesis(g: &TreeGroup, family: &FamilyKind, window: &Subtree) -> Result<HypothesisReport> {
    let ms = members(g, family, window)?;
    let mut failures = 0;
    let mut examples = Vec::new();
    for tp in &ms {
        let cl = g.closure(tp.verts(), window.verts())?;
        for t in &ms {
            let le = cl.contains_all(t.verts());
            let sub = t.is_subset(tp);
            if le != sub {
                failures += 1;
                if examples.len() < 20 {
                    examples.push(PairFailure { t: t.verts().to_vec(), t_prime: tp.verts().to_vec(), fix_le: le, subset: sub });
                }
            }
        }
    }
    Ok(HypothesisReport {
        family: family.clone(),
        subtrees: ms.len(),
        pairs: ms.len() * ms.len(),
        failures,
        examples,
        pass: failures == 0,
        vacuous: ms.len() < 2,
    })
}

/// A member of the tilde-H family with its fixator, inside the model centred
/// at the centre of the defining subtree of `U`.
#[derive(Clone, Debug)]
pub struct HMember {
    pub subtree: Subtree,
    pub group: PermGroup,
}

#[derive(Clone, Debug)]
pub struct TildeH {
    pub centre: Centre,
    pub radius: usize,
    pub depth: usize,
    pub members: Vec<HMember>,
}

/// Fixator of `x` in the model at `(centre, radius)`, intersected with the
/// stabilizer of the centre when `x` does not contain it.
pub fn fix_in_model(g: &TreeGroup, centre: Centre, radius: usize, x: &[V]) -> Result<PermGroup> {
    let m = g.model(centre, radius)?;
    if centre.verts().iter().all(|c| x.contains(c)) {
        let mut s = x.to_vec();
        s.sort_unstable();
        return Ok(m.fix_group(&s)?);
    }
    let grp = g.model_group(centre, radius)?;
    let loc = m.to_local(x).ok_or(TreeError::Window { need: radius + 1, have: radius })?;
    Ok(grp.fixator(&loc))
}

/// Family subtrees `X` at depth `l-1` with `Fix(s) ⊆ Fix(X)`, for `s` at depth `l`.
pub fn tilde_h_subtrees(g: &TreeGroup, family: &FamilyKind, s: &Subtree) -> Result<(usize, Vec<Subtree>)> {
    let Some(l) = stratum_of(g, family, s)? else {
        return Err(FiltrationError::Precondition("subtree is not in the family".into()));
    };
    if l == 0 {
        return Err(FiltrationError::Precondition("depth must be at least 1".into()));
    }
    let cl = g.fixed_set(s.verts())?;
    if cl.open {
        return Err(TreeError::Window { need: cl.radius + 1, have: cl.radius }.into());
    }
    let region = Subtree::from_sorted(cl.verts);
    let mut out = Vec::new();
    for x in members(g, family, &region)? {
        if stratum_of(g, family, &x)? == Some(l - 1) {
            out.push(x);
        }
    }
    Ok((l, out))
}

pub fn tilde_h(g: &TreeGroup, family: &FamilyKind, s: &Subtree) -> Result<TildeH> {
    let (l, xs) = tilde_h_subtrees(g, family, s)?;
    let tree = g.tree_around(s.verts())?;
    let centre = jordan_centre(&tree, s);
    let radius = centre.verts().iter().map(|&c| ecc(&tree, c, s.verts())).max().unwrap();
    let mut out = Vec::new();
    for x in xs {
        let group = fix_in_model(g, centre, radius, x.verts())?;
        out.push(HMember { subtree: x, group });
    }
    Ok(TildeH { centre, radius, depth: l, members: out })
}

/// Canonical representative of a family subtree at its depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedDescriptor {
    pub family: FamilyKind,
    /// Lexicographically least vertex set among the translates in the window.
    pub subtree: Vec<V>,
    pub depth: usize,
}

pub fn seed(g: &TreeGroup, family: &FamilyKind, s: &Subtree, window: &Subtree) -> Result<SeedDescriptor> {
    let Some(depth) = stratum_of(g, family, s)? else {
        return Err(FiltrationError::Precondition("subtree is not in the family".into()));
    };
    let ts = g.translates_within(s, window.verts())?;
    let best = ts.into_iter().map(|t| t.verts().to_vec()).min().unwrap_or_else(|| s.verts().to_vec());
    Ok(SeedDescriptor { family: family.clone(), subtree: best, depth })
}

/// Closed-form depth and generic height for every family subtree in the
/// window, keyed by subtree.
pub fn height_table(g: &TreeGroup, family: &FamilyKind, window: &Subtree) -> Result<HashMap<Subtree, (Option<usize>, usize)>> {
    let mut out = HashMap::new();
    for s in members(g, family, window)? {
        let l = stratum_of(g, family, &s)?;
        let h = height_of(g, family, &s)?;
        out.insert(s, (l, h));
    }
    Ok(out)
}
