use num_bigint::BigUint;
use num_traits::One;
use perm_group::{BallModel, Centre, Perm, PermGroup};
use serde::{Deserialize, Serialize};
use tree_core::{ball, boundary_edges, OrientedEdge, Subtree, V};

use crate::{ecc, jordan_anchor, FiltrationError, Result, TreeGroup};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorOrder {
    pub edge: OrientedEdge,
    pub order: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderIdentity {
    pub subtree: Vec<V>,
    pub k: usize,
    pub centre: V,
    pub radius: usize,
    /// Order of the fixator of the thickened subtree.
    pub lhs: String,
    pub factors: Vec<FactorOrder>,
    pub product: String,
    pub holds: bool,
    /// When the identity fails: an element of the fixator outside the
    /// product of the factors, as (vertex, image) pairs over moved vertices.
    pub witness: Option<Vec<(V, V)>>,
}

/// Model vertices strictly closer to `w` than to its neighbour `v`.
fn side(m: &BallModel, w: V, v: V) -> Vec<V> {
    m.verts.iter().copied().filter(|&x| m.tree.dist(w, x) < m.tree.dist(v, x)).collect()
}

fn witness(m: &BallModel, lhs: &PermGroup, factors: Vec<Perm>) -> Option<Vec<(V, V)>> {
    let prod = PermGroup::new(m.len(), factors);
    let g = lhs.gens().iter().find(|g| !prod.contains(g))?;
    Some(g.moved_points().map(|x| (m.verts[x as usize], m.verts[g.apply(x) as usize])).collect())
}

/// The subgroup generated by products `x·y` pairing generators of the
/// fixators of the two half-trees at the edge `(w, v)`. It acts on both
/// sides at once, so no independence property can hold for it.
pub fn coupled_group(m: &BallModel, grp: &PermGroup, w: V, v: V) -> Result<PermGroup> {
    let fa = grp.fixator(&locals(m, &side(m, w, v))?);
    let fb = grp.fixator(&locals(m, &side(m, v, w))?);
    if fa.is_trivial() || fb.is_trivial() {
        return Err(FiltrationError::Precondition("a half-tree fixator is trivial, nothing to couple".into()));
    }
    let gens = fa.gens().iter().zip(fb.gens().iter().cycle()).map(|(x, y)| x.mul(y)).collect();
    Ok(PermGroup::new(m.len(), gens))
}

fn locals(m: &BallModel, vs: &[V]) -> Result<Vec<u32>> {
    let mut l = m.to_local(vs).ok_or_else(|| FiltrationError::Precondition("vertex outside the model".into()))?;
    l.sort_unstable();
    l.dedup();
    Ok(l)
}

/// Product identity for `grp` acting on the model: `|Fix(s^(k-1))|` against
/// the orders of `Fix(T_f) ∩ Fix(s^(k-1))` over the boundary edges `f` of
/// `s`. The factors have pairwise disjoint supports, so equal orders certify
/// that their product is all of the fixator.
pub fn verify_ipk_in(m: &BallModel, grp: &PermGroup, k: usize, s: &Subtree) -> Result<OrderIdentity> {
    if k == 0 {
        return Err(FiltrationError::Precondition("k must be at least 1".into()));
    }
    let tree = &m.tree;
    let thick = ball(tree, s, k - 1)?;
    let a = locals(m, thick.verts())?;
    let fix = grp.fixator(&a);
    let lhs = fix.order().clone();
    let mut factors = Vec::new();
    let mut fgens = Vec::new();
    let mut product = BigUint::one();
    for f in boundary_edges(tree, s)? {
        let mut pts = side(m, f.origin, f.terminus);
        pts.extend_from_slice(thick.verts());
        let ff = grp.fixator(&locals(m, &pts)?);
        let o = ff.order().clone();
        fgens.extend_from_slice(ff.gens());
        product *= &o;
        factors.push(FactorOrder { edge: f, order: o.to_string() });
    }
    let holds = lhs == product;
    Ok(OrderIdentity {
        subtree: s.verts().to_vec(),
        k,
        centre: m.centre.verts()[0],
        radius: m.radius,
        holds,
        lhs: lhs.to_string(),
        factors,
        product: product.to_string(),
        witness: if holds { None } else { witness(m, &fix, fgens) },
    })
}

/// The model used for `IP_k` on `s`: anchored in `s`, one ring beyond the
/// thickened subtree.
pub fn ipk_model(g: &TreeGroup, k: usize, s: &Subtree) -> Result<(Centre, usize)> {
    let tree = g.tree_around(s.verts())?;
    let c = jordan_anchor(&tree, s);
    Ok((Centre::Vertex(c), ecc(&tree, c, s.verts()) + k))
}

pub fn verify_ipk(g: &TreeGroup, k: usize, s: &Subtree) -> Result<OrderIdentity> {
    if s.len() < 2 {
        return Err(FiltrationError::Precondition("subtree needs at least one edge".into()));
    }
    let (c, r) = ipk_model(g, k, s)?;
    let m = g.model(c, r)?;
    if !s.is_complete(&m.tree) {
        return Err(FiltrationError::Precondition("subtree is not complete".into()));
    }
    let grp = g.model_group(c, r)?;
    verify_ipk_in(&m, &grp, k, s)
}

/// `|Fix(B(w,1))| = ∏_v |Fix(T(w,v))|` over the neighbours `v` of `w`.
pub fn verify_ipv1_in(m: &BallModel, grp: &PermGroup, w: V) -> Result<OrderIdentity> {
    let nbrs: Vec<V> = m.tree.neighbors(w).to_vec();
    let mut b = nbrs.clone();
    b.push(w);
    let fix = grp.fixator(&locals(m, &b)?);
    let lhs = fix.order().clone();
    let mut factors = Vec::new();
    let mut fgens = Vec::new();
    let mut product = BigUint::one();
    for v in nbrs {
        let ff = grp.fixator(&locals(m, &side(m, w, v))?);
        let o = ff.order().clone();
        fgens.extend_from_slice(ff.gens());
        product *= &o;
        factors.push(FactorOrder { edge: OrientedEdge { origin: w, terminus: v }, order: o.to_string() });
    }
    Ok(OrderIdentity {
        subtree: {
            b.sort_unstable();
            b
        },
        k: 1,
        centre: m.centre.verts()[0],
        radius: m.radius,
        holds: lhs == product,
        lhs: lhs.to_string(),
        factors,
        product: product.to_string(),
        witness: if lhs == product { None } else { witness(m, &fix, fgens) },
    })
}

pub fn verify_ipv1(g: &TreeGroup, w: V, radius: usize) -> Result<OrderIdentity> {
    let c = Centre::Vertex(w);
    let r = radius.max(2);
    let m = g.model(c, r)?;
    let grp = g.model_group(c, r)?;
    verify_ipv1_in(&m, &grp, w)
}
