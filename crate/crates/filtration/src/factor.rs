use std::collections::{BTreeMap, HashMap};

use perm_group::{quotient_on_subtree, subgroup_in_product, Centre, Perm, PermGroup};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use tree_core::{ball_vertex, convex_hull, q_set, Subtree, TruncatedTree, V};

use crate::{
    ecc, jordan_anchor, jordan_centre, members, set_dist, stratum, stratum_of, tilde_h_subtrees, verify_hypothesis,
    FamilyKind, Result, TreeGroup,
};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorizationOptions {
    /// Largest number of (U, V) instances checked; beyond it the instances
    /// are sampled.
    pub budget: usize,
    pub seed: u64,
    /// Margins of the two transporter computations compared for stability.
    pub margins: [usize; 2],
    pub cap: usize,
}

impl Default for FactorizationOptions {
    fn default() -> Self {
        FactorizationOptions { budget: 1 << 20, seed: 0x0f17_2a71, margins: [1, 2], cap: 1_000_000 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Failure {
    pub condition: u8,
    pub reason: String,
    /// An element of `W` outside `VU`, as images of the listed vertices.
    pub element: Option<Vec<(V, V)>>,
    /// Subtrees whose fixators were tried as `W`.
    pub tried: Vec<Vec<V>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub u: Vec<V>,
    pub v: Vec<V>,
    /// `V ⊆ U`, so condition 1 does not apply.
    pub v_in_u: bool,
    pub witness: Option<Vec<V>>,
    /// "recipe" when the constructive choice worked, "search" otherwise.
    pub route: Option<String>,
    pub failure: Option<Failure>,
    /// `|N_G(U,V) / U|` via the transporter of `T` into `T'`.
    pub transporter_size: u64,
    /// Same count at the second margin.
    pub transporter_size_wide: u64,
    /// `|{g : g⁻¹Vg ⊆ U} / U|`, `None` when the fixed set of `V` leaves the ball.
    pub conjugation_size: Option<u64>,
    pub cond2: bool,
    pub cond3: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sampling {
    pub mode: String,
    pub total: usize,
    pub used: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cond3Failure {
    pub u: Vec<V>,
    pub w: Vec<V>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub schema: u32,
    pub family: FamilyKind,
    pub depth: usize,
    pub plus: bool,
    pub window_size: usize,
    pub hypothesis_pass: bool,
    pub hypothesis_failures: usize,
    /// Deepest stratum with members in the window.
    pub max_realized_depth: usize,
    pub instances: Vec<InstanceRecord>,
    pub cond3_failures: Vec<Cond3Failure>,
    pub margins: Vec<usize>,
    pub sampling: Sampling,
    pub cond1_pass: bool,
    pub cond2_pass: bool,
    pub cond3_pass: Option<bool>,
    pub pass: bool,
    /// Compactness of `N_G(U,V)` is observed through a surrogate: finite
    /// transporter, stable across two margins, equal to the conjugation set.
    pub compactness_surrogate: String,
}

/// Outcome of `W ⊆ VU` for `W = Fix(x)`.
#[derive(Clone, Debug)]
pub struct ProductOutcome {
    pub u_in_w: bool,
    pub holds: bool,
    pub cosets: usize,
    pub element: Option<Vec<(V, V)>>,
}

/// Decides `U ⊆ Fix(x) ⊆ VU` for `U = Fix(u)`, `V = Fix(v)`. `U ⊆ W` is a
/// generator check in a model anchored in `u`. The product is decided in a
/// model anchored at a vertex `c` of `x`: elements of `VU` fixing `c` lie in
/// `(V ∩ Stab(c))U`, and `V ∩ Stab(c)` is the fixator of the hull of
/// `v ∪ {c}`. Membership in `VU` only depends on the restriction to `u`, so
/// both groups are restricted to the ball around `c` spanned by `u`.
pub fn check_witness(g: &TreeGroup, u: &Subtree, v: &Subtree, x: &Subtree, margin: usize, cap: usize) -> Result<ProductOutcome> {
    let mut all: Vec<V> = u.verts().to_vec();
    all.extend_from_slice(v.verts());
    all.extend_from_slice(x.verts());
    let tree = g.tree_around(&all)?;

    let mut cover_u = u.verts().to_vec();
    cover_u.extend_from_slice(x.verts());
    let cu = jordan_anchor(&tree, u);
    let mu = g.model(Centre::Vertex(cu), ecc(&tree, cu, &cover_u) + margin)?;
    let u_in_w = mu.fix_gens(u.verts())?.iter().all(|p| g.apply_in(&mu, p, x.verts()) == x.verts());

    let c = jordan_anchor(&tree, x);
    let mut hv_pts = v.verts().to_vec();
    hv_pts.push(c);
    let hv = convex_hull(&tree, &hv_pts)?;
    all.extend_from_slice(&hv);
    let m = g.model(Centre::Vertex(c), ecc(&tree, c, &all) + margin)?;
    let ru = ecc(&tree, c, u.verts());
    let ys: Vec<u32> = (0..m.len() as u32).filter(|&i| m.ldist[i as usize] as usize <= ru).collect();
    let restrict = |gens: Vec<Perm>| -> Result<PermGroup> {
        let gs = gens.iter().map(|p| p.restrict(&ys).expect("balls around c are invariant")).collect();
        Ok(PermGroup::new(ys.len(), gs))
    };
    let w = restrict(m.fix_gens(x.verts())?)?;
    let vc = restrict(m.fix_gens(&hv)?)?;
    let base: Vec<u32> = m
        .to_local(u.verts())
        .expect("covered")
        .iter()
        .map(|l| ys.iter().position(|y| y == l).expect("u inside its ball") as u32)
        .collect();
    let pc = subgroup_in_product(&w, &vc, &base, cap)?;
    let element = pc.witness.map(|p| {
        ys.iter().enumerate().map(|(i, &y)| (m.verts[y as usize], m.verts[ys[p.apply(i as u32) as usize] as usize])).collect()
    });
    Ok(ProductOutcome { u_in_w, holds: pc.holds && u_in_w, cosets: pc.cosets, element })
}

/// The constructive witness for condition 1, when the family has one.
pub fn recipe(g: &TreeGroup, family: &FamilyKind, l: usize, u: &Subtree, v: &Subtree, candidates: &[Subtree]) -> Result<Option<Subtree>> {
    let mut all = u.verts().to_vec();
    all.extend_from_slice(v.verts());
    let tree = g.tree_around(&all)?;
    let found = match family {
        FamilyKind::SFull if l >= 2 => sfull_recipe(&tree, u, v),
        FamilyKind::SQ(_) => closest(&tree, candidates, v),
        FamilyKind::SV1 if l == 1 => closest(&tree, candidates, v),
        FamilyKind::SV1 => sv1_recipe(&tree, u, v)?,
        _ => None,
    };
    Ok(found.filter(|r| candidates.contains(r)))
}

fn closest(tree: &TruncatedTree, candidates: &[Subtree], v: &Subtree) -> Option<Subtree> {
    candidates
        .iter()
        .min_by_key(|x| (set_dist(tree, &jordan_centre(tree, x).verts(), v.verts()), x.verts().to_vec()))
        .cloned()
}

/// A vertex `w` of `T` all of whose neighbours but one (`o`, towards `T'`)
/// are leaves of `T` outside `T'`; the witness drops those leaves.
fn sfull_recipe(tree: &TruncatedTree, u: &Subtree, v: &Subtree) -> Option<Subtree> {
    for w in u.interior(tree) {
        for &o in tree.neighbors(w) {
            let side = tree_core::half_tree(tree, o, w).ok()?;
            let covers = v.verts().iter().all(|x| *x == w || side.binary_search(x).is_ok());
            if !covers {
                continue;
            }
            let others: Vec<V> = tree.neighbors(w).iter().copied().filter(|&x| x != o).collect();
            if others.iter().all(|&x| u.degree_in(tree, x) == 1 && !v.contains(x)) {
                let r: Vec<V> = u.verts().iter().copied().filter(|x| !others.contains(x)).collect();
                return Some(Subtree::from_sorted(r));
            }
        }
    }
    None
}

/// Drop from `Q_T` the vertex farthest from `Q_{T'}` (or from `T'` when that
/// is empty).
fn sv1_recipe(tree: &TruncatedTree, u: &Subtree, v: &Subtree) -> Result<Option<Subtree>> {
    let q = q_set(tree, u)?;
    let qv = q_set(tree, v)?;
    let target: Vec<V> = if qv.is_empty() { v.verts().to_vec() } else { qv };
    let Some(&far) = q.iter().max_by_key(|&&x| (set_dist(tree, &[x], &target), std::cmp::Reverse(x))) else {
        return Ok(None);
    };
    let mut r: Vec<V> = Vec::new();
    for &x in q.iter().filter(|&&x| x != far) {
        r.extend_from_slice(ball_vertex(tree, x, 2)?.verts());
    }
    r.sort_unstable();
    r.dedup();
    Ok((!r.is_empty()).then(|| Subtree::from_sorted(r)))
}

#[derive(Default)]
struct Caches {
    aut: HashMap<(Vec<V>, usize), u64>,
}

/// `|Stab(t)/Fix(t)|` read in the model one `margin` beyond `t`.
fn aut_order(g: &TreeGroup, t: &Subtree, margin: usize, cap: usize) -> Result<u64> {
    let tree = g.tree_around(t.verts())?;
    let c = jordan_centre(&tree, t);
    let radius = c.verts().iter().map(|&v| ecc(&tree, v, t.verts())).max().unwrap() + margin;
    let m = g.model(c, radius)?;
    let grp = g.model_group(c, radius)?;
    let q = quotient_on_subtree(&grp, &m.to_local(t.verts()).expect("covered"), cap)?;
    Ok(u64::try_from(q.group.order()).unwrap_or(u64::MAX))
}

/// `|{g : g(t) ⊆ target} / Fix(t)|`. Elements with the same restriction to
/// `t` form one coset of `Fix(t)`, and those with a given image `X = g(t)`
/// form one coset of `Stab(t)`, so the count is the number of translates of
/// `t` inside `target` times `|Stab(t)/Fix(t)|`.
pub fn transporter_size(g: &TreeGroup, t: &Subtree, target: &[V], margin: usize, cap: usize) -> Result<u64> {
    let mut c = Caches::default();
    transporter_count(g, t, target, margin, cap, &mut c)
}

fn transporter_count(g: &TreeGroup, t: &Subtree, target: &[V], margin: usize, cap: usize, cache: &mut Caches) -> Result<u64> {
    let key = (t.verts().to_vec(), margin);
    let aut = match cache.aut.get(&key) {
        Some(&a) => a,
        None => {
            let a = aut_order(g, t, margin, cap)?;
            cache.aut.insert(key, a);
            a
        }
    };
    let mut region = target.to_vec();
    region.sort_unstable();
    let n = g.translates_within(t, &region)?.len() as u64;
    Ok(n * aut)
}

fn sample(pairs: Vec<(usize, usize)>, dist: impl Fn(usize, usize) -> usize, opts: &FactorizationOptions) -> (Vec<(usize, usize)>, Sampling) {
    let total = pairs.len();
    if total <= opts.budget {
        return (pairs, Sampling { mode: "exhaustive".into(), total, used: total, seed: opts.seed });
    }
    let mut strata: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for p in pairs {
        strata.entry(dist(p.0, p.1)).or_default().push(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    for (_, mut ps) in strata {
        let take = ((ps.len() * opts.budget + total - 1) / total).max(1).min(ps.len());
        ps.shuffle(&mut rng);
        ps.truncate(take);
        ps.sort_unstable();
        out.extend(ps);
    }
    let used = out.len();
    (out, Sampling { mode: "stratified by distance".into(), total, used, seed: opts.seed })
}

/// Checks condition 3 for `U = Fix(u)`: every `W` at depth `l-1` containing
/// `U` is generated by elements stabilizing `u`.
fn cond3_for(g: &TreeGroup, u: &Subtree, cands: &[Subtree]) -> Result<Vec<Subtree>> {
    let mut bad = Vec::new();
    for x in cands {
        let mut cover = u.verts().to_vec();
        cover.extend_from_slice(x.verts());
        let tree = g.tree_around(&cover)?;
        let c = jordan_anchor(&tree, x);
        let m = g.model_covering(c, &cover)?;
        let ok = m.fix_gens(x.verts())?.iter().all(|p| g.apply_in(&m, p, u.verts()) == u.verts());
        if !ok {
            bad.push(x.clone());
        }
    }
    Ok(bad)
}

/// Factorization (and factorization⁺ with `plus`) of the family at depth `l`
/// over the window.
pub fn verify_factorization(
    g: &TreeGroup,
    family: &FamilyKind,
    l: usize,
    plus: bool,
    window: &Subtree,
    opts: &FactorizationOptions,
) -> Result<FactorizationReport> {
    let hyp = verify_hypothesis(g, family, window)?;
    let us = stratum(g, family, l, window)?;
    let vs = members(g, family, window)?;
    let tree = g.tree_around(window.verts())?;
    let mut max_realized_depth = 0;
    for s in &vs {
        if let Some(d) = stratum_of(g, family, s)? {
            max_realized_depth = max_realized_depth.max(d);
        }
    }
    let v_closures: Vec<_> = vs.iter().map(|v| g.closure(v.verts(), window.verts())).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..us.len()).flat_map(|i| (0..vs.len()).map(move |j| (i, j))).collect();
    let (pairs, sampling) = sample(pairs, |i, j| set_dist(&tree, us[i].verts(), vs[j].verts()), opts);

    let mut cands: HashMap<usize, Vec<Subtree>> = HashMap::new();
    let mut cond3: HashMap<usize, bool> = HashMap::new();
    let mut cond3_failures = Vec::new();
    let mut caches = Caches::default();
    let mut instances = Vec::new();
    for (i, j) in pairs {
        let u = &us[i];
        let v = &vs[j];
        if !cands.contains_key(&i) {
            let (_, xs) = tilde_h_subtrees(g, family, u)?;
            if plus {
                let bad = cond3_for(g, u, &xs)?;
                cond3.insert(i, bad.is_empty());
                cond3_failures.extend(bad.into_iter().map(|w| Cond3Failure { u: u.verts().to_vec(), w: w.verts().to_vec() }));
            }
            cands.insert(i, xs);
        }
        let xs = &cands[&i];
        let v_in_u = v_closures[j].contains_all(u.verts());
        let mut witness = None;
        let mut route = None;
        let mut failure = None;
        if !v_in_u {
            let first = recipe(g, family, l, u, v, xs)?;
            let mut order: Vec<(Subtree, &str)> = Vec::new();
            if let Some(r) = &first {
                order.push((r.clone(), "recipe"));
            }
            for x in xs {
                if Some(x) != first.as_ref() {
                    order.push((x.clone(), "search"));
                }
            }
            let mut last_element = None;
            for (x, how) in &order {
                let out = check_witness(g, u, v, x, opts.margins[0], opts.cap)?;
                if out.holds {
                    witness = Some(x.verts().to_vec());
                    route = Some(how.to_string());
                    break;
                }
                if last_element.is_none() {
                    last_element = out.element;
                }
            }
            if witness.is_none() {
                failure = Some(Failure {
                    condition: 1,
                    reason: if xs.is_empty() { "no depth l-1 subgroup contains U".into() } else { "no candidate W lies in VU".into() },
                    element: last_element,
                    tried: order.iter().map(|(x, _)| x.verts().to_vec()).collect(),
                });
            }
        }
        let size = transporter_count(g, u, v.verts(), opts.margins[0], opts.cap, &mut caches)?;
        let wide = transporter_count(g, u, v.verts(), opts.margins[1], opts.cap, &mut caches)?;
        let clv = g.fixed_set(v.verts())?;
        let conj = if clv.open { None } else { Some(transporter_count(g, u, &clv.verts, opts.margins[0], opts.cap, &mut caches)?) };
        let cond2 = size == wide && conj == Some(size);
        if !cond2 && failure.is_none() {
            failure = Some(Failure {
                condition: 2,
                reason: match conj {
                    None => "fixed set of V is not contained in the ball".into(),
                    Some(c) if c != size => format!("transporter {size} differs from conjugation set {c}"),
                    _ => format!("transporter size {size} changes to {wide} with the wider margin"),
                },
                element: None,
                tried: Vec::new(),
            });
        }
        instances.push(InstanceRecord {
            u: u.verts().to_vec(),
            v: v.verts().to_vec(),
            v_in_u,
            witness,
            route,
            failure,
            transporter_size: size,
            transporter_size_wide: wide,
            conjugation_size: conj,
            cond2,
            cond3: cond3.get(&i).copied(),
        });
    }
    let cond1_pass = instances.iter().all(|r| r.v_in_u || r.witness.is_some());
    let cond2_pass = instances.iter().all(|r| r.cond2);
    let cond3_pass = plus.then(|| cond3.values().all(|&b| b));
    Ok(FactorizationReport {
        schema: REPORT_SCHEMA,
        family: family.clone(),
        depth: l,
        plus,
        window_size: window.len(),
        hypothesis_pass: hyp.pass,
        hypothesis_failures: hyp.failures,
        max_realized_depth,
        instances,
        cond3_failures,
        margins: opts.margins.to_vec(),
        sampling,
        cond1_pass,
        cond2_pass,
        cond3_pass,
        pass: cond1_pass && cond2_pass && cond3_pass.unwrap_or(true) && !us.is_empty(),
        compactness_surrogate: "finite transporter, equal at both margins and to the conjugation-defined set".into(),
    })
}
