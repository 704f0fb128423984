use char_theory::{character_table, fixed_multiplicity, standard_reps, IrrepLabel};
use perm_group::quotient_on_subtree;
use serde::{Deserialize, Serialize};
use tree_core::{ball, ball_vertex, Subtree, V};

use crate::{
    ecc, fix_in_model, jordan_centre, stratum_of, t_p, tilde_h_subtrees, verify_factorization, Closure, FactorizationOptions,
    FamilyKind, FiltrationError, Result, TreeGroup,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub index: usize,
    pub pass: bool,
    pub checked: usize,
    /// First offending configuration, as vertex sets.
    pub counterexample: Option<Vec<Vec<V>>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpFamily {
    pub family: FamilyKind,
    pub sigma: Vec<Vec<V>>,
    pub keep: Vec<Vec<V>>,
    pub hypotheses: Vec<HypothesisCheck>,
}

impl SpFamily {
    pub fn hypotheses_pass(&self) -> bool {
        self.hypotheses.iter().all(|h| h.pass)
    }
}

/// `Fix(a) ⊊ Fix(b)` given the closure of `a`.
fn strictly_below(g: &TreeGroup, cla: &Closure, a: &Subtree, b: &Subtree) -> Result<bool> {
    Ok(cla.contains_all(b.verts()) && !g.fix_le(b.verts(), a.verts())?)
}

fn closed(g: &TreeGroup, s: &Subtree) -> Result<std::result::Result<Closure, String>> {
    let cl = g.fixed_set(s.verts())?;
    Ok(if cl.open { Err(format!("fixed set of {:?} reaches the model boundary", s.verts())) } else { Ok(cl) })
}

fn check(index: usize) -> HypothesisCheck {
    HypothesisCheck { index, pass: true, checked: 0, counterexample: None, note: None }
}

fn fail(h: &mut HypothesisCheck, sets: &[&[V]]) {
    if h.pass {
        h.counterexample = Some(sets.iter().map(|s| s.to_vec()).collect());
    }
    h.pass = false;
}

/// The family built on `p` with thickening `k - 1`: `Σ_P`, `𝔗_P` and the
/// four hypotheses under which its depths are 0 on `𝔗_P` and 1 on `P`.
///
/// Translates only matter inside the relevant fixed sets, so hypotheses 1, 2
/// and 4 are decided exactly whenever those fixed sets are finite; hypothesis
/// 3 is scanned over balls `v^(n)` inside `B(P^(k-1), radius)`.
pub fn sp_family(g: &TreeGroup, p: &Subtree, k: usize, radius: usize) -> Result<SpFamily> {
    let family = FamilyKind::SP { p: p.verts().to_vec(), k };
    let t0 = g.tree_around(p.verts())?;
    family.validate(&t0)?;
    let (sigma, keep) = t_p(g, p, k)?;
    let tree = g.tree();
    let thick = |r: &Subtree| ball(&tree, r, k - 1);
    let pk = thick(p)?;
    let keep_k: Vec<Subtree> = keep.iter().map(thick).collect::<std::result::Result<_, _>>()?;

    let mut h1 = check(1);
    for r in &keep_k {
        match closed(g, r)? {
            Ok(cl) => {
                for r2 in &keep_k {
                    for t in g.translates_within(r2, &cl.verts)? {
                        h1.checked += 1;
                        if strictly_below(g, &cl, r, &t)? {
                            fail(&mut h1, &[r.verts(), t.verts()]);
                        }
                    }
                }
            }
            Err(note) => {
                h1.pass = false;
                h1.note = Some(note);
            }
        }
    }

    let mut h2 = check(2);
    match closed(g, &pk)? {
        Ok(cl) => {
            for r in &keep_k {
                h2.checked += 1;
                if cl.contains_all(r.verts()) && g.fix_le(r.verts(), pk.verts())? {
                    fail(&mut h2, &[pk.verts(), r.verts()]);
                }
                for t in g.translates_within(r, &cl.verts)? {
                    h2.checked += 1;
                    if strictly_below(g, &cl, &pk, &t)? && !p.is_subset(&t) {
                        fail(&mut h2, &[pk.verts(), t.verts()]);
                    }
                }
            }
        }
        Err(note) => {
            h2.pass = false;
            h2.note = Some(note);
        }
    }

    let mut h3 = check(3);
    let far = pk.verts().iter().map(|&v| tree.depth[v as usize] as usize).max().unwrap_or(0);
    let tree = g.tree_with_radius(far + radius + 1)?;
    let region = ball(&tree, &pk, radius)?;
    for &v in region.verts() {
        let mut n = 0;
        while let Ok(b) = ball_vertex(&tree, v, n) {
            if !b.is_subset(&region) {
                break;
            }
            h3.checked += 1;
            if g.fix_le(b.verts(), pk.verts())? && !pk.is_subset(&b) {
                fail(&mut h3, &[b.verts(), pk.verts()]);
            }
            n += 1;
        }
    }

    let mut h4 = check(4);
    match closed(g, &pk)? {
        Ok(cl) => {
            for t in g.translates_within(&pk, &cl.verts)? {
                h4.checked += 1;
                if t != pk && g.fix_le(t.verts(), pk.verts())? {
                    fail(&mut h4, &[pk.verts(), t.verts()]);
                }
            }
        }
        Err(note) => {
            h4.pass = false;
            h4.note = Some(note);
        }
    }

    Ok(SpFamily {
        family,
        sigma: sigma.iter().map(|s| s.verts().to_vec()).collect(),
        keep: keep.iter().map(|s| s.verts().to_vec()).collect(),
        hypotheses: vec![h1, h2, h3, h4],
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrrepRow {
    pub label: IrrepLabel,
    /// Fixed-space dimension for each member of the H-family.
    pub fixed: Vec<u64>,
    pub standard: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StandardCount {
    pub family: FamilyKind,
    pub seed: Vec<V>,
    pub depth: usize,
    pub aut_order: u64,
    pub h_subtrees: Vec<Vec<V>>,
    pub h_orders: Vec<u64>,
    pub irreps: Vec<IrrepRow>,
    pub standard: Vec<IrrepLabel>,
    pub count: usize,
    /// Result of the factorization⁺ check at the seed's depth, if it was run.
    pub factorization_plus: Option<bool>,
    pub warning: Option<String>,
}

/// Standard representations of `Aut_G(C) = Stab(S)/Fix(S)` for the seed `S`
/// with respect to the images of the tilde-H family. With `window` the
/// factorization⁺ hypothesis is checked there first.
pub fn standard_count(g: &TreeGroup, family: &FamilyKind, seed: &Subtree, window: Option<&Subtree>, cap: usize) -> Result<StandardCount> {
    let depth = stratum_of(g, family, seed)?.ok_or_else(|| FiltrationError::Precondition("seed is not in the family".into()))?;
    if depth == 0 {
        return Err(FiltrationError::Precondition("seed depth must be at least 1".into()));
    }
    let (factorization_plus, warning) = match window {
        Some(w) => {
            let rep = verify_factorization(g, family, depth, true, w, &FactorizationOptions::default())?;
            let ok = rep.pass && rep.hypothesis_pass;
            (Some(ok), (!ok).then(|| "factorization⁺ fails in the window; the count is not a classification".to_string()))
        }
        None => (None, Some("factorization⁺ not verified".to_string())),
    };
    let tree = g.tree_around(seed.verts())?;
    let centre = jordan_centre(&tree, seed);
    let radius = centre.verts().iter().map(|&c| ecc(&tree, c, seed.verts())).max().unwrap();
    let m = g.model(centre, radius)?;
    let grp = g.model_group(centre, radius)?;
    let pts = m.to_local(seed.verts()).expect("seed inside its model");
    let q = quotient_on_subtree(&grp, &pts, cap)?;
    let aut = q.group;
    let (_, xs) = tilde_h_subtrees(g, family, seed)?;
    let mut hs = Vec::new();
    for x in &xs {
        hs.push(fix_in_model(g, centre, radius, x.verts())?.restricted_to(&q.points)?);
    }
    let table = character_table(&aut)?;
    let standard = standard_reps(&table, &hs)?;
    let mut irreps = Vec::new();
    for label in table.labels() {
        let fixed = hs.iter().map(|h| fixed_multiplicity(&table, label, h)).collect::<std::result::Result<Vec<_>, _>>()?;
        irreps.push(IrrepRow { label, standard: standard.contains(&label), fixed });
    }
    let h_orders = hs.iter().map(|h| u64::try_from(h.order()).unwrap_or(u64::MAX)).collect();
    Ok(StandardCount {
        family: family.clone(),
        seed: seed.verts().to_vec(),
        depth,
        aut_order: table.order,
        h_subtrees: xs.iter().map(|x| x.verts().to_vec()).collect(),
        h_orders,
        irreps,
        count: standard.len(),
        standard,
        factorization_plus,
        warning,
    })
}
