use std::collections::BTreeMap;

use filtration::{verify_hypothesis, verify_ipv1, FamilyKind, HypothesisReport, OrderIdentity, TreeGroup};
use perm_group::{Centre, LocalGroup};
use serde::{Deserialize, Serialize};
use tree_core::{ball_vertex, TreeError, V};

use crate::{BuildingError, BuildingTree, Result, WordNF};

/// `IP_V1` at the block-`k` residue of the base chamber, in a model of
/// radius `radius` around it.
pub fn verify_ipj(b: &BuildingTree, g: &TreeGroup, k: usize, radius: usize) -> Result<OrderIdentity> {
    if k >= b.blocks().len() {
        return Err(BuildingError::Input(format!("block {k} does not exist")));
    }
    let r = b.residue_of(b.base(), k).ok_or(TreeError::Window { need: 1, have: 0 })?;
    Ok(verify_ipv1(g, r, radius)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HV1Report {
    /// Some local group is not 2-transitive, so a pass here is not expected.
    pub exploratory: bool,
    pub two_transitive: Vec<bool>,
    pub report: HypothesisReport,
}

/// Hypothesis `H_V1` pair checks over the `T_V1` family in the window of
/// tree radius `window` around the base chamber.
pub fn verify_h_v1(b: &BuildingTree, g: &TreeGroup, locals: &[LocalGroup], window: usize) -> Result<HV1Report> {
    let two_transitive: Vec<bool> = locals.iter().map(|l| l.is_two_transitive()).collect();
    let t = g.tree_with_radius(window)?;
    let w = ball_vertex(&t, b.base(), window)?;
    let report = verify_hypothesis(g, &FamilyKind::SV1, &w)?;
    Ok(HV1Report { exploratory: two_transitive.iter().any(|&x| !x), two_transitive, report })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaClass {
    pub delta: WordNF,
    pub chambers: usize,
    pub orbits: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Delta2Report {
    pub radius: usize,
    pub pass: bool,
    pub classes: Vec<DeltaClass>,
    /// Two chambers at the same W-distance from the base in different orbits.
    pub failing: Option<(V, V)>,
}

/// Orbits of the base-chamber stabilizer on chambers at most `radius`
/// residue crossings away, compared with the classes of `δ(base, ·)`.
pub fn delta_two_transitivity(b: &BuildingTree, g: &TreeGroup, radius: usize) -> Result<Delta2Report> {
    if radius > b.depth {
        return Err(TreeError::Window { need: radius, have: b.depth }.into());
    }
    let c = b.base();
    let m = g.model(Centre::Vertex(c), 2 * radius)?;
    let grp = g.model_group(Centre::Vertex(c), 2 * radius)?;
    let mut classes: BTreeMap<WordNF, Vec<V>> = BTreeMap::new();
    for d in b.chambers() {
        if b.tree.dist(c, d) <= 2 * radius {
            classes.entry(b.delta(c, d)?).or_default().push(d);
        }
    }
    let mut out = Vec::new();
    let mut failing = None;
    for (delta, ds) in classes {
        let mut orbit_of: BTreeMap<V, usize> = BTreeMap::new();
        let mut orbits = 0;
        for &d in &ds {
            if orbit_of.contains_key(&d) {
                continue;
            }
            let x = m.local_of(d).expect("chamber inside the model");
            for y in grp.orbit(x) {
                orbit_of.insert(m.verts[y as usize], orbits);
            }
            if orbits == 1 && failing.is_none() {
                failing = Some((ds[0], d));
            }
            orbits += 1;
        }
        out.push(DeltaClass { delta, chambers: ds.len(), orbits });
    }
    Ok(Delta2Report { radius, pass: failing.is_none(), classes: out, failing })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SDelta {
    pub chamber: V,
    /// `R'(c)`: chambers `d` with `δ(c, d)` in a single `W_{I_k}`.
    pub chambers: Vec<V>,
    /// `B_T(c, 2) ∩ V_0`.
    pub ball: Vec<V>,
    pub equal: bool,
}

pub fn s_delta_translation(b: &BuildingTree, c: V) -> Result<SDelta> {
    if !b.is_chamber(c) {
        return Err(BuildingError::Input(format!("vertex {c} is not a chamber")));
    }
    let have = b.tree.radius - b.tree.depth[c as usize] as usize;
    if have < 2 {
        return Err(TreeError::Window { need: 2, have }.into());
    }
    let mut chambers = Vec::new();
    for d in b.chambers() {
        if b.delta(c, d)?.syllables.len() <= 1 {
            chambers.push(d);
        }
    }
    let ball: Vec<V> = ball_vertex(&b.tree, c, 2)?.verts().iter().copied().filter(|&v| b.is_chamber(v)).collect();
    Ok(SDelta { chamber: c, equal: chambers == ball, chambers, ball })
}
