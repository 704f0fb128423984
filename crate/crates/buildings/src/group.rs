use filtration::TreeGroup;
use perm_group::{GroupSpec, LocalGroup};
use tree_core::V;

use crate::{BuildingError, BuildingTree, Result};

/// `∏_{i∈I_k} G_i` acting on the mixed-radix codes of block-`k` colors.
pub fn block_group(b: &BuildingTree, k: usize, locals: &[LocalGroup]) -> Result<LocalGroup> {
    let rule = &b.rule;
    let n = rule.residue_size(k);
    let mut gens = Vec::new();
    let mut cols = vec![0u8; rule.q.len()];
    for &i in &rule.blocks[k] {
        for g in locals[i].generators() {
            let p: Vec<u16> = (0..n)
                .map(|x| {
                    rule.decode_into(k, x, &mut cols);
                    cols[i] = g[cols[i] as usize] as u8;
                    rule.encode(k, &cols) as u16
                })
                .collect();
            gens.push(p);
        }
    }
    Ok(LocalGroup::from_gens(n, gens)?)
}

fn check_locals(b: &BuildingTree, locals: &[LocalGroup]) -> Result<()> {
    let sys = &b.system;
    if locals.len() != sys.len() {
        return Err(BuildingError::Input(format!("{} local groups for {} generators", locals.len(), sys.len())));
    }
    for (i, g) in locals.iter().enumerate() {
        if g.degree != sys.q[i] {
            return Err(BuildingError::Input(format!("local group of {} acts on {} colors, thickness is {}", sys.names[i], g.degree, sys.q[i])));
        }
        if !g.is_transitive() {
            return Err(BuildingError::Precondition(format!("local group of {} is not transitive", sys.names[i])));
        }
    }
    Ok(())
}

/// The universal group with local actions `G_i`, as a group of the
/// incidence tree: trivial at chambers (so it preserves residue blocks) and
/// `∏_{i∈I_k} G_i` at block-`k` residues.
pub fn universal_group(b: &BuildingTree, locals: &[LocalGroup]) -> Result<TreeGroup> {
    check_locals(b, locals)?;
    let mut kinds = vec![LocalGroup::trivial(b.blocks().len())];
    for k in 0..b.blocks().len() {
        kinds.push(block_group(b, k, locals)?);
    }
    let spec = GroupSpec::UniversalLocal { locals: kinds };
    Ok(TreeGroup::new(Box::new(b.rule.clone()), 0, spec, b.tree.radius)?)
}

/// All type-preserving automorphisms of the incidence tree.
pub fn full_aut_plus(b: &BuildingTree) -> Result<TreeGroup> {
    Ok(TreeGroup::new(Box::new(b.rule.clone()), 0, GroupSpec::FullAutPlus, b.tree.radius)?)
}

/// Membership read from the chamber colors alone: `img` maps tree vertices
/// (identity outside `verts`) and, on every residue of `verts` whose
/// chambers all lie in `verts`, each `i`-panel must go to an `i`-panel with
/// the induced map on `Y_i` in `G_i`.
pub fn panel_filter(b: &BuildingTree, locals: &[LocalGroup], verts: &[V], img: &[V]) -> bool {
    let t = &b.tree;
    let inside = |v: V| verts.binary_search(&v).is_ok();
    for &v in verts {
        let w = img[v as usize];
        if t.kind[v as usize] != t.kind[w as usize] {
            return false;
        }
    }
    for &r in verts {
        let Some(k) = b.block_of(r) else { continue };
        let cs = t.neighbors(r);
        if cs.len() != t.target_degree(r) || !cs.iter().all(|&c| inside(c)) {
            continue;
        }
        for &i in &b.blocks()[k] {
            let mut panels: std::collections::BTreeMap<Vec<u8>, Vec<V>> = Default::default();
            for &c in cs {
                let mut key = b.colors(c).to_vec();
                key[i] = 0;
                panels.entry(key).or_default().push(c);
            }
            for p in panels.values() {
                let mut sigma = vec![u16::MAX; b.system.q[i]];
                let mut key: Option<Vec<u8>> = None;
                for &c in p {
                    let gc = b.colors(img[c as usize]);
                    let mut other = gc.to_vec();
                    other[i] = 0;
                    if key.get_or_insert_with(|| other.clone()) != &other {
                        return false;
                    }
                    sigma[b.colors(c)[i] as usize] = gc[i] as u16;
                }
                if sigma.contains(&u16::MAX) || !locals[i].contains(&sigma) {
                    return false;
                }
            }
        }
    }
    true
}
