use filtration::*;
use perm_group::GroupSpec;
use tree_core::{ball_edge, ball_vertex, Subtree};

fn full(radius: usize) -> TreeGroup {
    TreeGroup::semiregular(3, 3, GroupSpec::FullAut, radius).unwrap()
}

fn window(g: &TreeGroup, r: usize) -> Subtree {
    let t = g.tree();
    ball_vertex(&t, t.base, r).unwrap()
}

#[test]
fn stratum_examples() {
    let g = full(4);
    let w = window(&g, 3);
    let t = g.tree();
    let s0 = stratum(&g, &FamilyKind::SFull, 0, &w).unwrap();
    assert_eq!(s0.len(), w.len());
    let s1 = stratum(&g, &FamilyKind::SQ(0), 1, &w).unwrap();
    let inner: Vec<_> = w.verts().iter().filter(|&&v| t.depth[v as usize] <= 2).collect();
    assert_eq!(s1.len(), inner.len());
    assert!(s1.iter().all(|b| b.len() == 4));
    let s2 = stratum(&g, &FamilyKind::SV1, 2, &w).unwrap();
    for s in &s2 {
        let q = tree_core::q_set(&t, s).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(t.dist(q[0], q[1]), 2);
    }
}

#[test]
fn height_examples() {
    let g = full(4);
    let t = g.tree();
    let b = t.base;
    let n = t.neighbors(b)[0];
    let fam = FamilyKind::SFull;
    assert_eq!(height_of(&g, &fam, &Subtree::vertex(b)).unwrap(), 0);
    assert_eq!(height_of(&g, &fam, &Subtree::new(&t, [b, n]).unwrap()).unwrap(), 1);
    assert_eq!(height_of(&g, &fam, &ball_vertex(&t, b, 1).unwrap()).unwrap(), 2);
}

#[test]
fn tilde_h_examples() {
    let g = full(4);
    let t = g.tree();
    let b = t.base;
    let n = t.neighbors(b)[0];
    let bv = ball_vertex(&t, b, 1).unwrap();
    let h = tilde_h(&g, &FamilyKind::SQ(0), &bv).unwrap();
    assert_eq!(h.members.len(), 3);
    assert!(h.members.iter().all(|m| m.subtree.len() == 2));
    let h = tilde_h(&g, &FamilyKind::SFull, &bv).unwrap();
    assert_eq!(h.members.len(), 3);
    let be = ball_edge(&t, b, n, 1).unwrap();
    let h = tilde_h(&g, &FamilyKind::SQ(0), &be).unwrap();
    assert_eq!(h.members.len(), 2);
    assert!(h.members.iter().all(|m| m.subtree.len() == 4));
}

#[test]
fn hypothesis_full_aut() {
    let g = full(4);
    let w = window(&g, 2);
    let r = verify_hypothesis(&g, &FamilyKind::SFull, &w).unwrap();
    assert!(r.pass, "{:?}", r.examples);
    assert!(!r.vacuous);
}

#[test]
fn hypothesis_discrete_fails() {
    let spec = GroupSpec::UniversalLocal { locals: vec![perm_group::LocalGroup::trivial(3), perm_group::LocalGroup::trivial(3)] };
    let g = TreeGroup::semiregular(3, 3, spec, 3).unwrap();
    let w = window(&g, 1);
    let r = verify_hypothesis(&g, &FamilyKind::SFull, &w).unwrap();
    assert!(!r.pass);
}

#[test]
fn factorization_examples() {
    let g = full(4);
    let w = window(&g, 2);
    let r = verify_factorization(&g, &FamilyKind::SQ(0), 1, true, &w, &FactorizationOptions::default()).unwrap();
    assert!(r.pass, "{:?}", r.instances.iter().find(|i| i.failure.is_some()));
    let r = verify_factorization(&g, &FamilyKind::SFull, 1, false, &w, &FactorizationOptions::default()).unwrap();
    assert!(!r.cond1_pass);
    let f = r.instances.iter().find_map(|i| i.failure.clone()).unwrap();
    assert_eq!(f.condition, 1);
    assert!(f.element.is_some());
}

#[test]
fn l_qk_examples() {
    assert_eq!(l_qk(0, 1), 1);
    assert_eq!(l_qk(0, 2), 3);
    assert_eq!(l_qk(3, 2), 1);
}
