use buildings::*;
use num_bigint::BigUint;
use perm_group::{Centre, LocalGroup, Perm, PermGroup};
use tree_core::{TruncatedTree, V};

fn free33(d: usize) -> BuildingTree {
    build_building(&CoxeterSystem::lettered(&[], vec![3, 3]).unwrap(), d).unwrap()
}

fn grid(d: usize) -> BuildingTree {
    build_building(&CoxeterSystem::lettered(&[(0, 1)], vec![3, 3, 3]).unwrap(), d).unwrap()
}

fn sym(b: &BuildingTree) -> Vec<LocalGroup> {
    b.system.q.iter().map(|&q| LocalGroup::symmetric(q)).collect()
}

fn cyc(b: &BuildingTree) -> Vec<LocalGroup> {
    b.system.q.iter().map(|&q| LocalGroup::cyclic(q)).collect()
}

fn children(t: &TruncatedTree, v: V, depth: usize) -> Vec<V> {
    if t.depth[v as usize] as usize >= depth {
        return Vec::new();
    }
    t.neighbors(v).iter().copied().filter(|&w| t.parent[w as usize] == v).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every kind-preserving isomorphism from the branch below `v` onto the
/// branch below `w`, cut at `depth`.
fn branch_maps(t: &TruncatedTree, v: V, w: V, depth: usize) -> Vec<Vec<(V, V)>> {
    if t.kind[v as usize] != t.kind[w as usize] {
        return Vec::new();
    }
    let (cv, cw) = (children(t, v, depth), children(t, w, depth));
    if cv.len() != cw.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in permutations(cv.len()) {
        let mut acc = vec![vec![(v, w)]];
        for (i, &x) in cv.iter().enumerate() {
            let sub = branch_maps(t, x, cw[p[i]], depth);
            acc = acc.iter().flat_map(|a| sub.iter().map(move |s| [a.clone(), s.clone()].concat())).collect();
            if acc.is_empty() {
                break;
            }
        }
        out.extend(acc);
    }
    out
}

/// Brute-force count of base-fixing automorphisms of the ball of radius
/// `rad` that pass the panel filter, checked one by one against the model.
fn filter_count(b: &BuildingTree, locals: &[LocalGroup], rad: usize) -> (usize, BigUint) {
    let g = universal_group(b, locals).unwrap();
    let m = g.model(Centre::Vertex(b.base()), rad).unwrap();
    let grp = g.model_group(Centre::Vertex(b.base()), rad).unwrap();
    let t = &b.tree;
    let mut verts: Vec<V> = (0..t.len() as V).filter(|&v| t.depth[v as usize] as usize <= rad).collect();
    verts.sort_unstable();
    let mut n = 0;
    for map in branch_maps(t, b.base(), b.base(), rad) {
        let mut img: Vec<V> = (0..t.len() as V).collect();
        for (x, y) in map {
            img[x as usize] = y;
        }
        let ok = panel_filter(b, locals, &verts, &img);
        let p = Perm::from_images((0..m.len()).map(|x| m.local_of(img[m.verts[x] as usize]).unwrap()).collect()).unwrap();
        assert_eq!(ok, grp.contains(&p), "filter and model disagree");
        assert_eq!(ok, m.is_member(&p));
        n += usize::from(ok);
    }
    (n, grp.order().clone())
}

#[test]
fn universal_group_matches_panel_filter() {
    for (b, rad) in [(free33(1), 2), (free33(2), 4), (grid(1), 2)] {
        let (n, order) = filter_count(&b, &sym(&b), rad);
        assert_eq!(BigUint::from(n), order);
        let (nc, oc) = filter_count(&b, &cyc(&b), rad);
        assert_eq!(BigUint::from(nc), oc);
        assert!(oc < order);
    }
}

#[test]
fn universal_group_orders() {
    // D = 1: the two base residues each permute their other 2 chambers
    let b = free33(1);
    let g = universal_group(&b, &sym(&b)).unwrap();
    assert_eq!(g.model_group(Centre::Vertex(0), 2).unwrap().order(), &BigUint::from(4u32));
    let gc = universal_group(&b, &cyc(&b)).unwrap();
    assert_eq!(gc.model_group(Centre::Vertex(0), 2).unwrap().order(), &BigUint::from(1u32));
    let gens = gc.model_group(Centre::Vertex(0), 4).unwrap();
    let m = gc.model(Centre::Vertex(0), 4).unwrap();
    let t = gc.tree();
    let verts: Vec<V> = (0..t.len() as V).filter(|&v| t.depth[v as usize] <= 4).collect();
    let bb = BuildingTree { tree: t.clone(), ..b.clone() };
    for p in gens.gens() {
        assert!(panel_filter(&bb, &cyc(&b), &verts, &m.to_tree_images(p)));
    }
}

#[test]
fn local_groups_must_be_transitive() {
    let b = free33(1);
    let bad = vec![LocalGroup::trivial(3), LocalGroup::symmetric(3)];
    assert!(matches!(universal_group(&b, &bad), Err(BuildingError::Precondition(_))));
    assert!(universal_group(&b, &[LocalGroup::symmetric(3)]).is_err());
    assert!(universal_group(&b, &[LocalGroup::symmetric(4), LocalGroup::symmetric(3)]).is_err());
}

#[test]
fn ipj_holds_for_universal_and_full() {
    let b = free33(3);
    for g in [universal_group(&b, &sym(&b)).unwrap(), universal_group(&b, &cyc(&b)).unwrap(), full_aut_plus(&b).unwrap()] {
        for k in 0..2 {
            let r = verify_ipj(&b, &g, k, 3).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }
    let b = grid(2);
    let g = universal_group(&b, &sym(&b)).unwrap();
    assert!(verify_ipj(&b, &g, 0, 3).unwrap().holds);
    assert!(verify_ipj(&b, &g, 2, 3).is_err());
}

#[test]
fn ipj_fails_for_coupled_rotation() {
    // one element turning two branches of the residue together
    let b = free33(3);
    let g = universal_group(&b, &sym(&b)).unwrap();
    let r = b.residue_of(b.base(), 0).unwrap();
    let m = g.model(Centre::Vertex(r), 3).unwrap();
    let full = g.model_group(Centre::Vertex(r), 3).unwrap();
    let nb: Vec<V> = m.tree.neighbors(r).to_vec();
    let mut b1: Vec<u32> = m.to_local(&nb).unwrap();
    b1.push(m.local_of(r).unwrap());
    let fixed = full.fixator(&b1);
    let side = |v: V| -> Vec<u32> { m.verts.iter().enumerate().filter(|(_, &x)| m.tree.dist(x, v) < m.tree.dist(x, r)).map(|(i, _)| i as u32).collect() };
    let moves_only = |s: &[u32]| -> Perm {
        let other: Vec<u32> = (0..m.len() as u32).filter(|x| !s.contains(x)).collect();
        fixed.fixator(&other).gens().iter().find(|p| !p.is_identity()).unwrap().clone()
    };
    let h = moves_only(&side(nb[0])).mul(&moves_only(&side(nb[1])));
    let coupled = PermGroup::new(m.len(), vec![h]);
    let rep = filtration::verify_ipv1_in(&m, &coupled, r).unwrap();
    assert!(!rep.holds, "{rep:?}");
}

#[test]
fn h_v1_reports() {
    let b = free33(3);
    let g = universal_group(&b, &sym(&b)).unwrap();
    let r = verify_h_v1(&b, &g, &sym(&b), 5).unwrap();
    assert!(r.report.pass && !r.report.vacuous && !r.exploratory, "{:?}", r.report.examples);
    let gc = universal_group(&b, &cyc(&b)).unwrap();
    let rc = verify_h_v1(&b, &gc, &cyc(&b), 5).unwrap();
    assert!(rc.exploratory);
    let r1 = verify_h_v1(&b, &g, &sym(&b), 1).unwrap();
    assert!(r1.report.vacuous && r1.report.pass);
}

#[test]
fn delta_two_transitivity_examples() {
    let b = free33(3);
    let g = universal_group(&b, &sym(&b)).unwrap();
    assert!(delta_two_transitivity(&b, &g, 1).unwrap().pass);
    let r = delta_two_transitivity(&b, &g, 3).unwrap();
    assert!(r.pass);
    assert!(r.classes.iter().all(|c| c.orbits == 1));
    let gc = universal_group(&b, &cyc(&b)).unwrap();
    let rc = delta_two_transitivity(&b, &gc, 2).unwrap();
    assert!(!rc.pass);
    let (d1, d2) = rc.failing.unwrap();
    assert_eq!(b.delta(0, d1).unwrap(), b.delta(0, d2).unwrap());
    let bg = grid(2);
    let gg = universal_group(&bg, &sym(&bg)).unwrap();
    assert!(delta_two_transitivity(&bg, &gg, 2).unwrap().pass);
    assert!(delta_two_transitivity(&bg, &gg, 3).unwrap_err().is_window());
}
