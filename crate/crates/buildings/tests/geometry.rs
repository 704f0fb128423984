use std::collections::{BTreeSet, HashMap, VecDeque};

use buildings::*;
use tree_core::{build_semiregular, TreeFile, V};

fn free33(d: usize) -> BuildingTree {
    build_building(&CoxeterSystem::lettered(&[], vec![3, 3]).unwrap(), d).unwrap()
}

fn grid(d: usize) -> BuildingTree {
    // blocks {a,b} and {c}
    build_building(&CoxeterSystem::lettered(&[(0, 1)], vec![3, 3, 3]).unwrap(), d).unwrap()
}

#[test]
fn small_counts() {
    let b = free33(1);
    let t = &b.tree;
    let near: Vec<V> = b.chambers().into_iter().filter(|&c| t.depth[c as usize] <= 2).collect();
    assert_eq!(near.len(), 5);
    assert_eq!(t.neighbors(b.base()).len(), 2);
    for r in t.neighbors(b.base()) {
        assert_eq!(t.neighbors(*r).len(), 3);
    }
    assert!(b.check().is_empty(), "{:?}", b.check());
    let b0 = free33(0);
    assert_eq!(b0.chambers(), [0]);
    assert_eq!(b0.residues().len(), 2);
    let bad = CoxeterSystem::lettered(&[(0, 1), (1, 2)], vec![3, 3, 3]).unwrap();
    assert!(matches!(build_building(&bad, 1), Err(BuildingError::Precondition(_))));
}

#[test]
fn legal_colorings_hold() {
    for b in [free33(3), grid(2), build_building(&CoxeterSystem::lettered(&[], vec![3, 4, 3]).unwrap(), 2).unwrap()] {
        assert!(b.check().is_empty(), "{:?}", b.check());
        assert!(!b.full_residues().is_empty());
        for r in b.full_residues() {
            let k = b.block_of(r).unwrap();
            assert_eq!(b.tree.neighbors(r).len(), b.blocks()[k].iter().map(|&i| b.system.q[i]).product::<usize>());
        }
    }
    let g = grid(1);
    assert_eq!(g.tree.neighbors(g.base()).len(), 2);
    assert_eq!(g.tree.neighbors(g.residue_of(g.base(), 0).unwrap()).len(), 9);
}

#[test]
fn two_blocks_give_semiregular_tree() {
    let b = free33(2);
    let s = build_semiregular(2, 3, 5).unwrap();
    assert_eq!(TreeFile::from_tree(&b.tree).edges, TreeFile::from_tree(&s).edges);
    assert_eq!(b.tree.vtype, s.vtype);
}

/// Chamber adjacency: two chambers of one residue differing in one color.
fn chamber_bfs(b: &BuildingTree, c: V) -> HashMap<V, usize> {
    let mut dist = HashMap::from([(c, 0)]);
    let mut q = VecDeque::from([c]);
    while let Some(x) = q.pop_front() {
        for &r in b.tree.neighbors(x) {
            for &y in b.tree.neighbors(r) {
                let diff = (0..b.system.len()).filter(|&i| b.colors(x)[i] != b.colors(y)[i]).count();
                if diff == 1 && !dist.contains_key(&y) {
                    dist.insert(y, dist[&x] + 1);
                    q.push_back(y);
                }
            }
        }
    }
    dist
}

#[test]
fn gallery_distance_matches_chamber_graph() {
    for b in [free33(2), grid(2)] {
        for &c in &[b.base(), b.chambers()[3]] {
            let bfs = chamber_bfs(&b, c);
            for d in b.chambers() {
                assert_eq!(b.gallery_distance(c, d).unwrap(), bfs[&d], "{c} {d}");
                let nf = b.delta(c, d).unwrap();
                assert_eq!(normal_form(&b.system, &nf.word()).unwrap(), nf);
            }
        }
    }
}

#[test]
fn projections_agree() {
    for b in [free33(2), grid(2)] {
        for r in b.full_residues() {
            for c in b.chambers() {
                let p = b.projection(r, c).unwrap();
                assert_eq!(b.projection_by_distance(r, c).unwrap(), p);
                let bfs = chamber_bfs(&b, c);
                let best = b.tree.neighbors(r).iter().min_by_key(|&&x| bfs[&x]).unwrap();
                assert_eq!(*best, p);
                assert!(b.tree.neighbors(r).contains(&p));
                if b.tree.neighbors(r).contains(&c) {
                    assert_eq!(p, c);
                }
            }
        }
    }
    let b = free33(1);
    let leaf_res = b.residues().into_iter().find(|&r| !b.tree.is_full(r)).unwrap();
    assert!(b.projection(leaf_res, b.base()).unwrap_err().is_window());
}

#[test]
fn wings_partition_and_intersect() {
    let b = grid(2);
    let all: BTreeSet<V> = b.chambers().into_iter().collect();
    let base = b.base();
    for k in 0..b.blocks().len() {
        let r = b.residue_of(base, k).unwrap();
        let jk = b.blocks()[k].clone();
        let mut union = BTreeSet::new();
        for &c in b.tree.neighbors(r) {
            let w = b.wing(c, &jk).unwrap();
            assert_eq!(w, b.wing_by_distance(c, &jk).unwrap());
            // the branch hanging off c away from r
            let branch: Vec<V> = b.chambers().into_iter().filter(|&d| b.tree.path(r, d)[1] == c).collect();
            assert_eq!(w, branch);
            for d in w {
                assert!(union.insert(d));
            }
        }
        assert_eq!(union, all);
    }
    let c = b.tree.neighbors(b.residue_of(base, 0).unwrap())[4];
    let both = b.wing(c, &[0, 1]).unwrap();
    let a: BTreeSet<V> = b.wing(c, &[0]).unwrap().into_iter().collect();
    let bb: BTreeSet<V> = b.wing(c, &[1]).unwrap().into_iter().collect();
    assert_eq!(both, a.intersection(&bb).copied().collect::<Vec<_>>());
    assert_eq!(b.wing(c, &[0]).unwrap(), b.wing_by_distance(c, &[0]).unwrap());
    assert!(b.wing(c, &[0, 2]).is_err());
}

#[test]
fn dump_round_trip() {
    let b = grid(1);
    let j = b.to_json();
    let f: BuildingFile = serde_json::from_str(&j).unwrap();
    assert_eq!(f.chambers.len(), b.chambers().len());
    assert_eq!(f.residues.len(), b.residues().len());
    assert_eq!(f.tree.edges.len(), b.tree.len() - 1);
    let c = b.tree.neighbors(b.residue_of(b.base(), 0).unwrap())[5];
    let rec = &f.chambers[&c];
    assert_eq!(rec.colors.values().copied().collect::<Vec<_>>(), b.colors(c));
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    assert!(v.get("degrees").is_some() && v.get("chambers").is_some());
}

#[test]
fn s_delta_examples() {
    let b = free33(1);
    let s = s_delta_translation(&b, b.base()).unwrap();
    assert!(s.equal);
    assert_eq!(s.chambers.len(), 1 + 2 + 2);
    let b = grid(2);
    for c in b.chambers().into_iter().filter(|&c| b.tree.depth[c as usize] <= 2) {
        let s = s_delta_translation(&b, c).unwrap();
        assert!(s.equal, "{c}");
        assert_eq!(s.chambers.len(), 1 + 8 + 2);
    }
    assert!(s_delta_translation(&free33(0), 0).unwrap_err().is_window());
}
