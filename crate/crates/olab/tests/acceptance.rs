use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use buildings::*;
use char_theory::*;
use filtration::*;
use nalgebra::{Complex, DMatrix, SymmetricEigen};
use perm_group::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tree_core::*;

type C64 = Complex<f64>;
type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($c:expr, $($m:tt)+) => {
        if !$c {
            return Err(format!($($m)+));
        }
    };
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn full(radius: usize) -> TreeGroup {
    TreeGroup::semiregular(3, 3, GroupSpec::FullAut, radius).unwrap()
}

fn window(g: &TreeGroup, r: usize) -> Subtree {
    let t = g.tree();
    ball_vertex(&t, t.base, r).unwrap()
}

fn hypothesis_h() -> Check {
    let g = full(4);
    let r = verify_hypothesis(&g, &FamilyKind::SFull, &window(&g, 3)).map_err(e)?;
    ensure!(r.pass && r.failures == 0 && !r.vacuous, "{} failures, first {:?}", r.failures, r.examples.first());
    Ok(format!("{} subtrees, {} pairs, 0 failures", r.subtrees, r.pairs))
}

fn concordance(g: &TreeGroup, fam: &FamilyKind, w: &Subtree, max_depth: usize) -> std::result::Result<usize, String> {
    let mut n = 0;
    for s in members(g, fam, w).map_err(e)? {
        let l = stratum_of(g, fam, &s).map_err(e)?.ok_or_else(|| format!("{} member {:?} has no stratum", fam.name(), s.verts()))?;
        if l > max_depth {
            continue;
        }
        let h = height_of(g, fam, &s).map_err(e)?;
        ensure!(h == l, "{}: {:?} has height {h}, stratum {l}", fam.name(), s.verts());
        n += 1;
    }
    ensure!(n > 0, "{}: nothing checked", fam.name());
    Ok(n)
}

fn stratification() -> Check {
    let g = full(5);
    let w = window(&g, 3);
    // at most 2 interior vertices is depth at most 3
    let a = concordance(&g, &FamilyKind::SFull, &w, 3)?;
    let b = concordance(&g, &FamilyKind::SQ(0), &w, 3)?;
    let c = concordance(&g, &FamilyKind::SQ(1), &w, 3)?;
    let gp = TreeGroup::semiregular(3, 3, GroupSpec::FullAutPlus, 7).unwrap();
    let d = concordance(&gp, &FamilyKind::SV1, &window(&gp, 5), 3)?;
    Ok(format!("sfull {a}, sq0 {b}, sq1 {c}, sv1 {d} subtrees"))
}

fn factorization_plus() -> Check {
    let g = full(4);
    let w = window(&g, 3);
    let opts = FactorizationOptions::default();
    let mut parts = Vec::new();
    for (fam, l) in [(FamilyKind::SFull, 2), (FamilyKind::SQ(0), 1), (FamilyKind::SQ(0), 2)] {
        let r = verify_factorization(&g, &fam, l, true, &w, &opts).map_err(e)?;
        let tag = format!("{} depth {l}", fam.name());
        ensure!(r.sampling.mode == "exhaustive", "{tag}: sampled");
        ensure!(r.hypothesis_pass && r.cond1_pass && r.cond2_pass && r.cond3_pass == Some(true) && r.pass, "{tag} fails: {:?}", r.instances.iter().find_map(|i| i.failure.clone()));
        let mut witnessed = 0;
        for i in r.instances.iter().filter(|i| !i.v_in_u) {
            let x = i.witness.clone().ok_or_else(|| format!("{tag}: instance without witness"))?;
            let (u, v, x) = (Subtree::from_sorted(i.u.clone()), Subtree::from_sorted(i.v.clone()), Subtree::from_sorted(x));
            let out = check_witness(&g, &u, &v, &x, 2, opts.cap).map_err(e)?;
            ensure!(out.u_in_w && out.holds, "{tag}: witness {:?} does not recheck", x.verts());
            witnessed += 1;
        }
        parts.push(format!("{tag}: {} instances, {witnessed} witnesses", r.instances.len()));
    }
    let r = verify_factorization(&g, &FamilyKind::SFull, 1, true, &w, &opts).map_err(e)?;
    ensure!(!r.cond1_pass && !r.pass, "sfull depth 1 unexpectedly passes condition 1");
    let f = r.instances.iter().find_map(|i| i.failure.clone().filter(|f| f.condition == 1)).ok_or("no condition 1 failure recorded")?;
    ensure!(f.element.as_ref().is_some_and(|x| !x.is_empty()), "condition 1 failure without element");
    parts.push(format!("sfull depth 1 fails condition 1 ({})", f.reason));
    Ok(parts.join("; "))
}

fn ip1() -> Check {
    let sym3 = GroupSpec::UniversalLocal { locals: vec![LocalGroup::symmetric(3), LocalGroup::symmetric(3)] };
    let mut parts = Vec::new();
    for (name, spec) in [("FullAut", GroupSpec::FullAut), ("Universal(Sym3)", sym3)] {
        let g = TreeGroup::semiregular(3, 3, spec, 4).unwrap();
        let t = g.tree();
        let mut n = 0;
        for s in complete_subtrees(&t, &window(&g, 3), usize::MAX).map_err(e)?.into_iter().filter(|s| s.len() > 1) {
            let r = verify_ipk(&g, 1, &s).map_err(e)?;
            ensure!(r.holds, "{name}: {:?}: {} != {}", r.subtree, r.lhs, r.product);
            n += 1;
        }
        parts.push(format!("{name}: {n} subtrees"));
    }
    Ok(parts.join(", "))
}

fn l_table() -> Check {
    // rows q = 0..3, columns k = 1..3
    let table = [[1, 3, 5], [1, 3, 5], [1, 1, 3], [1, 1, 3]];
    for (q, row) in table.iter().enumerate() {
        for (j, &want) in row.iter().enumerate() {
            let k = j + 1;
            let formula = if q % 2 == 0 { (2 * k as i64 - q as i64 - 1).max(1) } else { (2 * k as i64 - q as i64).max(1) };
            ensure!(formula == want, "table and formula disagree at q={q} k={k}");
            ensure!(l_qk(q, k) as i64 == want, "l({q},{k}) = {}, want {want}", l_qk(q, k));
        }
    }
    Ok("12 entries".into())
}

/// Numerical character table from the eigenvectors of a random combination
/// of class-sum operators in the basis K_k / sqrt|C_k|.
fn oracle_table(cl: &ConjugacyClasses) -> Vec<Vec<C64>> {
    let r = cl.len();
    let n = cl.elements.len() as f64;
    let mut c = vec![vec![vec![0f64; r]; r]; r];
    for (k, z) in cl.reps.iter().enumerate() {
        for x in &cl.elements {
            let y = x.inv().mul(z);
            c[cl.class_index(x).unwrap()][cl.class_index(&y).unwrap()][k] += 1.0;
        }
    }
    let sz: Vec<f64> = cl.sizes.iter().map(|&s| s as f64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let mut s = DMatrix::zeros(r, r);
    for cj in &c {
        let m = DMatrix::from_fn(r, r, |k, l| cj[l][k] * sz[k].sqrt() / sz[l].sqrt());
        s += (&m + m.transpose()) * rng.gen_range(-1.0..1.0);
    }
    let eig = SymmetricEigen::new(s);
    let mut idx: Vec<usize> = (0..r).collect();
    idx.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let mut vecs: Vec<Vec<C64>> = Vec::new();
    let mut i = 0;
    while i < r {
        let mut j = i + 1;
        while j < r && (eig.eigenvalues[idx[j]] - eig.eigenvalues[idx[i]]).abs() < 1e-7 {
            j += 1;
        }
        match j - i {
            1 => vecs.push(eig.eigenvectors.column(idx[i]).iter().map(|&x| C64::new(x, 0.0)).collect()),
            2 => {
                let (u1, u2) = (eig.eigenvectors.column(idx[i]), eig.eigenvectors.column(idx[i + 1]));
                for sgn in [-1.0, 1.0] {
                    vecs.push((0..r).map(|k| C64::new(u1[k], sgn * u2[k]) / 2f64.sqrt()).collect());
                }
            }
            d => panic!("eigenvalue cluster of size {d}"),
        }
        i = j;
    }
    vecs.iter()
        .map(|v| {
            let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            let deg = n.sqrt() * v[0].norm() / norm;
            (0..r).map(|k| v[k].conj() / (v[0].conj() * sz[k].sqrt()) * deg).collect()
        })
        .collect()
}

fn exact_complex(t: &CharacterTable) -> Vec<Vec<C64>> {
    t.values.iter().map(|row| row.iter().map(|v| t.ring.to_complex(v)).map(|(a, b)| C64::new(a, b)).collect()).collect()
}

/// Row `i` of `a` matches row `perm[i]` of `b`.
fn match_rows(a: &[Vec<C64>], b: &[Vec<C64>]) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut perm = Vec::new();
    for ra in a {
        let j = (0..b.len()).find(|&j| !used[j] && ra.iter().zip(&b[j]).all(|(x, y)| (x - y).norm() < 1e-6))?;
        used[j] = true;
        perm.push(j);
    }
    Some(perm)
}

fn p(cycles: &[&[u32]], n: usize) -> Perm {
    let mut img: Vec<u32> = (0..n as u32).collect();
    for c in cycles {
        for i in 0..c.len() {
            img[c[i] as usize] = c[(i + 1) % c.len()];
        }
    }
    Perm::from_images(img).unwrap()
}

fn sym(n: usize) -> PermGroup {
    let cyc: Vec<u32> = (0..n as u32).collect();
    PermGroup::new(n, vec![p(&[&[0, 1]], n), p(&[&cyc], n)])
}

fn cyclic(n: usize) -> PermGroup {
    PermGroup::new(n, vec![p(&[&(0..n as u32).collect::<Vec<_>>()], n)])
}

fn dihedral(n: usize) -> PermGroup {
    let refl = Perm::from_images((0..n as u32).map(|x| (n as u32 - x) % n as u32).collect()).unwrap();
    PermGroup::new(n, vec![p(&[&(0..n as u32).collect::<Vec<_>>()], n), refl])
}

fn affine(q: u32, mult: u32) -> PermGroup {
    let t = Perm::from_images((0..q).map(|x| (x + 1) % q).collect()).unwrap();
    let m = Perm::from_images((0..q).map(|x| x * mult % q).collect()).unwrap();
    PermGroup::new(q as usize, vec![t, m])
}

fn psl27() -> PermGroup {
    let inv = |x: u32| (1..7).find(|y| x * y % 7 == 1).unwrap();
    let t = Perm::from_images((0..8).map(|x| if x == 7 { 7 } else { (x + 1) % 7 }).collect()).unwrap();
    let m = Perm::from_images((0..8).map(|x| if x == 7 { 7 } else { x * 2 % 7 }).collect()).unwrap();
    let s = Perm::from_images((0..8).map(|x| if x == 7 { 0 } else if x == 0 { 7 } else { (7 - inv(x)) % 7 }).collect()).unwrap();
    PermGroup::new(8, vec![t, m, s])
}

fn corpus() -> Vec<(String, PermGroup)> {
    let t2 = build_semiregular(3, 3, 2).unwrap();
    let g48 = truncated_group(&t2, &GroupSpec::FullAut).unwrap();
    let t3 = build_semiregular(3, 3, 3).unwrap();
    let fix = truncated_group(&t3, &GroupSpec::FullAut).unwrap().fixator(ball_vertex(&t3, 0, 1).unwrap().verts());
    let a = |n: usize| PermGroup::new(n, (2..n as u32).map(|k| p(&[&[0, 1, k]], n)).collect());
    let quat = PermGroup::new(8, vec![p(&[&[0, 1, 3, 6], &[2, 5, 7, 4]], 8), p(&[&[0, 2, 3, 7], &[1, 4, 6, 5]], 8)]);
    let s3c3 = PermGroup::new(6, vec![p(&[&[0, 1]], 6), p(&[&[0, 1, 2]], 6), p(&[&[3, 4, 5]], 6)]);
    let mut out: Vec<(String, PermGroup)> = vec![
        ("trivial".into(), PermGroup::trivial(2)),
        ("Q8".into(), quat),
        ("A4".into(), a(4)),
        ("A5".into(), a(5)),
        ("S3xC3".into(), s3c3),
        ("F20".into(), affine(5, 2)),
        ("F21".into(), affine(7, 2)),
        ("AGL(1,7)".into(), affine(7, 3)),
        ("PSL(2,7)".into(), psl27()),
        ("FullAut(3,3,2)".into(), g48),
        ("Fix(B(v,1)) in FullAut(3,3,3)".into(), fix),
    ];
    for n in [2, 3, 4, 5, 6, 7, 8, 9, 10, 12] {
        out.push((format!("C{n}"), cyclic(n)));
    }
    for n in [3, 4, 5, 6, 8, 10, 12] {
        out.push((format!("D{n}"), dihedral(n)));
    }
    for n in [3, 4, 5] {
        out.push((format!("S{n}"), sym(n)));
    }
    out.retain(|(_, g)| g.order_u64().is_some_and(|o| o <= 200));
    out
}

fn table_checks(name: &str, g: &PermGroup) -> std::result::Result<CharacterTable, String> {
    let t = character_table(g).map_err(|x| format!("{name}: {x}"))?;
    t.verify().map_err(|x| format!("{name}: {x}"))?;
    let v = exact_complex(&t);
    let n = t.order as f64;
    let sz = t.class_sizes();
    let r = t.len();
    for i in 0..r {
        for j in 0..r {
            let row: C64 = (0..r).map(|k| v[i][k] * v[j][k].conj() * sz[k] as f64).sum::<C64>() / n;
            let col: C64 = (0..r).map(|k| v[k][i] * v[k][j].conj()).sum::<C64>() * sz[i] as f64 / n;
            let want = if i == j { 1.0 } else { 0.0 };
            ensure!((row - want).norm() < 1e-9, "{name}: row orthogonality ({i},{j})");
            ensure!((col - want).norm() < 1e-9, "{name}: column orthogonality ({i},{j})");
        }
    }
    match_rows(&v, &oracle_table(&t.classes)).ok_or_else(|| format!("{name}: table differs from oracle"))?;
    Ok(t)
}

fn character_tables() -> Check {
    let c = corpus();
    for (name, g) in &c {
        table_checks(name, g)?;
    }
    let biggest = c.iter().filter_map(|(_, g)| g.order_u64()).max().unwrap();
    Ok(format!("{} groups up to order {biggest}", c.len()))
}

/// `dim V^H = |H|⁻¹ Σ_{h∈H} χ(h)` from the oracle table.
fn fixed_dim(cl: &ConjugacyClasses, row: &[C64], h: &PermGroup) -> f64 {
    let el = h.elements(1 << 16).unwrap();
    let s: C64 = el.iter().map(|x| row[cl.class_index(x).unwrap()]).sum();
    s.re / el.len() as f64
}

fn standard_count_and_witness() -> Check {
    let g = full(5);
    let t = g.tree();
    let seed = ball_vertex(&t, t.base, 1).unwrap();
    let r = standard_count(&g, &FamilyKind::SQ(0), &seed, Some(&window(&g, 2)), perm_group::DEFAULT_MAX_ORDER).map_err(e)?;
    ensure!(r.factorization_plus == Some(true), "factorization⁺ not confirmed in the window");
    ensure!(r.aut_order == 6 && r.h_subtrees.len() == 3, "aut order {} with {} H members", r.aut_order, r.h_subtrees.len());
    let edges: Vec<Vec<V>> = t.neighbors(t.base).iter().map(|&n| { let mut e = vec![t.base, n]; e.sort(); e }).collect();
    ensure!(r.h_subtrees.iter().all(|h| edges.contains(h)), "H family is not the edges at the centre: {:?}", r.h_subtrees);
    // Aut(C) on the three leaves, with H = leaf stabilizers
    let aut = sym(3);
    let cl = conjugacy_classes(&aut, 1 << 10).map_err(e)?;
    let table = oracle_table(&cl);
    let leaves: Vec<V> = t.neighbors(t.base).to_vec();
    let mut brute = Vec::new();
    for row in &table {
        let fixed: Vec<u64> = r.h_subtrees.iter().map(|h| {
            let leaf = leaves.iter().position(|l| h.contains(l)).unwrap() as u32;
            fixed_dim(&cl, row, &aut.fixator(&[leaf])).round() as u64
        }).collect();
        brute.push((row[0].re.round() as u64, fixed));
    }
    let mut got: Vec<(u64, Vec<u64>)> = r.irreps.iter().map(|i| (i.label.degree, i.fixed.clone())).collect();
    brute.sort();
    got.sort();
    ensure!(got == brute, "fixed dimensions {got:?} differ from character sums {brute:?}");
    let standard: Vec<_> = brute.iter().filter(|(_, f)| f.iter().all(|&x| x == 0)).collect();
    ensure!(r.count == 1 && standard.len() == 1 && standard[0].0 == 1, "count {} (oracle {})", r.count, standard.len());
    let sign = table.iter().position(|row| (row[0].re - 1.0).abs() < 1e-9 && row.iter().any(|x| x.re < -0.5)).unwrap();
    ensure!((0..cl.len()).all(|k| (table[sign][k].re - parity(&cl.reps[k])).abs() < 1e-9), "standard irrep is not the sign: {:?}, parities {:?}", table[sign], cl.reps.iter().map(parity).collect::<Vec<_>>());

    for n in [3, 4, 5] {
        let g = sym(n);
        let pts: Vec<u32> = (0..n as u32).collect();
        let w = two_transitive_witness(&g, &pts).map_err(e)?;
        ensure!(w.two_transitive && w.rank == 2, "S{n}: rank {}", w.rank);
        let t = character_table(&g).map_err(e)?;
        let psi = w.psi.ok_or(format!("S{n}: π - 1 not irreducible"))?;
        ensure!(t.degrees[psi] == n as u64 - 1, "S{n}: ψ has degree {}", t.degrees[psi]);
        let v = exact_complex(&t);
        for (k, z) in t.classes.reps.iter().enumerate() {
            let fixed = pts.iter().filter(|&&x| z.apply(x) == x).count() as f64;
            ensure!((fixed - 1.0 - v[psi][k].re).abs() < 1e-9, "S{n}: π ≠ 1 + ψ at class {k}");
        }
        let wit = w.witness.ok_or(format!("S{n}: no witness"))?;
        let stab = g.fixator(&[0]);
        let row = &oracle_table(&t.classes)[match_rows(&v, &oracle_table(&t.classes)).unwrap()[wit.row]];
        ensure!(fixed_dim(&t.classes, row, &stab).abs() < 1e-9, "S{n}: witness has stabilizer-fixed vectors");
    }
    Ok("Aut(C) = Sym(3), standard = {sign}, count 1; S3, S4, S5 witnesses with π = 1 + ψ".into())
}

fn parity(g: &Perm) -> f64 {
    let n = g.images().len();
    let mut seen = vec![false; n];
    let mut s = 1.0;
    for i in 0..n {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = g.apply(j as u32) as usize;
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            s = -s;
        }
    }
    s
}

fn hull(t: &TruncatedTree, q: &[V]) -> BTreeSet<V> {
    let mut out: BTreeSet<V> = q.iter().copied().collect();
    for &a in q {
        for &b in q {
            let (mut x, mut y) = (a, b);
            while x != y {
                if t.depth[x as usize] >= t.depth[y as usize] {
                    x = t.parent[x as usize];
                    out.insert(x);
                } else {
                    y = t.parent[y as usize];
                    out.insert(y);
                }
            }
        }
    }
    out
}

fn sv1_equivalence() -> Check {
    let g = TreeGroup::semiregular(3, 3, GroupSpec::FullAutPlus, 7).unwrap();
    let t = g.tree();
    let w = window(&g, 6);
    let levels = sv1_levels(&t, &w, 4).map_err(e)?;
    let centres: Vec<V> =
        w.verts().iter().copied().filter(|&v| t.vtype[v as usize] == 0 && ball_vertex(&t, v, 2).is_ok_and(|b| b.is_subset(&w))).collect();
    let mut expect: Vec<BTreeSet<Vec<V>>> = vec![BTreeSet::new(); 5];
    let mut stack: Vec<(usize, Vec<V>)> = vec![(0, Vec::new())];
    while let Some((start, q)) = stack.pop() {
        if !q.is_empty() && hull(&t, &q).iter().all(|&v| t.vtype[v as usize] != 0 || q.contains(&v)) {
            let mut u = BTreeSet::new();
            for &v in &q {
                u.extend(ball_vertex(&t, v, 2).unwrap().verts().iter().copied());
            }
            expect[q.len()].insert(u.into_iter().collect());
        }
        if q.len() < 4 {
            for i in start..centres.len() {
                let mut next = q.clone();
                next.push(centres[i]);
                stack.push((i + 1, next));
            }
        }
    }
    let mut sizes = Vec::new();
    for l in 1..=4 {
        let got: BTreeSet<Vec<V>> = levels[l].iter().map(|s| s.verts().to_vec()).collect();
        ensure!(got == expect[l], "|Q| = {l}: iterative {} vs hull {}", got.len(), expect[l].len());
        ensure!(!got.is_empty(), "|Q| = {l}: empty");
        sizes.push(got.len().to_string());
    }
    Ok(format!("{} centres; per |Q| = 1..4: {}", centres.len(), sizes.join("/")))
}

fn building_suite() -> Check {
    let c = CoxeterSystem::lettered(&[], vec![3, 3]).map_err(e)?;
    let b = build_building(&c, 4).map_err(e)?;
    let bad = b.check();
    ensure!(bad.is_empty(), "invariants: {:?}", bad.first());
    let t = &b.tree;
    let sym: Vec<LocalGroup> = b.system.q.iter().map(|&q| LocalGroup::symmetric(q)).collect();
    let g = universal_group(&b, &sym).map_err(e)?;
    let model = 3;
    let mut nres = 0;
    for r in b.full_residues().into_iter().filter(|&r| t.depth[r as usize] as usize + model <= t.radius) {
        let k = b.block_of(r).unwrap();
        let id = if b.residue_of(b.base(), k) == Some(r) { verify_ipj(&b, &g, k, model) } else { verify_ipv1(&g, r, model).map_err(Into::into) }
            .map_err(e)?;
        ensure!(id.holds, "residue {r}: {} != {}", id.lhs, id.product);
        nres += 1;
    }
    let h = verify_h_v1(&b, &g, &sym, t.radius - 2).map_err(e)?;
    ensure!(h.report.pass && !h.report.vacuous && !h.exploratory, "H_V1: {} failures", h.report.failures);
    for radius in 1..=4 {
        let d = delta_two_transitivity(&b, &g, radius).map_err(e)?;
        ensure!(d.pass, "δ-2-transitivity fails at radius {radius}: {:?}", d.failing);
    }
    let mut nch = 0;
    for ch in b.chambers().into_iter().filter(|&ch| t.depth[ch as usize] as usize + 2 <= t.radius) {
        let s = s_delta_translation(&b, ch).map_err(e)?;
        ensure!(s.equal, "R'({ch}) differs from the 2-ball");
        nch += 1;
    }
    let cyc: Vec<LocalGroup> = b.system.q.iter().map(|&q| LocalGroup::cyclic(q)).collect();
    let gc = universal_group(&b, &cyc).map_err(e)?;
    let dc = delta_two_transitivity(&b, &gc, 2).map_err(e)?;
    let hc = verify_h_v1(&b, &gc, &cyc, t.radius - 2).map_err(e)?;
    ensure!(!dc.pass || !hc.report.pass, "cyclic control passes every check");
    let (x, y) = dc.failing.ok_or("cyclic control: no failing pair recorded")?;
    ensure!(b.delta(b.base(), x).map_err(e)? == b.delta(b.base(), y).map_err(e)?, "cyclic control: failing pair is not one δ class");
    Ok(format!(
        "{} chambers; IP at {nres} residues; H_V1 {} pairs; δ-2 radius 1..4; R' at {nch} chambers; cyclic control fails δ-2 at ({x},{y})",
        b.chambers().len(),
        h.report.pairs
    ))
}

fn main() {
    let criteria: Vec<(&str, Option<u64>, fn() -> Check)> = vec![
        ("hypothesis H, FullAut(3,3,4), margin 1", Some(60), hypothesis_h),
        ("stratification concordance", None, stratification),
        ("factorization⁺ and the depth-1 negative case", Some(600), factorization_plus),
        ("IP_1 order identity", None, ip1),
        ("L_{q,k} table", None, l_table),
        ("standard-representation count and 2-transitive witness", Some(30), standard_count_and_witness),
        ("character-table integrity", None, character_tables),
        ("SV1 iterative vs hull", None, sv1_equivalence),
        ("building suite, q = (3,3), D = 4", Some(300), building_suite),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or("panic".into()))
        });
        let el = start.elapsed();
        let over = limit.is_some_and(|l| el > Duration::from_secs(l));
        let time = match limit {
            Some(l) => format!("{:.2}s / {l}s", el.as_secs_f64()),
            None => format!("{:.2}s", el.as_secs_f64()),
        };
        match res {
            Ok(detail) if !over => println!("PASS  {name} [{time}]: {detail}"),
            Ok(detail) => {
                failed += 1;
                println!("FAIL  {name} [{time}]: over the time limit; {detail}");
            }
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} [{time}]: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
