use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::perm::Perm;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub point: u32,
    /// Strong generators introduced at this level; they fix all earlier base points.
    pub gens: Vec<Perm>,
    pub orbit: Vec<u32>,
    /// `trans[x] = (u, u^-1)` with `u(point) = x`.
    pub trans: Vec<Option<Box<(Perm, Perm)>>>,
}

/// Stabilizer chain without redundancy pruning; prefix levels may have trivial orbits.
#[derive(Clone, Debug)]
pub(crate) struct Chain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl Chain {
    pub fn new(degree: usize, prefix: &[u32]) -> Self {
        let mut c = Chain { degree, levels: Vec::new() };
        for &p in prefix {
            if c.levels.iter().any(|l| l.point == p) {
                continue;
            }
            c.push_level(p);
        }
        c
    }

    fn push_level(&mut self, p: u32) {
        let mut trans = vec![None; self.degree];
        let id = Perm::identity(self.degree);
        trans[p as usize] = Some(Box::new((id.clone(), id)));
        self.levels.push(Level { point: p, gens: Vec::new(), orbit: vec![p], trans });
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.order_from(0)
    }

    pub fn order_from(&self, i: usize) -> BigUint {
        let mut o = BigUint::one();
        for l in &self.levels[i..] {
            o *= BigUint::from(l.orbit.len());
        }
        o
    }

    pub fn gens_from(&self, i: usize) -> impl Iterator<Item = &Perm> {
        self.levels[i..].iter().flat_map(|l| l.gens.iter())
    }

    fn recompute(&mut self, i: usize) {
        let gens: Vec<Perm> = self.gens_from(i).cloned().collect();
        let lvl = &mut self.levels[i];
        let mut head = 0;
        while head < lvl.orbit.len() {
            let x = lvl.orbit[head];
            head += 1;
            for s in &gens {
                let y = s.apply(x);
                if lvl.trans[y as usize].is_none() {
                    let u = s.mul(&lvl.trans[x as usize].as_ref().expect("orbit point has transversal").0);
                    let ui = u.inv();
                    lvl.trans[y as usize] = Some(Box::new((u, ui)));
                    lvl.orbit.push(y);
                }
            }
        }
    }

    /// Sifts `g` starting at level `start`; returns the level where it dropped out
    /// (or `levels.len()`) together with the residue.
    pub fn sift(&self, mut g: Perm, start: usize) -> (usize, Perm) {
        for (l, lvl) in self.levels.iter().enumerate().skip(start) {
            let x = g.apply(lvl.point);
            match &lvl.trans[x as usize] {
                None => return (l, g),
                Some(t) => g = t.0.inv_mul(&g, &t.1),
            }
        }
        (self.levels.len(), g)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (j, h) = self.sift(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    fn add_residue(&mut self, h: Perm, j: usize) {
        if j == self.levels.len() {
            let p = h.moved_points().next().expect("nontrivial residue");
            self.push_level(p);
        }
        self.levels[j].gens.push(h);
        for i in (0..=j).rev() {
            self.recompute(i);
        }
    }

    /// Returns true if `g` enlarged the chain.
    pub fn add(&mut self, g: Perm) -> bool {
        let (j, h) = self.sift(g, 0);
        if j == self.levels.len() && h.is_identity() {
            return false;
        }
        self.add_residue(h, j);
        true
    }

    /// Deterministic Schreier-generator test; completes the chain in place.
    pub fn verify(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            i -= 1;
            let mut restart = None;
            let gens: Vec<Perm> = self.gens_from(i).cloned().collect();
            'scan: for &x in &self.levels[i].orbit.clone() {
                for s in &gens {
                    let ux = &self.levels[i].trans[x as usize].as_ref().unwrap().0;
                    let y = s.apply(x);
                    let uy = self.levels[i].trans[y as usize].as_ref().unwrap();
                    let sg = uy.0.inv_mul(&s.mul(ux), &uy.1);
                    let (j, h) = self.sift(sg, i + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        restart = Some((j, h));
                        break 'scan;
                    }
                }
            }
            if let Some((j, h)) = restart {
                self.add_residue(h, j);
                i = j + 1;
            }
        }
    }

    /// Uniform element of the group described by levels `from..`.
    pub fn random_from(&self, from: usize, rng: &mut ChaCha8Rng) -> Perm {
        let mut g = Perm::identity(self.degree);
        for lvl in &self.levels[from..] {
            let x = lvl.orbit[rng.gen_range(0..lvl.orbit.len())];
            g = g.mul(&lvl.trans[x as usize].as_ref().unwrap().0);
        }
        g
    }
}

/// Product-replacement random walk on a generating set.
pub(crate) struct Walk {
    v: Vec<Perm>,
    acc: Perm,
}

impl Walk {
    pub fn new(degree: usize, gens: &[Perm], rng: &mut ChaCha8Rng) -> Self {
        let mut v: Vec<Perm> = gens.to_vec();
        if v.is_empty() {
            v.push(Perm::identity(degree));
        }
        let n = v.len();
        let mut k = 0;
        while v.len() < 10 {
            v.push(v[k % n].clone());
            k += 1;
        }
        let mut w = Walk { v, acc: Perm::identity(degree) };
        for _ in 0..50 {
            w.next(rng);
        }
        w
    }

    pub fn next(&mut self, rng: &mut ChaCha8Rng) -> Perm {
        let n = self.v.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        self.v[i] = if rng.gen_bool(0.5) { self.v[i].mul(&self.v[j]) } else { self.v[i].mul(&self.v[j].inv()) };
        self.acc = self.acc.mul(&self.v[i]);
        self.acc.clone()
    }
}

/// Randomized Schreier-Sims. With a known order the random phase stops as soon
/// as it is reached (product of orbit lengths can only undercount); otherwise
/// the result is certified by [`Chain::verify`].
pub(crate) fn build(
    degree: usize,
    gens: &[Perm],
    prefix: &[u32],
    known: Option<&BigUint>,
    rng: &mut ChaCha8Rng,
) -> Chain {
    let mut c = Chain::new(degree, prefix);
    for g in gens {
        if !g.is_identity() {
            c.add(g.clone());
        }
    }
    if gens.iter().all(|g| g.is_identity()) {
        return c;
    }
    if let Some(t) = known {
        if &c.order() == t {
            return c;
        }
    }
    let mut walk = Walk::new(degree, gens, rng);
    let mut quiet = 0;
    loop {
        if let Some(t) = known {
            if &c.order() >= t {
                return c;
            }
        } else if quiet >= 24 {
            break;
        }
        if c.add(walk.next(rng)) {
            quiet = 0;
        } else {
            quiet += 1;
            if known.is_some() && quiet >= 400 {
                break;
            }
        }
    }
    c.verify();
    c
}
