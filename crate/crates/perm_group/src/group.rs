use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chain::{build, Chain};
use crate::perm::Perm;
use crate::{GroupError, Result};

pub const DEFAULT_SEED: u64 = 0x5eed_0f_9a;

/// A finite permutation group with a stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: Arc<Chain>,
    order: BigUint,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDump {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    pub order: String,
    pub base: Vec<u32>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, gens: Vec::new(), chain: Arc::new(Chain::new(degree, &[])), order: BigUint::one() }
    }

    pub fn new(degree: usize, gens: Vec<Perm>) -> Self {
        Self::build(degree, gens, &[], None, DEFAULT_SEED).expect("no order to contradict")
    }

    /// Builds with a known order, which lets the randomized phase stop early.
    /// Fails if the generators give a different order.
    pub fn with_order(degree: usize, gens: Vec<Perm>, order: &BigUint) -> Result<Self> {
        Self::build(degree, gens, &[], Some(order), DEFAULT_SEED)
    }

    pub fn build(degree: usize, gens: Vec<Perm>, prefix: &[u32], known: Option<&BigUint>, seed: u64) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::Inconsistent(format!("generator of degree {} in a group of degree {degree}", g.degree())));
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chain = build(degree, &gens, prefix, known, &mut rng);
        let order = chain.order();
        if let Some(k) = known {
            if &order != k {
                return Err(GroupError::Inconsistent(format!("generated order {order}, expected {k}")));
            }
        }
        Ok(PermGroup { degree, gens, chain: Arc::new(chain), order })
    }

    fn from_chain(degree: usize, chain: Chain, from: usize) -> Self {
        let gens: Vec<Perm> = chain.gens_from(from).cloned().collect();
        let mut c = chain;
        c.levels.drain(..from);
        let order = c.order();
        PermGroup { degree, gens, chain: Arc::new(c), order }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    pub fn strong_gens(&self) -> Vec<Perm> {
        self.chain.gens_from(0).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    pub fn fixes(&self, pts: &[u32]) -> bool {
        self.gens.iter().all(|g| g.fixes_all(pts))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Chain whose base starts with `prefix`.
    fn rebased(&self, prefix: &[u32]) -> Arc<Chain> {
        let base = self.chain.base();
        let mut dedup = Vec::new();
        for &p in prefix {
            if !dedup.contains(&p) {
                dedup.push(p);
            }
        }
        if base.len() >= dedup.len() && base[..dedup.len()] == dedup[..] {
            return self.chain.clone();
        }
        let strong = self.strong_gens();
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ dedup.len() as u64);
        let c = build(self.degree, &strong, &dedup, Some(&self.order), &mut rng);
        debug_assert_eq!(c.order(), self.order);
        Arc::new(c)
    }

    /// The same group over a chain whose base starts with `prefix`, so that
    /// repeated queries on `prefix` skip the rebuild.
    pub fn rebase(&self, prefix: &[u32]) -> PermGroup {
        PermGroup { degree: self.degree, gens: self.gens.clone(), chain: self.rebased(prefix), order: self.order.clone() }
    }

    fn prefix_len(pts: &[u32]) -> usize {
        let mut seen = Vec::new();
        for &p in pts {
            if !seen.contains(&p) {
                seen.push(p);
            }
        }
        seen.len()
    }

    /// Pointwise stabilizer of `pts`.
    pub fn fixator(&self, pts: &[u32]) -> PermGroup {
        let c = self.rebased(pts);
        let k = Self::prefix_len(pts);
        PermGroup::from_chain(self.degree, (*c).clone(), k)
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Perm {
        self.chain.random_from(0, rng)
    }

    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>> {
        if self.order > BigUint::from(cap) {
            return Err(GroupError::Capacity { what: "group order".into(), limit: cap });
        }
        let mut out = vec![Perm::identity(self.degree)];
        for lvl in self.chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for &x in &lvl.orbit {
                let u = &lvl.trans[x as usize].as_ref().unwrap().0;
                for g in &out {
                    next.push(u.mul(g));
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn orbit(&self, p: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[p as usize] = true;
        let mut out = vec![p];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for g in &self.gens {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Orbit of a tuple under the diagonal action, sorted; the first entry is
    /// the canonical (lexicographically least) representative.
    pub fn orbit_of_tuple(&self, t: &[u32], cap: usize) -> Result<Vec<Vec<u32>>> {
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        seen.insert(t.to_vec());
        let mut queue = vec![t.to_vec()];
        while let Some(x) = queue.pop() {
            for g in &self.gens {
                let y: Vec<u32> = x.iter().map(|&p| g.apply(p)).collect();
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(GroupError::Capacity { what: "tuple orbit".into(), limit: cap });
                    }
                    seen.insert(y.clone());
                    queue.push(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// One element per distinct restriction to `s` among `{g : g(s) ⊆ s2}`.
    pub fn transporter_reps(&self, s: &[u32], s2: &[u32], cap: usize) -> Result<Vec<Perm>> {
        let mut target = vec![false; self.degree];
        for &x in s2 {
            target[x as usize] = true;
        }
        let c = self.rebased(s);
        let k = Self::prefix_len(s);
        let mut out = Vec::new();
        let mut stack = vec![(0usize, Perm::identity(self.degree))];
        while let Some((l, g)) = stack.pop() {
            if l == k {
                if out.len() >= cap {
                    return Err(GroupError::Capacity { what: "transporter size".into(), limit: cap });
                }
                out.push(g);
                continue;
            }
            let lvl = &c.levels[l];
            for &x in lvl.orbit.iter().rev() {
                if target[g.apply(x) as usize] {
                    stack.push((l + 1, g.mul(&lvl.trans[x as usize].as_ref().unwrap().0)));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Every `g` with `g(s) ⊆ s2`.
    pub fn transporter_set(&self, s: &[u32], s2: &[u32], cap: usize) -> Result<Vec<Perm>> {
        let reps = self.transporter_reps(s, s2, cap)?;
        if reps.is_empty() {
            return Ok(reps);
        }
        let fix = self.fixator(s);
        let total = BigUint::from(reps.len()) * fix.order();
        if total > BigUint::from(cap) {
            return Err(GroupError::Capacity { what: "transporter size".into(), limit: cap });
        }
        let fe = fix.elements(cap)?;
        let mut out: Vec<Perm> = reps.iter().flat_map(|r| fe.iter().map(move |f| r.mul(f))).collect();
        out.sort();
        Ok(out)
    }

    /// `{g : g(s) = s}`, built from the transporter of `s` into itself.
    pub fn setwise_stab(&self, s: &[u32], cap: usize) -> Result<PermGroup> {
        let reps = self.transporter_reps(s, s, cap)?;
        let fix = self.fixator(s);
        let order = BigUint::from(reps.len()) * fix.order();
        let mut gens = fix.gens.clone();
        gens.extend(reps.into_iter().filter(|r| !r.is_identity()));
        PermGroup::build(self.degree, gens, s, Some(&order), DEFAULT_SEED)
    }

    /// Coset representatives of `Fix(pts)` in `self`, one per image tuple.
    pub fn coset_reps(&self, pts: &[u32], cap: usize) -> Result<Vec<Perm>> {
        let c = self.rebased(pts);
        let k = Self::prefix_len(pts);
        let idx = c.order_from(0) / c.order_from(k);
        if idx > BigUint::from(cap) {
            return Err(GroupError::Capacity { what: "coset index".into(), limit: cap });
        }
        let mut out = vec![Perm::identity(self.degree)];
        for lvl in c.levels[..k].iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for &x in &lvl.orbit {
                let u = &lvl.trans[x as usize].as_ref().unwrap().0;
                for g in &out {
                    next.push(u.mul(g));
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn restricted_to(&self, pts: &[u32]) -> Result<PermGroup> {
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.restrict(pts).ok_or_else(|| GroupError::Inconsistent("generator does not preserve the point set".into()))?);
        }
        Ok(PermGroup::new(pts.len(), gens))
    }

    pub fn dump(&self) -> GroupDump {
        GroupDump {
            degree: self.degree,
            generators: self.gens.iter().map(|g| g.images().to_vec()).collect(),
            order: self.order.to_string(),
            base: self.base(),
        }
    }

    pub fn from_dump(d: &GroupDump) -> Result<Self> {
        let mut gens = Vec::new();
        for g in &d.generators {
            gens.push(Perm::from_images(g.clone()).ok_or_else(|| GroupError::Inconsistent("generator is not a permutation".into()))?);
        }
        let order: BigUint = d.order.parse().map_err(|_| GroupError::Inconsistent("bad order".into()))?;
        PermGroup::with_order(d.degree, gens, &order)
    }
}

/// `g ∈ V·Fix(u_base)`: the image tuple of `u_base` under `g` must be reachable by `V`.
pub fn in_product(g: &Perm, v: &PermGroup, u_base: &[u32]) -> bool {
    let c = v.rebased(u_base);
    let k = PermGroup::prefix_len(u_base);
    let mut h = g.clone();
    for lvl in &c.levels[..k] {
        let x = h.apply(lvl.point);
        match &lvl.trans[x as usize] {
            None => return false,
            Some(t) => h = t.0.inv_mul(&h, &t.1),
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct ProductCheck {
    pub holds: bool,
    pub cosets: usize,
    pub witness: Option<Perm>,
}

/// Decides `W ⊆ V·Fix(u_base)` over the cosets of `Fix(u_base)` in `W`.
pub fn subgroup_in_product(w: &PermGroup, v: &PermGroup, u_base: &[u32], cap: usize) -> Result<ProductCheck> {
    let reps = w.coset_reps(u_base, cap)?;
    let n = reps.len();
    let c = v.rebased(u_base);
    let k = PermGroup::prefix_len(u_base);
    'rep: for r in reps {
        let mut h = r.clone();
        for lvl in &c.levels[..k] {
            let x = h.apply(lvl.point);
            match &lvl.trans[x as usize] {
                None => return Ok(ProductCheck { holds: false, cosets: n, witness: Some(r) }),
                Some(t) => h = t.0.inv_mul(&h, &t.1),
            }
        }
        continue 'rep;
    }
    Ok(ProductCheck { holds: true, cosets: n, witness: None })
}

/// Image of `Stab(s)` acting on `s` (sorted coordinates).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub points: Vec<u32>,
    pub group: PermGroup,
    pub stab_order: BigUint,
    pub fix_order: BigUint,
}

pub fn quotient_on_subtree(g: &PermGroup, s: &[u32], cap: usize) -> Result<Quotient> {
    let mut pts = s.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let stab = g.setwise_stab(&pts, cap)?;
    let fix = g.fixator(&pts);
    let img = stab.restricted_to(&pts)?;
    if img.order() * fix.order() != *stab.order() {
        return Err(GroupError::KernelMismatch {
            image: img.order().to_string(),
            kernel: fix.order().to_string(),
            stab: stab.order().to_string(),
        });
    }
    Ok(Quotient { points: pts, group: img, stab_order: stab.order().clone(), fix_order: fix.order().clone() })
}

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    /// All elements, sorted.
    pub elements: Vec<Perm>,
    pub class_of: Vec<u32>,
    /// Class representatives (least element of each class); the identity comes first.
    pub reps: Vec<Perm>,
    pub sizes: Vec<usize>,
    index: HashMap<Perm, u32>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn element_index(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn class_index(&self, g: &Perm) -> Option<usize> {
        self.element_index(g).map(|i| self.class_of[i] as usize)
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of.iter().enumerate().filter(move |(_, &c)| c as usize == class).map(|(i, _)| i)
    }
}

pub fn conjugacy_classes(g: &PermGroup, cap: usize) -> Result<ConjugacyClasses> {
    let mut elements = g.elements(cap)?;
    elements.sort();
    let index: HashMap<Perm, u32> = elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
    let invs: Vec<Perm> = g.gens.iter().map(|s| s.inv()).collect();
    let mut class_of = vec![u32::MAX; elements.len()];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for i in 0..elements.len() {
        if class_of[i] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(elements[i].clone());
        class_of[i] = c;
        let mut stack = vec![i];
        let mut size = 0;
        while let Some(j) = stack.pop() {
            size += 1;
            for (s, si) in g.gens.iter().zip(&invs) {
                let y = s.mul(&elements[j]).mul(si);
                let k = index[&y] as usize;
                if class_of[k] == u32::MAX {
                    class_of[k] = c;
                    stack.push(k);
                }
            }
        }
        sizes.push(size);
    }
    Ok(ConjugacyClasses { elements, class_of, reps, sizes, index })
}
