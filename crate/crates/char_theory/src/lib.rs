//! Exact character tables of finite permutation groups and the fixed-vector
//! computations built on them.

mod cyclotomic;
mod modp;
mod table;

pub use cyclotomic::{cyclotomic_poly, Cyc, CycRing};
pub use table::*;

use perm_group::{GroupError, Perm, PermGroup};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("capacity error: {what} exceeds {limit}")]
    Capacity { what: String, limit: usize },
    #[error("lift failure: {0}")]
    LiftFailure(String),
    #[error("table verification failed: {0}")]
    Verification(String),
    #[error("subgroup containment violated: {0}")]
    NotSubgroup(String),
    #[error("non-integral inner product {0}")]
    NonIntegral(String),
    #[error("action is not transitive on the given points")]
    NotTransitive,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T> = std::result::Result<T, CharError>;

/// Number of elements of `h` in each class of the table's group.
pub fn class_fusion(t: &CharacterTable, h: &PermGroup) -> Result<Vec<u64>> {
    if h.degree() != t.group.degree() {
        return Err(CharError::NotSubgroup("degree differs".into()));
    }
    for x in h.gens() {
        if !t.group.contains(x) {
            return Err(CharError::NotSubgroup(format!("generator {x:?} is not in the group")));
        }
    }
    let mut counts = vec![0u64; t.classes.len()];
    for x in h.elements(DEFAULT_MAX_ORDER)? {
        counts[t.classes.class_index(&x).expect("element of the group")] += 1;
    }
    Ok(counts)
}

fn multiplicity_from_fusion(t: &CharacterTable, row: usize, fusion: &[u64]) -> Result<u64> {
    let ring = &t.ring;
    let mut s = ring.zero();
    for (c, &k) in fusion.iter().enumerate() {
        if k > 0 {
            s = ring.add(&s, &ring.scale(&t.values[row][c], k as i64));
        }
    }
    let h: u64 = fusion.iter().sum();
    match ring.as_int(&s) {
        Some(v) if v >= 0 && v as u64 % h == 0 => Ok(v as u64 / h),
        _ => Err(CharError::NonIntegral(format!("{s:?} / {h}"))),
    }
}

/// `⟨Res_H χ, 1_H⟩`, the dimension of the `H`-fixed subspace.
pub fn fixed_multiplicity(t: &CharacterTable, i: IrrepLabel, h: &PermGroup) -> Result<u64> {
    let fusion = class_fusion(t, h)?;
    multiplicity_from_fusion(t, i.row, &fusion)
}

/// Irreducibles without nonzero fixed vectors for every member of `family`.
pub fn standard_reps(t: &CharacterTable, family: &[PermGroup]) -> Result<Vec<IrrepLabel>> {
    let fusions: Vec<Vec<u64>> = family.iter().map(|h| class_fusion(t, h)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for row in 0..t.len() {
        let mut ok = true;
        for f in &fusions {
            if multiplicity_from_fusion(t, row, f)? != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(t.label(row));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TwoTransitiveReport {
    pub two_transitive: bool,
    /// `⟨π, π⟩` for the permutation character on the points.
    pub rank: u64,
    /// Row of `π - 1` when it is irreducible.
    pub psi: Option<usize>,
    pub witness: Option<IrrepLabel>,
}

fn check_transitive(g: &PermGroup, x: &[u32]) -> Result<()> {
    let Some(&x0) = x.first() else { return Err(CharError::NotTransitive) };
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if g.orbit(x0) != xs {
        return Err(CharError::NotTransitive);
    }
    Ok(())
}

/// The two-transitivity criterion: if `g` is 2-transitive on `x` and
/// `|g| > 2`, an irreducible without fixed vectors for point stabilizers.
pub fn two_transitive_witness(g: &PermGroup, x: &[u32]) -> Result<TwoTransitiveReport> {
    check_transitive(g, x)?;
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let stab = g.fixator(&[xs[0]]);
    let rest: Vec<u32> = xs[1..].to_vec();
    let two_transitive = !rest.is_empty() && stab.orbit(rest[0]) == rest;
    let t = character_table(g)?;
    let pi: Vec<i64> = t.classes.reps.iter().map(|z| xs.iter().filter(|&&p| z.apply(p) == p).count() as i64).collect();
    let sizes = t.class_sizes();
    let norm: i64 = pi.iter().zip(sizes).map(|(v, &s)| v * v * s as i64).sum();
    if norm % t.order as i64 != 0 {
        return Err(CharError::NonIntegral(format!("{norm} / {}", t.order)));
    }
    let rank = (norm / t.order as i64) as u64;
    let psi = (0..t.len()).find(|&row| {
        t.values[row].iter().zip(&pi).all(|(v, &p)| t.ring.as_int(v) == Some(p - 1))
    });
    let witness = if two_transitive && t.order > 2 {
        if rank != 2 || psi.is_none() {
            return Err(CharError::Verification("2-transitive action whose permutation character is not 1 + irreducible".into()));
        }
        let fusion = class_fusion(&t, &stab)?;
        let mut found = None;
        for row in 0..t.len() {
            if multiplicity_from_fusion(&t, row, &fusion)? == 0 {
                found = Some(t.label(row));
                break;
            }
        }
        found
    } else {
        None
    };
    Ok(TwoTransitiveReport { two_transitive, rank, psi, witness })
}

fn same_subgroup(a: &PermGroup, b: &PermGroup) -> bool {
    a.order() == b.order() && a.is_subgroup_of(b)
}

/// The direct-product criterion: pairwise commuting subgroups with trivial
/// pairwise intersections, permuted by conjugation; returns an irreducible
/// with no fixed vectors for any of them, by exhaustive scan.
pub fn direct_product_witness(g: &PermGroup, hs: &[PermGroup]) -> Result<Option<IrrepLabel>> {
    for (i, a) in hs.iter().enumerate() {
        if !a.is_subgroup_of(g) {
            return Err(CharError::NotSubgroup(format!("H_{i}")));
        }
        for (j, b) in hs.iter().enumerate().skip(i + 1) {
            for x in a.gens() {
                for y in b.gens() {
                    if x.mul(y) != y.mul(x) {
                        return Err(CharError::Precondition(format!("H_{i} and H_{j} do not commute")));
                    }
                }
            }
            let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
            let inter = small.elements(DEFAULT_MAX_ORDER)?.iter().filter(|x| big.contains(x)).count();
            if inter != 1 {
                return Err(CharError::Precondition(format!("H_{i} and H_{j} intersect nontrivially")));
            }
        }
    }
    for s in g.gens() {
        let si = s.inv();
        for (i, a) in hs.iter().enumerate() {
            let conj = PermGroup::new(g.degree(), a.gens().iter().map(|x| s.mul(x).mul(&si)).collect::<Vec<Perm>>());
            if !hs.iter().any(|b| same_subgroup(&conj, b)) {
                return Err(CharError::Precondition(format!("conjugation does not permute the list (H_{i})")));
            }
        }
    }
    let t = character_table(g)?;
    Ok(standard_reps(&t, hs)?.into_iter().next())
}
