use std::sync::Arc;

use perm_group::{conjugacy_classes, ConjugacyClasses, Perm, PermGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyc, CycRing};
use crate::modp::{charpoly, kernel, normalize_basis, prime_above, primitive_root_of_unity, roots, Fp, Mat};
use crate::{CharError, Result};

pub const DEFAULT_MAX_ORDER: usize = 1_000_000;
pub const DEFAULT_MAX_CLASSES: usize = 200;

/// Exact character table; rows are irreducible characters, columns classes.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: PermGroup,
    pub classes: Arc<ConjugacyClasses>,
    pub ring: CycRing,
    pub order: u64,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<Cyc>>,
    /// `power[c][t]`: class of `g^t` for `g` in class `c`, `0 ≤ t < e`.
    pub power: Vec<Vec<u32>>,
    pub inverse_class: Vec<u32>,
    pub prime: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub row: usize,
    pub degree: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassDump {
    pub representative: Vec<u32>,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableDump {
    pub exponent: u32,
    pub classes: Vec<ClassDump>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<Vec<i64>>>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `c[j][l][k] = #{x ∈ C_j : x^-1 z_k ∈ C_l}`, the class multiplication coefficients.
fn class_coefficients(cl: &ConjugacyClasses) -> Vec<Vec<Vec<u64>>> {
    let r = cl.len();
    let mut c = vec![vec![vec![0u64; r]; r]; r];
    let inv: Vec<usize> = cl.elements.iter().map(|x| cl.element_index(&x.inv()).unwrap()).collect();
    for (k, z) in cl.reps.iter().enumerate() {
        for (xi, _) in cl.elements.iter().enumerate() {
            let j = cl.class_of[xi] as usize;
            let y = cl.elements[inv[xi]].mul(z);
            let l = cl.class_index(&y).unwrap();
            c[j][l][k] += 1;
        }
    }
    c
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn label(&self, row: usize) -> IrrepLabel {
        IrrepLabel { row, degree: self.degrees[row] }
    }

    pub fn labels(&self) -> Vec<IrrepLabel> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.classes.sizes
    }

    pub fn value(&self, row: usize, g: &Perm) -> Option<&Cyc> {
        self.classes.class_index(g).map(|c| &self.values[row][c])
    }

    pub fn dump(&self) -> TableDump {
        TableDump {
            exponent: self.ring.e,
            classes: self
                .classes
                .reps
                .iter()
                .zip(&self.classes.sizes)
                .map(|(r, &s)| ClassDump { representative: r.images().to_vec(), size: s })
                .collect(),
            degrees: self.degrees.clone(),
            values: self.values.clone(),
        }
    }

    /// Exact check of both orthogonality relations.
    pub fn verify(&self) -> Result<()> {
        let r = self.len();
        let ring = &self.ring;
        let n = self.order as i64;
        let sizes = &self.classes.sizes;
        if r != self.classes.len() {
            return Err(CharError::Verification(format!("{r} rows for {} classes", self.classes.len())));
        }
        let conj: Vec<Vec<Cyc>> = self.values.iter().map(|row| row.iter().map(|v| ring.conj(v)).collect()).collect();
        for i in 0..r {
            for j in i..r {
                let mut s = ring.zero();
                for c in 0..r {
                    s = ring.add(&s, &ring.scale(&ring.mul(&self.values[i][c], &conj[j][c]), sizes[c] as i64));
                }
                let want = if i == j { n } else { 0 };
                if ring.as_int(&s) != Some(want) {
                    return Err(CharError::Verification(format!("row orthogonality fails for rows {i}, {j}")));
                }
            }
        }
        for a in 0..r {
            for b in a..r {
                let mut s = ring.zero();
                for i in 0..r {
                    s = ring.add(&s, &ring.mul(&self.values[i][a], &conj[i][b]));
                }
                let want = if a == b { n / sizes[a] as i64 } else { 0 };
                if ring.as_int(&s) != Some(want) {
                    return Err(CharError::Verification(format!("column orthogonality fails for classes {a}, {b}")));
                }
            }
        }
        let sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sq != self.order || self.degrees.iter().any(|d| self.order % d != 0) {
            return Err(CharError::Verification("degree constraints fail".into()));
        }
        Ok(())
    }
}

pub fn character_table(g: &PermGroup) -> Result<CharacterTable> {
    character_table_capped(g, DEFAULT_MAX_ORDER, DEFAULT_MAX_CLASSES)
}

pub fn character_table_capped(g: &PermGroup, max_order: usize, max_classes: usize) -> Result<CharacterTable> {
    let cl = conjugacy_classes(g, max_order).map_err(CharError::Group)?;
    if cl.len() > max_classes {
        return Err(CharError::Capacity { what: "class count".into(), limit: max_classes });
    }
    let n = cl.elements.len() as u64;
    let r = cl.len();
    let orders: Vec<u64> = cl.reps.iter().map(|x| x.order()).collect();
    let e = orders.iter().fold(1u64, |a, &b| a / gcd(a, b) * b);
    let mut power = vec![vec![0u32; e as usize]; r];
    for (c, z) in cl.reps.iter().enumerate() {
        let mut x = Perm::identity(g.degree());
        for t in 0..e as usize {
            power[c][t] = cl.class_index(&x).unwrap() as u32;
            x = x.mul(z);
        }
    }
    let inverse_class: Vec<u32> = (0..r).map(|c| power[c][(e as usize - 1) % e as usize]).collect();
    let coeffs = class_coefficients(&cl);
    let ring = CycRing::new(e as u32);
    let mut lower = 4 * n;
    let mut last_err = None;
    for _attempt in 0..8 {
        let p = prime_above(e, lower);
        match table_mod_p(&cl, &coeffs, &power, &inverse_class, &orders, e, p, &ring) {
            Ok((degrees, values)) => {
                let mut rows: Vec<(u64, Vec<Cyc>)> = degrees.into_iter().zip(values).collect();
                // trivial character first, then by degree, then by value coordinates (descending)
                rows.sort_by(|a, b| {
                    let ta = a.1.iter().all(|v| ring.as_int(v) == Some(1));
                    let tb = b.1.iter().all(|v| ring.as_int(v) == Some(1));
                    tb.cmp(&ta).then(a.0.cmp(&b.0)).then_with(|| b.1.cmp(&a.1))
                });
                let t = CharacterTable {
                    group: g.clone(),
                    classes: Arc::new(cl),
                    ring,
                    order: n,
                    degrees: rows.iter().map(|x| x.0).collect(),
                    values: rows.into_iter().map(|x| x.1).collect(),
                    power,
                    inverse_class,
                    prime: p,
                };
                t.verify()?;
                return Ok(t);
            }
            Err(err) => {
                last_err = Some(err);
                lower = p;
            }
        }
    }
    Err(last_err.unwrap())
}

#[allow(clippy::too_many_arguments)]
fn table_mod_p(
    cl: &ConjugacyClasses,
    coeffs: &[Vec<Vec<u64>>],
    power: &[Vec<u32>],
    inverse_class: &[u32],
    orders: &[u64],
    e: u64,
    p: u64,
    ring: &CycRing,
) -> Result<(Vec<u64>, Vec<Vec<Cyc>>)> {
    let f = Fp { p };
    let r = cl.len();
    let n = cl.elements.len() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    // M_j(l, k) = c[j][l][k]; common eigenvectors are (ω(K_l))_l.
    let mats: Vec<Mat> = (0..r).map(|j| (0..r).map(|l| (0..r).map(|k| coeffs[j][l][k] % p).collect()).collect()).collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|k| (i == k) as u64).collect()).collect()];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for mut basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let piv = normalize_basis(f, &mut basis);
            let dim = basis.len();
            // restriction: M b_i = Σ_i' A[i'][i] b_i'
            let mut a = vec![vec![0u64; dim]; dim];
            for (i, b) in basis.iter().enumerate() {
                let mb: Vec<u64> = (0..r).map(|l| (0..r).fold(0, |s, k| f.add(s, f.mul(m[l][k], b[k])))).collect();
                for (i2, &pc) in piv.iter().enumerate() {
                    a[i2][i] = mb[pc];
                }
            }
            let cp = charpoly(f, &a);
            let mut got = 0;
            for lam in roots(f, &cp, &mut rng) {
                let shifted: Mat = (0..dim).map(|i| (0..dim).map(|k| if i == k { f.sub(a[i][k], lam) } else { a[i][k] }).collect()).collect();
                let ker = kernel(f, &shifted, dim);
                got += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|kv| (0..r).map(|x| (0..dim).fold(0, |s, i| f.add(s, f.mul(kv[i], basis[i][x])))).collect())
                    .collect();
                next.push(sub);
            }
            if got != dim {
                return Err(CharError::LiftFailure(format!("class matrix not diagonalizable mod {p}")));
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(CharError::LiftFailure(format!("class matrices do not separate characters mod {p}")));
    }
    let zeta = primitive_root_of_unity(f, e);
    let sizes: Vec<u64> = cl.sizes.iter().map(|&s| s as u64).collect();
    let mut degrees = Vec::new();
    let mut values = Vec::new();
    for sp in spaces {
        let v = &sp[0];
        if v[0] == 0 {
            return Err(CharError::LiftFailure("eigenvector vanishes at the identity class".into()));
        }
        let i0 = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, i0)).collect();
        // d² = |G| / Σ_j ω_j ω_{j*} / |C_j|
        let mut s = 0;
        for j in 0..r {
            s = f.add(s, f.mul(f.mul(w[j], w[inverse_class[j] as usize]), f.inv(sizes[j] % p)));
        }
        if s == 0 {
            return Err(CharError::LiftFailure("degenerate degree equation".into()));
        }
        let d2 = f.mul(n % p, f.inv(s));
        let d = (1..=((n as f64).sqrt() as u64 + 1)).find(|&d| f.mul(d, d) == d2);
        let Some(d) = d else {
            return Err(CharError::LiftFailure(format!("no integer degree mod {p}")));
        };
        let chi: Vec<u64> = (0..r).map(|j| f.mul(f.mul(d, w[j]), f.inv(sizes[j] % p))).collect();
        let mut row = Vec::with_capacity(r);
        for c in 0..r {
            let o = orders[c];
            let z = f.pow(zeta, e / o);
            let oinv = f.inv(o % p);
            let mut val = ring.zero();
            for k in 0..o {
                let mut m = 0;
                for t in 0..o {
                    let cls = power[c][t as usize] as usize;
                    let zt = f.pow(z, (o - (k * t) % o) % o);
                    m = f.add(m, f.mul(chi[cls], zt));
                }
                let m = f.mul(m, oinv);
                if m > d {
                    return Err(CharError::LiftFailure(format!("eigenvalue multiplicity does not lift mod {p}")));
                }
                if m > 0 {
                    val = ring.add(&val, &ring.scale(ring.root((k * (e / o)) as i64), m as i64));
                }
            }
            row.push(val);
        }
        degrees.push(d);
        values.push(row);
    }
    Ok((degrees, values))
}
