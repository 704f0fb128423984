use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Arithmetic in `F_p`, `p < 2^62`.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > lower`.
pub fn prime_above(e: u64, lower: u64) -> u64 {
    let mut p = lower / e * e + 1;
    while p <= lower || !is_prime(p) {
        p += e;
    }
    p
}

/// An element of order exactly `e` in `F_p^*` (requires `e | p-1`).
pub fn primitive_root_of_unity(f: Fp, e: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = f.p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let g = (2..f.p).find(|&g| factors.iter().all(|&q| f.pow(g, (f.p - 1) / q) != 1)).expect("generator exists");
    f.pow(g, (f.p - 1) / e)
}

/// Polynomials over `F_p`, lowest degree first, no trailing zeros.
pub type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_sub(f: Fp, a: &[u64], b: &[u64]) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

fn poly_mulmod(f: Fp, a: &[u64], b: &[u64], m: &[u64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_rem(f, out, m)
}

fn poly_rem(f: Fp, mut a: Poly, m: &[u64]) -> Poly {
    let dm = m.len() - 1;
    let lead_inv = f.inv(*m.last().unwrap());
    while a.len() > dm {
        let c = f.mul(*a.last().unwrap(), lead_inv);
        let s = a.len() - 1 - dm;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate() {
                a[s + j] = f.sub(a[s + j], f.mul(c, mj));
            }
        }
        a.pop();
        a = trim(a);
    }
    trim(a)
}

fn poly_gcd(f: Fp, a: &[u64], b: &[u64]) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(f, a, &b);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let li = f.inv(l);
        a = a.iter().map(|&x| f.mul(x, li)).collect();
    }
    a
}

fn poly_powmod(f: Fp, base: &[u64], mut e: u64, m: &[u64]) -> Poly {
    let mut r = poly_rem(f, vec![1], m);
    let mut b = poly_rem(f, base.to_vec(), m);
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mulmod(f, &r, &b, m);
        }
        b = poly_mulmod(f, &b, &b, m);
        e >>= 1;
    }
    r
}

/// Distinct roots in `F_p` of `a` (Cantor-Zassenhaus on the split part).
pub fn roots(f: Fp, a: &[u64], rng: &mut ChaCha8Rng) -> Vec<u64> {
    let a = trim(a.to_vec());
    if a.len() <= 1 {
        return Vec::new();
    }
    let xp = poly_powmod(f, &[0, 1], f.p, &a);
    let g = poly_gcd(f, &a, &poly_sub(f, &xp, &[0, 1]));
    let mut out = Vec::new();
    split(f, g, rng, &mut out);
    out.sort_unstable();
    out
}

fn split(f: Fp, g: Poly, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(f.mul(f.neg(g[0]), f.inv(g[1]))),
        _ => loop {
            let a = rng.gen_range(0..f.p);
            let h = poly_powmod(f, &[a, 1], (f.p - 1) / 2, &g);
            let d = poly_gcd(f, &g, &poly_sub(f, &h, &[1]));
            if d.len() > 1 && d.len() < g.len() {
                let mut q = g.clone();
                // exact division g / d
                let mut quo = vec![0u64; g.len() - d.len() + 1];
                let li = f.inv(*d.last().unwrap());
                for i in (0..quo.len()).rev() {
                    let c = f.mul(q[i + d.len() - 1], li);
                    quo[i] = c;
                    for (j, &dj) in d.iter().enumerate() {
                        q[i + j] = f.sub(q[i + j], f.mul(c, dj));
                    }
                }
                split(f, d, rng, out);
                split(f, trim(quo), rng, out);
                return;
            }
        },
    }
}

pub type Mat = Vec<Vec<u64>>;

/// Characteristic polynomial via reduction to Hessenberg form.
pub fn charpoly(f: Fp, a: &Mat) -> Poly {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = f.inv(h[m][m - 1]);
        for i in m + 1..n {
            let u = f.mul(h[i][m - 1], t);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let s = f.mul(u, h[m][j]);
                h[i][j] = f.sub(h[i][j], s);
            }
            for row in h.iter_mut() {
                let s = f.mul(u, row[i]);
                row[m] = f.add(row[m], s);
            }
        }
    }
    let mut ps: Vec<Poly> = vec![vec![1]];
    for m in 0..n {
        // (x - h[m][m]) p_m
        let pm = &ps[m];
        let mut next = vec![0u64; pm.len() + 1];
        for (k, &c) in pm.iter().enumerate() {
            next[k + 1] = f.add(next[k + 1], c);
            next[k] = f.sub(next[k], f.mul(h[m][m], c));
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let coef = f.mul(h[i][m], prod);
            if coef != 0 {
                for (k, &c) in ps[i].iter().enumerate() {
                    next[k] = f.sub(next[k], f.mul(coef, c));
                }
            }
        }
        ps.push(next);
    }
    ps.pop().unwrap()
}

/// Basis of the right kernel of `a` (rows × cols).
pub fn kernel(f: Fp, a: &Mat, cols: usize) -> Vec<Vec<u64>> {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(i, r);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let u = m[i][c];
                for j in 0..cols {
                    let s = f.mul(u, m[r][j]);
                    m[i][j] = f.sub(m[i][j], s);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m[row][free]);
        }
        out.push(v);
    }
    out
}

/// Column-reduces a basis (list of vectors) so that each vector has a 1 at
/// its own pivot coordinate and 0 at the others'. Returns the pivots.
pub fn normalize_basis(f: Fp, basis: &mut [Vec<u64>]) -> Vec<usize> {
    let mut pivots = Vec::new();
    for i in 0..basis.len() {
        let c = basis[i].iter().position(|&x| x != 0).expect("independent basis");
        let inv = f.inv(basis[i][c]);
        for x in basis[i].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for j in 0..basis.len() {
            if j != i && basis[j][c] != 0 {
                let u = basis[j][c];
                let bi = basis[i].clone();
                for (x, y) in basis[j].iter_mut().zip(&bi) {
                    *x = f.sub(*x, f.mul(u, *y));
                }
            }
        }
        pivots.push(c);
    }
    pivots
}
