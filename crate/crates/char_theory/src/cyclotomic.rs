use serde::{Deserialize, Serialize};

/// `Z[x]/Φ_e(x)`: cyclotomic integers of conductor `e`, in the power basis
/// `1, ζ, …, ζ^(φ(e)-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycRing {
    pub e: u32,
    /// Monic `Φ_e`, lowest degree first.
    phi: Vec<i64>,
    /// `roots[k]` = coordinates of `ζ^k`, `0 ≤ k < e`.
    #[serde(skip)]
    roots: Vec<Vec<i64>>,
}

pub type Cyc = Vec<i64>;

fn poly_divexact(a: &[i64], b: &[i64]) -> Vec<i64> {
    // b monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn cyclotomic_poly(e: u32) -> Vec<i64> {
    // x^e - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; e as usize + 1];
    p[0] = -1;
    p[e as usize] = 1;
    for d in 1..e {
        if e % d == 0 {
            p = poly_divexact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl CycRing {
    pub fn new(e: u32) -> Self {
        let e = e.max(1);
        let phi = cyclotomic_poly(e);
        let mut r = CycRing { e, phi, roots: Vec::new() };
        r.fill_roots();
        r
    }

    fn fill_roots(&mut self) {
        let n = self.dim();
        let mut cur = vec![0i64; n];
        cur[0] = 1;
        let mut roots = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            roots.push(cur.clone());
            // multiply by x
            let mut next = vec![0i64; n + 1];
            next[1..].copy_from_slice(&cur);
            cur = self.reduce(next);
        }
        self.roots = roots;
    }

    /// Rebuilds the cached roots after deserialization.
    pub fn restore(&mut self) {
        if self.roots.is_empty() {
            self.fill_roots();
        }
    }

    pub fn dim(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut a: Vec<i64>) -> Cyc {
        let n = self.dim();
        for i in (n..a.len()).rev() {
            let c = a[i];
            if c != 0 {
                for (j, &pj) in self.phi.iter().enumerate() {
                    a[i - n + j] -= c * pj;
                }
            }
        }
        a.truncate(n);
        a.resize(n, 0);
        a
    }

    pub fn zero(&self) -> Cyc {
        vec![0; self.dim()]
    }

    pub fn int(&self, k: i64) -> Cyc {
        let mut v = self.zero();
        v[0] = k;
        v
    }

    pub fn root(&self, k: i64) -> &Cyc {
        &self.roots[k.rem_euclid(self.e as i64) as usize]
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &Cyc, k: i64) -> Cyc {
        a.iter().map(|x| x * k).collect()
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let n = self.dim();
        let mut out = vec![0i64; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    /// Complex conjugation `ζ ↦ ζ^-1`.
    pub fn conj(&self, a: &Cyc) -> Cyc {
        let mut out = self.zero();
        for (k, &c) in a.iter().enumerate() {
            if c != 0 {
                for (o, r) in out.iter_mut().zip(self.root(-(k as i64))) {
                    *o += c * r;
                }
            }
        }
        out
    }

    pub fn as_int(&self, a: &Cyc) -> Option<i64> {
        if a[1..].iter().all(|&x| x == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    pub fn to_complex(&self, a: &Cyc) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in a.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.e as f64;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        (re, im)
    }
}
