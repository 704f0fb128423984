use std::fmt;

/// A permutation of `0..n`, stored as its image array.
///
/// Products compose right to left: `(g * h)(x) = g(h(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Returns `None` unless `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let s = seen.get_mut(x as usize)?;
            if *s {
                return None;
            }
            *s = true;
        }
        Some(Perm(images))
    }

    pub fn from_images_unchecked(images: Vec<u32>) -> Self {
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn into_images(self) -> Vec<u32> {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm(out)
    }

    /// `self^-1 * other`, without materializing the inverse.
    pub fn inv_mul(&self, other: &Perm, self_inv: &Perm) -> Perm {
        debug_assert_eq!(self.0.len(), other.0.len());
        Perm(other.0.iter().map(|&x| self_inv.0[x as usize]).collect())
    }

    pub fn conj(&self, by: &Perm) -> Perm {
        by.mul(self).mul(&by.inv())
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut l: u64 = 1;
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            l = lcm(l, len);
        }
        l
    }

    pub fn moved_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().enumerate().filter(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    pub fn fixes_all(&self, pts: &[u32]) -> bool {
        pts.iter().all(|&p| self.0[p as usize] == p)
    }

    /// Permutation induced on `pts` (which `self` must preserve), in the
    /// coordinates `i ↦ pts[i]`.
    pub fn restrict(&self, pts: &[u32]) -> Option<Perm> {
        let mut out = Vec::with_capacity(pts.len());
        for &p in pts {
            out.push(pts.iter().position(|&q| q == self.apply(p))? as u32);
        }
        Some(Perm(out))
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // cycle notation, fixed points omitted
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}
