use serde::{Deserialize, Serialize};

/// A square integer matrix with entries reduced modulo `m` (a prime power
/// `p^M` with `m < 2^63`; products are accumulated in 128 bits).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PMat {
    n: usize,
    m: u64,
    data: Vec<u64>,
}

impl PMat {
    pub fn zero(n: usize, m: u64) -> Self {
        assert!(m >= 2 && m < 1 << 62);
        PMat { n, m, data: vec![0; n * n] }
    }

    pub fn identity(n: usize, m: u64) -> Self {
        let mut out = Self::zero(n, m);
        for i in 0..n {
            out.data[i * n + i] = 1 % m;
        }
        out
    }

    pub fn from_entries(n: usize, m: u64, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), n * n);
        let mut out = Self::zero(n, m);
        for (d, &e) in out.data.iter_mut().zip(entries) {
            *d = e.rem_euclid(m as i64) as u64;
        }
        out
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v % self.m;
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn mul(&self, other: &PMat) -> PMat {
        assert_eq!(self.n, other.n);
        assert_eq!(self.m, other.m);
        let n = self.n;
        let mut out = Self::zero(n, self.m);
        for i in 0..n {
            for j in 0..n {
                let mut acc: u128 = 0;
                for k in 0..n {
                    acc += self.get(i, k) as u128 * other.get(k, j) as u128;
                }
                out.data[i * n + j] = (acc % self.m as u128) as u64;
            }
        }
        out
    }

    pub fn add(&self, other: &PMat) -> PMat {
        assert_eq!((self.n, self.m), (other.n, other.m));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.m)
            .collect();
        PMat { n: self.n, m: self.m, data }
    }

    pub fn sub(&self, other: &PMat) -> PMat {
        assert_eq!((self.n, self.m), (other.n, other.m));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (self.m + a - b) % self.m)
            .collect();
        PMat { n: self.n, m: self.m, data }
    }

    pub fn scale(&self, c: u64) -> PMat {
        let c = c % self.m;
        let data = self
            .data
            .iter()
            .map(|&a| ((a as u128 * c as u128) % self.m as u128) as u64)
            .collect();
        PMat { n: self.n, m: self.m, data }
    }

    pub fn pow(&self, mut e: u64) -> PMat {
        let mut acc = Self::identity(self.n, self.m);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.m)
    }

    /// Largest `k <= cap` with all entries of `self - identity` divisible by
    /// `p^k`; `cap` should be the p-length of the modulus.
    pub fn congruence_level(&self, p: u64, cap: u32) -> u32 {
        let id = Self::identity(self.n, self.m);
        let diff = self.sub(&id);
        let mut level = cap;
        for &e in &diff.data {
            if e == 0 {
                continue;
            }
            let mut v = 0u32;
            let mut x = e;
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            level = level.min(v);
            if level == 0 {
                return 0;
            }
        }
        level
    }

    /// Minimal p-valuation over all entries (`cap` when the matrix is zero).
    pub fn min_entry_valuation(&self, p: u64, cap: u32) -> u32 {
        let mut best = cap;
        for &e in &self.data {
            if e == 0 {
                continue;
            }
            let mut v = 0u32;
            let mut x = e;
            while x % p == 0 && v < cap {
                x /= p;
                v += 1;
            }
            best = best.min(v);
            if best == 0 {
                return 0;
            }
        }
        best
    }

    /// Exact division of every entry by `p^k`; `None` when some entry is not
    /// divisible. The result is well defined modulo `m / p^k`, but is kept at
    /// the full modulus with the canonical representative.
    pub fn exact_div(&self, p: u64, k: u32) -> Option<PMat> {
        let d = p.pow(k);
        let mut data = Vec::with_capacity(self.data.len());
        for &e in &self.data {
            if e % d != 0 {
                return None;
            }
            data.push(e / d);
        }
        Some(PMat { n: self.n, m: self.m, data })
    }

    /// Reduces entries into a smaller modulus.
    pub fn reduce_to(&self, m: u64) -> PMat {
        assert!(self.m % m == 0);
        let data = self.data.iter().map(|&e| e % m).collect();
        PMat { n: self.n, m, data }
    }

    /// Lifts the canonical representatives into a larger modulus.
    pub fn lift_to(&self, m: u64) -> PMat {
        assert!(m % self.m == 0);
        PMat { n: self.n, m, data: self.data.clone() }
    }

    /// Inverse by Newton iteration from the identity; valid for matrices
    /// congruent to the identity mod p. Precision doubles per step.
    pub fn inverse_unipotent(&self) -> Option<PMat> {
        let mut x = Self::identity(self.n, self.m);
        let two = Self::identity(self.n, self.m).scale(2);
        for _ in 0..64 {
            let ax = self.mul(&x);
            if ax.is_identity() {
                return Some(x);
            }
            // x <- x(2 - a x)
            x = x.mul(&two.sub(&ax));
        }
        let ax = self.mul(&x);
        ax.is_identity().then_some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_inverse_round_trip() {
        let m = 3u64.pow(8);
        let a = PMat::from_entries(2, m, &[1 + 3, 9, 3, 1]);
        let inv = a.inverse_unipotent().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
    }

    #[test]
    fn congruence_levels() {
        let m = 2u64.pow(8);
        let a = PMat::from_entries(2, m, &[1 + 4, 8, 0, 1]);
        assert_eq!(a.congruence_level(2, 8), 2);
        assert_eq!(PMat::identity(2, m).congruence_level(2, 8), 8);
    }
}
