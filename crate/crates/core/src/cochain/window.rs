use serde::{Deserialize, Serialize};

/// The finite quotient `Q = G_l / G_(l+m)` of `G = Z_p^d`, coordinatized by
/// exponent tuples: `(e_1, .., e_d)` with `e_k` in `[0, p^m)` stands for the
/// class of `prod_k gen_k^(p^l e_k)`. The group is abelian, so
/// multiplication is coordinatewise addition mod `p^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelWindow {
    pub p: u64,
    pub d: usize,
    pub l: u32,
    pub m: u32,
}

impl LevelWindow {
    pub fn new(p: u64, d: usize, l: u32, m: u32) -> Self {
        assert!(d >= 1 && m >= 1);
        let q = (p as u128).pow(m);
        assert!(q.pow(d as u32) <= 1 << 30, "quotient too large for dense tables");
        LevelWindow { p, d, l, m }
    }

    /// Classes per coordinate.
    pub fn q(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// Order of the quotient.
    pub fn order(&self) -> usize {
        (self.q() as usize).pow(self.d as u32)
    }

    /// Number of argument tuples of a degree-`n` cochain.
    pub fn tuple_count(&self, n: usize) -> usize {
        self.order().pow(n as u32)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn exps_of(&self, mut idx: usize) -> Vec<u64> {
        let q = self.q() as usize;
        let mut exps = Vec::with_capacity(self.d);
        for _ in 0..self.d {
            exps.push((idx % q) as u64);
            idx /= q;
        }
        exps
    }

    pub fn index_of(&self, exps: &[u64]) -> usize {
        let q = self.q();
        let mut idx = 0usize;
        for &e in exps.iter().rev() {
            idx = idx * q as usize + (e % q) as usize;
        }
        idx
    }

    /// Product in the abelian quotient.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let q = self.q() as usize;
        let mut out = 0usize;
        let mut pow = 1usize;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.d {
            let s = (a % q + b % q) % q;
            out += s * pow;
            pow *= q;
            a /= q;
            b /= q;
        }
        out
    }

    /// Class of `eta^(p^i)` where `eta` is the first generator; defined for
    /// `l <= i < l + m` (outside that range the class is trivial or the
    /// power is not representable).
    pub fn eta_power_index(&self, i: u32) -> Option<usize> {
        if i < self.l || i >= self.l + self.m {
            return None;
        }
        let e = self.p.pow(i - self.l) % self.q();
        let mut exps = vec![0u64; self.d];
        exps[0] = e;
        Some(self.index_of(&exps))
    }

    /// Indices of the image of `G_i` in `Q` (exponent tuples with every
    /// coordinate divisible by `p^(i-l)`), for `l <= i < l+m`.
    pub fn subgroup_indices(&self, i: u32) -> Vec<usize> {
        assert!(i >= self.l && i < self.l + self.m);
        let step = self.p.pow(i - self.l);
        let q = self.q();
        let per_coord: Vec<u64> = (0..q).step_by(step as usize).collect();
        let mut out = Vec::new();
        let mut stack = vec![0u64; self.d];
        self.enumerate_rec(&per_coord, &mut stack, 0, &mut out);
        out
    }

    fn enumerate_rec(&self, choices: &[u64], stack: &mut Vec<u64>, k: usize, out: &mut Vec<usize>) {
        if k == self.d {
            out.push(self.index_of(stack));
            return;
        }
        for &c in choices {
            stack[k] = c;
            self.enumerate_rec(choices, stack, k + 1, out);
        }
    }

    /// Decodes a flat tuple index into `n` argument indices.
    pub fn tuple_of(&self, mut flat: usize, n: usize) -> Vec<usize> {
        let order = self.order();
        let mut args = Vec::with_capacity(n);
        for _ in 0..n {
            args.push(flat % order);
            flat /= order;
        }
        args
    }

    pub fn flat_of(&self, args: &[usize]) -> usize {
        let order = self.order();
        let mut flat = 0usize;
        for &a in args.iter().rev() {
            flat = flat * order + a;
        }
        flat
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_and_mul() {
        let w = LevelWindow::new(3, 2, 0, 2);
        assert_eq!(w.order(), 81);
        for idx in 0..w.order() {
            assert_eq!(w.index_of(&w.exps_of(idx)), idx);
        }
        let a = w.index_of(&[4, 7]);
        let b = w.index_of(&[8, 5]);
        assert_eq!(w.mul(a, b), w.index_of(&[3, 3]));
        assert_eq!(w.mul(a, w.identity()), a);
    }

    #[test]
    fn eta_powers_and_subgroups() {
        let w = LevelWindow::new(2, 1, 2, 3);
        assert_eq!(w.eta_power_index(2), Some(w.index_of(&[1])));
        assert_eq!(w.eta_power_index(3), Some(w.index_of(&[2])));
        assert_eq!(w.eta_power_index(5), None);
        assert_eq!(w.eta_power_index(1), None);
        assert_eq!(w.subgroup_indices(4).len(), 2);
    }

    #[test]
    fn tuple_round_trip() {
        let w = LevelWindow::new(3, 1, 0, 2);
        for flat in 0..w.tuple_count(2) {
            let t = w.tuple_of(flat, 2);
            assert_eq!(w.flat_of(&t), flat);
        }
    }
}
