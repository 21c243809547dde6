use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalars::{denominator_lcm, Rat};

/// Dense matrix over exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMat { rows, cols, data }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| Rat::from_integer(BigInt::from(rows[i][j])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMat {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "product shape");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn neg(&self) -> RatMat {
        Self::from_fn(self.rows, self.cols, |i, j| -self.get(i, j).clone())
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// Reduced row echelon form with the pivot column of each pivot row.
    ///
    /// Rows are first cleared to integers, the elimination is fraction-free
    /// (one-step Bareiss with exact integer divisions), and only the final
    /// normalization divides by the pivots.
    pub fn rref(&self) -> Rref {
        let (m, n) = (self.rows, self.cols);
        let mut w: Vec<Vec<BigInt>> = (0..m)
            .map(|i| {
                let lcm = denominator_lcm(self.data[i * n..(i + 1) * n].iter());
                (0..n)
                    .map(|j| {
                        let x = self.get(i, j);
                        x.numer() * (&lcm / x.denom())
                    })
                    .collect()
            })
            .collect();

        let mut pivots: Vec<usize> = Vec::new();
        let mut prev_pivot = BigInt::one();
        let mut row = 0usize;
        for col in 0..n {
            let Some(sel) = (row..m).find(|&i| !w[i][col].is_zero()) else {
                continue;
            };
            w.swap(row, sel);
            let pivot = w[row][col].clone();
            for i in 0..m {
                if i == row || w[i][col].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if j == col {
                        continue;
                    }
                    let num = &pivot * &w[i][j] - &w[i][col] * &w[row][j];
                    debug_assert!((&num % &prev_pivot).is_zero());
                    w[i][j] = num / &prev_pivot;
                }
                w[i][col] = BigInt::zero();
            }
            prev_pivot = pivot;
            pivots.push(col);
            row += 1;
            if row == m {
                break;
            }
        }

        let mut mat = RatMat::zero(m, n);
        for (r, &pc) in pivots.iter().enumerate() {
            let pivot = w[r][pc].clone();
            for j in 0..n {
                mat.set(r, j, Rat::new(w[r][j].clone(), pivot.clone()));
            }
        }
        Rref { mat, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let rref = self.rref();
        let n = self.cols;
        let mut out = Vec::new();
        for jf in 0..n {
            if rref.pivots.contains(&jf) {
                continue;
            }
            let mut v = vec![Rat::zero(); n];
            v[jf] = Rat::one();
            for (r, &pc) in rref.pivots.iter().enumerate() {
                v[pc] = -rref.mat.get(r, jf).clone();
            }
            out.push(v);
        }
        out
    }

    /// The original columns at the pivot positions: a basis of the column
    /// space.
    pub fn image_basis(&self) -> Vec<Vec<Rat>> {
        let rref = self.rref();
        rref.pivots.iter().map(|&j| self.col(j)).collect()
    }

    /// One solution of `self * x = rhs`, if consistent.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows);
        let aug = RatMat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let rref = aug.rref();
        if rref.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &pc) in rref.pivots.iter().enumerate() {
            x[pc] = rref.mat.get(r, self.cols).clone();
        }
        Some(x)
    }
}

pub struct Rref {
    pub mat: RatMat,
    pub pivots: Vec<usize>,
}

/// Incremental span of rational vectors, kept in reduced echelon form.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        SpanBuilder { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            if !v[*pc].is_zero() {
                let c = v[*pc].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Rat::is_zero)
    }

    /// Adds a vector; returns true when the span grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut red = self.reduce(v);
        let Some(pc) = red.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = red[pc].clone();
        for x in red.iter_mut() {
            *x /= &lead;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[pc].is_zero() {
                let c = row[pc].clone();
                for (x, r) in row.iter_mut().zip(&red) {
                    *x -= &c * r;
                }
            }
        }
        self.rows.push((pc, red));
        self.rows.sort_by_key(|(pc, _)| *pc);
        true
    }

    /// Coordinates of `v` in the echelon basis (read off at the pivot
    /// columns), if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rows.iter().map(|(pc, _)| v[*pc].clone()).collect())
    }

    pub fn basis(&self) -> Vec<Vec<Rat>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn rref_rank_kernel() {
        let a = RatMat::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(a.apply(v).iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn rref_handles_fractions() {
        let a = RatMat::from_fn(2, 2, |i, j| rat((i + j) as i64 + 1, 3));
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = RatMat::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(a.solve(&[rat(2, 1), rat(2, 1)]).is_some());
        assert!(a.solve(&[rat(2, 1), rat(3, 1)]).is_none());
    }

    #[test]
    fn span_builder_coordinates() {
        let mut sb = SpanBuilder::new();
        assert!(sb.insert(&[rat(1, 1), rat(2, 1), rat(0, 1)]));
        assert!(sb.insert(&[rat(0, 1), rat(1, 1), rat(1, 1)]));
        assert!(!sb.insert(&[rat(1, 1), rat(3, 1), rat(1, 1)]));
        let v = [rat(2, 1), rat(5, 1), rat(1, 1)];
        let coords = sb.coordinates(&v).unwrap();
        let basis = sb.basis();
        let mut rec = vec![Rat::zero(); 3];
        for (c, b) in coords.iter().zip(&basis) {
            for (r, x) in rec.iter_mut().zip(b) {
                *r += c * x;
            }
        }
        assert_eq!(rec.to_vec(), v.to_vec());
    }
}
