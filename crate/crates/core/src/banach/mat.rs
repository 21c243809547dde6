use serde::{Deserialize, Serialize};

use super::BanachError;
use crate::scalars::{TruncSeries, Valuation};

/// A finite free module with a distinguished orthonormal basis. The norm of
/// a coordinate vector is the max of the coordinate norms, i.e. its
/// valuation is the min coordinate valuation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormedModule {
    rank: usize,
    basis_labels: Vec<String>,
}

impl NormedModule {
    pub fn new(rank: usize) -> Self {
        let basis_labels = (0..rank).map(|i| format!("e{i}")).collect();
        NormedModule { rank, basis_labels }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        NormedModule { rank: labels.len(), basis_labels: labels }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.basis_labels
    }
}

/// Dense matrix of truncated series, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesMat {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<TruncSeries>,
}

impl SeriesMat {
    pub fn zero(p: u64, rows: usize, cols: usize, prec: i64) -> Self {
        SeriesMat { rows, cols, p, data: vec![TruncSeries::zero(p, prec); rows * cols] }
    }

    pub fn identity(p: u64, n: usize, prec: i64) -> Self {
        let mut m = Self::zero(p, n, n, prec);
        for i in 0..n {
            m.set(i, i, TruncSeries::one(p, prec));
        }
        m
    }

    pub fn from_fn(
        p: u64,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> TruncSeries,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.prime(), p, "entry prime mismatch");
                data.push(e);
            }
        }
        SeriesMat { rows, cols, p, data }
    }

    pub fn from_rows(p: u64, rows_data: Vec<Vec<TruncSeries>>) -> Self {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, Vec::len);
        assert!(rows_data.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(p, rows, cols, |i, j| rows_data[i][j].clone())
    }

    /// Columns given as coordinate vectors.
    pub fn from_cols(p: u64, rows: usize, cols_data: &[Vec<TruncSeries>]) -> Self {
        assert!(cols_data.iter().all(|c| c.len() == rows), "ragged columns");
        Self::from_fn(p, rows, cols_data.len(), |i, j| cols_data[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncSeries {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TruncSeries) {
        assert_eq!(v.prime(), self.p);
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<TruncSeries> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn checked_mul(&self, other: &SeriesMat) -> Result<SeriesMat, BanachError> {
        if self.cols != other.rows || self.p != other.p {
            return Err(BanachError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: Option<TruncSeries> = None;
                for k in 0..self.cols {
                    let term = self.get(i, k).checked_mul(other.get(k, j))?;
                    acc = Some(match acc {
                        None => term,
                        Some(a) => a.checked_add(&term)?,
                    });
                }
                out.push(acc.unwrap_or_else(|| TruncSeries::zero(self.p, i64::MAX / 4)));
            }
        }
        Ok(SeriesMat { rows: self.rows, cols: other.cols, p: self.p, data: out })
    }

    pub fn mul(&self, other: &SeriesMat) -> SeriesMat {
        self.checked_mul(other).expect("matrix product shape")
    }

    pub fn add(&self, other: &SeriesMat) -> SeriesMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        SeriesMat { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn sub(&self, other: &SeriesMat) -> SeriesMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        SeriesMat { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn neg(&self) -> SeriesMat {
        let data = self.data.iter().map(|a| -a).collect();
        SeriesMat { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn scale(&self, c: &TruncSeries) -> SeriesMat {
        let data = self.data.iter().map(|a| a * c).collect();
        SeriesMat { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn pow(&self, mut e: u64, prec: i64) -> SeriesMat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = SeriesMat::identity(self.p, self.rows, prec);
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

    pub fn apply(&self, v: &[TruncSeries]) -> Vec<TruncSeries> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.get(i, 0) * &v[0];
                for k in 1..self.cols {
                    acc = &acc + &(self.get(i, k) * &v[k]);
                }
                acc
            })
            .collect()
    }

    /// Operator valuation: min entry valuation ( `+inf` for the zero map).
    pub fn min_val(&self) -> Valuation {
        self.data
            .iter()
            .map(TruncSeries::val)
            .fold(Valuation::Infinite, Valuation::min)
    }

    pub fn min_prec(&self) -> i64 {
        self.data
            .iter()
            .map(TruncSeries::precision)
            .min()
            .unwrap_or(i64::MAX / 4)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(TruncSeries::is_zero)
    }

    /// Entrywise equality at jointly available precision.
    pub fn agrees(&self, other: &SeriesMat) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.agrees(b))
    }
}

pub fn vec_val(v: &[TruncSeries]) -> Valuation {
    v.iter().map(TruncSeries::val).fold(Valuation::Infinite, Valuation::min)
}

pub fn vec_is_zero(v: &[TruncSeries]) -> bool {
    v.iter().all(TruncSeries::is_zero)
}

pub fn vec_agrees(a: &[TruncSeries], b: &[TruncSeries]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.agrees(y))
}

/// A bounded K-linear map between normed modules, stored as a
/// (target rank) x (source rank) matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedMap {
    source: NormedModule,
    target: NormedModule,
    entries: SeriesMat,
}

impl BoundedMap {
    pub fn new(source: NormedModule, target: NormedModule, entries: SeriesMat) -> Self {
        assert_eq!(entries.rows(), target.rank(), "row count vs target rank");
        assert_eq!(entries.cols(), source.rank(), "column count vs source rank");
        BoundedMap { source, target, entries }
    }

    pub fn endo(entries: SeriesMat) -> Self {
        assert_eq!(entries.rows(), entries.cols());
        let n = entries.rows();
        BoundedMap::new(NormedModule::new(n), NormedModule::new(n), entries)
    }

    pub fn identity(module: NormedModule, p: u64, prec: i64) -> Self {
        let entries = SeriesMat::identity(p, module.rank(), prec);
        BoundedMap { source: module.clone(), target: module, entries }
    }

    pub fn source(&self) -> &NormedModule {
        &self.source
    }

    pub fn target(&self) -> &NormedModule {
        &self.target
    }

    pub fn entries(&self) -> &SeriesMat {
        &self.entries
    }

    /// Operator valuation of the matrix; submultiplicative under
    /// composition: `val(f.compose(g)) >= val(f) + val(g)`.
    pub fn operator_valuation(&self) -> Valuation {
        self.entries.min_val()
    }

    /// `self` after `other` (matrix product `self * other`).
    pub fn compose(&self, other: &BoundedMap) -> Result<BoundedMap, BanachError> {
        if other.target.rank() != self.source.rank() {
            return Err(BanachError::ShapeMismatch("compose rank mismatch".into()));
        }
        Ok(BoundedMap {
            source: other.source.clone(),
            target: self.target.clone(),
            entries: self.entries.checked_mul(&other.entries)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u64, prec: i64) -> TruncSeries {
        TruncSeries::monomial(p, 1, 1, prec)
    }

    #[test]
    fn operator_valuation_examples() {
        let p = 3;
        let m = SeriesMat::from_fn(p, 2, 2, |i, j| {
            if i == j && i == 0 {
                t(p, 8).pow(2)
            } else if i == j {
                t(p, 8).pow(5)
            } else {
                TruncSeries::zero(p, 8)
            }
        });
        assert_eq!(m.min_val(), Valuation::Finite(2));
        assert_eq!(SeriesMat::zero(p, 2, 2, 8).min_val(), Valuation::Infinite);
    }

    #[test]
    fn matvec_and_product_agree() {
        let p = 3;
        let a = SeriesMat::from_fn(p, 2, 2, |i, j| {
            TruncSeries::monomial(p, (i + 2 * j + 1) as i64, i as i64, 8)
        });
        let v = vec![TruncSeries::one(p, 8), t(p, 8)];
        let av = a.apply(&v);
        let vm = SeriesMat::from_cols(p, 2, &[v]);
        let prod = a.mul(&vm);
        assert!(vec_agrees(&av, &prod.col(0)));
    }
}
