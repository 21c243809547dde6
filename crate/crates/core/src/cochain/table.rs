use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::window::LevelWindow;
use crate::scalars::{TruncSeries, Valuation};

/// A degree-`n` inhomogeneous cochain at a level window: a dense table
/// `Q^n -> K^rank`. Degree-0 cochains are single module vectors.
#[derive(Clone, Debug)]
pub struct Cochain {
    window: LevelWindow,
    degree: usize,
    rank: usize,
    values: Vec<Vec<TruncSeries>>,
}

impl Cochain {
    pub fn zero(window: LevelWindow, degree: usize, rank: usize, p: u64, prec: i64) -> Self {
        let len = window.tuple_count(degree);
        Cochain {
            window,
            degree,
            rank,
            values: vec![vec![TruncSeries::zero(p, prec); rank]; len],
        }
    }

    pub(crate) fn from_values(
        window: LevelWindow,
        degree: usize,
        rank: usize,
        values: Vec<Vec<TruncSeries>>,
    ) -> Self {
        assert_eq!(values.len(), window.tuple_count(degree));
        Cochain { window, degree, rank, values }
    }

    pub fn from_fn(
        window: LevelWindow,
        degree: usize,
        rank: usize,
        mut f: impl FnMut(&[usize]) -> Vec<TruncSeries>,
    ) -> Self {
        let len = window.tuple_count(degree);
        let mut values = Vec::with_capacity(len);
        for flat in 0..len {
            let args = window.tuple_of(flat, degree);
            let v = f(&args);
            assert_eq!(v.len(), rank);
            values.push(v);
        }
        Cochain { window, degree, rank, values }
    }

    /// Table with uniformly random digits up to valuation `max_val` in every
    /// coordinate.
    pub fn random(
        window: LevelWindow,
        degree: usize,
        rank: usize,
        p: u64,
        prec: i64,
        rng: &mut ChaCha8Rng,
    ) -> Self {
        Cochain::from_fn(window, degree, rank, |_| {
            (0..rank)
                .map(|_| {
                    let digits: Vec<i64> =
                        (0..prec.min(6)).map(|_| rng.gen_range(0..p) as i64).collect();
                    TruncSeries::from_coeffs(p, 0, &digits, prec)
                })
                .collect()
        })
    }

    /// Indicator cochain supported on a single argument tuple.
    pub fn delta(
        window: LevelWindow,
        degree: usize,
        rank: usize,
        p: u64,
        prec: i64,
        support: &[usize],
        coord: usize,
    ) -> Self {
        let mut c = Cochain::zero(window, degree, rank, p, prec);
        let flat = window.flat_of(support);
        c.values[flat][coord] = TruncSeries::one(p, prec);
        c
    }

    pub fn window(&self) -> &LevelWindow {
        &self.window
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn value(&self, args: &[usize]) -> &Vec<TruncSeries> {
        &self.values[self.window.flat_of(args)]
    }

    pub fn value_flat(&self, flat: usize) -> &Vec<TruncSeries> {
        &self.values[flat]
    }

    pub fn set_value(&mut self, args: &[usize], v: Vec<TruncSeries>) {
        assert_eq!(v.len(), self.rank);
        let flat = self.window.flat_of(args);
        self.values[flat] = v;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.window, other.window);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Cochain { window: self.window, degree: self.degree, rank: self.rank, values }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.window, other.window);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Cochain { window: self.window, degree: self.degree, rank: self.rank, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(TruncSeries::is_zero))
    }

    pub fn min_val(&self) -> Valuation {
        self.values
            .iter()
            .flat_map(|v| v.iter().map(TruncSeries::val))
            .fold(Valuation::Infinite, Valuation::min)
    }

    pub fn min_prec(&self) -> i64 {
        self.values
            .iter()
            .flat_map(|v| v.iter().map(TruncSeries::precision))
            .min()
            .unwrap_or(i64::MAX / 4)
    }

    /// Entrywise agreement at jointly available precision.
    pub fn agrees(&self, other: &Cochain) -> bool {
        self.degree == other.degree
            && self.window == other.window
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x.agrees(y)))
    }
}
