use serde::{Deserialize, Serialize};

use super::pmat::PMat;
use super::GroupError;

/// Shared group parameters: matrix size `n`, prime `p`, entry precision
/// `p^N`, congruence level `j`. The chart is the affine chart
/// `X -> 1 + X`, a bijection between `p^j`-divisible coordinate matrices
/// and `G_j`, with 0 mapping to the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub n: usize,
    pub p: u64,
    pub big_n: u32,
    pub j: u32,
}

impl Chart {
    pub fn new(n: usize, p: u64, big_n: u32, j: u32) -> Self {
        assert!(n >= 1 && p >= 2 && big_n >= 1);
        assert!(j <= big_n, "level beyond entry precision");
        assert!(
            (p as u128).pow(big_n) < 1 << 62,
            "p^N must fit in 62 bits"
        );
        Chart { n, p, big_n, j }
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.big_n)
    }

    /// `X -> 1 + X`; requires the coordinates to be divisible by `p^j`.
    pub fn to_group(&self, coords: &PMat) -> Result<CongruenceElement, GroupError> {
        if coords.min_entry_valuation(self.p, self.big_n) < self.j {
            return Err(GroupError::BadCoordinates { level: self.j });
        }
        let mat = PMat::identity(self.n, self.modulus()).add(coords);
        CongruenceElement::from_matrix(*self, mat)
    }

    /// Inverse chart: `g -> g - 1`, exact mod `p^N`.
    pub fn to_coords(&self, g: &CongruenceElement) -> PMat {
        g.matrix().sub(&PMat::identity(self.n, self.modulus()))
    }

    pub fn identity(&self) -> CongruenceElement {
        CongruenceElement {
            chart: *self,
            mat: PMat::identity(self.n, self.modulus()),
        }
    }

    /// The same chart viewed at congruence level `j`.
    pub fn at_level(&self, j: u32) -> Chart {
        Chart { j, ..*self }
    }
}

/// An element of `G_j = 1 + p^j M_n(Z_p)` known modulo `p^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceElement {
    chart: Chart,
    mat: PMat,
}

impl CongruenceElement {
    /// Validates the congruence invariant (which also forces the determinant
    /// to be a unit mod p).
    pub fn from_matrix(chart: Chart, mat: PMat) -> Result<Self, GroupError> {
        assert_eq!(mat.size(), chart.n);
        assert_eq!(mat.modulus(), chart.modulus());
        if mat.congruence_level(chart.p, chart.big_n) < chart.j {
            return Err(GroupError::NotCongruent { level: chart.j });
        }
        Ok(CongruenceElement { chart, mat })
    }

    pub fn from_entries(chart: Chart, entries: &[i64]) -> Result<Self, GroupError> {
        Self::from_matrix(chart, PMat::from_entries(chart.n, chart.modulus(), entries))
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn matrix(&self) -> &PMat {
        &self.mat
    }

    /// Observed congruence level: the largest `k` with `g = 1 mod p^k`
    /// (capped at `N`).
    pub fn observed_level(&self) -> u32 {
        self.mat.congruence_level(self.chart.p, self.chart.big_n)
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), GroupError> {
        let (a, b) = (&self.chart, &other.chart);
        if (a.n, a.p, a.big_n) != (b.n, b.p, b.big_n) {
            return Err(GroupError::IncompatibleParams(format!(
                "(n, p, N) = ({}, {}, {}) vs ({}, {}, {})",
                a.n, a.p, a.big_n, b.n, b.p, b.big_n
            )));
        }
        Ok(())
    }

    /// Product, exact mod `p^N`. The result is tagged with the finer of the
    /// two construction levels that is actually observed.
    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_compatible(other)?;
        let mat = self.mat.mul(&other.mat);
        let j = self.chart.j.min(other.chart.j);
        CongruenceElement::from_matrix(self.chart.at_level(j), mat)
    }

    /// Inverse mod `p^N` via Newton refinement (elements are congruent to
    /// the identity mod p, so the iteration starts at the identity).
    pub fn inverse(&self) -> Self {
        let mat = self
            .mat
            .inverse_unipotent()
            .expect("congruence elements are invertible mod p^N");
        CongruenceElement { chart: self.chart, mat }
    }

    /// `a^{-1} b^{-1} a b`, exact mod `p^N`.
    pub fn commutator(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_compatible(other)?;
        let prod = self
            .inverse()
            .mat
            .mul(&other.inverse().mat)
            .mul(&self.mat)
            .mul(&other.mat);
        // Commutators of level-j1 and level-j2 elements land in level j1+j2
        // for the affine chart; tag with the observed level.
        let chart0 = self.chart.at_level(0);
        let elem = CongruenceElement::from_matrix(chart0, prod)?;
        let level = elem.observed_level();
        CongruenceElement::from_matrix(self.chart.at_level(level), elem.mat)
    }

    pub fn pow(&self, e: u64) -> Self {
        CongruenceElement { chart: self.chart, mat: self.mat.pow(e) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_zero_is_identity() {
        let chart = Chart::new(2, 3, 8, 1);
        let zero = PMat::zero(2, chart.modulus());
        let g = chart.to_group(&zero).unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn chart_rejects_shallow_coordinates() {
        let chart = Chart::new(2, 3, 8, 2);
        let coords = PMat::from_entries(2, chart.modulus(), &[3, 0, 0, 0]);
        assert!(matches!(
            chart.to_group(&coords),
            Err(GroupError::BadCoordinates { level: 2 })
        ));
    }

    #[test]
    fn scaled_coordinates_deepen_level() {
        let chart = Chart::new(2, 3, 8, 1);
        let coords = PMat::from_entries(2, chart.modulus(), &[3, 6, 0, 3]);
        let scaled = coords.scale(3);
        let g = chart.to_group(&scaled).unwrap();
        assert!(g.observed_level() >= 2);
    }

    #[test]
    fn group_inverse_and_commutator_with_self() {
        let chart = Chart::new(2, 2, 8, 1);
        let a = CongruenceElement::from_entries(chart, &[1 + 2, 4, 2, 1]).unwrap();
        assert!(a.mul(&a.inverse()).unwrap().is_identity());
        assert!(a.commutator(&a).unwrap().is_identity());
    }

    #[test]
    fn elementary_commutator_level() {
        // a = 1 + p E12, b = 1 + p E21 in GL_2(Z_2) at N = 8: [a,b] lands at
        // level 2.
        let chart = Chart::new(2, 2, 8, 1);
        let a = CongruenceElement::from_entries(chart, &[1, 2, 0, 1]).unwrap();
        let b = CongruenceElement::from_entries(chart, &[1, 0, 2, 1]).unwrap();
        let c = a.commutator(&b).unwrap();
        assert!(c.observed_level() >= 2, "level {}", c.observed_level());
        assert!(!c.is_identity());
    }
}
