use serde::Serialize;

use super::CochainError;
use crate::banach::{decompose, BoundedMap, NormedModule, SeriesMat};
use crate::scalars::{TruncSeries, Valuation};

/// Cohomology of a procyclic group through the two-term complex
/// `0 -> M -(gamma - 1)-> M -> 0`: `H^0 = ker`, `H^1 = coker`.
#[derive(Clone, Debug, Serialize)]
pub struct ProcyclicReport {
    pub h0_dim: usize,
    pub h1_dim: usize,
    #[serde(skip)]
    pub h0_basis: Vec<Vec<TruncSeries>>,
    #[serde(skip)]
    pub h1_basis: Vec<Vec<TruncSeries>>,
    pub section_valuation: Valuation,
}

pub fn procyclic_cohomology(
    module: &NormedModule,
    gamma: &BoundedMap,
    ambient: i64,
) -> Result<ProcyclicReport, CochainError> {
    let r = module.rank();
    if gamma.source().rank() != r || gamma.target().rank() != r {
        return Err(CochainError::LevelMismatch);
    }
    let p = gamma.entries().prime();
    crate::banach::invert_square(gamma.entries(), ambient)
        .map_err(|_| CochainError::WindowIncompatible("generator is not invertible".into()))?;
    let id = SeriesMat::identity(p, r, ambient);
    let t = BoundedMap::new(module.clone(), module.clone(), gamma.entries().sub(&id));
    let dec = decompose(&t, ambient)?;
    Ok(ProcyclicReport {
        h0_dim: dec.dim_kernel(),
        h1_dim: dec.dim_cokernel(),
        h0_basis: dec.kernel_basis,
        h1_basis: dec.cokernel_basis,
        section_valuation: dec.section_valuation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 3;
    const N: i64 = 8;

    #[test]
    fn trivial_action_gives_full_dims() {
        let module = NormedModule::new(3);
        let gamma = BoundedMap::identity(module.clone(), P, N);
        let report = procyclic_cohomology(&module, &gamma, N).unwrap();
        assert_eq!((report.h0_dim, report.h1_dim), (3, 3));
    }

    #[test]
    fn one_plus_t_is_acyclic() {
        let module = NormedModule::new(1);
        let entries = SeriesMat::from_fn(P, 1, 1, |_, _| {
            &TruncSeries::one(P, N) + &TruncSeries::monomial(P, 1, 1, N)
        });
        let gamma = BoundedMap::new(module.clone(), module.clone(), entries);
        let report = procyclic_cohomology(&module, &gamma, N).unwrap();
        assert_eq!((report.h0_dim, report.h1_dim), (0, 0));
    }

    #[test]
    fn unipotent_has_one_dimensional_groups() {
        let module = NormedModule::new(2);
        let entries = SeriesMat::from_fn(P, 2, 2, |i, j| {
            if i == j {
                TruncSeries::one(P, N)
            } else if j == 1 {
                TruncSeries::one(P, N)
            } else {
                TruncSeries::zero(P, N)
            }
        });
        let gamma = BoundedMap::new(module.clone(), module.clone(), entries);
        let report = procyclic_cohomology(&module, &gamma, N).unwrap();
        assert_eq!((report.h0_dim, report.h1_dim), (1, 1));
    }
}
