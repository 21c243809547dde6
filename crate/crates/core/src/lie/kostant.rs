use serde::Serialize;

use super::algebra::LieModule;
use super::catalog;
use super::ce::CEComplex;
use super::weights::{highest_weight_module, weyl_length_counts, Weight};
use super::LieError;

/// Dimensions of the nilpotent-radical cohomology of a highest-weight
/// module, compared degreewise against the Weyl-group length counts.
#[derive(Clone, Debug, Serialize)]
pub struct KostantReport {
    pub weight: String,
    pub module_dim: usize,
    pub h_dims: Vec<usize>,
    pub weyl_counts: Vec<usize>,
    pub dims_match: bool,
    pub direct_sum_nonzero: bool,
    pub passed: bool,
}

/// Computes `H^i(n, V_lambda)` for the nilpotent radical `n` of the
/// standard Borel and checks the length-count identity and nonvanishing of
/// the direct sum.
pub fn kostant_check(weight: Weight) -> Result<KostantReport, LieError> {
    let module = highest_weight_module(weight)?;
    let (g, n_indices, rank) = match weight {
        Weight::Sl2(_) => (catalog::sl2(), catalog::sl2_nilradical_indices(), 1),
        Weight::Sl3(_, _) => (catalog::sl3(), catalog::sl3_nilradical_indices(), 2),
    };
    let n = g.subalgebra(&n_indices)?;
    let restricted = LieModule::new(module.dim(), {
        n_indices.iter().map(|&i| module.action(i).clone()).collect()
    });
    let cx = CEComplex::build(&n, &restricted)?;
    let h_dims = cx.cohomology_dims();
    let weyl_counts = weyl_length_counts(rank);
    let dims_match = h_dims == weyl_counts;
    let direct_sum_nonzero = h_dims.iter().sum::<usize>() > 0;
    Ok(KostantReport {
        weight: match weight {
            Weight::Sl2(l) => format!("sl2:{l}"),
            Weight::Sl3(a, b) => format!("sl3:({a},{b})"),
        },
        module_dim: module.dim(),
        h_dims,
        weyl_counts,
        dims_match,
        direct_sum_nonzero,
        passed: dims_match && direct_sum_nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_all_small_weights() {
        for l in 0..=4 {
            let report = kostant_check(Weight::Sl2(l)).unwrap();
            assert_eq!(report.h_dims, vec![1, 1], "lambda={l}: {report:?}");
            assert!(report.passed);
        }
    }

    #[test]
    fn sl3_trivial_weight() {
        let report = kostant_check(Weight::Sl3(0, 0)).unwrap();
        assert_eq!(report.h_dims, vec![1, 2, 2, 1]);
        assert!(report.passed);
    }

    #[test]
    fn sl3_adjoint_weight() {
        let report = kostant_check(Weight::Sl3(1, 1)).unwrap();
        assert_eq!(report.h_dims, vec![1, 2, 2, 1], "{report:?}");
        assert!(report.passed);
    }
}
