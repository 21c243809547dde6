//! Finite-rank models of nonarchimedean Banach spaces with orthonormal
//! bases, and the constructive strictness toolkit: elimination-based
//! kernel/image/cokernel decompositions with bounded sections, subspace
//! splittings, quasi-inverses with exact defect ranks, unramified base
//! change, and cohomology of finite complexes.
//!
//! Every space carries the max norm of its coordinates; general norms are
//! modeled by composing with diagonal rescaling maps, so the quantitative
//! content of strictness is the integer valuation of the returned section.

mod basechange;
mod complex;
mod decompose;
mod gf;
mod mat;

pub use basechange::{base_change_complex_check, base_change_map_check, BaseChangeReport};
pub use complex::{complex_cohomology, ComplexReport};
pub use decompose::{
    decompose, invert_square, matrix_rank, quasi_inverse, split_subspace, Decomposition,
    QuasiInverse, Split,
};
pub use gf::GfExt;
pub use mat::{vec_agrees, vec_is_zero, vec_val, BoundedMap, NormedModule, SeriesMat};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BanachError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(
        "precision exhaustion at entry ({row},{col}): zero to O(t^{prec}) but the ambient \
         precision is {ambient}; raise the working precision"
    )]
    PrecisionExhausted { row: usize, col: usize, prec: i64, ambient: i64 },
    #[error("input vectors are linearly dependent")]
    DependentBasis,
    #[error("differentials do not compose to zero at position {position}")]
    NotAComplex { position: usize },
    #[error("map is not invertible")]
    NotInvertible,
    #[error("scalar error: {0}")]
    Scalar(#[from] crate::scalars::ScalarError),
}
