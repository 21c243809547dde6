//! Concrete compact p-adic matrix groups: the congruence subgroups
//! `G_j = 1 + p^j M_n(Z_p)` inside `GL_n(Z_p)`, truncated at matrix-entry
//! precision `p^N`. The chart is the affine chart `X -> 1 + X`, which is
//! exact at every precision; truncated log/exp exist to compare with the
//! exponential chart on its convergence domain.

mod element;
mod pmat;
mod roots;
mod verify;

pub use element::{Chart, CongruenceElement};
pub use pmat::PMat;
pub use roots::{exp_mat, log_mat, pth_root};
pub use verify::{
    multiplication_series_check, sample_element, verify_commutator_lemma, CommutatorReport,
    SeriesCheckReport,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("entries are not congruent to the identity mod p^{level}")]
    NotCongruent { level: u32 },
    #[error("coordinates are not divisible by p^{level}")]
    BadCoordinates { level: u32 },
    #[error("outside the convergence domain: level {got} but at least {need} required")]
    OutOfDomain { need: u32, got: u32 },
    #[error("refinement failed to converge within the iteration budget")]
    NoConvergence,
    #[error("incompatible parameters: {0}")]
    IncompatibleParams(String),
}
