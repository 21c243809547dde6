//! Finite-level inhomogeneous cochains for abelian pro-p groups acting on
//! finite-rank normed modules over `F_p((t))`.
//!
//! Cochain arguments range over the finite quotient `Q = G_l / G_(l+m)` of
//! `G = Z_p^d`; tables are dense over `Q^n`. An action binds to such a level
//! window only when every generator satisfies `val(gen^(p^(l+m)) - 1) >= N`
//! at the working precision `N`: the truncated action then factors through
//! `Q` exactly, which is what makes `d . d = 0` and the homotopy identities
//! hold on the nose at every level.

mod action;
mod homotopy;
mod koszul;
mod ops;
mod procyclic;
mod seminorm;
mod table;
mod window;

pub use action::{action_certificate, AnalyticAction, BoundAction, CertificateOutcome};
pub use homotopy::{
    homotopy_apply, residual_decomposition, residual_valuation_bound, HomotopyParams, Reading,
    ResidualReport,
};
pub use koszul::{koszul_cohomology, main_theorem_experiment, KoszulReport, MainTheoremReport};
pub use ops::differential;
pub use procyclic::{procyclic_cohomology, ProcyclicReport};
pub use seminorm::{c_analytic_seminorm, SeminormReport};
pub use table::Cochain;
pub use window::LevelWindow;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("action incompatible with the level window: {0}")]
    WindowIncompatible(String),
    #[error("cochain level does not match the action's window")]
    LevelMismatch,
    #[error("generator maps do not commute")]
    NonCommuting,
    #[error("operation requires an abelian group specification")]
    NonAbelian,
    #[error("homotopy index {i} outside the window [{l}, {top})")]
    IndexOutOfWindow { i: u32, l: u32, top: u32 },
    #[error(transparent)]
    Banach(#[from] crate::banach::BanachError),
    #[error(transparent)]
    Scalar(#[from] crate::scalars::ScalarError),
}
