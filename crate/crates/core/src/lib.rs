//! Exact-arithmetic kernels for desk-scale experiments in nonarchimedean
//! linear algebra and cohomology.
//!
//! The crate is organized around five coefficient/object worlds:
//!
//! * [`scalars`] — truncated Laurent series over `F_p` (the characteristic-p
//!   nonarchimedean field) with integer valuations, plus exact rationals for
//!   the characteristic-0 side.
//! * [`banach`] — finite-rank normed modules with orthonormal bases, bounded
//!   maps as series matrices, and the elimination kernel producing
//!   kernel/image/cokernel data together with a bounded section.
//! * [`padic`] — congruence subgroups `1 + p^j M_n(Z_p)` at matrix-entry
//!   precision `p^N`: charts, commutators, p-th roots, truncated log/exp.
//! * [`cochain`] — finite-level inhomogeneous cochains for abelian pro-p
//!   groups acting on normed modules, with the procyclic and Koszul
//!   cohomology routes, analyticity certificates, and the degree-lowering
//!   chain homotopy with its exact residual decomposition.
//! * [`lie`] — Chevalley–Eilenberg complexes over exact rationals, the
//!   Hochschild–Serre E2 page, highest-weight modules for sl2/sl3, and the
//!   nilpotent-cohomology dimension checks.
//!
//! All norms are carried as integer valuations (log scale); nothing in the
//! crate touches floating point.

pub mod banach;
pub mod cochain;
pub mod lie;
pub mod padic;
pub mod scalars;
