//! Exact scalar arithmetic for the two coefficient worlds.
//!
//! `F_p((t))` elements are truncated Laurent series ([`TruncSeries`]) whose
//! norms are tracked as integer valuations ([`Valuation`]); the norm
//! `|x| = p^(-val x)` is never materialized. The characteristic-0 side uses
//! arbitrary-precision rationals ([`Rat`]).

mod rat;
mod series;
mod valuation;

pub use rat::{format_rat, parse_rat, rat, rat_int, Rat};
pub use series::{ScalarError, TruncSeries};
pub use valuation::Valuation;
