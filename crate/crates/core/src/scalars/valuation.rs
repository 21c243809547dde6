use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// An extended integer: the order of vanishing of a scalar, or `+inf` for
/// zero. Totally ordered with `Infinite` largest; addition is absorbing at
/// `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn min(self, other: Valuation) -> Valuation {
        std::cmp::min(self, other)
    }

    /// True when `self >= Finite(bound)` (always true for `Infinite`).
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl From<i64> for Valuation {
    fn from(v: i64) -> Self {
        Valuation::Finite(v)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinite_last() {
        assert!(Valuation::Finite(5) < Valuation::Infinite);
        assert!(Valuation::Finite(-3) < Valuation::Finite(0));
        assert_eq!(
            Valuation::Finite(2).min(Valuation::Infinite),
            Valuation::Finite(2)
        );
    }

    #[test]
    fn addition_absorbs_at_infinity() {
        assert_eq!(
            Valuation::Finite(2) + Valuation::Finite(3),
            Valuation::Finite(5)
        );
        assert_eq!(Valuation::Finite(2) + Valuation::Infinite, Valuation::Infinite);
        assert_eq!(Valuation::Infinite + Valuation::Infinite, Valuation::Infinite);
    }
}
