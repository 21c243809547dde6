use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Valuation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("mismatched primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("division by canonical zero (known only to O(t^{prec}))")]
    DivisionByZero { prec: i64 },
}

/// An element of `F_p((t))` known modulo `t^prec`.
///
/// `coeffs[k]` is the residue of the coefficient of `t^(lead + k)`. The
/// representation is canonical: for a nonzero element the first and last
/// stored digits are nonzero and `lead < prec`; the zero element has
/// `lead == prec` and no digits. Equality therefore includes the tracked
/// precision: `1 + O(t^3)` and `1 + O(t^5)` are distinct values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TruncSeries {
    p: u64,
    lead: i64,
    coeffs: Vec<u64>,
    prec: i64,
}

impl TruncSeries {
    /// Canonical zero known to `O(t^prec)`.
    pub fn zero(p: u64, prec: i64) -> Self {
        TruncSeries { p, lead: prec, coeffs: Vec::new(), prec }
    }

    pub fn one(p: u64, prec: i64) -> Self {
        Self::monomial(p, 1, 0, prec)
    }

    /// `c * t^k + O(t^prec)` with `c` reduced mod p.
    pub fn monomial(p: u64, c: i64, k: i64, prec: i64) -> Self {
        Self::from_coeffs(p, k, &[c], prec)
    }

    /// Builds from signed digit values starting at exponent `lead`;
    /// normalizes to canonical form.
    pub fn from_coeffs(p: u64, lead: i64, digits: &[i64], prec: i64) -> Self {
        let mut coeffs = Vec::with_capacity(digits.len());
        for &d in digits {
            coeffs.push(d.rem_euclid(p as i64) as u64);
        }
        Self::normalized(p, lead, coeffs, prec)
    }

    /// Restores the invariants on a raw digit vector: strips leading and
    /// trailing zero digits, drops digits at or beyond `prec`, collapses to
    /// canonical zero.
    fn normalized(p: u64, mut lead: i64, mut coeffs: Vec<u64>, prec: i64) -> Self {
        debug_assert!(p >= 2);
        // Discard digits outside the known range.
        if lead < prec {
            let max_len = (prec - lead) as usize;
            coeffs.truncate(max_len);
        } else {
            coeffs.clear();
        }
        let first_nonzero = coeffs.iter().position(|&c| c != 0);
        match first_nonzero {
            None => TruncSeries::zero(p, prec),
            Some(k) => {
                coeffs.drain(..k);
                lead += k as i64;
                let last_nonzero = coeffs.iter().rposition(|&c| c != 0).unwrap();
                coeffs.truncate(last_nonzero + 1);
                TruncSeries { p, lead, coeffs, prec }
            }
        }
    }

    /// Normalization is exposed as an operation; on canonical values it is
    /// the identity, and it is idempotent by construction.
    pub fn normalize(&self) -> Self {
        Self::normalized(self.p, self.lead, self.coeffs.clone(), self.prec)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lead == 0 && self.coeffs == [1]
    }

    /// t-adic valuation; `+inf` for canonical zero.
    pub fn val(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.lead)
        }
    }

    /// The valuation lower bound used in precision propagation: the lead for
    /// nonzero elements and `prec` for canonical zero (an `O(t^prec)` datum).
    fn val_floor(&self) -> i64 {
        self.lead
    }

    /// Digit at exponent `k` (zero outside the stored window; digits at or
    /// beyond `prec` are not known and must not be requested).
    pub fn digit(&self, k: i64) -> u64 {
        debug_assert!(k < self.prec, "digit at or beyond precision");
        if k < self.lead {
            return 0;
        }
        let idx = (k - self.lead) as usize;
        self.coeffs.get(idx).copied().unwrap_or(0)
    }

    fn check_prime(&self, other: &Self) -> Result<(), ScalarError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(ScalarError::PrimeMismatch(self.p, other.p))
        }
    }

    /// Sum with precision `min(prec_x, prec_y)`.
    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_prime(other)?;
        let prec = self.prec.min(other.prec);
        let lead = self.val_floor().min(other.val_floor());
        if lead >= prec {
            return Ok(TruncSeries::zero(self.p, prec));
        }
        let len = (prec - lead) as usize;
        let mut coeffs = vec![0u64; len];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let e = lead + k as i64;
            *c = (self.digit_padded(e) + other.digit_padded(e)) % self.p;
        }
        Ok(Self::normalized(self.p, lead, coeffs, prec))
    }

    fn digit_padded(&self, k: i64) -> u64 {
        if k < self.lead || k >= self.prec {
            0
        } else {
            self.digit(k)
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&other.neg_value())
    }

    pub fn neg_value(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| if c == 0 { 0 } else { self.p - c })
            .collect();
        TruncSeries { p: self.p, lead: self.lead, coeffs, prec: self.prec }
    }

    /// Product with precision `min(prec_x + val_y, prec_y + val_x)`, using
    /// `prec` itself as the valuation floor of canonical zero.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_prime(other)?;
        let prec = (self.prec + other.val_floor()).min(other.prec + self.val_floor());
        if self.is_zero() || other.is_zero() {
            return Ok(TruncSeries::zero(self.p, prec));
        }
        let lead = self.lead + other.lead;
        if lead >= prec {
            return Ok(TruncSeries::zero(self.p, prec));
        }
        let len = (prec - lead) as usize;
        let mut coeffs = vec![0u64; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                let c = &mut coeffs[i + j];
                *c = (*c + a * b) % self.p;
            }
        }
        Ok(Self::normalized(self.p, lead, coeffs, prec))
    }

    /// Multiplicative inverse. The result has valuation `-val(x)` and
    /// precision `prec - 2*val(x)`.
    pub fn invert(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero { prec: self.prec });
        }
        let v = self.lead;
        let rel = (self.prec - v) as usize; // digits of relative precision
        let c0_inv = mod_inverse(self.coeffs[0], self.p);
        let mut d = vec![0u64; rel];
        d[0] = c0_inv;
        for k in 1..rel {
            let mut acc: u64 = 0;
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = (acc + self.coeffs[i] * d[k - i]) % self.p;
            }
            d[k] = (self.p - acc % self.p) % self.p * c0_inv % self.p;
        }
        Ok(Self::normalized(self.p, -v, d, self.prec - 2 * v))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_mul(&other.invert()?)
    }

    /// Multiplication by `t^k` (exact shift of valuation and precision).
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries {
            p: self.p,
            lead: self.lead + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = TruncSeries::one(self.p, self.prec + self.val_floor() * e as i64);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Forgets digits at or beyond `new_prec` (must not exceed the current
    /// precision).
    pub fn truncate_to(&self, new_prec: i64) -> Self {
        assert!(new_prec <= self.prec, "cannot gain precision by truncation");
        Self::normalized(self.p, self.lead, self.coeffs.clone(), new_prec)
    }

    /// Equality at the jointly available precision: both sides truncated to
    /// the smaller `prec` and compared canonically. This is the contract
    /// notion of "exact" for values produced along different computation
    /// paths.
    pub fn agrees(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let prec = self.prec.min(other.prec);
        self.truncate_to(prec) == other.truncate_to(prec)
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime and a nonzero mod p
    let (mut t, mut new_t): (i64, i64) = (0, 1);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit mod {p}");
    t.rem_euclid(p as i64) as u64
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &TruncSeries {
            type Output = TruncSeries;
            fn $method(self, rhs: &TruncSeries) -> TruncSeries {
                self.$checked(rhs).expect("scalar arithmetic across fields")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.neg_value()
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O(t^{})", self.prec);
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.lead + k as i64;
            match (c, e) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{e}")?,
                (_, 1) => write!(f, "{c}*t")?,
                (_, _) => write!(f, "{c}*t^{e}")?,
            }
        }
        write!(f, " + O(t^{})", self.prec)
    }
}

/// Raw wire form; deserialization re-normalizes and validates.
#[derive(Deserialize)]
struct RawSeries {
    p: u64,
    lead: i64,
    coeffs: Vec<i64>,
    prec: i64,
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawSeries::deserialize(deserializer)?;
        if raw.p < 2 {
            return Err(serde::de::Error::custom("p must be a prime >= 2"));
        }
        Ok(TruncSeries::from_coeffs(raw.p, raw.lead, &raw.coeffs, raw.prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: u64, lead: i64, digits: &[i64], prec: i64) -> TruncSeries {
        TruncSeries::from_coeffs(p, lead, digits, prec)
    }

    #[test]
    fn val_of_monomials() {
        // t^2 + t^4
        let x = s(3, 2, &[1, 0, 1], 8);
        assert_eq!(x.val(), Valuation::Finite(2));
        assert_eq!(TruncSeries::zero(3, 8).val(), Valuation::Infinite);
    }

    #[test]
    fn val_is_multiplicative() {
        let x = s(5, 0, &[1, 1], 8); // 1 + t
        let y = TruncSeries::monomial(5, 1, 3, 8); // t^3
        assert_eq!((&x * &y).val(), Valuation::Finite(3));
    }

    #[test]
    fn char_p_addition_wraps() {
        // in F_p: 1 + (p-1) = 0, so (1+t) + (p-1) = t
        for p in [2u64, 3, 5] {
            let x = s(p, 0, &[1, 1], 8);
            let y = TruncSeries::monomial(p, p as i64 - 1, 0, 8);
            let sum = &x + &y;
            assert_eq!(sum, TruncSeries::monomial(p, 1, 1, 8), "p={p}");
        }
    }

    #[test]
    fn mul_monomials() {
        let t = TruncSeries::monomial(3, 1, 1, 8);
        assert_eq!((&t * &t).val(), Valuation::Finite(2));
    }

    #[test]
    fn mul_precision_propagation() {
        // (1 + O(t^3)) * (t^2 + O(t^5)) = t^2 + O(t^5)
        let x = s(3, 0, &[1], 3);
        let y = s(3, 2, &[1], 5);
        let prod = &x * &y;
        assert_eq!(prod.precision(), 5);
        assert_eq!(prod, TruncSeries::monomial(3, 1, 2, 5));
    }

    #[test]
    fn zero_times_positive_val_loses_precision_correctly() {
        // O(t^5) * t^2 = O(t^7)
        let z = TruncSeries::zero(3, 5);
        let y = s(3, 2, &[1], 8);
        let prod = &z * &y;
        assert!(prod.is_zero());
        assert_eq!(prod.precision(), 7);
    }

    #[test]
    fn geometric_series_inverse() {
        // 1/(1-t) = 1 + t + t^2 + ... mod t^8
        let x = s(3, 0, &[1, -1], 8);
        let inv = x.invert().unwrap();
        assert_eq!(inv, s(3, 0, &[1; 8], 8));
        assert!( (&x * &inv).is_one() );
    }

    #[test]
    fn invert_monomial() {
        let t = TruncSeries::monomial(3, 1, 1, 8);
        let inv = t.invert().unwrap();
        assert_eq!(inv.val(), Valuation::Finite(-1));
        assert_eq!(inv.precision(), 6);
        assert!((&t * &inv).is_one());
    }

    #[test]
    fn invert_zero_is_an_error() {
        assert!(matches!(
            TruncSeries::zero(3, 8).invert(),
            Err(ScalarError::DivisionByZero { prec: 8 })
        ));
    }

    #[test]
    fn normalize_strips_and_collapses() {
        let x = s(3, 0, &[0, 0, 2, 0], 8);
        assert_eq!(x.val(), Valuation::Finite(2));
        assert_eq!(x.normalize(), x);
        let z = s(3, 0, &[0, 0, 0], 8);
        assert!(z.is_zero());
        assert_eq!(z, TruncSeries::zero(3, 8));
    }

    #[test]
    fn prime_mismatch_is_detected() {
        let x = TruncSeries::one(3, 8);
        let y = TruncSeries::one(5, 8);
        assert!(matches!(x.checked_add(&y), Err(ScalarError::PrimeMismatch(3, 5))));
    }

    #[test]
    fn equality_tracks_precision_but_agrees_does_not() {
        let a = TruncSeries::one(3, 3);
        let b = TruncSeries::one(3, 5);
        assert_ne!(a, b);
        assert!(a.agrees(&b));
    }
}
