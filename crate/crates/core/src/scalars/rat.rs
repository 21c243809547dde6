use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar for the characteristic-0 side. `BigRational` keeps
/// the denominator positive and the fraction reduced, which is exactly the
/// invariant we need.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Renders as `n` or `n/d` (denominator omitted when 1).
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `n` or `n/d`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((n, d)) => {
            let num = n.trim().parse::<BigInt>().ok()?;
            let den = d.trim().parse::<BigInt>().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(Rat::new(num, den))
            }
        }
    }
}

/// Least common multiple of denominators, for clearing a row to integers.
pub fn denominator_lcm<'a>(xs: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for x in xs {
        let d = x.denom().abs();
        let g = num_integer::Integer::gcd(&acc, &d);
        acc = acc / g * d;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-4/7", "0", "22/7"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&format_rat(&x)).unwrap(), x);
        }
        assert!(parse_rat("1/0").is_none());
    }

    #[test]
    fn reduced_invariant() {
        let x = rat(6, -4);
        assert_eq!(format_rat(&x), "-3/2");
    }
}
