//! Exact rational scalars and their text renderings.
//!
//! Everything in the certified pipeline is a [`Rat`] (arbitrary-precision
//! rational). Documents carry rationals as strings `"p/q"` or integer
//! strings; decimal notation is rejected so no rounding can sneak in.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`, `d != 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p/q"` or an integer string. Whitespace around tokens is allowed;
/// decimal points and exponents are not.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let bad = || Error::Schema(format!("not an exact rational: {s:?}"));
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        let t = t.trim();
        if t.is_empty() || t.contains(['.', 'e', 'E']) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Schema(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
    }
}

/// `p/q` (or plain integer) rendering; inverse of [`parse_rat`].
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Non-authoritative decimal rendering with `digits` fractional digits,
/// rounded half away from zero.
pub fn decimal(r: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let num = r.numer() * &scale;
    let den = r.denom().clone(); // > 0 after normalization
    let (q, rem) = num_integer::Integer::div_rem(&num.abs(), &den);
    let q = if &rem * 2 >= den { q + BigInt::one() } else { q };
    let int_part = &q / &scale;
    let frac_part = &q % &scale;
    let sign = if r.is_negative() && !q.is_zero() { "-" } else { "" };
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part,
        width = digits as usize
    )
}

/// Truncating conversion used only for display ordering hints, never for
/// certified arithmetic.
pub fn approx_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-4", "1/2", "-7/3", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(format_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn floats_rejected() {
        for s in ["1.5", "1e3", "2.0/4", "", "/", "1/0"] {
            assert!(parse_rat(s).is_err(), "{s:?} should be rejected");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&rat(1, 2), 12), "0.500000000000");
        assert_eq!(decimal(&rat(-1, 3), 12), "-0.333333333333");
        assert_eq!(decimal(&rat(2, 3), 12), "0.666666666667");
        assert_eq!(decimal(&rat_i(-4), 12), "-4.000000000000");
    }
}
