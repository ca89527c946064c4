use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{EfpError, Result};

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime parts). `BigRational` normalizes on every construction.
pub type ExactScalar = BigRational;

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"0.25"` into an exact
/// rational.
pub fn parse_rational(text: &str) -> Result<ExactScalar> {
    let t = text.trim();
    let bad = || EfpError::Parse(format!("malformed rational {text:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(EfpError::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().map_err(|_| bad())?,
        };
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = BigRational::new(int_part * &scale + frac_part, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Nearest double (num-rational rounds correctly; out-of-range values
/// saturate to 0 or infinity).
pub fn rational_to_f64(x: &ExactScalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_zero() || ln_rational(&x.abs()) < 0.0 {
            0.0
        } else if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational without underflow, even when
/// the value itself is far below the smallest double.
pub fn ln_rational(x: &ExactScalar) -> f64 {
    assert!(x.is_positive(), "logarithm of a non-positive rational");
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> ExactScalar {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("1/4").unwrap(), q(1, 4));
        assert_eq!(parse_rational(" 6/8 ").unwrap(), q(3, 4));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn canonical_form() {
        let x = q(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(q(1, 3) + q(1, 6), q(1, 2));
    }

    #[test]
    fn log_of_tiny_rational() {
        let tiny = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(2), 5000));
        let expected = -5000.0 * std::f64::consts::LN_2;
        assert!((ln_rational(&tiny) - expected).abs() < 1e-9);
        assert_eq!(rational_to_f64(&tiny), 0.0);
        assert!((ln_rational(&q(3, 4)) - 0.75f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
    }
}
