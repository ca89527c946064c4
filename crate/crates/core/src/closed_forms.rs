//! Factorized evaluations of the moment determinant at the two points where
//! it is known in closed form: `r = infinity` (Meixner weights) and
//! `alpha = 1` (Hahn weights). Also the `alpha -> 1` amplitude `C_{r,s}` and
//! its large-size rate `psi(v)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::efp_exact::{efp_polynomial, hankel_determinant};
use crate::error::{domain, EfpError, Result};
use crate::exact_algebra::{factorial, AlphaPoly, ExactScalar};

fn fact(n: usize) -> BigInt {
    BigInt::from(factorial(n as u64))
}

fn check_open_unit(alpha: &ExactScalar) -> Result<()> {
    if !alpha.is_positive() || alpha >= &ExactScalar::one() {
        return domain(format!("alpha = {alpha} must lie in (0, 1)"));
    }
    Ok(())
}

/// `prod_{j<s} (j!)^2 alpha^j / (1-alpha)^{2j+1}`: the Hankel determinant of
/// the untruncated moments `sum_{m>=0} m^{j+k-2} alpha^m`.
pub fn meixner_determinant(s: usize, alpha: &ExactScalar) -> Result<ExactScalar> {
    check_open_unit(alpha)?;
    let one_minus = ExactScalar::one() - alpha;
    Ok((0..s).fold(ExactScalar::one(), |acc, j| {
        let jf = fact(j);
        acc * BigRational::from_integer(&jf * &jf) * num_traits::pow(alpha.clone(), j)
            / num_traits::pow(one_minus.clone(), 2 * j + 1)
    }))
}

/// `prod_{j<s} (j!)^a (j+r)! / ((2j)! (r-j-1)! (2j+1)!)` with `a` the power
/// on `j!`.
fn hahn_product(s: usize, r: usize, factorial_power: usize) -> Result<ExactScalar> {
    if s > r {
        return domain(format!("s = {s} exceeds r = {r}"));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..s {
        num *= fact(j).pow(factorial_power as u32) * fact(j + r);
        den *= fact(2 * j) * fact(r - j - 1) * fact(2 * j + 1);
    }
    Ok(BigRational::new(num, den))
}

/// The Hankel determinant at `alpha = 1`,
/// `prod_{j<s} (j!)^4 (j+r)! / ((2j)! (r-j-1)! (2j+1)!)`.
pub fn hahn_determinant(s: usize, r: usize) -> Result<ExactScalar> {
    if s == 0 {
        return domain("s must be at least 1");
    }
    hahn_product(s, r, 4)
}

/// `C_{r,s} = prod_{j<s} (j!)^2 (j+r)! / ((2j)! (r-j-1)! (2j+1)!)`, the
/// amplitude in `f_{r,s} ~ C_{r,s} (1-alpha)^{s^2}` as `alpha -> 1`.
pub fn c_rs(r: usize, s: usize) -> Result<ExactScalar> {
    if s == 0 {
        return domain("s must be at least 1");
    }
    hahn_product(s, r, 2)
}

/// `f_{r,s} / (1-alpha)^{s^2}` evaluated at `alpha = 1`, from the exact
/// polynomial. Should equal [`c_rs`].
pub fn alpha_one_amplitude(r: usize, s: usize) -> Result<ExactScalar> {
    let f = efp_polynomial(r, s)?;
    let reduced = f
        .exact_div(&AlphaPoly::one_minus_alpha().pow((s * s) as u32))
        .ok_or_else(|| {
            EfpError::IdentityViolation(format!("f_{{{r},{s}}} not divisible by (1-alpha)^{}", s * s))
        })?;
    Ok(reduced.eval(&ExactScalar::one()))
}

/// `det_r / det_infinity - 1` for the truncated vs untruncated moment
/// determinants.
pub fn meixner_deviation(r: usize, s: usize, alpha: &ExactScalar) -> Result<ExactScalar> {
    let finite = hankel_determinant(r, s, alpha)?;
    Ok(finite / meixner_determinant(s, alpha)? - ExactScalar::one())
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Large-size rate of `C_{r,s}`:
/// `psi(v) = v^2 log 4v - (1-v)^2/2 log(1-v) - (1+v)^2/2 log(1+v)`,
/// with the endpoint values taken by continuity.
pub fn psi(v: f64) -> f64 {
    // v^2 log 4v = v^2 log 4 + v (v log v)
    let first = if v == 0.0 { 0.0 } else { v * v * 4f64.ln() + v * xlogx(v) };
    first - 0.5 * (1.0 - v) * xlogx(1.0 - v) - 0.5 * (1.0 + v) * xlogx(1.0 + v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{det_fraction_free, ExactMatrix};

    fn q(n: i64, d: i64) -> ExactScalar {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn meixner_values() {
        assert_eq!(meixner_determinant(1, &q(1, 2)).unwrap(), q(2, 1));
        assert_eq!(meixner_determinant(2, &q(1, 2)).unwrap(), q(8, 1));
        assert!(meixner_determinant(2, &q(1, 1)).is_err());
        assert!(meixner_determinant(2, &q(0, 1)).is_err());
    }

    #[test]
    fn meixner_two_by_two_from_geometric_moments() {
        // sum m^n a^m for n = 0, 1, 2 in closed form
        let a = q(1, 3);
        let one = ExactScalar::one();
        let om = &one - &a;
        let m0 = &one / &om;
        let m1 = &a / (&om * &om);
        let m2 = &a * (&one + &a) / (&om * &om * &om);
        let det = &m0 * &m2 - &m1 * &m1;
        assert_eq!(meixner_determinant(2, &a).unwrap(), det);
    }

    #[test]
    fn hahn_values() {
        for r in 1..8 {
            assert_eq!(hahn_determinant(1, r).unwrap(), q(r as i64, 1));
            assert_eq!(c_rs(r, 1).unwrap(), q(r as i64, 1));
        }
        // [[3, 3], [3, 5]]
        assert_eq!(hahn_determinant(2, 3).unwrap(), q(6, 1));
        assert!(hahn_determinant(4, 3).is_err());
        assert!(c_rs(3, 4).is_err());
    }

    #[test]
    fn hahn_full_size_matches_elimination() {
        for r in 1..7usize {
            let m = ExactMatrix::from_fn(r, r, |j, k| {
                (0..r)
                    .map(|m| BigRational::from_integer(BigInt::from(m).pow((j + k) as u32)))
                    .sum::<ExactScalar>()
            });
            assert_eq!(det_fraction_free(&m).unwrap(), hahn_determinant(r, r).unwrap());
        }
    }

    #[test]
    fn c_rs_is_hahn_over_superfactorial() {
        for r in 1..7usize {
            for s in 1..=r {
                let sf: BigInt = (0..s).map(fact).product();
                let expected = hahn_determinant(s, r).unwrap() / BigRational::from_integer(&sf * &sf);
                assert_eq!(c_rs(r, s).unwrap(), expected);
            }
        }
    }

    #[test]
    fn amplitude_at_alpha_one() {
        for r in 1..=6usize {
            for s in 1..=r {
                assert_eq!(alpha_one_amplitude(r, s).unwrap(), c_rs(r, s).unwrap(), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn psi_endpoints_and_sign() {
        assert_eq!(psi(0.0), 0.0);
        assert!(psi(1.0).abs() < 1e-15);
        // C_{r,s} >= 1, so the rate -log C_{r,s} / r^2 is negative inside.
        for k in 1..20 {
            assert!(psi(k as f64 / 20.0) < 0.0);
        }
        // continuity near the ends
        assert!(psi(1e-9).abs() < 1e-12);
        assert!(psi(1.0 - 1e-12).abs() < 1e-9);
    }

    #[test]
    fn c_rs_rate_approaches_psi() {
        let target = psi(0.5);
        let gaps: Vec<f64> = [10usize, 20, 40]
            .iter()
            .map(|&r| {
                let c = c_rs(r, r / 2).unwrap();
                let est = -crate::exact_algebra::ln_rational(&c) / (r * r) as f64;
                (est - target).abs()
            })
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    }
}
