//! The two Toda-chain equations satisfied by `f_{r,s}`, checked as exact
//! polynomial identities, and the recursive reconstruction in `s`.
//!
//! With `D = alpha d/dalpha`, the equation in the `s` direction reads
//!
//! ```text
//! D^2 log f_{r,s} = s^2 alpha / (1-alpha)^2 * (f_{r,s+1} f_{r,s-1} / f_{r,s}^2 - 1)
//! ```
//!
//! and the one in the `r` direction is the same with `r` shifted and `r^2` in
//! place of `s^2`. Multiplying through by `f^2 (1-alpha)^2` turns each into a
//! polynomial whose vanishing is tested exactly.
//!
//! At the boundary `s = r` the neighbours `f_{r,r+1}` and `f_{r-1,r}` are taken
//! to be zero (no admissible configuration); both identities then still hold.

use num_rational::BigRational;
use serde::Serialize;

use crate::efp_exact::efp_polynomial;
use crate::error::{domain, EfpError, Result};
use crate::exact_algebra::{alpha_derivative_operator, AlphaPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TodaDirection {
    ShiftS,
    ShiftR,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TodaResidual {
    pub direction: TodaDirection,
    pub r: usize,
    pub s: usize,
    pub residual: AlphaPoly,
}

impl TodaResidual {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `f_{r,s}` with the convention `f_{r,s} = 0` for `s > r`.
fn efp_or_zero(r: usize, s: usize) -> Result<AlphaPoly> {
    if s > r {
        Ok(AlphaPoly::zero())
    } else {
        efp_polynomial(r, s)
    }
}

/// `(D^2 f) f - (D f)^2`, i.e. `f^2 D^2 log f`.
fn log_second_derivative_numerator(f: &AlphaPoly) -> AlphaPoly {
    let df = alpha_derivative_operator(f);
    let ddf = alpha_derivative_operator(&df);
    &(&ddf * f) - &(&df * &df)
}

fn coefficient(n: usize) -> BigRational {
    BigRational::from_integer((n * n).into())
}

fn cleared_residual(f: &AlphaPoly, plus: &AlphaPoly, minus: &AlphaPoly, n: usize) -> AlphaPoly {
    let lhs = &log_second_derivative_numerator(f) * &AlphaPoly::one_minus_alpha().pow(2);
    let rhs = (&(plus * minus) - &(f * f))
        .shift_up(1)
        .scale(&coefficient(n));
    &lhs - &rhs
}

/// Residual of the `s`-direction equation at `(r, s)`, `1 <= s <= r`.
pub fn toda_residual_s(r: usize, s: usize) -> Result<TodaResidual> {
    if s == 0 || s > r {
        return domain(format!("s-direction Toda check needs 1 <= s <= r, got r = {r}, s = {s}"));
    }
    let f = efp_polynomial(r, s)?;
    let plus = efp_or_zero(r, s + 1)?;
    let minus = efp_polynomial(r, s - 1)?;
    Ok(TodaResidual {
        direction: TodaDirection::ShiftS,
        r,
        s,
        residual: cleared_residual(&f, &plus, &minus, s),
    })
}

/// Residual of the `r`-direction equation at `(r, s)`, `1 <= s <= r`.
pub fn toda_residual_r(r: usize, s: usize) -> Result<TodaResidual> {
    if s == 0 || s > r {
        return domain(format!("r-direction Toda check needs 1 <= s <= r, got r = {r}, s = {s}"));
    }
    let f = efp_polynomial(r, s)?;
    let plus = efp_polynomial(r + 1, s)?;
    let minus = efp_or_zero(r - 1, s)?;
    Ok(TodaResidual {
        direction: TodaDirection::ShiftR,
        r,
        s,
        residual: cleared_residual(&f, &plus, &minus, r),
    })
}

/// Rebuilds `f_{r,0}, ..., f_{r,s_max}` from `f_{r,0} = 1` and
/// `f_{r,1} = 1 - alpha^r` by solving the `s`-direction equation for
/// `f_{r,s+1}`:
///
/// ```text
/// f_{r,s+1} = (s^2 alpha f^2 + (1-alpha)^2 ((D^2 f) f - (D f)^2)) / (s^2 alpha f_{r,s-1})
/// ```
///
/// Every division must be exact; a remainder is reported as an error.
pub fn toda_reconstruct(r: usize, s_max: usize) -> Result<Vec<AlphaPoly>> {
    if r == 0 || s_max > r {
        return domain(format!("reconstruction needs 1 <= r and s_max <= r, got r = {r}, s_max = {s_max}"));
    }
    let mut out = vec![AlphaPoly::one()];
    if s_max == 0 {
        return Ok(out);
    }
    out.push(&AlphaPoly::one() - &AlphaPoly::monomial(BigRational::from_integer(1.into()), r));
    for s in 1..s_max {
        let f = &out[s];
        let numerator = &(f * f).shift_up(1).scale(&coefficient(s))
            + &(&log_second_derivative_numerator(f) * &AlphaPoly::one_minus_alpha().pow(2));
        let divisor = out[s - 1].shift_up(1).scale(&coefficient(s));
        let next = numerator.exact_div(&divisor).ok_or_else(|| {
            EfpError::IdentityViolation(format!(
                "f_{{{r},{}}} is not a polynomial: nonzero remainder dividing by f_{{{r},{}}}",
                s + 1,
                s - 1
            ))
        })?;
        out.push(next);
    }
    Ok(out)
}
