//! Exact emptiness formation probability `f_{r,s}` for the free-fermion
//! six-vertex model with domain wall boundary conditions.
//!
//! Three independent routes are provided:
//!
//! * [`efp_hankel`]: the `s x s` Hankel determinant of the truncated moments
//!   `sum_{m<r} m^{j+k-2} alpha^m`, evaluated by fraction-free elimination;
//! * [`efp_oracle`]: brute-force enumeration of the discrete matrix-model sum
//!   over `(m_1, ..., m_s) in {0..r-1}^s` weighted by the squared Vandermonde;
//! * [`efp_special`]: the closed values at `s = 0`, `s = 1` and `s = r`.
//!
//! Both Hankel and oracle routes share only the normalizing prefactor
//! `(1-alpha)^{s^2} / ((prod_{j<s} j!)^2 alpha^{s(s-1)/2})`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, EfpError, Result};
use crate::exact_algebra::{
    det_fraction_free, factorial, rational_to_f64, AlphaPoly, ExactMatrix, ExactScalar,
};

/// Upper bound on the number of tuples [`efp_oracle`] will enumerate.
pub const ORACLE_TERM_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    pub alpha: ExactScalar,
    /// Overall weight normalization; 2 for plain domino counting.
    pub rho: ExactScalar,
    pub r: usize,
    pub s: usize,
}

impl ModelParams {
    pub fn new(alpha: ExactScalar, r: usize, s: usize) -> Result<Self> {
        Self::with_rho(alpha, BigRational::from_integer(2.into()), r, s)
    }

    pub fn with_rho(alpha: ExactScalar, rho: ExactScalar, r: usize, s: usize) -> Result<Self> {
        if alpha.is_negative() || alpha > ExactScalar::one() {
            return domain(format!("alpha = {alpha} must lie in [0, 1]"));
        }
        if !rho.is_positive() {
            return domain(format!("rho = {rho} must be positive"));
        }
        if r == 0 {
            return domain("r must be at least 1");
        }
        if s > r {
            return domain(format!(
                "s = {s} exceeds r = {r}: no admissible configurations"
            ));
        }
        Ok(ModelParams { alpha, rho, r, s })
    }

    pub fn n(&self) -> usize {
        self.r + self.s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Hankel,
    Oracle,
    Special,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Hankel => "hankel",
            Method::Oracle => "oracle",
            Method::Special => "special",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EfpResult {
    pub value_exact: ExactScalar,
    pub value_float: f64,
    /// `f_{r,s}` as a polynomial in alpha, when it was computed symbolically.
    pub as_polynomial: Option<AlphaPoly>,
    pub method: Method,
    pub params: ModelParams,
}

impl EfpResult {
    fn new(
        value: ExactScalar,
        poly: Option<AlphaPoly>,
        method: Method,
        params: &ModelParams,
    ) -> Self {
        EfpResult {
            value_float: rational_to_f64(&value),
            value_exact: value,
            as_polynomial: poly,
            method,
            params: params.clone(),
        }
    }
}

fn rational(n: impl Into<BigInt>) -> ExactScalar {
    BigRational::from_integer(n.into())
}

/// `(prod_{j=1}^{s-1} j!)^2`
fn superfactorial_squared(s: usize) -> BigInt {
    let prod = (1..s as u64).fold(BigInt::one(), |acc, j| acc * BigInt::from(factorial(j)));
    &prod * &prod
}

fn vandermonde_exponent(s: usize) -> usize {
    s * s.saturating_sub(1) / 2
}

/// `sum_{m=0}^{r-1} m^{j+k-2} alpha^m` for 1-based `j, k`, with `0^0 = 1`.
pub fn hankel_entry(r: usize, j: usize, k: usize) -> Result<AlphaPoly> {
    if j == 0 || k == 0 {
        return domain("Hankel indices are 1-based");
    }
    let power = (j + k - 2) as u32;
    Ok(AlphaPoly::new(
        (0..r)
            .map(|m| rational(BigInt::from(m).pow(power)))
            .collect(),
    ))
}

/// The `s x s` Hankel matrix of truncated moments with polynomial entries.
pub fn hankel_matrix(r: usize, s: usize) -> Result<ExactMatrix<AlphaPoly>> {
    if s == 0 {
        return domain("the Hankel matrix needs s >= 1");
    }
    let moments: Vec<AlphaPoly> = (0..2 * s - 1)
        .map(|n| hankel_entry(r, 1, n + 1))
        .collect::<Result<_>>()?;
    Ok(ExactMatrix::from_fn(s, s, |j, k| moments[j + k].clone()))
}

/// The Hankel determinant as an exact polynomial in alpha.
pub fn hankel_determinant_poly(r: usize, s: usize) -> Result<AlphaPoly> {
    if s == 0 {
        return Ok(AlphaPoly::one());
    }
    det_fraction_free(&hankel_matrix(r, s)?)
}

/// The Hankel determinant at a rational alpha.
///
/// With `alpha = p/q`, the moments are scaled by `q^{r-1}` so that the
/// elimination runs over the integers; the result is rescaled by
/// `q^{-(r-1)s}` afterwards.
pub fn hankel_determinant(r: usize, s: usize, alpha: &ExactScalar) -> Result<ExactScalar> {
    if s == 0 {
        return Ok(ExactScalar::one());
    }
    let p = alpha.numer();
    let q = alpha.denom();
    let p_pow: Vec<BigInt> = (0..r).map(|m| p.pow(m as u32)).collect();
    let q_pow: Vec<BigInt> = (0..r).map(|m| q.pow(m as u32)).collect();
    let moments: Vec<BigInt> = (0..2 * s - 1)
        .map(|n| {
            (0..r)
                .map(|m| BigInt::from(m).pow(n as u32) * &p_pow[m] * &q_pow[r - 1 - m])
                .sum()
        })
        .collect();
    let matrix = ExactMatrix::from_fn(s, s, |j, k| moments[j + k].clone());
    let det = det_fraction_free(&matrix)?;
    let scale = q.pow(((r - 1) * s) as u32);
    Ok(BigRational::new(det, scale))
}

/// Applies the normalizing prefactor to a Vandermonde-type polynomial
/// `P(alpha)`: returns `(1-alpha)^{s^2} P(alpha) / (norm * alpha^{s(s-1)/2})`.
fn normalize_poly(det: &AlphaPoly, s: usize, norm: &BigInt) -> Result<AlphaPoly> {
    let shifted = det.shift_down(vandermonde_exponent(s)).ok_or_else(|| {
        EfpError::IdentityViolation(format!(
            "determinant not divisible by alpha^{}",
            vandermonde_exponent(s)
        ))
    })?;
    let prefactor = AlphaPoly::one_minus_alpha().pow((s * s) as u32);
    Ok((&prefactor * &shifted).scale(&BigRational::new(BigInt::one(), norm.clone())))
}

/// `f_{r,s}` as a polynomial in alpha via the Hankel determinant.
pub fn efp_polynomial(r: usize, s: usize) -> Result<AlphaPoly> {
    if s > r {
        return domain(format!("s = {s} exceeds r = {r}"));
    }
    let det = hankel_determinant_poly(r, s)?;
    normalize_poly(&det, s, &superfactorial_squared(s))
}

/// `f_{r,s}` at a rational alpha via the Hankel determinant.
pub fn efp_hankel(params: &ModelParams) -> Result<EfpResult> {
    let ModelParams { alpha, r, s, .. } = params;
    let (r, s) = (*r, *s);
    if alpha.is_zero() {
        let poly = efp_polynomial(r, s)?;
        return Ok(EfpResult::new(poly.eval(alpha), None, Method::Hankel, params));
    }
    let det = hankel_determinant(r, s, alpha)?;
    let one_minus = ExactScalar::one() - alpha;
    let value = num_traits::pow(one_minus, s * s) * det
        / (rational(superfactorial_squared(s)) * num_traits::pow(alpha.clone(), vandermonde_exponent(s)));
    Ok(EfpResult::new(value, None, Method::Hankel, params))
}

/// Like [`efp_hankel`] but computing the full polynomial in alpha first.
pub fn efp_hankel_symbolic(params: &ModelParams) -> Result<EfpResult> {
    let poly = efp_polynomial(params.r, params.s)?;
    Ok(EfpResult::new(
        poly.eval(&params.alpha),
        Some(poly),
        Method::Hankel,
        params,
    ))
}

fn vandermonde_weight(m: &[usize]) -> BigInt {
    let mut acc: u128 = 1;
    let mut big: Option<BigInt> = None;
    for k in 1..m.len() {
        for j in 0..k {
            let d = m[k].abs_diff(m[j]) as u128;
            if d == 0 {
                return BigInt::zero();
            }
            let sq = d * d;
            match &mut big {
                Some(b) => *b *= sq,
                None => match acc.checked_mul(sq) {
                    Some(v) => acc = v,
                    None => big = Some(BigInt::from(acc) * sq),
                },
            }
        }
    }
    big.unwrap_or_else(|| BigInt::from(acc))
}

/// Sums `prod_{j<k} (m_k - m_j)^2` by total exponent over every tuple whose
/// leading coordinate is `first`.
fn oracle_slice(r: usize, s: usize, first: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); s * (r - 1) + 1];
    let mut m = vec![0usize; s];
    m[0] = first;
    loop {
        let w = vandermonde_weight(&m);
        if !w.is_zero() {
            acc[m.iter().sum::<usize>()] += w;
        }
        // odometer over coordinates 1..s
        let mut i = s;
        loop {
            if i == 1 {
                return acc;
            }
            i -= 1;
            m[i] += 1;
            if m[i] < r {
                break;
            }
            m[i] = 0;
        }
    }
}

/// The raw multiple sum
/// `sum_{m in {0..r-1}^s} prod_{j<k} (m_k - m_j)^2 alpha^{m_1 + ... + m_s}`
/// by direct enumeration.
pub fn oracle_moment_sum(r: usize, s: usize) -> Result<AlphaPoly> {
    if s == 0 {
        return Ok(AlphaPoly::one());
    }
    let terms = (r as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
    if terms > ORACLE_TERM_LIMIT {
        return Err(EfpError::Resource {
            terms,
            limit: ORACLE_TERM_LIMIT,
        });
    }
    #[cfg(feature = "parallel")]
    let slices: Vec<Vec<BigInt>> = {
        use rayon::prelude::*;
        (0..r).into_par_iter().map(|f| oracle_slice(r, s, f)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let slices: Vec<Vec<BigInt>> = (0..r).map(|f| oracle_slice(r, s, f)).collect();

    let mut total = vec![BigInt::zero(); s * (r - 1) + 1];
    for slice in slices {
        for (t, c) in total.iter_mut().zip(slice) {
            *t += c;
        }
    }
    Ok(AlphaPoly::new(total.into_iter().map(rational).collect()))
}

/// `f_{r,s}` by brute-force enumeration of the discrete matrix-model sum.
pub fn efp_oracle(params: &ModelParams) -> Result<EfpResult> {
    let (r, s) = (params.r, params.s);
    let sum = oracle_moment_sum(r, s)?;
    let norm = BigInt::from(factorial(s as u64)) * superfactorial_squared(s);
    let poly = normalize_poly(&sum, s, &norm)?;
    Ok(EfpResult::new(
        poly.eval(&params.alpha),
        Some(poly),
        Method::Oracle,
        params,
    ))
}

/// Closed values: `f_{r,0} = 1`, `f_{r,1} = 1 - alpha^r`,
/// `f_{r,r} = (1-alpha)^{r^2}`. `None` for any other `s`.
pub fn efp_special(params: &ModelParams) -> Option<EfpResult> {
    let (r, s) = (params.r, params.s);
    let poly = if s == 0 {
        AlphaPoly::one()
    } else if s == 1 {
        &AlphaPoly::one() - &AlphaPoly::monomial(ExactScalar::one(), r)
    } else if s == r {
        AlphaPoly::one_minus_alpha().pow((r * r) as u32)
    } else {
        return None;
    };
    Some(EfpResult::new(
        poly.eval(&params.alpha),
        Some(poly),
        Method::Special,
        params,
    ))
}

/// `rational * sqrt(radicand)`, used where a weight enters with an odd
/// power of a square root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdValue {
    pub rational: ExactScalar,
    pub radicand: ExactScalar,
}

impl SurdValue {
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rational) * rational_to_f64(&self.radicand).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionFunctions {
    /// `N = r + s`
    pub n: usize,
    /// Partition function of the full `N x N` lattice, `w5^{N(N-1)/2} w6^{N(N+1)/2}`.
    pub z_n: ExactScalar,
    /// Partition function with the `s x s` corner removed, `Z_N f_{r,s} / w2^{s^2}`.
    pub z_rs: SurdValue,
    pub efp: EfpResult,
}

/// Full-lattice partition function `Z_N` for weights `w5 = 1`, `w6 = rho`.
pub fn full_partition_function(n: usize, rho: &ExactScalar) -> ExactScalar {
    num_traits::pow(rho.clone(), n * (n + 1) / 2)
}

/// `Z_N` and `Z_{r,s}` for weights `w1 = w2 = sqrt(rho(1-alpha))`,
/// `w3 = w4 = sqrt(rho alpha)`, `w5 = 1`, `w6 = rho`.
pub fn partition_functions(params: &ModelParams) -> Result<PartitionFunctions> {
    let s = params.s;
    let w2_squared = &params.rho * (ExactScalar::one() - &params.alpha);
    if s > 0 && w2_squared.is_zero() {
        return domain("w2 vanishes at alpha = 1; Z_{r,s} is undefined for s > 0");
    }
    let n = params.n();
    let z_n = full_partition_function(n, &params.rho);
    let efp = if s == 0 {
        efp_special(params).expect("s = 0 is a special value")
    } else {
        efp_hankel(params)?
    };
    // w2^{s^2} = (w2^2)^{s^2/2}
    let sq = s * s;
    let (denominator, radicand) = if sq % 2 == 0 {
        (num_traits::pow(w2_squared.clone(), sq / 2), ExactScalar::one())
    } else {
        (num_traits::pow(w2_squared.clone(), sq / 2 + 1), w2_squared.clone())
    };
    let z_rs = SurdValue {
        rational: &z_n * &efp.value_exact / denominator,
        radicand,
    };
    Ok(PartitionFunctions { n, z_n, z_rs, efp })
}

/// `(r, (1 - f_{r,s}) / alpha^r)` for each `r`; bounded when the corner
/// correction decays like `alpha^r`.
pub fn exponential_tail_ratio(
    s: usize,
    alpha: &ExactScalar,
    r_list: &[usize],
) -> Result<Vec<(usize, ExactScalar)>> {
    if !alpha.is_positive() || alpha >= &ExactScalar::one() {
        return domain(format!("alpha = {alpha} must lie in (0, 1)"));
    }
    if r_list.windows(2).any(|w| w[0] >= w[1]) {
        return domain("r values must be strictly increasing");
    }
    r_list
        .iter()
        .map(|&r| {
            let p = ModelParams::new(alpha.clone(), r, s)?;
            let f = efp_hankel(&p)?.value_exact;
            let ratio = (ExactScalar::one() - f) / num_traits::pow(alpha.clone(), r);
            Ok((r, ratio))
        })
        .collect()
}
