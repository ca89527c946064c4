//! Thermodynamic-limit quantities in closed form.
//!
//! The rate function `sigma(v)` of `f_{r,s} = exp(-r^2 sigma(s/r) + o(r^2))`
//! vanishes on the frozen side `v <= v_c` and on `[v_c, 1]` equals
//!
//! ```text
//! v^2 log(v/v_c) - (1-v)^2/2 log((1-v)/(1-v_c)) - (1+v)^2/2 log((1+v)/(1+v_c))
//! ```
//!
//! with `v_c = (1 - sqrt(alpha)) / (1 + sqrt(alpha))`. The first two
//! derivatives vanish at `v_c`; the third jumps.

use serde::Serialize;

use crate::closed_forms::psi;
use crate::efp_exact::{efp_hankel, ModelParams};
use crate::error::{domain, Result};
use crate::exact_algebra::{ln_rational, rational_to_f64, ExactScalar};

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return domain(format!("alpha = {alpha} must lie in (0, 1)"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Critical {
    /// Critical aspect ratio `(1 - sqrt a) / (1 + sqrt a)`.
    pub v_c: f64,
    /// Critical hard-wall position `1 / v_c`.
    pub r_c: f64,
}

pub fn v_critical(alpha: f64) -> Result<Critical> {
    check_alpha(alpha)?;
    let sa = alpha.sqrt();
    Ok(Critical {
        v_c: (1.0 - sa) / (1.0 + sa),
        r_c: (1.0 + sa) / (1.0 - sa),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Frozen,
    CriticalPoint,
    Disordered,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Frozen => "frozen",
            Regime::CriticalPoint => "critical_point",
            Regime::Disordered => "disordered",
        })
    }
}

/// `sigma(v)` and its analytic derivatives for a fixed `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SigmaProfile {
    pub alpha: f64,
    pub v_c: f64,
}

pub fn sigma_profile(alpha: f64) -> Result<SigmaProfile> {
    let v_c = v_critical(alpha)?.v_c;
    Ok(SigmaProfile { alpha, v_c })
}

impl SigmaProfile {
    fn check(&self, v: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&v) {
            return domain(format!("v = {v} must lie in [0, 1]"));
        }
        Ok(())
    }

    pub fn regime(&self, v: f64) -> Result<Regime> {
        self.check(v)?;
        Ok(if v < self.v_c {
            Regime::Frozen
        } else if v == self.v_c {
            Regime::CriticalPoint
        } else {
            Regime::Disordered
        })
    }

    fn disordered(&self, v: f64) -> bool {
        v > self.v_c
    }

    /// `log(x / x0)` via `log1p` so that values near the critical point keep
    /// full relative precision.
    fn log_ratio(x: f64, x0: f64) -> f64 {
        ((x - x0) / x0).ln_1p()
    }

    pub fn sigma(&self, v: f64) -> Result<f64> {
        self.check(v)?;
        if !self.disordered(v) {
            return Ok(0.0);
        }
        let u = self.v_c;
        let lower = if v == 1.0 {
            // (1-v)^2 log(1-v) -> 0
            0.0
        } else {
            0.5 * (1.0 - v) * (1.0 - v) * Self::log_ratio(1.0 - v, 1.0 - u)
        };
        Ok(v * v * Self::log_ratio(v, u) - lower
            - 0.5 * (1.0 + v) * (1.0 + v) * Self::log_ratio(1.0 + v, 1.0 + u))
    }

    pub fn sigma_d1(&self, v: f64) -> Result<f64> {
        self.check(v)?;
        if !self.disordered(v) {
            return Ok(0.0);
        }
        let u = self.v_c;
        let lower = if v == 1.0 {
            0.0
        } else {
            (1.0 - v) * Self::log_ratio(1.0 - v, 1.0 - u)
        };
        Ok(2.0 * v * Self::log_ratio(v, u) + lower
            - (1.0 + v) * Self::log_ratio(1.0 + v, 1.0 + u))
    }

    /// Diverges to `+inf` at `v = 1`.
    pub fn sigma_d2(&self, v: f64) -> Result<f64> {
        self.check(v)?;
        if !self.disordered(v) {
            return Ok(0.0);
        }
        let u = self.v_c;
        Ok(2.0 * Self::log_ratio(v, u)
            - Self::log_ratio(1.0 - v, 1.0 - u)
            - Self::log_ratio(1.0 + v, 1.0 + u))
    }

    /// Third derivative; at `v = v_c` the right-hand limit is returned.
    pub fn sigma_d3(&self, v: f64) -> Result<f64> {
        self.check(v)?;
        if v < self.v_c {
            return Ok(0.0);
        }
        Ok(2.0 / v + 2.0 * v / (1.0 - v * v))
    }

    /// `[sigma, sigma', sigma'', sigma''']` of the disordered-branch formula
    /// itself, for any `v` in `(0, 1)` including the frozen side. At `v_c`
    /// this gives the right-hand limits.
    pub fn disordered_branch(&self, v: f64) -> Result<[f64; 4]> {
        if !(v > 0.0 && v < 1.0) {
            return domain(format!("v = {v} must lie in (0, 1)"));
        }
        let u = self.v_c;
        let (lv, lm, lp) = (
            Self::log_ratio(v, u),
            Self::log_ratio(1.0 - v, 1.0 - u),
            Self::log_ratio(1.0 + v, 1.0 + u),
        );
        Ok([
            v * v * lv - 0.5 * (1.0 - v) * (1.0 - v) * lm - 0.5 * (1.0 + v) * (1.0 + v) * lp,
            2.0 * v * lv + (1.0 - v) * lm - (1.0 + v) * lp,
            2.0 * lv - lm - lp,
            2.0 / v + 2.0 * v / (1.0 - v * v),
        ])
    }

    /// `sigma'''(v_c+) - sigma'''(v_c-)`.
    pub fn third_derivative_jump(&self) -> f64 {
        let u = self.v_c;
        2.0 / (u * (1.0 - u * u))
    }

    /// Left side of the ODE in `v` obtained by equating the two Toda
    /// continuum limits:
    /// `v^2 e^{(v^2-1) s'' - 2v s' + 2s} + (1-v^2) e^{v^2 s'' - 2v s' + 2s}`.
    pub fn ode_lhs(&self, v: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&v) {
            return domain(format!("ODE is evaluated on [0, 1), got v = {v}"));
        }
        let s = self.sigma(v)?;
        let d1 = self.sigma_d1(v)?;
        let d2 = self.sigma_d2(v)?;
        let common = -2.0 * v * d1 + 2.0 * s;
        Ok(v * v * ((v * v - 1.0) * d2 + common).exp()
            + (1.0 - v * v) * (v * v * d2 + common).exp())
    }
}

/// `|LHS - 1|` of the ODE at `v` on the closed-form `sigma`.
pub fn ode_residual(alpha: f64, v: f64) -> Result<f64> {
    Ok((sigma_profile(alpha)?.ode_lhs(v)? - 1.0).abs())
}

/// Second-order one-sided (forward) finite-difference estimate of
/// `sigma'''(v0+)` with step `h`.
pub fn one_sided_third_derivative(profile: &SigmaProfile, v0: f64, h: f64) -> Result<f64> {
    let f = |k: f64| profile.sigma(v0 + k * h);
    let (f0, f1, f2, f3, f4) = (f(0.0)?, f(1.0)?, f(2.0)?, f(3.0)?, f(4.0)?);
    Ok((-5.0 * f0 + 18.0 * f1 - 24.0 * f2 + 14.0 * f3 - 3.0 * f4) / (2.0 * h * h * h))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FreeEnergyParams {
    pub alpha: f64,
    pub rho: f64,
    pub v: f64,
}

impl FreeEnergyParams {
    pub fn dominoes(alpha: f64, v: f64) -> Self {
        FreeEnergyParams { alpha, rho: 2.0, v }
    }
}

/// Free energy per site of the lattice with the corner removed,
/// `F(v) = -log sqrt(rho) + v^2/(1+2v) log sqrt(1-alpha) + sigma(v)/(1+2v)`.
pub fn free_energy(p: &FreeEnergyParams) -> Result<f64> {
    if p.rho <= 0.0 {
        return domain(format!("rho = {} must be positive", p.rho));
    }
    let sigma = sigma_profile(p.alpha)?.sigma(p.v)?;
    let w = 1.0 + 2.0 * p.v;
    Ok(-0.5 * p.rho.ln() + p.v * p.v / w * 0.5 * (1.0 - p.alpha).ln() + sigma / w)
}

/// Large-`s` rate `Phi(R)` of the discrete matrix-model sum
/// `I_{r,s} = exp(s^2 Phi(r/s) + o(s^2))`.
pub fn phi_of_r(alpha: f64, r: f64) -> Result<f64> {
    let crit = v_critical(alpha)?;
    if r < 1.0 {
        return domain(format!("R = {r} < 1 admits no eigenvalue configuration"));
    }
    let sa = alpha.sqrt();
    if r >= crit.r_c {
        return Ok((sa / (1.0 - alpha)).ln());
    }
    Ok((r * r - 1.0) * ((1.0 + sa) / (2.0 * alpha.powf(0.25))).ln() + r * sa.ln()
        - r * r * psi(1.0 / r))
}

/// `sigma(v)` reconstructed from `Phi(1/v)`:
/// `-v^2 log((1-alpha)/sqrt(alpha)) - v^2 Phi(1/v)`.
pub fn sigma_from_phi(alpha: f64, v: f64) -> Result<f64> {
    if !(v > 0.0 && v <= 1.0) {
        return domain(format!("v = {v} must lie in (0, 1]"));
    }
    Ok(-v * v * ((1.0 - alpha) / alpha.sqrt()).ln() - v * v * phi_of_r(alpha, 1.0 / v)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteSizeRow {
    pub r: usize,
    pub s: usize,
    pub efp: f64,
    /// `-log f_{r,s} / r^2`
    pub estimate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extrapolation {
    pub limit: f64,
    pub error_estimate: f64,
    /// Fitted exponent `p` of the `C r^{-p}` correction, when one could be
    /// fitted.
    pub exponent: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteSizeTable {
    pub alpha: f64,
    pub v: f64,
    pub rows: Vec<FiniteSizeRow>,
    pub extrapolation: Extrapolation,
    /// Closed-form `sigma(v)` for comparison.
    pub sigma: f64,
}

/// Three-point Richardson step: fits `E(r) = L + C r^{-p}` through three
/// estimates and returns `(L, p)`. `None` when no positive exponent fits.
fn richardson_three(r: [f64; 3], e: [f64; 3]) -> Option<(f64, f64)> {
    let d1 = e[0] - e[1];
    let d2 = e[1] - e[2];
    if d2 == 0.0 || d1 == 0.0 || d1.signum() != d2.signum() {
        return None;
    }
    let target = d1 / d2;
    let g = |p: f64| (r[0].powf(-p) - r[1].powf(-p)) / (r[1].powf(-p) - r[2].powf(-p));
    let (mut lo, mut hi) = (1e-3, 12.0);
    let (glo, ghi) = (g(lo), g(hi));
    if !((glo - target) * (ghi - target) <= 0.0) {
        return None;
    }
    let increasing = ghi > glo;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) < target) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = 0.5 * (lo + hi);
    let c = d2 / (r[1].powf(-p) - r[2].powf(-p));
    Some((e[2] - c * r[2].powf(-p), p))
}

fn extrapolate(rows: &[FiniteSizeRow]) -> Extrapolation {
    let n = rows.len();
    let last = rows[n - 1].estimate;
    if n < 3 {
        let err = if n == 2 { (last - rows[0].estimate).abs() } else { f64::NAN };
        return Extrapolation { limit: last, error_estimate: err, exponent: None };
    }
    let fit = |k: usize| {
        let w = &rows[k..k + 3];
        richardson_three(
            [w[0].r as f64, w[1].r as f64, w[2].r as f64],
            [w[0].estimate, w[1].estimate, w[2].estimate],
        )
    };
    match fit(n - 3) {
        Some((limit, p)) => {
            let error_estimate = match (n >= 4).then(|| fit(n - 4)).flatten() {
                Some((prev, _)) => (limit - prev).abs(),
                None => (last - limit).abs(),
            };
            Extrapolation { limit, error_estimate, exponent: Some(p) }
        }
        None => Extrapolation {
            limit: last,
            error_estimate: (last - rows[n - 2].estimate).abs(),
            exponent: None,
        },
    }
}

/// Exact `f_{r,s}` at `s = v r` for each `r`, the finite-size estimates
/// `-log f_{r,s} / r^2`, and their extrapolation to `r -> infinity`.
pub fn finite_size_extrapolate(
    alpha: &ExactScalar,
    v: &ExactScalar,
    r_list: &[usize],
) -> Result<FiniteSizeTable> {
    if r_list.is_empty() {
        return domain("at least one r is required");
    }
    let alpha_f = rational_to_f64(alpha);
    let v_f = rational_to_f64(v);
    let profile = sigma_profile(alpha_f)?;
    let sizes: Vec<(usize, usize)> = r_list
        .iter()
        .map(|&r| {
            let s = v * ExactScalar::from_integer(r.into());
            if !s.is_integer() {
                return domain(format!("s = v r = {s} is not an integer for r = {r}"));
            }
            let s: usize = s.to_integer().try_into().map_err(|_| {
                crate::error::EfpError::Domain(format!("s = v r out of range for r = {r}"))
            })?;
            Ok((r, s))
        })
        .collect::<Result<_>>()?;

    let row = |&(r, s): &(usize, usize)| -> Result<FiniteSizeRow> {
        let f = efp_hankel(&ModelParams::new(alpha.clone(), r, s)?)?;
        Ok(FiniteSizeRow {
            r,
            s,
            efp: f.value_float,
            estimate: -ln_rational(&f.value_exact) / (r * r) as f64,
        })
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<FiniteSizeRow> = {
        use rayon::prelude::*;
        sizes.par_iter().map(row).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<FiniteSizeRow> = sizes.iter().map(row).collect::<Result<_>>()?;

    Ok(FiniteSizeTable {
        alpha: alpha_f,
        v: v_f,
        extrapolation: extrapolate(&rows),
        sigma: profile.sigma(v_f)?,
        rows,
    })
}

/// The arctic ellipse `(1-x-y)^2/alpha + (x-y)^2/(1-alpha) = 1` of the
/// unmodified Aztec diamond (unit square, origin at the cut corner) and its
/// contact with the cut-off square of relative side `v_c / (1 + v_c)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArcticEllipse {
    pub alpha: f64,
    /// `[A, B, C, D, E, F]` of `A x^2 + B xy + C y^2 + D x + E y + F = 0`.
    pub coefficients: [f64; 6],
    /// Side of the cut-off square at the transition, `v_c / (1 + v_c)`.
    pub contact_side: f64,
    /// `|v_c/(1+v_c) - (1 - sqrt(alpha))/2|`
    pub identity_gap: f64,
    /// Ellipse form at the inner corner `(t, t)`; 1 means on the curve.
    pub corner_value: f64,
    /// Cosine between the ellipse normal at the corner and the diagonal.
    pub normal_alignment: f64,
}

impl ArcticEllipse {
    pub fn form(&self, x: f64, y: f64) -> f64 {
        let a = self.alpha;
        (1.0 - x - y).powi(2) / a + (x - y).powi(2) / (1.0 - a)
    }
}

pub fn arctic_ellipse(alpha: f64) -> Result<ArcticEllipse> {
    let v_c = v_critical(alpha)?.v_c;
    let (ia, ib) = (1.0 / alpha, 1.0 / (1.0 - alpha));
    let coefficients = [ia + ib, 2.0 * ia - 2.0 * ib, ia + ib, -2.0 * ia, -2.0 * ia, ia - 1.0];
    let t = v_c / (1.0 + v_c);
    let mut e = ArcticEllipse {
        alpha,
        coefficients,
        contact_side: t,
        identity_gap: (t - 0.5 * (1.0 - alpha.sqrt())).abs(),
        corner_value: 0.0,
        normal_alignment: 0.0,
    };
    e.corner_value = e.form(t, t);
    let gx = -2.0 * (1.0 - 2.0 * t) * ia;
    let gy = gx;
    // x - y = 0 at the corner, so the cross terms vanish
    e.normal_alignment = (gx + gy).abs() / (2.0f64.sqrt() * gx.hypot(gy));
    Ok(e)
}
