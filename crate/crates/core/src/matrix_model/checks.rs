use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use super::quadrature::{integrate, integrate_chebyshev_weight, integrate_sqrt_endpoints};
use super::{endpoints, SaddleSolution, Scenario};
use crate::closed_forms::psi;
use crate::error::{domain, EfpError, Result};

const QUAD_TOL: f64 = 1e-13;

/// Total mass `int_0^R rho`, saturated parts included.
pub fn normalization(s: &SaddleSolution) -> f64 {
    let window = integrate_sqrt_endpoints(|mu| s.density(mu).unwrap_or(f64::NAN), s.a, s.b, QUAD_TOL);
    let tail = match s.scenario {
        Scenario::OneSaturated => 0.0,
        Scenario::TwoSaturated => s.r - s.b,
    };
    s.a + window.value + tail
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentCheck {
    pub e_formula: f64,
    pub e_quadrature: f64,
}

pub fn first_moment_check(s: &SaddleSolution) -> MomentCheck {
    let window =
        integrate_sqrt_endpoints(|mu| mu * s.density(mu).unwrap_or(f64::NAN), s.a, s.b, QUAD_TOL);
    let tail = match s.scenario {
        Scenario::OneSaturated => 0.0,
        Scenario::TwoSaturated => 0.5 * (s.r * s.r - s.b * s.b),
    };
    MomentCheck {
        e_formula: s.e,
        e_quadrature: 0.5 * s.a * s.a + window.value + tail,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResolventExpansion {
    /// Base point on the real axis.
    pub z: f64,
    /// Estimate of the `1/z` coefficient (should be 1).
    pub c1: f64,
    /// Estimate of the `1/z^2` coefficient (should be `E`).
    pub c2: f64,
}

/// Leading Laurent coefficients of `W` at infinity from `z W(z)` and
/// `z^2 (W(z) - 1/z)` at `z` and `2z`, with one Richardson step removing the
/// next order.
pub fn resolvent_expansion(s: &SaddleSolution, z: f64) -> Result<ResolventExpansion> {
    if z <= s.support_end() {
        return domain(format!("expansion point z = {z} must lie right of the support"));
    }
    let w = |x: f64| s.resolvent(Complex64::new(x, 0.0)).map(|w| w.re);
    let (w1, w2) = (w(z)?, w(2.0 * z)?);
    let c1 = |x: f64, wx: f64| x * wx;
    let c2 = |x: f64, wx: f64| x * x * (wx - 1.0 / x);
    Ok(ResolventExpansion {
        z,
        c1: 2.0 * c1(2.0 * z, w2) - c1(z, w1),
        c2: 2.0 * c2(2.0 * z, w2) - c2(z, w1),
    })
}

/// `-(1/2 pi i) [W(mu + i eps) - W(mu - i eps)]` extrapolated to `eps -> 0`
/// from `eps` and `eps/2`, cancelling the term linear in `eps`.
pub fn density_from_discontinuity(s: &SaddleSolution, mu: f64, eps: f64) -> Result<f64> {
    if !(0.0 < mu && mu < s.support_end()) {
        return domain(format!("mu = {mu} is not inside the support (0, {})", s.support_end()));
    }
    if !(eps > 0.0) {
        return domain("offset must be positive");
    }
    let jump = |e: f64| {
        let up = s.resolvent_raw(Complex64::new(mu, e));
        let down = s.resolvent_raw(Complex64::new(mu, -e));
        (-(up - down) / Complex64::new(0.0, 2.0 * PI)).re
    };
    Ok(2.0 * jump(0.5 * eps) - jump(eps))
}

/// `|2 Re W(mu + i0) - U(mu)|` on the unsaturated window, where
/// `U = -log alpha` is the derivative of the potential.
pub fn saddle_point_residual(s: &SaddleSolution, mu: f64) -> Result<f64> {
    if !(s.a < mu && mu < s.b) {
        return domain(format!("mu = {mu} is not inside the window ({}, {})", s.a, s.b));
    }
    let w = s.resolvent_raw(Complex64::new(mu, 0.0));
    Ok((2.0 * w.re - s.potential_derivative()).abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MasterIntegralCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub quadrature_error: f64,
}

fn admissible(a: f64, b: f64, c: f64, d: f64, z: f64) -> Result<()> {
    if !(a < b) {
        return domain(format!("need a < b, got a = {a}, b = {b}"));
    }
    if !(z < a || z > b) {
        return domain(format!("z = {z} lies on the cut [{a}, {b}]"));
    }
    let left = c <= a && d <= a;
    let right = c >= b && d >= b;
    if !(left || right) {
        return Err(EfpError::Unsupported(format!(
            "c = {c} and d = {d} must both lie left of a = {a} or both right of b = {b}"
        )));
    }
    Ok(())
}

/// Closed form of `int_a^b log((u-c)/(u-d)) / ((z-u) sqrt((u-a)(b-u))) du`:
/// `2 pi / (sqrt(z-a) sqrt(z-b)) * (G(c) - G(d))` with
/// `G(x) = log(sqrt(z-a) sqrt(b-x) + sqrt(z-b) sqrt(a-x))`, all roots
/// principal.
pub fn master_integral_closed_form(a: f64, b: f64, c: f64, d: f64, z: f64) -> Result<f64> {
    admissible(a, b, c, d, z)?;
    let sq = |x: f64| Complex64::new(x, 0.0).sqrt();
    let g = |x: f64| (sq(z - a) * sq(b - x) + sq(z - b) * sq(a - x)).ln();
    Ok((2.0 * PI / (sq(z - a) * sq(z - b)) * (g(c) - g(d))).re)
}

pub fn master_integral_check(a: f64, b: f64, c: f64, d: f64, z: f64) -> Result<MasterIntegralCheck> {
    let rhs = master_integral_closed_form(a, b, c, d, z)?;
    // u - x from the exact offsets to the nearer endpoint, so that x = a or
    // x = b stays finite under the substitution
    let offset = |x: f64, ua: f64, bu: f64| if x <= a { ua + (a - x) } else { -(bu + (x - b)) };
    let q = integrate_chebyshev_weight(
        |u, ua, bu| (offset(c, ua, bu) / offset(d, ua, bu)).ln() / (z - u),
        a,
        b,
        1e-14,
    );
    Ok(MasterIntegralCheck { lhs: q.value, rhs, quadrature_error: q.error })
}

/// Scenario-I resolvent rebuilt from the master integral with `c = 0`,
/// `d = a`: the unsaturated part
/// `-log sqrt(alpha) - sqrt((z-a)(z-b))/pi * I(z)` plus the saturated
/// interval's `log(z/(z-a))`. Real `z` right of `b` or left of 0.
pub fn resolvent_from_master_integral(s: &SaddleSolution, z: f64) -> Result<f64> {
    if s.scenario != Scenario::OneSaturated {
        return Err(EfpError::Unsupported(
            "master-integral reconstruction is implemented for the one-saturated scenario".into(),
        ));
    }
    if !(z < 0.0 || z > s.b) {
        return domain(format!("z = {z} lies on the cut [0, {}]", s.b));
    }
    let (a, b) = (s.a, s.b);
    let integral = integrate_chebyshev_weight(|u, ua, _| (u / ua).ln() / (z - u), a, b, 1e-14).value;
    let root = Complex64::new(z - a, 0.0).sqrt() * Complex64::new(z - b, 0.0).sqrt();
    Ok(-0.5 * s.alpha.ln() - root.re * integral / PI + (z / (z - a)).ln())
}

/// `Phi(R)` at each `alpha` in the grid from `alpha d/dalpha Phi = E`:
/// one-saturated points integrate up from `alpha = 0`, where
/// `Phi - log(sqrt alpha) -> 0`; two-saturated points integrate down from
/// `alpha = 1`, where `Phi = -R^2 psi(1/R)`.
pub fn phi_from_moment(alpha_grid: &[f64], r: f64) -> Result<Vec<(f64, f64)>> {
    if let Some(&bad) = alpha_grid.iter().find(|&&x| !(x > 0.0 && x < 1.0)) {
        return domain(format!("alpha = {bad} lies outside (0, 1)"));
    }
    if !(r >= 1.0) {
        return domain(format!("R = {r} must be >= 1"));
    }
    let e = |x: f64| endpoints(x, r).map(|s| s.e).unwrap_or(f64::NAN);
    alpha_grid
        .iter()
        .map(|&alpha| {
            let phi = match endpoints(alpha, r)?.scenario {
                Scenario::OneSaturated => {
                    let q = integrate(|x| (e(x) - 0.5) / x, 0.0, alpha, 1e-13, 1e-13);
                    0.5 * alpha.ln() + q.value
                }
                Scenario::TwoSaturated => {
                    let q = integrate(|x| e(x) / x, alpha, 1.0, 1e-13, 1e-13);
                    -r * r * psi(1.0 / r) - q.value
                }
            };
            Ok((alpha, phi))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::phi_of_r;

    #[test]
    fn normalization_both_scenarios() {
        for (alpha, r) in [(0.25, 5.0), (0.25, 3.0), (0.25, 2.0), (0.25, 1.2), (0.7, 1.5)] {
            let s = endpoints(alpha, r).unwrap();
            assert!((normalization(&s) - 1.0).abs() < 1e-10, "alpha={alpha} R={r}");
        }
    }

    #[test]
    fn first_moments() {
        for (alpha, r) in [(0.25, 5.0), (0.25, 2.0), (0.25, 1.2), (0.6, 2.5)] {
            let m = first_moment_check(&endpoints(alpha, r).unwrap());
            assert!((m.e_formula - m.e_quadrature).abs() < 1e-10, "{m:?}");
        }
        let m = first_moment_check(&endpoints(0.25, 4.0).unwrap());
        assert!((m.e_quadrature - 5.0 / 6.0).abs() < 1e-10);
    }

    #[test]
    fn large_z_coefficients() {
        for (alpha, r) in [(0.25, 5.0), (0.25, 2.0), (0.4, 1.1)] {
            let s = endpoints(alpha, r).unwrap();
            let x = resolvent_expansion(&s, 1e4 * s.support_end()).unwrap();
            assert!((x.c1 - 1.0).abs() < 1e-7, "{x:?}");
            assert!((x.c2 - s.e).abs() < 1e-5, "{x:?} E={}", s.e);
        }
        let s = endpoints(0.25, 5.0).unwrap();
        let w = s.resolvent(Complex64::new(1e6, 0.0)).unwrap();
        assert!((1e6 * w.re - 1.0).abs() <= 1e-5);
        assert!(resolvent_expansion(&s, 2.0).is_err());
    }

    #[test]
    fn discontinuity_gives_density() {
        for (alpha, r) in [(0.25, 5.0), (0.25, 1.2), (0.5, 2.0)] {
            let s = endpoints(alpha, r).unwrap();
            for k in 1..20 {
                let mu = s.support_end() * k as f64 / 20.0;
                let from_jump = density_from_discontinuity(&s, mu, 1e-7).unwrap();
                let direct = s.density(mu).unwrap();
                assert!((from_jump - direct).abs() < 1e-8, "alpha={alpha} R={r} mu={mu}");
            }
        }
    }

    #[test]
    fn saddle_point_on_window() {
        for (alpha, r) in [(0.25, 5.0), (0.25, 1.2), (0.8, 3.0)] {
            let s = endpoints(alpha, r).unwrap();
            for k in 1..10 {
                let mu = s.a + (s.b - s.a) * k as f64 / 10.0;
                assert!(saddle_point_residual(&s, mu).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn master_integral_examples() {
        let m = master_integral_check(1.0, 2.0, 0.0, 0.5, 4.0).unwrap();
        assert!((m.lhs - m.rhs).abs() < 1e-10, "{m:?}");
        let m = master_integral_check(1.0, 2.0, 0.7, 0.7, -3.0).unwrap();
        assert_eq!(m.rhs, 0.0);
        assert!(m.lhs.abs() < 1e-15);
        for (c, d, z) in [(3.0, 5.0, 4.0), (3.0, 5.0, -1.0), (-1.0, 0.5, 0.5), (2.0, 2.5, 7.0)] {
            let m = master_integral_check(1.0, 2.0, c, d, z).unwrap();
            assert!((m.lhs - m.rhs).abs() < 1e-10, "c={c} d={d} z={z}: {m:?}");
        }
        assert!(matches!(
            master_integral_check(1.0, 2.0, 0.0, 3.0, 4.0),
            Err(EfpError::Unsupported(_))
        ));
        assert!(master_integral_check(1.0, 2.0, 0.0, 0.5, 1.5).is_err());
    }

    #[test]
    fn resolvent_rebuilt_from_integral() {
        let s = endpoints(0.25, 5.0).unwrap();
        for z in [5.0, 3.5, 40.0, -2.0] {
            let direct = s.resolvent(Complex64::new(z, 0.0)).unwrap().re;
            let rebuilt = resolvent_from_master_integral(&s, z).unwrap();
            assert!((direct - rebuilt).abs() < 1e-8, "z={z}: {direct} vs {rebuilt}");
        }
        assert!(resolvent_from_master_integral(&endpoints(0.25, 2.0).unwrap(), 5.0).is_err());
    }

    #[test]
    fn phi_reconstruction() {
        let grid: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        for (alpha, phi) in phi_from_moment(&grid, 1e3).unwrap() {
            assert!((phi - phi_of_r(alpha, 1e3).unwrap()).abs() < 1e-6, "alpha={alpha}");
        }
        // R = 2 switches scenario at alpha = 1/9
        for (alpha, phi) in phi_from_moment(&[0.05, 0.25, 0.5, 0.9], 2.0).unwrap() {
            assert!((phi - phi_of_r(alpha, 2.0).unwrap()).abs() < 1e-5, "alpha={alpha}");
        }
        assert!(phi_from_moment(&[0.5, 1.0], 2.0).is_err());
    }
}
