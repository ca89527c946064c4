//! Large-`s` saddle point of the discrete matrix model: eigenvalues `mu` on
//! `[0, R]` in the potential `-mu log alpha`, with density bounded by 1.
//!
//! Two scenarios occur. For `R >= R_c` the density saturates on `[0, a]`, is
//! unsaturated on `[a, b]` and vanishes beyond `b`. For `1 <= R < R_c` the
//! hard wall is felt and the density also saturates on `[b, R]`.

mod checks;
pub mod quadrature;

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::asymptotics::v_critical;
use crate::error::{domain, EfpError, Result};

pub use checks::{
    master_integral_closed_form, master_integral_check, density_from_discontinuity, first_moment_check,
    normalization, phi_from_moment, resolvent_expansion, resolvent_from_master_integral,
    saddle_point_residual, MasterIntegralCheck, MomentCheck, ResolventExpansion,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    OneSaturated,
    TwoSaturated,
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scenario::OneSaturated => "one_saturated",
            Scenario::TwoSaturated => "two_saturated",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Occupation {
    Saturated,
    Unsaturated,
    Vacant,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupportInterval {
    pub lo: f64,
    pub hi: f64,
    pub occupation: Occupation,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SaddleSolution {
    pub alpha: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub scenario: Scenario,
    pub a: f64,
    pub b: f64,
    /// First moment `int mu rho(mu) dmu` in closed form.
    #[serde(rename = "E")]
    pub e: f64,
}

/// Endpoints of the unsaturated window and the scenario at `(alpha, R)`.
pub fn endpoints(alpha: f64, r: f64) -> Result<SaddleSolution> {
    let crit = v_critical(alpha)?;
    let scenario = if r >= crit.r_c {
        Scenario::OneSaturated
    } else {
        Scenario::TwoSaturated
    };
    endpoints_for(scenario, alpha, r)
}

/// The endpoint formulas of a given scenario, whether or not it is the one
/// realised at `(alpha, R)`. Used to compare the two at `R = R_c`.
pub fn endpoints_for(scenario: Scenario, alpha: f64, r: f64) -> Result<SaddleSolution> {
    let crit = v_critical(alpha)?;
    if !(r >= 1.0) || !r.is_finite() {
        return domain(format!("R = {r} must be a finite number >= 1"));
    }
    let sa = alpha.sqrt();
    let (a, b) = match scenario {
        Scenario::OneSaturated => (crit.v_c, crit.r_c),
        Scenario::TwoSaturated => {
            let p = (r + 1.0).sqrt();
            let m = ((r - 1.0) * sa).sqrt();
            let d = 2.0 * (1.0 + sa);
            // at R = R_c rounding can put b an ulp or two past R
            (((p - m) * (p - m) / d), ((p + m) * (p + m) / d).min(r))
        }
    };
    let e = match scenario {
        Scenario::OneSaturated => 0.25 * (a + b),
        Scenario::TwoSaturated => 0.25 * (a + b) + 0.5 * r * ((r - a) * (r - b)).sqrt(),
    };
    Ok(SaddleSolution { alpha, r, scenario, a, b, e })
}

impl SaddleSolution {
    pub fn support(&self) -> Vec<SupportInterval> {
        let iv = |lo, hi, occupation| SupportInterval { lo, hi, occupation };
        let tail = match self.scenario {
            Scenario::OneSaturated => Occupation::Vacant,
            Scenario::TwoSaturated => Occupation::Saturated,
        };
        vec![
            iv(0.0, self.a, Occupation::Saturated),
            iv(self.a, self.b, Occupation::Unsaturated),
            iv(self.b, self.r, tail),
        ]
    }

    /// Right end of the region where `rho > 0`; the resolvent's cut is
    /// `[0, support_end]`.
    pub fn support_end(&self) -> f64 {
        match self.scenario {
            Scenario::OneSaturated => self.b,
            Scenario::TwoSaturated => self.r,
        }
    }

    /// Closed-form resolvent with no check on `z`. At `z = mu + 0i` the
    /// principal branches give the boundary value from above.
    pub(crate) fn resolvent_raw(&self, z: Complex64) -> Complex64 {
        let (a, b, r) = (self.a, self.b, self.r);
        let sq = |w: Complex64| w.sqrt();
        let num = sq(a.into()) * sq(z - b) + sq(b.into()) * sq(z - a);
        let head = Complex64::from(-0.5 * self.alpha.ln());
        match self.scenario {
            Scenario::OneSaturated => {
                let den = sq((b - a).into()) * sq(z);
                head - 2.0 * (num / den).ln()
            }
            Scenario::TwoSaturated => {
                let den = sq((r - a).into()) * sq(z - b) + sq((r - b).into()) * sq(z - a);
                head - ((z - r).ln() - z.ln()) - 2.0 * (num / den).ln()
            }
        }
    }

    /// `W(z) = int rho(mu) / (z - mu) dmu`, analytic off `[0, support_end]`
    /// with `W(z) ~ 1/z + E/z^2`.
    pub fn resolvent(&self, z: Complex64) -> Result<Complex64> {
        if z.im == 0.0 && (0.0..=self.support_end()).contains(&z.re) {
            return Err(EfpError::OnCut { re: z.re, im: z.im });
        }
        Ok(self.resolvent_raw(z))
    }

    /// `rho(mu)` on `[0, R]`.
    pub fn density(&self, mu: f64) -> Result<f64> {
        if !(0.0..=self.r).contains(&mu) {
            return domain(format!("mu = {mu} lies outside [0, R = {}]", self.r));
        }
        let (a, b, r) = (self.a, self.b, self.r);
        if mu < a {
            return Ok(1.0);
        }
        if mu > b {
            return Ok(match self.scenario {
                Scenario::OneSaturated => 0.0,
                Scenario::TwoSaturated => 1.0,
            });
        }
        let first = (a * (b - mu)).sqrt().atan2((b * (mu - a)).sqrt());
        let rho = match self.scenario {
            Scenario::OneSaturated => 2.0 / PI * first,
            Scenario::TwoSaturated => {
                let second = ((r - a) * (b - mu)).sqrt().atan2(((r - b) * (mu - a)).sqrt());
                2.0 / PI * (first - second) + 1.0
            }
        };
        Ok(rho.clamp(0.0, 1.0))
    }

    /// The potential term of the saddle-point equation: on the unsaturated
    /// window `W(mu + i0) + W(mu - i0) = -log alpha`.
    pub fn potential_derivative(&self) -> f64 {
        -self.alpha.ln()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityProfile {
    pub solution: SaddleSolution,
    /// `(mu, rho(mu))`
    pub samples: Vec<(f64, f64)>,
}

/// `rho` at `points` equally spaced `mu` covering `[0, R]`.
pub fn density_profile(solution: &SaddleSolution, points: usize) -> Result<DensityProfile> {
    if points < 2 {
        return domain("at least two sample points are needed");
    }
    let r = solution.r;
    let samples = (0..points)
        .map(|k| {
            let mu = if k + 1 == points { r } else { r * k as f64 / (points - 1) as f64 };
            solution.density(mu).map(|rho| (mu, rho))
        })
        .collect::<Result<_>>()?;
    Ok(DensityProfile { solution: *solution, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn scenario_one_endpoints() {
        for r in [3.0, 5.0, 100.0] {
            let s = endpoints(0.25, r).unwrap();
            assert_eq!(s.scenario, Scenario::OneSaturated);
            assert!((s.a - 1.0 / 3.0).abs() < 1e-15 && (s.b - 3.0).abs() < 1e-15);
            assert!((s.a * s.b - 1.0).abs() < 1e-15);
            assert!((s.e - 5.0 / 6.0).abs() < 1e-15);
        }
        assert!(endpoints(0.25, 0.99).is_err());
        assert!(endpoints(0.25, f64::NAN).is_err());
        assert!(endpoints(1.0, 2.0).is_err());
    }

    #[test]
    fn scenario_two_endpoints() {
        let s = endpoints(0.25, 2.0).unwrap();
        assert_eq!(s.scenario, Scenario::TwoSaturated);
        assert!(0.0 < s.a && s.a < s.b && s.b <= s.r);
        let lhs = (s.a * s.b).sqrt() + ((s.r - s.a) * (s.r - s.b)).sqrt();
        assert!((lhs - 1.0).abs() < 1e-14);
        let s = endpoints(0.25, 1.0).unwrap();
        assert!((s.a - 2.0 / 3.0).abs() < 1e-15 && (s.b - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.density(0.3).unwrap(), 1.0);
        assert_eq!(s.density(2.0 / 3.0).unwrap(), 1.0);
    }

    #[test]
    fn scenarios_meet_at_critical_wall() {
        for alpha in [0.25, 0.5, 0.75] {
            let rc = v_critical(alpha).unwrap().r_c;
            let one = endpoints(alpha, rc).unwrap();
            assert_eq!(one.scenario, Scenario::OneSaturated);
            let two = endpoints_for(Scenario::TwoSaturated, alpha, rc).unwrap();
            assert!((two.a - one.a).abs() < 1e-12 && (two.b - one.b).abs() < 1e-12);
            assert!((two.b - rc).abs() < 1e-12);
            assert!((two.e - one.e).abs() < 1e-10);
            let below = endpoints(alpha, rc * (1.0 - 1e-9)).unwrap();
            assert_eq!(below.scenario, Scenario::TwoSaturated);
        }
    }

    #[test]
    fn density_limits() {
        for s in [endpoints(0.25, 5.0).unwrap(), endpoints(0.25, 1.2).unwrap()] {
            let eps = 1e-12;
            assert!((s.density(s.a + eps).unwrap() - 1.0).abs() < 1e-5);
            let at_b = s.density(s.b - eps).unwrap();
            match s.scenario {
                Scenario::OneSaturated => assert!(at_b < 1e-5),
                Scenario::TwoSaturated => assert!((at_b - 1.0).abs() < 1e-5),
            }
        }
        let s = endpoints(0.25, 3.0).unwrap();
        assert_eq!(s.density(3.0).unwrap(), 0.0);
        assert!(s.density(3.1).is_err());
        assert!(s.density(-0.1).is_err());
    }

    #[test]
    fn resolvent_off_cut_only() {
        let s = endpoints(0.25, 2.0).unwrap();
        assert!(s.resolvent(Complex64::new(1.0, 0.0)).is_err());
        assert!(s.resolvent(Complex64::new(0.0, 0.0)).is_err());
        assert!(s.resolvent(Complex64::new(2.5, 0.0)).unwrap().im.abs() < 1e-15);
        assert!(s.resolvent(Complex64::new(-0.5, 0.0)).unwrap().im.abs() < 1e-15);
        // real and positive to the right of the support
        assert!(s.resolvent(Complex64::new(10.0, 0.0)).unwrap().re > 0.0);
    }

    #[test]
    fn boundary_value_matches_small_offset() {
        let s = endpoints(0.5, 2.0).unwrap();
        for mu in [0.1, 0.5, 1.0, 1.8] {
            let exact = s.resolvent_raw(Complex64::new(mu, 0.0));
            let near = s.resolvent_raw(Complex64::new(mu, 1e-10));
            assert!((exact - near).norm() < 1e-7, "mu = {mu}");
        }
    }

    #[test]
    fn profile_samples() {
        let p = density_profile(&endpoints(0.25, 3.0).unwrap(), 50).unwrap();
        assert_eq!(p.samples.len(), 50);
        assert_eq!(p.samples.last().unwrap().0, 3.0);
        assert!(p.samples.iter().all(|&(_, rho)| rho.is_finite()));
        assert!(density_profile(&endpoints(0.25, 3.0).unwrap(), 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn density_within_bounds(alpha in 0.01f64..0.99, r in 1.0f64..12.0) {
            let s = endpoints(alpha, r).unwrap();
            prop_assert!(0.0 < s.a && s.a <= s.b && s.b <= s.r);
            let profile = density_profile(&s, 1000).unwrap();
            for &(mu, rho) in &profile.samples {
                prop_assert!((0.0..=1.0).contains(&rho), "rho({mu}) = {rho}");
            }
        }

        #[test]
        fn density_is_nonincreasing_in_scenario_one(alpha in 0.05f64..0.6, k in 0usize..50) {
            let rc = v_critical(alpha).unwrap().r_c;
            let s = endpoints(alpha, rc + 1.0).unwrap();
            let mu = |j: usize| s.a + (s.b - s.a) * j as f64 / 50.0;
            prop_assert!(s.density(mu(k + 1)).unwrap() <= s.density(mu(k)).unwrap() + 1e-15);
        }
    }
}
