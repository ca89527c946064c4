//! Browser bindings: the rate function `sigma(v)`, the saddle-point density,
//! and exact `f_{r,s}` at a rational alpha. Each export is a thin wrapper
//! over a plain function so the logic also runs (and is tested) natively.

use efp_core::matrix_model::density_profile;
use efp_core::{efp_hankel, endpoints, parse_rational, sigma_profile, v_critical, ModelParams};
use wasm_bindgen::prelude::*;

/// Above this size the exact determinant stops being interactive.
pub const MAX_EXACT_R: usize = 80;

#[wasm_bindgen]
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaCurve {
    v: Vec<f64>,
    sigma: Vec<f64>,
    v_c: f64,
    r_c: f64,
    jump: f64,
}

#[wasm_bindgen]
impl SigmaCurve {
    #[wasm_bindgen(getter)]
    pub fn v(&self) -> Vec<f64> {
        self.v.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn sigma(&self) -> Vec<f64> {
        self.sigma.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn v_c(&self) -> f64 {
        self.v_c
    }
    #[wasm_bindgen(getter)]
    pub fn r_c(&self) -> f64 {
        self.r_c
    }
    /// Jump of the third derivative at `v_c`.
    #[wasm_bindgen(getter)]
    pub fn jump(&self) -> f64 {
        self.jump
    }
}

pub fn sigma_curve_native(alpha: f64, points: usize) -> Result<SigmaCurve, String> {
    if points < 2 {
        return Err("need at least two points".into());
    }
    let profile = sigma_profile(alpha).map_err(|e| e.to_string())?;
    let crit = v_critical(alpha).map_err(|e| e.to_string())?;
    let v: Vec<f64> = (0..points).map(|k| k as f64 / (points - 1) as f64).collect();
    let sigma = v.iter().map(|&x| profile.sigma(x)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    Ok(SigmaCurve { v, sigma, v_c: crit.v_c, r_c: crit.r_c, jump: profile.third_derivative_jump() })
}

#[wasm_bindgen]
pub fn sigma_curve(alpha: f64, points: usize) -> Result<SigmaCurve, JsError> {
    sigma_curve_native(alpha, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Clone, Debug, PartialEq)]
pub struct DensityCurve {
    scenario: String,
    a: f64,
    b: f64,
    e: f64,
    mu: Vec<f64>,
    rho: Vec<f64>,
}

#[wasm_bindgen]
impl DensityCurve {
    /// `one_saturated` or `two_saturated`.
    #[wasm_bindgen(getter)]
    pub fn scenario(&self) -> String {
        self.scenario.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn a(&self) -> f64 {
        self.a
    }
    #[wasm_bindgen(getter)]
    pub fn b(&self) -> f64 {
        self.b
    }
    /// First moment of the density.
    #[wasm_bindgen(getter)]
    pub fn e(&self) -> f64 {
        self.e
    }
    #[wasm_bindgen(getter)]
    pub fn mu(&self) -> Vec<f64> {
        self.mu.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn rho(&self) -> Vec<f64> {
        self.rho.clone()
    }
}

pub fn density_curve_native(alpha: f64, wall: f64, points: usize) -> Result<DensityCurve, String> {
    let sol = endpoints(alpha, wall).map_err(|e| e.to_string())?;
    let profile = density_profile(&sol, points).map_err(|e| e.to_string())?;
    let (mu, rho) = profile.samples.into_iter().unzip();
    Ok(DensityCurve { scenario: sol.scenario.to_string(), a: sol.a, b: sol.b, e: sol.e, mu, rho })
}

#[wasm_bindgen]
pub fn density_curve(alpha: f64, wall: f64, points: usize) -> Result<DensityCurve, JsError> {
    density_curve_native(alpha, wall, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Clone, Debug, PartialEq)]
pub struct ExactEfp {
    value: String,
    decimal: f64,
    estimate: f64,
    sigma: f64,
}

#[wasm_bindgen]
impl ExactEfp {
    /// `f_{r,s}` as `p/q`.
    #[wasm_bindgen(getter)]
    pub fn value(&self) -> String {
        self.value.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn decimal(&self) -> f64 {
        self.decimal
    }
    /// `-log f / r^2`
    #[wasm_bindgen(getter)]
    pub fn estimate(&self) -> f64 {
        self.estimate
    }
    /// `sigma(s/r)` for comparison; NaN at alpha = 0 or 1.
    #[wasm_bindgen(getter)]
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

pub fn exact_efp_native(alpha: &str, r: usize, s: usize) -> Result<ExactEfp, String> {
    if r > MAX_EXACT_R {
        return Err(format!("r = {r} is above the interactive limit {MAX_EXACT_R}"));
    }
    let alpha = parse_rational(alpha).map_err(|e| e.to_string())?;
    let params = ModelParams::new(alpha, r, s).map_err(|e| e.to_string())?;
    let f = efp_hankel(&params).map_err(|e| e.to_string())?;
    let estimate = -efp_core::exact_algebra::ln_rational(&f.value_exact) / (r * r) as f64;
    let sigma = sigma_profile(efp_core::exact_algebra::rational_to_f64(&params.alpha))
        .and_then(|p| p.sigma(s as f64 / r as f64))
        .unwrap_or(f64::NAN);
    Ok(ExactEfp { value: f.value_exact.to_string(), decimal: f.value_float, estimate, sigma })
}

#[wasm_bindgen]
pub fn exact_efp(alpha: &str, r: usize, s: usize) -> Result<ExactEfp, JsError> {
    exact_efp_native(alpha, r, s).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_curve_shape() {
        let c = sigma_curve_native(0.25, 101).unwrap();
        assert_eq!(c.v.len(), 101);
        assert!((c.v_c - 1.0 / 3.0).abs() < 1e-15);
        assert!((c.jump - 6.75).abs() < 1e-12);
        assert!(c.sigma.windows(2).all(|w| w[0] <= w[1]));
        assert!((c.sigma[100] - (4.0f64 / 3.0).ln()).abs() < 1e-14);
        assert!(sigma_curve_native(1.5, 10).is_err());
    }

    #[test]
    fn density_scenarios() {
        let d = density_curve_native(0.25, 5.0, 64).unwrap();
        assert_eq!(d.scenario, "one_saturated");
        assert_eq!((d.mu.len(), d.rho.len()), (64, 64));
        let d = density_curve_native(0.25, 1.2, 64).unwrap();
        assert_eq!(d.scenario, "two_saturated");
        assert_eq!(d.rho[63], 1.0);
        assert!(density_curve_native(0.25, 0.5, 64).is_err());
    }

    #[test]
    fn exact_values() {
        let f = exact_efp_native("1/2", 3, 3).unwrap();
        assert_eq!(f.value, "1/512");
        assert_eq!(exact_efp_native("1/2", 2, 1).unwrap().value, "3/4");
        assert!(exact_efp_native("1/2", 2, 3).is_err());
        assert!(exact_efp_native("x", 2, 1).is_err());
        assert!(exact_efp_native("1/2", MAX_EXACT_R + 1, 1).is_err());
        let f = exact_efp_native("1/4", 16, 8).unwrap();
        assert!((f.estimate - f.sigma).abs() < 1e-3);
    }
}
