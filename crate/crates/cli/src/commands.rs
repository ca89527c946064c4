use efp_core::asymptotics::{
    arctic_ellipse, finite_size_extrapolate, free_energy, ode_residual, one_sided_third_derivative,
    FreeEnergyParams,
};
use efp_core::efp_exact::{efp_hankel_symbolic, efp_special, partition_functions};
use efp_core::exact_algebra::rational_to_f64;
use efp_core::matrix_model::{density_profile, normalization};
use efp_core::{
    efp_hankel, efp_oracle, endpoints, parse_rational, sigma_profile, v_critical, EfpError, EfpResult,
    ExactScalar, ModelParams,
};
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::report::{num, Check, RunReport, Table};
use crate::{CliError, DensityArgs, EfpArgs, MethodArg, SigmaArgs, SweepArgs, TransitionArgs};

const FD_STEP: f64 = 1e-4;

pub fn exact(name: &str, text: &str) -> Result<ExactScalar, CliError> {
    parse_rational(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

/// A float given either as a decimal or as `p/q`.
pub fn float(name: &str, text: &str) -> Result<f64, CliError> {
    let t = text.trim();
    let x = if t.contains('/') {
        rational_to_f64(&exact(name, t)?)
    } else {
        t.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("--{name}: cannot parse {text:?} as a number")))?
    };
    if !x.is_finite() {
        return Err(CliError::Usage(format!("--{name} must be finite")));
    }
    Ok(x)
}

pub fn efp(args: &EfpArgs) -> Result<RunReport, CliError> {
    let alpha = exact("alpha", &args.alpha)?;
    let rho = match &args.rho {
        Some(text) => Some(exact("rho", text)?),
        None => None,
    };
    let params = match &rho {
        Some(rho) => ModelParams::with_rho(alpha.clone(), rho.clone(), args.r, args.s)?,
        None => ModelParams::new(alpha.clone(), args.r, args.s)?,
    };
    let mut report = RunReport::new("efp");
    report
        .input("alpha", alpha.to_string())
        .input("r", args.r)
        .input("s", args.s)
        .input("method", format!("{:?}", args.method).to_lowercase());

    let hankel = |symbolic: bool| if symbolic { efp_hankel_symbolic(&params) } else { efp_hankel(&params) };
    let special = || {
        efp_special(&params).ok_or_else(|| {
            CliError::Usage(format!(
                "no closed value for s = {} at r = {}; special values exist for s in {{0, 1, r}}",
                args.s, args.r
            ))
        })
    };
    let primary: EfpResult = match args.method {
        MethodArg::Hankel => hankel(args.symbolic)?,
        MethodArg::Oracle => efp_oracle(&params)?,
        MethodArg::Special => special()?,
        MethodArg::All => {
            let main = hankel(args.symbolic)?;
            let mut others = Vec::new();
            match efp_oracle(&params) {
                Ok(o) => others.push(o),
                Err(EfpError::Resource { terms, .. }) => {
                    report.output("oracle_skipped", format!("enumeration needs {terms} terms"));
                }
                Err(e) => return Err(e.into()),
            }
            others.extend(efp_special(&params));
            let disagreeing = others.iter().filter(|o| o.value_exact != main.value_exact).count();
            let mut methods = vec![main.method.to_string()];
            methods.extend(others.iter().map(|o| o.method.to_string()));
            report.output("methods_compared", methods);
            report.check(Check::at_most("methods_agree", disagreeing as f64, 0.0));
            main
        }
    };
    report
        .output("value", primary.value_exact.to_string())
        .output("decimal", num(primary.value_float))
        .output("provenance", primary.method.to_string());
    if args.symbolic {
        let poly = match primary.as_polynomial {
            Some(p) => p,
            None => efp_hankel_symbolic(&params)?.as_polynomial.expect("symbolic route keeps the polynomial"),
        };
        let coeffs: Vec<String> = poly.coeffs().iter().map(ToString::to_string).collect();
        report.output("coefficients", coeffs);
    }
    if rho.is_some() {
        let z = partition_functions(&params)?;
        report.output("z_n", z.z_n.to_string());
        let z_rs = if z.z_rs.radicand.is_one() {
            z.z_rs.rational.to_string()
        } else {
            format!("{} * sqrt({})", z.z_rs.rational, z.z_rs.radicand)
        };
        report.output("z_rs", z_rs).output("z_rs_decimal", num(z.z_rs.to_f64()));
    }
    Ok(report)
}

fn sweep_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, end, step] = parts[..] else {
        return Err(CliError::Usage(format!("--sweep expects start:end:step, got {spec:?}")));
    };
    let (start, end, step) = (float("sweep", start)?, float("sweep", end)?, float("sweep", step)?);
    if !(step > 0.0 && end >= start) {
        return Err(CliError::Usage("--sweep needs step > 0 and end >= start".into()));
    }
    let intervals = ((end - start) / step).round();
    if intervals > 1e6 {
        return Err(CliError::Usage("--sweep would produce more than a million rows".into()));
    }
    let n = intervals as usize + 1;
    Ok((0..n)
        .map(|k| if k + 1 == n { end } else { start + (end - start) * k as f64 / intervals })
        .collect())
}

pub fn sigma(args: &SigmaArgs) -> Result<RunReport, CliError> {
    let alpha = float("alpha", &args.alpha)?;
    let profile = sigma_profile(alpha)?;
    let crit = v_critical(alpha)?;
    let mut report = RunReport::new("sigma");
    report.input("alpha", num(alpha));
    report.output("v_c", num(crit.v_c)).output("R_c", num(crit.r_c));

    if let Some(spec) = &args.sweep {
        report.input("sweep", spec.as_str());
        let mut rows = Vec::new();
        let mut worst_drop = 0.0f64;
        let mut prev: Option<f64> = None;
        for v in sweep_grid(spec)? {
            let s = profile.sigma(v)?;
            if let Some(p) = prev {
                worst_drop = worst_drop.max(p - s);
            }
            prev = Some(s);
            rows.push(vec![
                num(v),
                num(s),
                num(profile.sigma_d1(v)?),
                num(profile.sigma_d2(v)?),
                profile.regime(v)?.to_string().into(),
            ]);
        }
        report.check(Check::at_most("sigma_nondecreasing", worst_drop, 0.0));
        report.table = Some(Table {
            columns: vec!["v", "sigma", "sigma_d1", "sigma_d2", "regime"],
            rows,
        });
        return Ok(report);
    }

    let v = float("v", args.v.as_deref().expect("clap requires --v or --sweep"))?;
    report.input("v", num(v)).input("rho", num(args.rho));
    report
        .output("regime", profile.regime(v)?.to_string())
        .output("sigma", num(profile.sigma(v)?))
        .output("sigma_d1", num(profile.sigma_d1(v)?))
        .output("sigma_d2", num(profile.sigma_d2(v)?))
        .output("sigma_d3_right", num(profile.sigma_d3(v)?));
    if v + 4.0 * FD_STEP <= 1.0 {
        report.output("sigma_d3_right_fd", num(one_sided_third_derivative(&profile, v, FD_STEP)?));
    }
    report.output(
        "free_energy",
        num(free_energy(&FreeEnergyParams { alpha, rho: args.rho, v })?),
    );
    report.output("contact_side", num(arctic_ellipse(alpha)?.contact_side));
    if v < 1.0 {
        report.check(Check::at_most("ode_residual", ode_residual(alpha, v)?, 1e-10));
    }
    Ok(report)
}

pub fn sweep(args: &SweepArgs) -> Result<RunReport, CliError> {
    let alpha = exact("alpha", &args.alpha)?;
    let v = exact("v", &args.v)?;
    if !alpha.is_positive() || alpha >= ExactScalar::one() {
        return Err(CliError::Usage(format!("--alpha = {alpha} must lie in (0, 1)")));
    }
    if v.is_negative() || v > ExactScalar::one() {
        return Err(CliError::Usage(format!("--v = {v} must lie in [0, 1]")));
    }
    if args.r.windows(2).any(|w| w[0] >= w[1]) || args.r.first() == Some(&0) {
        return Err(CliError::Usage("--r must be positive and strictly increasing".into()));
    }
    let denominator = v.denom().clone();
    let bad: Vec<usize> = args
        .r
        .iter()
        .copied()
        .filter(|&r| !(num_bigint::BigInt::from(r) % &denominator).is_zero())
        .collect();
    if !bad.is_empty() {
        return Err(CliError::Usage(format!(
            "s = v r is not an integer for r in {bad:?}; admissible r are the multiples of {denominator}"
        )));
    }

    let table = finite_size_extrapolate(&alpha, &v, &args.r)?;
    let mut report = RunReport::new("sweep");
    report
        .input("alpha", alpha.to_string())
        .input("v", v.to_string())
        .input("r", args.r.clone());
    report
        .output("sigma", num(table.sigma))
        .output("extrapolated_limit", num(table.extrapolation.limit))
        .output("extrapolation_error", num(table.extrapolation.error_estimate))
        .output(
            "fitted_exponent",
            table.extrapolation.exponent.map(num).unwrap_or(Value::Null),
        );

    let mut rows = Vec::new();
    let mut any_special = false;
    for row in &table.rows {
        let params = ModelParams::new(alpha.clone(), row.r, row.s)?;
        // distance to the closed value, where one exists, computed exactly
        let exact_gap = match efp_special(&params) {
            Some(closed) => {
                any_special = true;
                let gap = (efp_hankel(&params)?.value_exact - closed.value_exact).abs();
                report.check(Check::at_most(format!("closed_value r={}", row.r), rational_to_f64(&gap), 0.0));
                num(rational_to_f64(&gap))
            }
            None => Value::Null,
        };
        rows.push(vec![
            row.r.into(),
            row.s.into(),
            num(row.efp),
            num(row.estimate),
            num((row.estimate - table.sigma).abs()),
            exact_gap,
        ]);
    }
    if !any_special && table.rows.len() >= 2 {
        let growth = table
            .rows
            .windows(2)
            .map(|w| (w[1].estimate - table.sigma).abs() - (w[0].estimate - table.sigma).abs())
            .fold(0.0f64, f64::max);
        report.check(Check::at_most("error_nonincreasing", growth, 0.0));
    }
    report.table = Some(Table {
        columns: vec!["r", "s", "efp", "estimate", "abs_error", "exact_gap"],
        rows,
    });
    Ok(report)
}

pub fn density(args: &DensityArgs) -> Result<RunReport, CliError> {
    let alpha = float("alpha", &args.alpha)?;
    let r = float("R", &args.r)?;
    if r < 1.0 {
        return Err(CliError::Usage(format!("--R = {r} must be at least 1")));
    }
    let solution = endpoints(alpha, r)?;
    let profile = density_profile(&solution, args.points)?;
    let mut report = RunReport::new("density");
    report.input("alpha", num(alpha)).input("R", num(r)).input("points", args.points);
    report
        .output("scenario", solution.scenario.to_string())
        .output("a", num(solution.a))
        .output("b", num(solution.b))
        .output("E", num(solution.e))
        .output("R_c", num(v_critical(alpha)?.r_c));
    report.check(Check::at_most(
        "normalization",
        (normalization(&solution) - 1.0).abs(),
        1e-8,
    ));
    report.table = Some(Table {
        columns: vec!["mu", "rho"],
        rows: profile.samples.iter().map(|&(mu, rho)| vec![num(mu), num(rho)]).collect(),
    });
    Ok(report)
}

pub fn transition(args: &TransitionArgs) -> Result<RunReport, CliError> {
    let alpha = float("alpha", &args.alpha)?;
    if !(args.h > 0.0 && args.h < 0.05) {
        return Err(CliError::Usage(format!("--h = {} must lie in (0, 0.05)", args.h)));
    }
    let profile = sigma_profile(alpha)?;
    let crit = v_critical(alpha)?;
    let v_c = crit.v_c;
    if v_c + 4.0 * args.h > 1.0 {
        return Err(CliError::Usage(format!("--h = {} steps past v = 1 from v_c = {v_c}", args.h)));
    }
    let [s0, s1, s2, s3] = profile.disordered_branch(v_c)?;
    let fd = one_sided_third_derivative(&profile, v_c, args.h)?;
    let jump = profile.third_derivative_jump();
    let mut report = RunReport::new("transition");
    report.input("alpha", num(alpha)).input("h", num(args.h));
    report
        .output("v_c", num(v_c))
        .output("R_c", num(crit.r_c))
        .output("sigma", num(s0))
        .output("sigma_d1_right", num(s1))
        .output("sigma_d2_right", num(s2))
        .output("sigma_d3_right", num(s3))
        .output("sigma_d3_left", num(0.0))
        .output("sigma_d3_jump", num(jump))
        .output("sigma_d3_right_fd", num(fd));
    report
        .check(Check::at_most("sigma_vanishes", s0.abs(), 1e-10))
        .check(Check::at_most("sigma_d1_vanishes", s1.abs(), 1e-10))
        .check(Check::at_most("sigma_d2_vanishes", s2.abs(), 1e-10))
        .check(Check::at_most("fd_matches_jump", (fd / jump - 1.0).abs(), 1e-2));
    Ok(report)
}
