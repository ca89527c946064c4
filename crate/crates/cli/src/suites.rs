use efp_core::asymptotics::{ode_residual, phi_of_r};
use efp_core::efp_exact::efp_polynomial;
use efp_core::exact_algebra::rational_to_f64;
use efp_core::matrix_model::{
    master_integral_check, density_from_discontinuity, endpoints_for, first_moment_check,
    normalization, phi_from_moment, resolvent_expansion, saddle_point_residual,
};
use efp_core::toda::{toda_reconstruct, toda_residual_r, toda_residual_s, TodaResidual};
use efp_core::{endpoints, v_critical, AlphaPoly, Scenario};
use rayon::prelude::*;

use crate::commands::float;
use crate::report::{Check, RunReport};
use crate::{CheckArgs, CliError, Suite};

/// Largest coefficient magnitude; 0 exactly when the polynomial vanishes.
fn poly_size(p: &AlphaPoly) -> f64 {
    p.coeffs().iter().map(|c| rational_to_f64(c).abs()).fold(0.0, f64::max)
}

fn toda(r_max: usize) -> Result<Vec<Check>, CliError> {
    if r_max < 2 {
        return Err(CliError::Usage("--r-max must be at least 2".into()));
    }
    let grid: Vec<(usize, usize)> = (2..=r_max).flat_map(|r| (1..r).map(move |s| (r, s))).collect();
    let residuals: Vec<(TodaResidual, TodaResidual)> = grid
        .par_iter()
        .map(|&(r, s)| Ok((toda_residual_s(r, s)?, toda_residual_r(r, s)?)))
        .collect::<efp_core::Result<_>>()?;
    let mut checks = Vec::new();
    for (s_dir, r_dir) in &residuals {
        for t in [s_dir, r_dir] {
            let dir = match t.direction {
                efp_core::toda::TodaDirection::ShiftS => "s",
                efp_core::toda::TodaDirection::ShiftR => "r",
            };
            checks.push(Check::at_most(
                format!("toda_{dir} r={} s={}", t.r, t.s),
                poly_size(&t.residual),
                0.0,
            ));
        }
    }
    let rebuilt: Vec<Check> = (1..=r_max)
        .into_par_iter()
        .map(|r| {
            let polys = toda_reconstruct(r, r)?;
            let mut worst = 0.0f64;
            for (s, p) in polys.iter().enumerate() {
                worst = worst.max(poly_size(&(p - &efp_polynomial(r, s)?)));
            }
            Ok(Check::at_most(format!("toda_reconstruction r={r}"), worst, 0.0))
        })
        .collect::<efp_core::Result<_>>()?;
    checks.extend(rebuilt);
    Ok(checks)
}

fn ode(alpha: f64) -> Result<Vec<Check>, CliError> {
    let mut worst = 0.0f64;
    for k in 0..100 {
        worst = worst.max(ode_residual(alpha, (k as f64 + 0.5) / 100.0)?);
    }
    Ok(vec![Check::at_most(format!("ode_residual alpha={alpha}"), worst, 1e-10)])
}

/// A fixed grid over both branch cases: `c, d` left of `a`, and right of `b`.
fn master_integral() -> Result<Vec<Check>, CliError> {
    let mut worst = [0.0f64; 2];
    for &(a, b) in &[(1.0, 2.0), (-1.5, 0.5), (0.2, 3.1)] {
        for &z in &[b + 0.05, b + 1.7, a - 0.3, a - 4.0] {
            for (case, slot) in worst.iter_mut().enumerate() {
                for &(dc, dd) in &[(0.0, 1.3), (0.4, 0.0), (1.9, 0.7), (0.25, 0.25)] {
                    let (c, d) = if case == 0 { (a - dc, a - dd) } else { (b + dc, b + dd) };
                    let m = master_integral_check(a, b, c, d, z)?;
                    *slot = slot.max((m.lhs - m.rhs).abs());
                }
            }
        }
    }
    Ok(vec![
        Check::at_most("master_integral c,d<=a", worst[0], 1e-8),
        Check::at_most("master_integral c,d>=b", worst[1], 1e-8),
    ])
}

/// Hard-wall positions on both sides of `R_c`, plus `R_c` itself.
fn wall_positions(alpha: f64) -> Result<Vec<f64>, CliError> {
    let r_c = v_critical(alpha)?.r_c;
    Ok(vec![1.0 + 0.2 * (r_c - 1.0), 1.0 + 0.7 * (r_c - 1.0), r_c, 1.5 * r_c])
}

fn density(alpha: f64) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    for r in wall_positions(alpha)? {
        let s = endpoints(alpha, r)?;
        checks.push(Check::at_most(
            format!("normalization R={r:.6}"),
            (normalization(&s) - 1.0).abs(),
            1e-8,
        ));
        let (mut jump, mut saddle) = (0.0f64, 0.0f64);
        for k in 1..20 {
            let mu = s.support_end() * k as f64 / 20.0;
            jump = jump.max((density_from_discontinuity(&s, mu, 1e-7)? - s.density(mu)?).abs());
            let w = s.a + (s.b - s.a) * k as f64 / 20.0;
            saddle = saddle.max(saddle_point_residual(&s, w)?);
        }
        checks.push(Check::at_most(format!("density_from_discontinuity R={r:.6}"), jump, 1e-8));
        checks.push(Check::at_most(format!("saddle_point R={r:.6}"), saddle, 1e-10));
    }
    Ok(checks)
}

fn moments(alpha: f64) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    for r in wall_positions(alpha)? {
        let s = endpoints(alpha, r)?;
        let m = first_moment_check(&s);
        checks.push(Check::at_most(
            format!("first_moment R={r:.6}"),
            (m.e_quadrature - m.e_formula).abs(),
            1e-8,
        ));
        let x = resolvent_expansion(&s, 1e4 * s.support_end())?;
        checks.push(Check::at_most(format!("resolvent_c1 R={r:.6}"), (x.c1 - 1.0).abs(), 1e-5));
        checks.push(Check::at_most(format!("resolvent_c2 R={r:.6}"), (x.c2 - s.e).abs(), 1e-5));
    }
    let r_c = v_critical(alpha)?.r_c;
    let one = endpoints_for(Scenario::OneSaturated, alpha, r_c)?;
    let two = endpoints_for(Scenario::TwoSaturated, alpha, r_c)?;
    let gap = (one.a - two.a).abs().max((one.b - two.b).abs()).max((one.e - two.e).abs());
    checks.push(Check::at_most("scenario_continuity at R_c", gap, 1e-12));
    let grid: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let r = 0.5 * (1.0 + r_c);
    let mut worst = 0.0f64;
    for (a, phi) in phi_from_moment(&grid, r)? {
        worst = worst.max((phi - phi_of_r(a, r)?).abs());
    }
    checks.push(Check::at_most(format!("phi_from_moment R={r:.6}"), worst, 1e-5));
    Ok(checks)
}

pub fn check(args: &CheckArgs) -> Result<RunReport, CliError> {
    let alpha = float("alpha", &args.alpha)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::Usage(format!("--alpha = {alpha} must lie in (0, 1)")));
    }
    let mut report = RunReport::new("check");
    let suite = clap::ValueEnum::to_possible_value(&args.suite)
        .map(|v| v.get_name().to_owned())
        .unwrap_or_default();
    report.input("suite", suite);
    let run = |s: Suite| -> Result<Vec<Check>, CliError> {
        match s {
            Suite::Toda => toda(args.r_max),
            Suite::Ode => ode(alpha),
            Suite::MasterIntegral => master_integral(),
            Suite::Density => density(alpha),
            Suite::Moments => moments(alpha),
            Suite::All => unreachable!(),
        }
    };
    let suites = match args.suite {
        Suite::All => vec![Suite::Toda, Suite::Ode, Suite::MasterIntegral, Suite::Density, Suite::Moments],
        s => vec![s],
    };
    if suites.contains(&Suite::Toda) {
        report.input("r_max", args.r_max);
    }
    if suites.iter().any(|s| matches!(s, Suite::Ode | Suite::Density | Suite::Moments)) {
        report.input("alpha", crate::report::num(alpha));
    }
    for s in suites {
        for c in run(s)? {
            report.check(c);
        }
    }
    let failed = report.checks.iter().filter(|c| c.status == crate::report::Status::Fail).count();
    let total = report.checks.len();
    report.output("checks_run", total).output("checks_failed", failed);
    Ok(report)
}
