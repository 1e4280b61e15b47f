use std::fmt::Write as _;
use std::fs::File;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use scarf_core::analytic_scattering::{amplitudes, complex_poles, real_axis_poles, ScatteringError};
use scarf_core::invariance_suite::{log_grid, run_report, ReportSource};
use scarf_core::numeric_oracle::{self, sample_scarf, SampledPotential};
use scarf_core::special_functions::K_MIN;
use scarf_core::spectral_analysis::{bound_states, confirm_pole, enumerate_spectrum, find_spectral_singularities};
use scarf_core::ScarfParameters;

use crate::args::*;
use crate::error::CliError;
use crate::output::{emit, num, SCAN_HEADER, SCHEMA_LINE};

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Scan(a) => scan(a),
        Command::Figure1(a) => figure1(a),
        Command::Ss(a) => ss(a),
        Command::BoundStates(a) => bound(a),
        Command::Invariance(a) => invariance(a),
        Command::OracleCheck(a) => oracle_check(a),
        Command::Describe(a) => describe(a),
        Command::Sample(a) => sample(a),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn energy_grid(emin: f64, emax: f64, steps: usize, spacing: Spacing) -> Result<Vec<f64>, CliError> {
    if steps < 2 {
        return Err(CliError::Input(format!("--steps must be at least 2, got {steps}")));
    }
    if !(emin < emax) {
        return Err(CliError::Input(format!(
            "--emin ({emin}) must be below --emax ({emax})"
        )));
    }
    if emin < K_MIN * K_MIN {
        return Err(CliError::Input(format!("--emin must be at least {:e}", K_MIN * K_MIN)));
    }
    Ok(match spacing {
        Spacing::Linear => {
            let step = (emax - emin) / (steps - 1) as f64;
            (0..steps)
                .map(|i| if i == steps - 1 { emax } else { emin + i as f64 * step })
                .collect()
        }
        Spacing::Log => log_grid(emin, emax, steps),
    })
}

/// (T, R_left, R_right, flagged) at signed k; an exact pole gives infinities.
fn channel(p: &ScarfParameters, k: f64) -> Result<(f64, f64, f64, bool), CliError> {
    match amplitudes(p, k) {
        Ok(a) => Ok((
            a.t.norm_sqr(),
            a.r_left.norm_sqr(),
            a.r_right.norm_sqr(),
            a.singular.is_some(),
        )),
        Err(ScatteringError::ExactSingularity { .. }) => Ok((f64::INFINITY, f64::INFINITY, f64::INFINITY, true)),
        Err(e) => Err(e.into()),
    }
}

pub fn scan_csv(p: &ScarfParameters, energies: &[f64]) -> Result<String, CliError> {
    let mut s = format!("{SCHEMA_LINE}\n{SCAN_HEADER}\n");
    for &e in energies {
        let k = e.sqrt();
        let (t_f, rl_f, rr_f, flag_f) = channel(p, k)?;
        let (t_r, rl_r, rr_r, flag_r) = channel(p, -k)?;
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            num(e),
            num(t_f),
            num(t_r),
            num(rl_f),
            num(rr_f),
            num(rl_r),
            num(rr_r),
            u8::from(flag_f || flag_r)
        );
    }
    Ok(s)
}

fn scan(a: ScanArgs) -> Result<(), CliError> {
    let p = a.params.to_params()?;
    let energies = energy_grid(a.emin, a.emax, a.steps, a.spacing)?;
    emit(a.out.as_deref(), &scan_csv(&p, &energies)?)
}

/// (α, β) for the four reference scans, all with m = n = 0.
pub fn case_alpha_beta(case: Case) -> (f64, f64) {
    let (s2, s5) = (2f64.sqrt(), 5f64.sqrt());
    match case {
        Case::A => (s2, s5),
        Case::B => (-s2, -s5),
        Case::C => (-s2, s5),
        Case::D => (s2, -s2),
    }
}

fn case_params(case: Case) -> Result<ScarfParameters, CliError> {
    let (alpha, beta) = case_alpha_beta(case);
    Ok(ScarfParameters::from_real_parametrization(0, 0, alpha, beta)?)
}

fn figure1(a: FigureArgs) -> Result<(), CliError> {
    let (alpha, beta) = case_alpha_beta(a.case);
    let p = case_params(a.case)?;
    for rec in find_spectral_singularities(0, 0, alpha, beta) {
        let channel = serde_json::to_value(rec.channel)?;
        eprintln!(
            "expected peak: E = {:.6} in channel {}",
            rec.e_star,
            channel.as_str().unwrap_or("?")
        );
    }
    let energies = energy_grid(0.25, 7.0, 1000, Spacing::Linear)?;
    emit(a.out.as_deref(), &scan_csv(&p, &energies)?)
}

fn with_confirmation(record: Value, p: &ScarfParameters, k: Complex64) -> Result<Value, CliError> {
    let c = confirm_pole(p, k)?;
    let mut obj = record;
    if let Value::Object(map) = &mut obj {
        map.insert("is_pole".into(), json!(c.is_pole));
        map.insert("growth_exponent".into(), json!(c.growth_exponent));
    }
    Ok(obj)
}

fn ss(a: SsArgs) -> Result<(), CliError> {
    let alpha = Complex64::new(a.alpha, a.alpha_im);
    let beta = Complex64::new(a.beta, a.beta_im);
    let spectrum = enumerate_spectrum(a.m, a.n, alpha, beta);
    let body = if a.confirm {
        let p = ScarfParameters::from_parametrization(a.m, a.n, alpha, beta)?;
        let mut singular = Vec::new();
        for rec in &spectrum.spectral_singularities {
            let k = rec.pole_wavenumbers()[0];
            singular.push(with_confirmation(
                serde_json::to_value(rec)?,
                &p,
                Complex64::new(k, 0.0),
            )?);
        }
        let mut bound = Vec::new();
        for rec in &spectrum.bound_states {
            bound.push(with_confirmation(
                serde_json::to_value(rec)?,
                &p,
                Complex64::new(0.0, rec.kappa),
            )?);
        }
        to_json(&json!({ "spectral_singularities": singular, "bound_states": bound }))?
    } else {
        to_json(&spectrum)?
    };
    emit(a.out.as_deref(), &body)
}

fn bound(a: BoundArgs) -> Result<(), CliError> {
    let states = bound_states(a.m, a.n, a.gamma, a.delta)?;
    let body = if a.confirm {
        let p = ScarfParameters::from_parametrization(
            a.m,
            a.n,
            Complex64::new(0.0, a.gamma),
            Complex64::new(0.0, a.delta),
        )?;
        let mut out = Vec::new();
        for s in &states {
            out.push(with_confirmation(
                serde_json::to_value(s)?,
                &p,
                Complex64::new(0.0, s.kappa),
            )?);
        }
        to_json(&out)?
    } else {
        to_json(&states)?
    };
    emit(a.out.as_deref(), &body)
}

fn invariance(a: InvarianceArgs) -> Result<(), CliError> {
    if a.points == 0 || !(a.kmin > 0.0) || (a.points > 1 && !(a.kmin < a.kmax)) {
        return Err(CliError::Input("need --points ≥ 1 and 0 < --kmin < --kmax".into()));
    }
    let grid = log_grid(a.kmin, a.kmax, a.points);
    let report = match &a.potential {
        Some(path) => {
            let file = File::open(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let v = SampledPotential::from_csv(file)?;
            run_report(ReportSource::Sampled(&v), &grid)?
        }
        None => {
            let p = a.params.to_params()?;
            run_report(ReportSource::Analytic(&p), &grid)?
        }
    };
    let body = match a.format {
        ReportFormat::Json => to_json(&report)?,
        ReportFormat::Table => report.render_table(),
    };
    emit(a.out.as_deref(), &body)
}

#[derive(Serialize)]
struct OraclePoint {
    k: f64,
    deviation: f64,
    t_analytic: [f64; 2],
    t_oracle: [f64; 2],
}

#[derive(Serialize)]
struct OracleReport {
    threshold: f64,
    max_relative_deviation: f64,
    passed: bool,
    slab_count: usize,
    x_min: f64,
    x_max: f64,
    points: Vec<OraclePoint>,
    /// Default-grid wavenumbers dropped for lying near a pole of t.
    skipped: Vec<f64>,
}

/// Wavenumbers closer than this to any pole of t are left out of the default grid.
const POLE_CLEARANCE: f64 = 0.05;

fn oracle_check(a: OracleArgs) -> Result<(), CliError> {
    let p = match a.case {
        Some(case) => case_params(case)?,
        None => a.params.to_params()?,
    };
    if !(a.half_width > 0.0) {
        return Err(CliError::Input("--half-width must be positive".into()));
    }
    let (ks, skipped): (Vec<f64>, Vec<f64>) = if a.k.is_empty() {
        let poles = complex_poles(&p, 8);
        (0..10).map(|i| 0.3 + 0.3 * i as f64).partition(|&k| {
            poles
                .iter()
                .all(|z| (z - Complex64::new(k, 0.0)).norm() > POLE_CLEARANCE)
        })
    } else {
        (a.k.clone(), Vec::new())
    };
    if let Some(k) = ks.iter().find(|k| !(**k > 0.0)) {
        return Err(CliError::Input(format!("wavenumbers must be positive, got {k}")));
    }
    let v = sample_scarf(&p, -a.half_width, a.half_width, a.slabs)?;
    let mut points = Vec::new();
    for &k in &ks {
        let analytic = amplitudes(&p, k)?.t;
        let oracle = numeric_oracle::solve(&v, k)?.t_left;
        points.push(OraclePoint {
            k,
            deviation: (analytic - oracle).norm() / analytic.norm(),
            t_analytic: [analytic.re, analytic.im],
            t_oracle: [oracle.re, oracle.im],
        });
    }
    let max = points.iter().map(|pt| pt.deviation).fold(0.0, f64::max);
    let passed = max <= a.threshold;
    let report = OracleReport {
        threshold: a.threshold,
        max_relative_deviation: max,
        passed,
        slab_count: v.slab_count(),
        x_min: v.x_min(),
        x_max: v.x_max(),
        points,
        skipped,
    };
    emit(a.out.as_deref(), &to_json(&report)?)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "max relative deviation {max:e} exceeds threshold {:e}",
            a.threshold
        )))
    }
}

fn describe(a: DescribeArgs) -> Result<(), CliError> {
    let p = a.params.to_params()?;
    let c = p.coefficients();
    let body = json!({
        "parameters": p,
        "coefficients": c,
        "class": c.classify(),
        "real_axis_poles": real_axis_poles(&p),
    });
    emit(None, &to_json(&body)?)
}

fn sample(a: SampleArgs) -> Result<(), CliError> {
    let p = a.params.to_params()?;
    if !(a.half_width > 0.0) {
        return Err(CliError::Input("--half-width must be positive".into()));
    }
    let v = sample_scarf(&p, -a.half_width, a.half_width, a.slabs)?;
    let mut buf = Vec::new();
    v.write_csv(&mut buf)?;
    let body = String::from_utf8(buf).map_err(|e| CliError::Input(e.to_string()))?;
    emit(a.out.as_deref(), &body)
}
