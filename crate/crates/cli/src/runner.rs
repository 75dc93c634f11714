//! Case execution: energy identities plus the auxiliary checks.

use dirichlet_core::energy::{
    ahlfors_boundary_energy, ball_equivalence_check, conformal_transport_check, g_lambda_norm, gradient_energy,
    monogenic_extension_field, relative_deviation, verify_identities, volume_dbar_energy, EnergyProblem,
    EnergyReport, Form, GLambdaRoute, Geometry, Settings, PROBE_STEP, PROBE_THRESHOLD,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Check, ConfigError, SuiteConfig, VerifyCase};

/// Environment variable overriding the number of concurrent cases.
pub const WORKERS_ENV: &str = "DIRICHLET_WORKERS";

const PROBE_COUNT: usize = 8;

/// One auxiliary comparison: `value` against `reference`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Why the check could not be computed.
    pub message: Option<String>,
}

impl CheckRecord {
    fn compare(name: &str, value: f64, reference: f64, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            reference,
            deviation,
            tolerance,
            pass: deviation <= tolerance,
            message: None,
        }
    }

    fn failed(name: &str, tolerance: f64, message: String) -> Self {
        Self {
            name: name.to_string(),
            value: f64::NAN,
            reference: f64::NAN,
            deviation: f64::NAN,
            tolerance,
            pass: false,
            message: Some(message),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub id: String,
    pub level: usize,
    /// The identity report, or why the case could not run.
    pub report: Result<EnergyReport, String>,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

fn probe_points(g: Geometry, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..PROBE_COUNT)
        .map(|_| match g {
            Geometry::HalfSpace(n) => {
                let mut p = vec![rng.random_range(0.2..1.5)];
                p.extend((0..n).map(|_| rng.random_range(-1.5..1.5)));
                p
            }
            _ => {
                let dim = g.sphere_ambient().expect("bounded geometry");
                let dir: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
                let r = rng.random_range(0.0..0.8);
                dir.iter().map(|x| r * x / norm).collect()
            }
        })
        .collect()
}

fn monogenic_check(p: &EnergyProblem, seed: u64) -> CheckRecord {
    let name = Check::Monogenic.name();
    let run = || -> dirichlet_core::Result<f64> {
        let field = monogenic_extension_field(p.geometry, &p.spec, p.catalog.as_deref())?;
        let mut worst = 0.0f64;
        for q in probe_points(p.geometry.scalar_geometry(), seed) {
            worst = worst.max(field.dirac_residual(&q, PROBE_STEP)?);
        }
        Ok(worst)
    };
    match run() {
        Ok(r) => CheckRecord::compare(name, r, 0.0, r, PROBE_THRESHOLD),
        Err(e) => CheckRecord::failed(name, PROBE_THRESHOLD, e.to_string()),
    }
}

fn stokes_check(p: &EnergyProblem, settings: &Settings) -> CheckRecord {
    let name = Check::Stokes.name();
    let tol = if p.geometry.is_bounded() { 1e-4 } else { 1e-2 };
    let cat = p.catalog.as_deref();
    let run = || -> dirichlet_core::Result<(f64, f64)> {
        let volume = volume_dbar_energy(p.geometry, &p.spec, cat, settings)?;
        let boundary = ahlfors_boundary_energy(p.geometry, &p.spec, cat, settings)?.value;
        Ok((volume, boundary))
    };
    match run() {
        Ok((v, b)) => CheckRecord::compare(name, v, b, relative_deviation(v, b), tol),
        Err(e) => CheckRecord::failed(name, tol, e.to_string()),
    }
}

fn equivalence_check(p: &EnergyProblem) -> CheckRecord {
    let name = Check::Equivalence.name();
    let tol = 1e-12;
    let n = p.geometry.sphere_ambient().expect("ball geometry") - 1;
    match ball_equivalence_check(n, &p.spec) {
        Ok(r) => CheckRecord::compare(name, r.lhs, r.rhs, r.difference.abs() / r.lhs.abs().max(1.0), tol),
        Err(e) => CheckRecord::failed(name, tol, e.to_string()),
    }
}

/// `λ = 0` against the gradient energy, `λ = ½` and `λ = 1` against the
/// spectral route. Absolute differences.
fn g_lambda_checks(p: &EnergyProblem, report: Option<&EnergyReport>, settings: &Settings) -> Vec<CheckRecord> {
    let tol = 1e-3;
    let direct = |l: f64| g_lambda_norm(&p.spec, l, GLambdaRoute::Direct, settings).map(|e| e.value);
    let spectral = |l: f64| g_lambda_norm(&p.spec, l, GLambdaRoute::Spectral, settings).map(|e| e.value);
    let gradient = || match report.and_then(|r| r.get(Form::Gradient)) {
        Some(v) => Ok(v.value),
        None => gradient_energy(p.geometry, &p.spec, settings).map(|e| e.value),
    };
    let cases: [(&str, f64, bool); 3] = [("gLambda0", 0.0, true), ("gLambdaHalf", 0.5, false), ("gLambda1", 1.0, false)];
    cases
        .par_iter()
        .map(|&(name, l, against_gradient)| {
            let r = direct(l).and_then(|d| Ok((d, if against_gradient { gradient()? } else { spectral(l)? })));
            match r {
                Ok((d, s)) => CheckRecord::compare(name, d, s, (d - s).abs(), tol),
                Err(e) => CheckRecord::failed(name, tol, e.to_string()),
            }
        })
        .collect()
}

fn conformal_check(p: &EnergyProblem, settings: &Settings) -> CheckRecord {
    let name = Check::Conformal.name();
    let tol = 1e-3;
    match conformal_transport_check(&p.spec, settings) {
        Ok(r) => CheckRecord::compare(name, r.disk.value, r.line.value, r.relative_difference, tol),
        Err(e) => CheckRecord::failed(name, tol, e.to_string()),
    }
}

/// Runs one case. Failures are recorded in the result, never raised.
pub fn run_case(case: &VerifyCase, seed: u64) -> CaseReport {
    let p = &case.problem;
    let s = &case.settings;
    let report = verify_identities(p, &case.forms, case.tolerance, s).map_err(|e| e.to_string());
    let mut checks: Vec<CheckRecord> = case
        .checks
        .par_iter()
        .map(|c| match c {
            Check::Monogenic => vec![monogenic_check(p, seed)],
            Check::Stokes => vec![stokes_check(p, s)],
            Check::Equivalence => vec![equivalence_check(p)],
            Check::GLambda => g_lambda_checks(p, report.as_ref().ok(), s),
            Check::Conformal => vec![conformal_check(p, s)],
        })
        .flatten()
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let pass = matches!(&report, Ok(r) if r.pass) && checks.iter().all(|c| c.pass);
    CaseReport {
        id: case.id.clone(),
        level: s.level,
        report,
        checks,
        pass,
    }
}

fn worker_count(cfg: &SuiteConfig) -> Result<Option<usize>, ConfigError> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(ConfigError {
                line: None,
                message: format!("{WORKERS_ENV} must be a positive integer, got `{v}`"),
            }),
        },
        Err(_) => Ok(cfg.workers),
    }
}

/// Runs every case, up to the configured number concurrently. Reports come
/// back in config order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CaseReport>, ConfigError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = worker_count(cfg)? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| ConfigError {
        line: None,
        message: format!("cannot start workers: {e}"),
    })?;
    Ok(pool.install(|| cfg.cases.par_iter().map(|c| run_case(c, cfg.seed)).collect()))
}

/// One form at one resolution level: `(value, error)` or why it failed.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub form: Form,
    pub level: usize,
    pub result: Result<(f64, f64), String>,
}

/// Values of each form at each level, for convergence tables.
pub fn convergence(case: &VerifyCase, levels: &[usize]) -> Vec<ConvergenceRow> {
    let mut jobs = Vec::new();
    for &form in &case.forms {
        for &level in levels {
            jobs.push((form, level));
        }
    }
    jobs.par_iter()
        .map(|&(form, level)| {
            let settings = Settings {
                level,
                schedule: case.settings.schedule.clone(),
            };
            let result = case
                .problem
                .compute(form, &settings)
                .map(|e| (e.value, e.error))
                .map_err(|e| e.to_string());
            ConvergenceRow { form, level, result }
        })
        .collect()
}
