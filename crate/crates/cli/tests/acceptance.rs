//! Acceptance run: every criterion at its stated tolerance, one PASS/FAIL
//! line each. Runs without the test harness so the lines always print.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use dirichlet_cli::config::VerifyCase;
use dirichlet_cli::runner::{run_case, CaseReport};
use dirichlet_core::clifford::Multivector;
use dirichlet_core::energy::{
    ahlfors_boundary_energy, g_lambda_norm, relative_deviation, volume_dbar_energy, EnergyProblem, Form,
    GLambdaRoute, Geometry, Settings,
};
use dirichlet_core::extension::{
    catalog_boundary, dirac_residual, halfspace_cauchy, BoundarySpec, GaussianFamily, GaussianTerm,
    ZonalGegenbauer,
};
use dirichlet_core::quadrature::gauss_legendre;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Ledger {
    failed: Vec<String>,
}

impl Ledger {
    fn record(&mut self, name: &str, ok: bool, detail: String) {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed.push(name.to_string());
        }
    }
}

/// Relative error of `got` against `want`, with a readable summary.
fn rel(got: f64, want: f64, tol: f64) -> (bool, String) {
    let e = (got - want).abs() / want.abs();
    (e <= tol, format!("{got:.15} vs {want:.15} (rel {e:.2e}, tol {tol:.0e})"))
}

fn timed_corpus(id: &str) -> (CaseReport, f64) {
    let case = VerifyCase::from_corpus(id).unwrap();
    let start = Instant::now();
    let r = run_case(&case, 0);
    (r, start.elapsed().as_secs_f64())
}

fn value(r: &CaseReport, form: Form) -> f64 {
    r.report.as_ref().ok().and_then(|e| e.get(form)).map_or(f64::NAN, |v| v.value)
}

fn check(r: &CaseReport, name: &str) -> Option<f64> {
    r.checks.iter().find(|c| c.name == name).map(|c| c.deviation)
}

/// Forms against an exact value at their own tolerances, plus a time budget.
fn identity(ledger: &mut Ledger, label: &str, id: &str, exact: f64, tols: &[(Form, f64)], budget: f64) {
    let (r, secs) = timed_corpus(id);
    let mut ok = true;
    let mut parts = Vec::new();
    for &(form, tol) in tols {
        let (good, text) = rel(value(&r, form), exact, tol);
        ok &= good;
        parts.push(format!("{} {text}", form.name()));
    }
    ok &= secs <= budget;
    parts.push(format!("{secs:.2} s of {budget} s"));
    ledger.record(label, ok, parts.join("; "));
}

fn stokes(ledger: &mut Ledger) {
    let s = Settings::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for id in ["ball3_k1", "ball3_k2"] {
        let spec = catalog_boundary(id).unwrap().unwrap();
        let v = volume_dbar_energy(Geometry::Ball(3), &spec, Some(id), &s).unwrap();
        let a = ahlfors_boundary_energy(Geometry::Ball(3), &spec, Some(id), &s).unwrap().value;
        let d = relative_deviation(v, a);
        ok &= d <= 1e-4;
        parts.push(format!("{id} {v:.12} vs {a:.12} (rel {d:.1e})"));
    }
    let g = BoundarySpec::GaussianFamily(GaussianFamily::standard(1).unwrap());
    let v = volume_dbar_energy(Geometry::HalfSpace(1), &g, None, &s).unwrap();
    let a = ahlfors_boundary_energy(Geometry::HalfSpace(1), &g, None, &s).unwrap().value;
    let d = relative_deviation(v, a);
    ok &= d <= 1e-2;
    parts.push(format!("half-line Gaussian {v:.9} vs {a:.9} (rel {d:.1e})"));
    ledger.record("6 Stokes identity", ok, parts.join("; "));
}

fn g_lambda(ledger: &mut Ledger, half1: &CaseReport) {
    let s = Settings::default();
    let f = BoundarySpec::GaussianFamily(GaussianFamily::standard(1).unwrap());
    let direct = |l| g_lambda_norm(&f, l, GLambdaRoute::Direct, &s).unwrap().value;
    let one = direct(1.0);
    let zero = direct(0.0);
    let grad = value(half1, Form::Gradient);
    let half = direct(0.5);
    let half_spectral = g_lambda_norm(&f, 0.5, GLambdaRoute::Spectral, &s).unwrap().value;
    let target = 2f64.sqrt() / 4.0;
    let ok = (one - target).abs() <= 1e-3 && (zero - grad).abs() <= 1e-3 && (half - half_spectral).abs() <= 1e-3;
    ledger.record(
        "7 g-lambda norms",
        ok,
        format!(
            "lambda=1 {one:.10} vs {target:.10}; lambda=0 {zero:.10} vs gradient {grad:.10}; lambda=1/2 direct {half:.10} vs spectral {half_spectral:.10}"
        ),
    );
}

fn pairwise(ledger: &mut Ledger) {
    let (r, secs) = timed_corpus("half2_gauss");
    let vals: Vec<f64> = [Form::Fourier, Form::Gradient, Form::Double].iter().map(|&f| value(&r, f)).collect();
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in i + 1..3 {
            worst = worst.max(relative_deviation(vals[i], vals[j]));
        }
    }
    ledger.record(
        "8 half-space n=2 identity",
        worst <= 1e-2,
        format!(
            "fourier {:.10}, gradient {:.10}, double {:.10}; max rel {worst:.1e}; {secs:.2} s",
            vals[0], vals[1], vals[2]
        ),
    );
}

fn conformal(ledger: &mut Ledger) {
    let (r, _) = timed_corpus("moebius_cos");
    let c = r.checks.iter().find(|c| c.name == "conformal").unwrap();
    let ok = c.deviation <= 1e-3 && (c.value - PI).abs() <= 1e-3 * PI;
    ledger.record(
        "9 conformal transport",
        ok,
        format!("disk {:.12} vs line {:.12} (rel {:.1e})", c.value, c.reference, c.deviation),
    );
}

fn algebra(ledger: &mut Ledger) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut relations = true;
    for dim in 1..=4 {
        let one = Multivector::scalar(dim, 1.0).unwrap();
        for j in 1..=dim {
            let ej = Multivector::generator(dim, j).unwrap();
            relations &= ej * ej == -one;
            for k in j + 1..=dim {
                let ek = Multivector::generator(dim, k).unwrap();
                relations &= ej * ek == -(ek * ej);
            }
        }
        for _ in 0..200 {
            let mut draw = || {
                let c: Vec<f64> = (0..1 << dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                Multivector::from_coeffs(dim, &c).unwrap()
            };
            let (a, b, c) = (draw(), draw(), draw());
            worst = worst.max(((a * b) * c).max_abs_diff(&(a * (b * c))));
        }
    }
    ledger.record(
        "10a Clifford axioms",
        relations && worst <= 1e-14,
        format!("generator relations exact: {relations}; associativity defect {worst:.1e}"),
    );
}

fn quadrature(ledger: &mut Ledger) {
    let mut worst = 0.0f64;
    for m in 1..=40 {
        let rule = gauss_legendre::<f64>(m);
        for p in 0..2 * m {
            let got: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(p as i32)).sum();
            let exact = if p % 2 == 0 { 2.0 / (p as f64 + 1.0) } else { 0.0 };
            worst = worst.max((got - exact).abs());
        }
    }
    ledger.record(
        "10b quadrature exactness",
        worst <= 1e-13,
        format!("Gauss-Legendre m=1..40 on degrees < 2m: max error {worst:.1e}"),
    );
}

fn cr_order(ledger: &mut Ledger) {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 1..=3 {
        let f = halfspace_cauchy(0.5, n).unwrap();
        let p: Vec<f64> = [0.6, 0.2, -0.3, 0.1][..=n].to_vec();
        let r1 = dirac_residual(&f, &p, 0.02).unwrap();
        let r2 = dirac_residual(&f, &p, 0.01).unwrap();
        let order = (r1 / r2).log2();
        ok &= (1.8..=2.2).contains(&order);
        parts.push(format!("n={n} order {order:.3}"));
    }
    ledger.record("10c Cauchy-Riemann residual order", ok, parts.join("; "));
}

fn invariance(ledger: &mut Ledger) {
    let s = Settings::default();
    let compute = |g, spec: &BoundarySpec, form| EnergyProblem::new(g, spec.clone(), "f").compute(form, &s).unwrap().value;
    let mut scale = 0.0f64;
    let cases = [
        (Geometry::Disk, VerifyCase::from_corpus("disk_douglas").unwrap().problem.spec),
        (Geometry::Ball(3), catalog_boundary("ball3_k2").unwrap().unwrap()),
        (Geometry::HalfSpace(1), BoundarySpec::GaussianFamily(GaussianFamily::standard(1).unwrap())),
    ];
    for (g, spec) in &cases {
        for form in [Form::Gradient, Form::Fourier, Form::Double] {
            let (a, b) = (compute(*g, spec, form), compute(*g, &spec.scaled(-1.7), form));
            scale = scale.max((b - 1.7 * 1.7 * a).abs() / b.abs());
        }
    }
    let coeffs = vec![0.3, -1.0, 0.7, 0.2];
    let zonal = |axis: Vec<f64>| BoundarySpec::ZonalGegenbauer(ZonalGegenbauer::new(3, axis, coeffs.clone()).unwrap());
    let mut rotation = 0.0f64;
    for form in [Form::Gradient, Form::Fourier, Form::Double, Form::AhlforsSeries] {
        let a = compute(Geometry::Ball(3), &zonal(vec![1.0, 0.0, 0.0]), form);
        let b = compute(Geometry::Ball(3), &zonal(vec![0.48, -0.6, 0.64]), form);
        rotation = rotation.max(relative_deviation(a, b));
    }
    let family = GaussianFamily::new(
        2,
        vec![
            GaussianTerm::isotropic(1.0, vec![0.2, -0.1], 0.9),
            GaussianTerm::isotropic(-0.5, vec![-0.5, 0.4], 0.6),
        ],
    )
    .unwrap();
    let moved = family.translated(&[1.3, -0.7]);
    let mut translation = 0.0f64;
    for form in [Form::Gradient, Form::Fourier, Form::Double] {
        let a = compute(Geometry::HalfSpace(2), &BoundarySpec::GaussianFamily(family.clone()), form);
        let b = compute(Geometry::HalfSpace(2), &BoundarySpec::GaussianFamily(moved.clone()), form);
        translation = translation.max(relative_deviation(a, b));
    }
    ledger.record(
        "10d scaling, rotation and translation invariance",
        scale <= 1e-10 && rotation <= 1e-10 && translation <= 1e-6,
        format!("scaling {scale:.1e}, rotation {rotation:.1e}, translation {translation:.1e}"),
    );
}

fn determinism(ledger: &mut Ledger) {
    let dir = std::env::temp_dir().join(format!("dirichlet-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("suite.toml");
    let mut text = String::from("seed = 5\n");
    for id in ["disk_douglas", "ball3_zonal_k2", "ball4_zonal_k2", "half1_gauss", "half2_gauss", "moebius_cos"] {
        text.push_str(&format!("\n[[case]]\nid = \"{id}\"\nfunction = \"{id}\"\n"));
    }
    std::fs::write(&cfg, text).unwrap();
    let run = |format: &str| {
        Command::new(env!("CARGO_BIN_EXE_dirichlet"))
            .args(["verify", "--config", cfg.to_str().unwrap(), "--format", format])
            .output()
            .unwrap()
    };
    let (a, b) = (run("json"), run("json"));
    let (c, d) = (run("csv"), run("csv"));
    let ok = a.status.code() == Some(0) && a.stdout == b.stdout && c.stdout == d.stdout && !a.stdout.is_empty();
    ledger.record(
        "10e byte-identical reports",
        ok,
        format!("exit {:?}; json {} bytes, csv {} bytes, repeated runs identical: {}", a.status.code(), a.stdout.len(), c.stdout.len(), a.stdout == b.stdout && c.stdout == d.stdout),
    );
}

fn main() {
    let mut ledger = Ledger { failed: Vec::new() };
    let start = Instant::now();

    identity(
        &mut ledger,
        "1 disk four-way identity",
        "disk_douglas",
        31.0 * PI,
        &[(Form::Gradient, 1e-8), (Form::Ahlfors, 1e-8), (Form::Fourier, 1e-8), (Form::Double, 1e-6)],
        5.0,
    );
    identity(
        &mut ledger,
        "2 half-line chain",
        "half1_gauss",
        1.0,
        &[(Form::Fourier, 1e-10), (Form::Gradient, 1e-4), (Form::Ahlfors, 1e-2), (Form::Double, 1e-2)],
        60.0,
    );
    identity(
        &mut ledger,
        "3 ball B3 identity",
        "ball3_zonal_k2",
        32.0 * PI / 5.0,
        &[(Form::Fourier, 1e-12), (Form::Gradient, 1e-8), (Form::Double, 2e-2)],
        120.0,
    );
    identity(
        &mut ledger,
        "4 quaternionic ball identity",
        "ball4_zonal_k2",
        4.0 * PI * PI,
        &[(Form::Fourier, 1e-12), (Form::Gradient, 1e-3), (Form::Double, 5e-2)],
        240.0,
    );

    let (ball3, _) = timed_corpus("ball3_zonal_k2");
    let ratio = ball3.report.as_ref().unwrap().ahlfors_series_ratio.unwrap_or(f64::NAN);
    let closure = check(&ball3, "equivalence").unwrap_or(f64::NAN);
    ledger.record(
        "5 Ahlfors series on B3",
        (ratio - 0.75).abs() <= 1e-12 && closure <= 1e-12,
        format!("ratio {ratio:.16}; equivalence defect {closure:.1e}"),
    );

    stokes(&mut ledger);
    let (half1, _) = timed_corpus("half1_gauss");
    g_lambda(&mut ledger, &half1);
    pairwise(&mut ledger);
    conformal(&mut ledger);
    algebra(&mut ledger);
    quadrature(&mut ledger);
    cr_order(&mut ledger);
    invariance(&mut ledger);
    determinism(&mut ledger);

    let total = start.elapsed().as_secs_f64();
    ledger.record("total runtime", total <= 600.0, format!("{total:.1} s of 600 s"));
    if !ledger.failed.is_empty() {
        println!("failed: {}", ledger.failed.join(", "));
        std::process::exit(1);
    }
}
