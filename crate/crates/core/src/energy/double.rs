//! Singular double-integral form: `(1/ω_{n−1}) ∬ |f(ξ)−f(η)|²/|ξ−η|^n` on
//! `S^{n−1}` and `(1/ω_n) ∬ |f(x)−f(t)|²/|x−t|^{n+1}` on `R^n`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extension::{BoundarySpec, GaussianFamily, SampledGrid};
use crate::quadrature::gauss::normalize_breaks;
use crate::quadrature::rules::direction_rule;
use crate::quadrature::{
    double_sphere_singular, double_sphere_singular_zonal, extrapolate_exclusion, gl_composite, gl_interval,
    pairwise_sum, Estimate, SingularSchedule, SphereKind,
};
use crate::special_fn::sphere_area;

use super::{band_limit, Geometry, Settings};

/// Double-integral form of the energy of `f` on a geometry's boundary.
pub fn double_integral_energy(g: Geometry, spec: &BoundarySpec, settings: &Settings) -> Result<Estimate> {
    g.check_admissible(spec)?;
    let schedule = &settings.schedule;
    match g.scalar_geometry() {
        Geometry::Disk => {
            let c = match spec {
                BoundarySpec::CircleFourier(c) => c.clone(),
                BoundarySpec::SampledGrid(SampledGrid::Circle { values }) => SampledGrid::circle_coefficients(values)?,
                _ => unreachable!("admissibility checked"),
            };
            let level = 16 + 8 * c.max_degree() + 8 * settings.level;
            let est = double_sphere_singular(SphereKind::Circle, level, schedule, |a, b| {
                let d = c.eval(a[1].atan2(a[0])) - c.eval(b[1].atan2(b[0]));
                d * d / ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2))
            })?;
            Ok(est.scaled(1.0 / sphere_area(1)?))
        }
        Geometry::Ball(n) => match spec {
            BoundarySpec::ZonalGegenbauer(z) => {
                let level = 8 + 2 * band_limit(spec) + 4 * settings.level;
                let est = double_sphere_singular_zonal(n, level, schedule, |t1, t2, chord| {
                    let d = z.eval_zonal(t1).unwrap_or(f64::NAN) - z.eval_zonal(t2).unwrap_or(f64::NAN);
                    d * d / chord.powi(n as i32)
                })?;
                Ok(est.scaled(1.0 / sphere_area(n - 1)?))
            }
            other => Err(Error::Inadmissible(format!(
                "the sphere double integral needs pointwise data, got {}",
                other.kind_name()
            ))),
        },
        _ => match spec {
            BoundarySpec::GaussianFamily(f) => halfspace_difference_energy(f, settings.level, schedule),
            other => Err(Error::Inadmissible(format!(
                "the half-space double integral needs Gaussian-family data, got {}",
                other.kind_name()
            ))),
        },
    }
}

/// One-dimensional `∫ e^{−π(t−c₁)²/w₁²} e^{−π(t+h−c₂)²/w₂²} e^{2πi b t} dt` over
/// the overlap of the two effective supports.
fn overlap_1d(c1: f64, w1: f64, c2: f64, w2: f64, h: f64, b: f64, points: usize) -> Complex64 {
    let (r1, r2) = (4.0 * w1, 4.0 * w2);
    let lo = (c1 - r1).max(c2 - h - r2);
    let hi = (c1 + r1).min(c2 - h + r2);
    if !(hi > lo) {
        return Complex64::new(0.0, 0.0);
    }
    let panel = 0.5 * w1.min(w2);
    let count = ((hi - lo) / panel).ceil().max(1.0) as usize;
    let breaks: Vec<f64> = (0..=count).map(|j| lo + (hi - lo) * j as f64 / count as f64).collect();
    let pi = std::f64::consts::PI;
    let (mut re, mut im) = (Vec::new(), Vec::new());
    for (t, w) in gl_composite(&breaks, points) {
        let env = (-pi * ((t - c1) / w1).powi(2) - pi * ((t + h - c2) / w2).powi(2)).exp();
        let (s, c) = (2.0 * pi * b * t).sin_cos();
        re.push(w * env * c);
        im.push(w * env * s);
    }
    Complex64::new(pairwise_sum(&re), pairwise_sum(&im))
}

/// Autocorrelation `C(h) = ∫ f(t) f(t+h) dt` of a Gaussian family, by
/// tensor quadrature of each separable term pair.
pub(crate) fn autocorrelation(f: &GaussianFamily, h: &[f64], points: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let mut terms = Vec::with_capacity(2 * f.terms.len() * f.terms.len());
    for ti in &f.terms {
        for tj in &f.terms {
            for sigma in [1.0, -1.0] {
                let mut prod = Complex64::new(1.0, 0.0);
                for k in 0..f.n {
                    let b = ti.frequency[k] + sigma * tj.frequency[k];
                    prod *= overlap_1d(ti.center[k], ti.width, tj.center[k], tj.width, h[k], b, points);
                }
                let shift: f64 = (0..f.n).map(|k| tj.frequency[k] * h[k]).sum();
                let phase = Complex64::from_polar(1.0, sigma * 2.0 * pi * shift);
                terms.push(0.5 * ti.amplitude * tj.amplitude * (prod * phase).re);
            }
        }
    }
    pairwise_sum(&terms)
}

/// `(1/ω_n) ∫_{|h|>ε} D(h) |h|^{−n−1} dh` with `D(h) = ∫ |f(t+h) − f(t)|² dt
/// = 2C(0) − 2C(h)`, extrapolated in `ε`.
///
/// The radial integral runs in panels of half the narrowest width up to a
/// length `L` beyond which `C` vanishes, then over `ρ = L/u`.
pub fn halfspace_difference_energy(f: &GaussianFamily, level: usize, schedule: &SingularSchedule) -> Result<Estimate> {
    let n = f.n;
    if f.terms.is_empty() {
        return Ok(Estimate::exact(0.0));
    }
    let points = 10 + level;
    let norm = autocorrelation(f, &vec![0.0; n], points);
    let w = f.min_width();
    let spread = f
        .terms
        .iter()
        .flat_map(|a| f.terms.iter().map(move |b| crate::extension::boundary::dist(&a.center, &b.center)))
        .fold(0.0, f64::max);
    let reach = spread + 8.0 * f.max_width();
    let dir_level = 8 + 2 * level + (7.0 * spread / w).ceil() as usize;
    let dirs = direction_rule(n, dir_level)?;
    let tail = gl_interval(0.0, 1.0, points);
    let omega = sphere_area(n)?;
    let truncated = |eps: f64| -> Result<f64> {
        let count = ((reach - eps) / (0.5 * w)).ceil().max(1.0) as usize;
        let breaks: Vec<f64> = (0..=count).map(|j| eps + (reach - eps) * j as f64 / count as f64).collect();
        let mut radial = gl_composite(&normalize_breaks(breaks, eps, reach), points);
        radial.extend(tail.iter().map(|&(u, wu)| (reach / u, wu * reach / (u * u))));
        let mut terms = Vec::with_capacity(radial.len() * dirs.len());
        for &(rho, wr) in &radial {
            let scale = wr / (rho * rho);
            for (dir, wd) in &dirs {
                let h: Vec<f64> = dir.iter().map(|d| rho * d).collect();
                let d = 2.0 * (norm - autocorrelation(f, &h, points));
                terms.push(scale * wd * d);
            }
        }
        Ok(pairwise_sum(&terms) / omega)
    };
    extrapolate_exclusion(schedule, truncated)
}
