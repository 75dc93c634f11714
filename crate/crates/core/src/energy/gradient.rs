//! Gradient form `∫ |∇u|²` by volume quadrature of analytic derivatives.

use crate::error::{Error, Result};
use crate::extension::{harmonic_gradient_ball, subordinated, BoundarySpec, GaussianFamily};
use crate::quadrature::rules::half_space_rule;
use crate::quadrature::{gl_interval, integrate, sphere_rule, Estimate, SphereKind};

use super::{band_limit, Geometry, Settings};

/// `∫_Ω |∇u|²` for the harmonic extension `u` of `f`.
///
/// Balls use Gauss–Legendre in the radius times a sphere rule, both exact
/// for the polynomial integrand of band-limited data; half-spaces use the
/// compactified polar rule with `∇u` from the subordinated representation.
/// The error is the change against a coarser rule.
pub fn gradient_energy(g: Geometry, spec: &BoundarySpec, settings: &Settings) -> Result<Estimate> {
    g.check_admissible(spec)?;
    match g.scalar_geometry() {
        Geometry::Disk | Geometry::Ball(_) => {
            let n = g.sphere_ambient().expect("bounded geometry");
            let k = band_limit(spec);
            let run = |extra: usize| ball_volume(n, k + 2 + extra, |p| {
                harmonic_gradient_ball(spec, p).map(|d| d.iter().map(|x| x * x).sum())
            });
            let value = run(settings.level + 1)?;
            let coarse = run(settings.level)?;
            Ok(Estimate {
                value,
                error: (value - coarse).abs(),
            })
        }
        _ => match spec {
            BoundarySpec::GaussianFamily(f) => halfspace_volume(f, settings.level, |v, _| v),
            other => Err(Error::Inadmissible(format!(
                "the half-space gradient route needs Gaussian-family data, got {}",
                other.kind_name()
            ))),
        },
    }
}

/// `∫_{B_n} h(x) dx` by `m`-point Gauss–Legendre radii times a sphere rule of
/// level `m`.
pub(crate) fn ball_volume(n: usize, m: usize, h: impl Fn(&[f64]) -> Result<f64> + Sync) -> Result<f64> {
    let sphere = sphere_rule::<f64>(SphereKind::for_ambient(n)?, m)?;
    let radial = gl_interval(0.0, 1.0, m);
    let mut total = Vec::with_capacity(radial.len());
    for &(r, wr) in &radial {
        let shell: f64 = integrate(&sphere, |xi: &[f64]| {
            let p: Vec<f64> = xi.iter().map(|x| r * x).collect();
            h(&p).unwrap_or(f64::NAN)
        })?;
        total.push(wr * r.powi(n as i32 - 1) * shell);
    }
    Ok(crate::quadrature::pairwise_sum(&total))
}

/// Node counts of the half-space volume rule at a level.
pub(crate) fn halfspace_rule_params(f: &GaussianFamily, level: usize) -> (f64, usize, usize) {
    let w = f.max_width().max(1e-3);
    let spread = f.reach() - 4.0 * f.min_width().min(w);
    let rho0 = w + spread.max(0.0);
    let points = 8 + 2 * level;
    let dirs = 4 + level + (4.0 * spread / f.min_width().max(1e-3)).ceil() as usize;
    (rho0, points, dirs)
}

/// `∫_{R^{n+1}_+} combine(|∇u|², y)` over the compactified polar rule.
pub(crate) fn halfspace_volume(
    f: &GaussianFamily,
    level: usize,
    combine: impl Fn(f64, f64) -> f64 + Sync,
) -> Result<Estimate> {
    let center = f.centroid();
    let run = |lvl: usize| -> Result<f64> {
        let (rho0, points, dirs) = halfspace_rule_params(f, lvl);
        let rule = half_space_rule(&center, rho0, points, dirs)?;
        integrate(&rule, |p: &[f64]| {
            let n = p.len() - 1;
            match subordinated(f, &p[..n], p[n]) {
                Ok(v) => combine(v.grad_sqr(), p[n]),
                Err(_) => f64::NAN,
            }
        })
    };
    let value = run(level + 1)?;
    let coarse = run(level)?;
    Ok(Estimate {
        value,
        error: (value - coarse).abs(),
    })
}
