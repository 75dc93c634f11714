//! Ahlfors boundary form `½ Sc ∮ F̄ ν D̄F dS` of a monogenic field, taken as
//! a limit toward the boundary, and the matching volume integral
//! `∫ |D̄F|²` (Stokes identity).

use crate::clifford::Hypercomplex;
use crate::error::{Error, Result};
use crate::extension::{
    catalog_monogenic, disk_holomorphic_field, halfspace_kernel_field, halfspace_subordinated_field,
    poisson_extend_ball, BoundarySpec, CatalogField, FieldDomain, GaussianFamily, ParavectorField, SampledGrid,
};
use crate::quadrature::rules::{half_space_rule, whole_space_rule};
use crate::quadrature::{integrate, sphere_rule, Estimate, SphereKind};

use super::gradient::{ball_volume, halfspace_rule_params};
use super::{neville_at_zero, Geometry, Settings};

/// Finite-difference step and threshold of the monogenicity check.
pub const PROBE_STEP: f64 = 1e-4;
pub const PROBE_THRESHOLD: f64 = 1e-6;

/// Radii `1 − 0.1·2^{−j}`, `j = 0..8`.
pub fn default_radii() -> Vec<f64> {
    (0..8).map(|j| 1.0 - 0.1 * 0.5f64.powi(j)).collect()
}

/// Heights `0.2·2^{−j}`, `j = 0..6`.
pub fn default_heights() -> Vec<f64> {
    (0..6).map(|j| 0.2 * 0.5f64.powi(j)).collect()
}

fn check_schedule(points: &[f64], lo: f64, hi: f64, what: &str) -> Result<()> {
    if points.len() < 2 || points.iter().any(|p| !(*p > lo && *p < hi)) {
        return Err(Error::Domain(format!(
            "{what} schedule needs at least two values strictly inside ({lo}, {hi})"
        )));
    }
    Ok(())
}

fn extrapolated(s: &[f64], v: &[f64]) -> Estimate {
    let (value, previous) = neville_at_zero(s, v);
    Estimate {
        value,
        error: (value - previous).abs(),
    }
}

/// Ahlfors form over spheres of the given radii inside the unit ball,
/// extrapolated to `r = 1`. The outward normal `ν = ξ` enters as a
/// paravector and `D̄F = ∂₀F`.
pub fn ahlfors_ball<V: Hypercomplex>(field: &ParavectorField<V>, radii: &[f64], level: usize) -> Result<Estimate> {
    check_schedule(radii, 0.0, 1.0, "radius")?;
    let d = field.point_dim;
    let probes: Vec<Vec<f64>> = [0.31, -0.22, 0.17, 0.05, -0.4]
        .windows(d)
        .take(3)
        .map(|w| w.to_vec())
        .collect();
    field.check_monogenic(&probes, PROBE_STEP, PROBE_THRESHOLD)?;
    let sphere = sphere_rule::<f64>(SphereKind::for_ambient(d)?, 12 + 2 * level)?;
    let mut values = Vec::with_capacity(radii.len());
    for &r in radii {
        let shell: f64 = integrate(&sphere, |xi: &[f64]| {
            let p: Vec<f64> = xi.iter().map(|x| r * x).collect();
            let f = field.eval(&p);
            let nu = f.paravector_like(xi);
            (f.conj() * nu * field.d0(&p)).scalar_part()
        })?;
        values.push(0.5 * r.powi(d as i32 - 1) * shell);
    }
    let s: Vec<f64> = radii.iter().map(|r| 1.0 - r).collect();
    Ok(extrapolated(&s, &values))
}

/// Ahlfors form over the planes `y = const` of the upper half-space,
/// extrapolated to `y = 0`. The outward normal is `−e₀`, so the integrand is
/// `−½ Sc(F̄ ∂_y F)`. `center` and `scale` place the plane rule.
pub fn ahlfors_halfspace<V: Hypercomplex>(
    field: &ParavectorField<V>,
    heights: &[f64],
    center: &[f64],
    scale: f64,
    level: usize,
) -> Result<Estimate> {
    check_schedule(heights, 0.0, f64::INFINITY, "height")?;
    let n = field.point_dim - 1;
    let probes: Vec<Vec<f64>> = [0.4, 0.25]
        .iter()
        .map(|&y| {
            let mut p = vec![y];
            p.extend(center.iter().enumerate().map(|(k, c)| c + 0.3 - 0.2 * k as f64));
            p
        })
        .collect();
    field.check_monogenic(&probes, PROBE_STEP, PROBE_THRESHOLD)?;
    let rule = whole_space_rule(center, scale, 10 + 2 * level, 8 + 2 * level)?;
    let mut values = Vec::with_capacity(heights.len());
    for &y in heights {
        let a: f64 = integrate(&rule, |x: &[f64]| {
            let mut p = Vec::with_capacity(n + 1);
            p.push(y);
            p.extend_from_slice(x);
            let f = field.eval(&p);
            (f.conj() * field.d0(&p)).scalar_part()
        })?;
        values.push(-0.5 * a);
    }
    Ok(extrapolated(heights, &values))
}

fn ball_probes(n: usize) -> Vec<Vec<f64>> {
    let base = [0.31, -0.22, 0.17, 0.05, -0.12];
    vec![base[..n].to_vec(), base[1..=n].to_vec(), base[..n].iter().map(|x| -1.5 * x).collect()]
}

fn check_scalar_part(g: Geometry, spec: &BoundarySpec, field: &CatalogField) -> Result<()> {
    let n = g.sphere_ambient().expect("bounded geometry");
    if field.point_dim() != n {
        return Err(Error::Inadmissible(format!(
            "catalog field `{}` lives in R^{}, the geometry {g} in R^{n}",
            field.id(),
            field.point_dim()
        )));
    }
    for p in ball_probes(n) {
        let u = poisson_extend_ball(spec, &p)?;
        let s = field.scalar_at(&p);
        if (u - s).abs() > 1e-10 * u.abs().max(1.0) {
            return Err(Error::Inadmissible(format!(
                "scalar part of catalog field `{}` does not extend the boundary data (|{s} − {u}| at {p:?})",
                field.id()
            )));
        }
    }
    Ok(())
}

/// Frame for plane and volume rules on a half-space: centroid and a length
/// covering the data.
pub(crate) fn halfspace_frame(f: &GaussianFamily) -> (Vec<f64>, f64) {
    let (rho0, _, _) = halfspace_rule_params(f, 0);
    (f.centroid(), rho0)
}

/// Monogenic field whose scalar part is the Poisson extension of Gaussian
/// data: the kernel route on the half-plane, the subordinated route above.
pub(crate) fn halfspace_field(f: &GaussianFamily) -> ParavectorField<crate::clifford::Multivector<f64>> {
    if f.n == 1 {
        halfspace_kernel_field(f)
    } else {
        halfspace_subordinated_field(f)
    }
}

/// The monogenic field whose boundary integral is the Ahlfors form of `f`.
pub fn monogenic_extension_field(g: Geometry, spec: &BoundarySpec, catalog: Option<&str>) -> Result<CatalogField> {
    g.check_admissible(spec)?;
    match g.scalar_geometry() {
        Geometry::Disk => match spec {
            BoundarySpec::CircleFourier(c) => Ok(CatalogField::Clifford(disk_holomorphic_field(c))),
            BoundarySpec::SampledGrid(SampledGrid::Circle { values }) => Ok(CatalogField::Clifford(
                disk_holomorphic_field(&SampledGrid::circle_coefficients(values)?),
            )),
            _ => unreachable!("admissibility checked"),
        },
        Geometry::Ball(_) => {
            let id = catalog.ok_or_else(|| Error::Inadmissible(format!("{g} needs a catalog monogenic field")))?;
            let field = catalog_monogenic(id)?;
            check_scalar_part(g, spec, &field)?;
            Ok(field)
        }
        _ => match spec {
            BoundarySpec::GaussianFamily(f) => Ok(CatalogField::Clifford(halfspace_field(f))),
            other => Err(Error::Inadmissible(format!(
                "the half-space monogenic extension needs Gaussian-family data, got {}",
                other.kind_name()
            ))),
        },
    }
}

/// Ahlfors form of the monogenic extension of `f` on a geometry. Disks use
/// the holomorphic polynomial with the same coefficients, balls a catalog
/// field whose scalar part must extend `f`, half-spaces the Cauchy-kernel
/// extension.
pub fn ahlfors_boundary_energy(
    g: Geometry,
    spec: &BoundarySpec,
    catalog: Option<&str>,
    settings: &Settings,
) -> Result<Estimate> {
    g.check_admissible(spec)?;
    match g.scalar_geometry() {
        Geometry::Disk => {
            let c = match spec {
                BoundarySpec::CircleFourier(c) => c.clone(),
                BoundarySpec::SampledGrid(SampledGrid::Circle { values }) => SampledGrid::circle_coefficients(values)?,
                _ => unreachable!("admissibility checked"),
            };
            ahlfors_ball(&disk_holomorphic_field(&c), &default_radii(), settings.level)
        }
        Geometry::Ball(_) => {
            let id = catalog.ok_or_else(|| {
                Error::Inadmissible(format!("the Ahlfors form on {g} needs a catalog monogenic field"))
            })?;
            let field = catalog_monogenic(id)?;
            check_scalar_part(g, spec, &field)?;
            match &field {
                CatalogField::Clifford(f) => ahlfors_ball(f, &default_radii(), settings.level),
                CatalogField::Quaternion(f) => ahlfors_ball(f, &default_radii(), settings.level),
            }
        }
        _ => {
            let f = match spec {
                BoundarySpec::GaussianFamily(f) => f,
                other => {
                    return Err(Error::Inadmissible(format!(
                        "the half-space Ahlfors route needs Gaussian-family data, got {}",
                        other.kind_name()
                    )))
                }
            };
            let (center, scale) = halfspace_frame(f);
            ahlfors_halfspace(&halfspace_field(f), &default_heights(), &center, scale, settings.level)
        }
    }
}

/// `∫ |D̄F|²` over the unit ball, with `D̄F` from centered differences.
pub fn volume_dbar_ball<V: Hypercomplex>(field: &ParavectorField<V>, level: usize) -> Result<f64> {
    if !matches!(field.domain, FieldDomain::Ball { .. }) {
        return Err(Error::Inadmissible(format!("field `{}` does not live on a ball", field.id)));
    }
    ball_volume(field.point_dim, 6 + 2 * level, |p| {
        let h = PROBE_STEP.min(0.5 * field.domain.margin(p));
        Ok(field.dirac_bar(p, h)?.norm_sqr())
    })
}

/// `∫ |D̄F|²` over the upper half-space, with `D̄F` from centered
/// differences and the compactified polar rule about `center`.
pub fn volume_dbar_halfspace<V: Hypercomplex>(
    field: &ParavectorField<V>,
    center: &[f64],
    scale: f64,
    level: usize,
) -> Result<f64> {
    let n = field.point_dim - 1;
    let rule = half_space_rule(center, scale, 8 + 2 * level, 4 + 2 * level)?;
    integrate(&rule, |q: &[f64]| {
        let mut p = Vec::with_capacity(n + 1);
        p.push(q[n]);
        p.extend_from_slice(&q[..n]);
        let h = PROBE_STEP.min(0.5 * p[0]);
        field.dirac_bar(&p, h).map(|v| v.norm_sqr()).unwrap_or(f64::NAN)
    })
}

/// Volume side of the Stokes identity for the monogenic extension used by
/// [`ahlfors_boundary_energy`].
pub fn volume_dbar_energy(g: Geometry, spec: &BoundarySpec, catalog: Option<&str>, settings: &Settings) -> Result<f64> {
    g.check_admissible(spec)?;
    match g.scalar_geometry() {
        Geometry::Disk => match spec {
            BoundarySpec::CircleFourier(c) => volume_dbar_ball(&disk_holomorphic_field(c), settings.level),
            _ => Err(Error::Inadmissible("disk volume route needs Fourier coefficients".into())),
        },
        Geometry::Ball(_) => {
            let id = catalog.ok_or_else(|| Error::Inadmissible(format!("the volume route on {g} needs a catalog field")))?;
            let field = catalog_monogenic(id)?;
            check_scalar_part(g, spec, &field)?;
            match &field {
                CatalogField::Clifford(f) => volume_dbar_ball(f, settings.level),
                CatalogField::Quaternion(f) => volume_dbar_ball(f, settings.level),
            }
        }
        _ => match spec {
            BoundarySpec::GaussianFamily(f) => {
                let (center, scale) = halfspace_frame(f);
                volume_dbar_halfspace(&halfspace_field(f), &center, scale, settings.level)
            }
            other => Err(Error::Inadmissible(format!(
                "the half-space volume route needs Gaussian-family data, got {}",
                other.kind_name()
            ))),
        },
    }
}
