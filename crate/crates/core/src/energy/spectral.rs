//! Coefficient and spectral forms: the Fourier form of the energy, the
//! `h²` norm and `H^{1/2}` seminorm, the ball Ahlfors series and its
//! equivalence relation.

use crate::error::{Error, Result};
use crate::extension::{laplace_projection_norms, spectral_nodes, BoundarySpec, GaussianFamily, ProjectionNorms};
use crate::quadrature::{pairwise_sum, Estimate};

use super::{Geometry, Settings};

/// `∫ |t|^p |f̂(t)|² dt` over `R^n`, with a coarser rerun as error.
pub(crate) fn spectral_moment(f: &GaussianFamily, p: f64, level: usize) -> Estimate {
    let run = |lvl: usize| {
        let terms: Vec<f64> = spectral_nodes(f, 0.0, lvl)
            .iter()
            .map(|(t, w)| {
                let r = t.iter().map(|x| x * x).sum::<f64>().sqrt();
                w * r.powf(p) * f.fourier(t).norm_sqr()
            })
            .collect();
        pairwise_sum(&terms)
    };
    let value = run(level + 2);
    Estimate {
        value,
        error: (value - run(level)).abs(),
    }
}

fn gaussian(g: Geometry, spec: &BoundarySpec) -> Result<&GaussianFamily> {
    match spec {
        BoundarySpec::GaussianFamily(f) => Ok(f),
        other => Err(Error::Inadmissible(format!(
            "the spectral route on {g} needs Gaussian-family data, got {}",
            other.kind_name()
        ))),
    }
}

fn norms_weighted(spec: &BoundarySpec, weight: impl Fn(usize) -> f64) -> Result<Estimate> {
    let norms = laplace_projection_norms(spec)?;
    let top = norms.entries.iter().map(|e| weight(e.0)).fold(0.0, f64::max);
    Ok(Estimate {
        value: norms.weighted(weight),
        error: top * norms.error,
    })
}

/// Fourier form of the energy: `π Σ k(a_k² + b_k²)` on the disk,
/// `Σ k ‖Y_k‖²` on balls and `2π ∫ |t| |f̂|²` on half-spaces.
pub fn fourier_form_energy(g: Geometry, spec: &BoundarySpec, settings: &Settings) -> Result<Estimate> {
    g.check_admissible(spec)?;
    if g.is_bounded() {
        return norms_weighted(spec, |k| k as f64);
    }
    Ok(spectral_moment(gaussian(g, spec)?, 1.0, settings.level).scaled(2.0 * std::f64::consts::PI))
}

/// Squared `h²` (Hardy) norm: `‖f‖²_{L²}` of the boundary trace.
pub fn h2_norm(g: Geometry, spec: &BoundarySpec) -> Result<Estimate> {
    g.check_admissible(spec)?;
    if g.is_bounded() {
        let norms = laplace_projection_norms(spec)?;
        return Ok(Estimate {
            value: norms.total(),
            error: norms.error,
        });
    }
    Ok(Estimate::exact(spec.l2_norm_sqr()?))
}

/// Squared `H^{1/2}` seminorm: `Σ k(a_k² + b_k²)` on the disk, `Σ k‖Y_k‖²`
/// on balls, `∫ |t| |f̂|²` on half-spaces.
pub fn h_half_seminorm(g: Geometry, spec: &BoundarySpec, settings: &Settings) -> Result<Estimate> {
    g.check_admissible(spec)?;
    match g.scalar_geometry() {
        Geometry::Disk => norms_weighted(spec, |k| k as f64 / std::f64::consts::PI),
        Geometry::Ball(_) => norms_weighted(spec, |k| k as f64),
        _ => Ok(spectral_moment(gaussian(g, spec)?, 1.0, settings.level)),
    }
}

/// `½ Σ_{k≥1} (k + n/2) ‖Y_k‖²` for the ball `B_{n+1}`.
pub fn ball_ahlfors_series(n: usize, norms: &ProjectionNorms) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "the ball Ahlfors series is stated for boundary spheres S^n with n > 1, got n = {n}"
        )));
    }
    Ok(0.5 * norms.weighted(|k| if k == 0 { 0.0 } else { k as f64 + n as f64 / 2.0 }))
}

/// Both sides of the equivalence between the ball Ahlfors series and the
/// Dirichlet energy plus a multiple of the `L²` norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub difference: f64,
}

/// `LHS = ½ Σ (k + n/2)‖Y_k‖²`, `RHS = ½ Σ k‖Y_k‖² + (n/4)(Σ_{k≥0} ‖Y_k‖² − ‖Y₀‖²)`
/// on `S^n`; the constant term is subtracted as the squared norm of the
/// degree-zero projection.
pub fn ball_equivalence_check(n: usize, spec: &BoundarySpec) -> Result<EquivalenceRecord> {
    let norms = laplace_projection_norms(spec)?;
    if norms.n != n + 1 {
        return Err(Error::Inadmissible(format!(
            "data live on S^{}, not S^{n}",
            norms.n - 1
        )));
    }
    let lhs = ball_ahlfors_series(n, &norms)?;
    let rhs = 0.5 * norms.weighted(|k| k as f64) + n as f64 / 4.0 * norms.weighted(|k| if k == 0 { 0.0 } else { 1.0 });
    Ok(EquivalenceRecord {
        lhs,
        rhs,
        difference: lhs - rhs,
    })
}
