//! Squared `L²` norms of the Littlewood–Paley type functions
//! `g^λ(f)(x) = (∫₀^∞ |∇u(x,y)|² y^λ dy)^{1/2}`, `0 ≤ λ ≤ 1`.

use crate::error::{Error, Result};
use crate::extension::{BoundarySpec, GaussianFamily};
use crate::quadrature::Estimate;
use crate::special_fn::gamma;

use super::gradient::halfspace_volume;
use super::spectral::spectral_moment;
use super::Settings;

/// How `‖g^λ(f)‖²` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GLambdaRoute {
    /// Weighted volume integral `∫∫ |∇u|² y^λ`.
    Direct,
    /// `Γ(λ+1) 2^{1−2λ} π^{1−λ} ∫ |t|^{1−λ} |f̂|²`.
    Spectral,
}

/// `Γ(λ+1) 2^{1−2λ} π^{1−λ}`.
pub fn g_lambda_constant(lambda: f64) -> f64 {
    gamma(lambda + 1.0) * 2f64.powf(1.0 - 2.0 * lambda) * std::f64::consts::PI.powf(1.0 - lambda)
}

/// `‖g^λ(f)‖²₂` for Gaussian data on `R^n`.
pub fn g_lambda_norm(spec: &BoundarySpec, lambda: f64, route: GLambdaRoute, settings: &Settings) -> Result<Estimate> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain(format!("λ = {lambda} lies outside [0, 1]")));
    }
    let f: &GaussianFamily = match spec {
        BoundarySpec::GaussianFamily(f) => f,
        other => {
            return Err(Error::Inadmissible(format!(
                "g^λ norms need Gaussian-family data, got {}",
                other.kind_name()
            )))
        }
    };
    match route {
        GLambdaRoute::Direct => halfspace_volume(f, settings.level, |g2, y| g2 * y.powf(lambda)),
        GLambdaRoute::Spectral => Ok(spectral_moment(f, 1.0 - lambda, settings.level).scaled(g_lambda_constant(lambda))),
    }
}
