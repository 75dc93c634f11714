//! Numerical integration: sphere, box, ray and half-space rules, pairwise
//! reduction, and the singular double integrator.

pub mod gauss;
pub mod ray;
pub mod rules;
pub mod singular;
pub mod sum;

pub use gauss::{gauss_legendre, gl, gl_composite, gl_interval, GaussLegendre};
pub use ray::{ray_integral, RayTail};
pub use rules::{
    box_rule, half_space_rule, integrate, ray_rule, sphere_rule, whole_space_rule, DomainKind,
    QuadratureRule, SphereKind,
};
pub use singular::{
    double_sphere_singular, double_sphere_singular_zonal, extrapolate_exclusion, SingularSchedule,
};
pub use sum::{pairwise, pairwise_sum, Integrable};

/// A computed value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { value, error: 0.0 }
    }

    pub fn scaled(self, c: f64) -> Self {
        Self {
            value: self.value * c,
            error: self.error * c.abs(),
        }
    }
}
