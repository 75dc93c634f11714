//! Dirichlet energies by independent routes and the identity checks that
//! tie them together.
//!
//! Routes share no intermediate results: the gradient form integrates
//! analytic derivatives of the extension over the domain, the Fourier form
//! is coefficient arithmetic or a spectral integral, the double integral is
//! a singular boundary quadrature and the Ahlfors form integrates a
//! separately constructed monogenic field over boundary-parallel surfaces.

mod ahlfors;
mod conformal;
mod double;
mod glambda;
mod gradient;
mod report;
mod spectral;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::extension::{BoundarySpec, SampledGrid};
use crate::quadrature::SingularSchedule;

pub use ahlfors::{
    ahlfors_ball, ahlfors_boundary_energy, ahlfors_halfspace, default_heights, default_radii,
    monogenic_extension_field, volume_dbar_ball, volume_dbar_energy, volume_dbar_halfspace, PROBE_STEP,
    PROBE_THRESHOLD,
};
pub use conformal::{conformal_transport_check, line_double_integral, ConformalRecord};
pub use double::{double_integral_energy, halfspace_difference_energy};
pub use glambda::{g_lambda_constant, g_lambda_norm, GLambdaRoute};
pub use gradient::gradient_energy;
pub use report::{verify_identities, EnergyProblem, EnergyReport, FormValue};
pub use spectral::{
    ball_ahlfors_series, ball_equivalence_check, fourier_form_energy, h2_norm, h_half_seminorm,
    EquivalenceRecord,
};

/// Domain on which the harmonic extension lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Disk,
    /// Unit ball of `R^n`, `n ∈ {3, 4}`.
    Ball(usize),
    /// Upper half-space over `R^n`, `n ∈ {1, 2, 3}`.
    HalfSpace(usize),
    /// Unit ball of the quaternions, monogenic fields are Fueter regular.
    QuaternionBall,
    /// Upper half-space of the quaternions over `R³`.
    QuaternionHalfSpace,
}

impl Geometry {
    pub fn new_ball(n: usize) -> Result<Self> {
        match n {
            3 | 4 => Ok(Self::Ball(n)),
            _ => Err(Error::UnsupportedDimension(n)),
        }
    }

    pub fn new_half_space(n: usize) -> Result<Self> {
        match n {
            1..=3 => Ok(Self::HalfSpace(n)),
            _ => Err(Error::UnsupportedDimension(n)),
        }
    }

    /// Geometry used for every scalar computation.
    pub fn scalar_geometry(self) -> Self {
        match self {
            Self::QuaternionBall => Self::Ball(4),
            Self::QuaternionHalfSpace => Self::HalfSpace(3),
            g => g,
        }
    }

    /// Ambient dimension `n` of a bounded domain's boundary sphere `S^{n-1}`.
    pub fn sphere_ambient(self) -> Option<usize> {
        match self.scalar_geometry() {
            Self::Disk => Some(2),
            Self::Ball(n) => Some(n),
            _ => None,
        }
    }

    /// Boundary dimension of a half-space geometry.
    pub fn boundary_dim(self) -> Option<usize> {
        match self.scalar_geometry() {
            Self::HalfSpace(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_bounded(self) -> bool {
        self.sphere_ambient().is_some()
    }

    pub fn name(self) -> String {
        match self {
            Self::Disk => "disk".into(),
            Self::Ball(n) => format!("ball{n}"),
            Self::HalfSpace(n) => format!("halfspace{n}"),
            Self::QuaternionBall => "quaternion_ball".into(),
            Self::QuaternionHalfSpace => "quaternion_halfspace".into(),
        }
    }

    /// Rejects boundary data that do not live on this geometry's boundary.
    pub fn check_admissible(self, spec: &BoundarySpec) -> Result<()> {
        let ok = match (self.scalar_geometry(), spec) {
            (Self::Disk, BoundarySpec::CircleFourier(_)) => true,
            (Self::Disk, BoundarySpec::SampledGrid(SampledGrid::Circle { .. })) => true,
            (Self::Ball(n), BoundarySpec::ZonalGegenbauer(z)) => z.n == n,
            (Self::Ball(3), BoundarySpec::SampledGrid(SampledGrid::Sphere2 { .. })) => true,
            (Self::HalfSpace(n), BoundarySpec::GaussianFamily(g)) => g.n == n,
            (Self::HalfSpace(1), BoundarySpec::SampledGrid(SampledGrid::Line { .. })) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Inadmissible(format!(
                "{} data do not live on the boundary of {}",
                spec.kind_name(),
                self.name()
            )))
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disk" => Ok(Self::Disk),
            "ball3" => Ok(Self::Ball(3)),
            "ball4" => Ok(Self::Ball(4)),
            "halfspace1" => Ok(Self::HalfSpace(1)),
            "halfspace2" => Ok(Self::HalfSpace(2)),
            "halfspace3" => Ok(Self::HalfSpace(3)),
            "quaternion_ball" => Ok(Self::QuaternionBall),
            "quaternion_halfspace" => Ok(Self::QuaternionHalfSpace),
            _ => Err(Error::Inadmissible(format!(
                "unknown geometry `{s}` (expected disk, ball3, ball4, halfspace1..3, quaternion_ball, quaternion_halfspace)"
            ))),
        }
    }
}

/// An energy quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    Gradient,
    Fourier,
    Double,
    Ahlfors,
    AhlforsSeries,
    H2Norm,
    HHalfSeminorm,
}

impl Form {
    pub const ALL: [Form; 7] = [
        Form::Gradient,
        Form::Fourier,
        Form::Double,
        Form::Ahlfors,
        Form::AhlforsSeries,
        Form::H2Norm,
        Form::HHalfSeminorm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Gradient => "gradient",
            Self::Fourier => "fourier",
            Self::Double => "double",
            Self::Ahlfors => "ahlfors",
            Self::AhlforsSeries => "ahlforsSeries",
            Self::H2Norm => "h2norm",
            Self::HHalfSeminorm => "hHalfSeminorm",
        }
    }

    /// Forms that equal the Dirichlet energy.
    pub fn is_energy(self) -> bool {
        matches!(self, Self::Gradient | Self::Fourier | Self::Double | Self::Ahlfors)
    }

    /// Whether the form is defined on a geometry.
    pub fn defined_on(self, g: Geometry) -> bool {
        match self {
            Self::AhlforsSeries => matches!(g.scalar_geometry(), Geometry::Ball(_)),
            _ => true,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|f| f.name()).collect();
            Error::Inadmissible(format!("unknown form `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

/// Resolution controls shared by every route. Higher `level` refines all
/// quadratures; each route also reports a coarser rerun as its error.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub level: usize,
    pub schedule: SingularSchedule,
}

impl Settings {
    pub const DEFAULT_LEVEL: usize = 2;

    pub fn with_level(level: usize) -> Self {
        Self {
            level,
            schedule: SingularSchedule::default(),
        }
    }
}

impl Default for Settings {
    fn default() -> Self {
        Self::with_level(Self::DEFAULT_LEVEL)
    }
}

/// Highest spherical degree of band-limited data.
pub(crate) fn band_limit(spec: &BoundarySpec) -> usize {
    match spec {
        BoundarySpec::CircleFourier(c) => c.max_degree(),
        BoundarySpec::ZonalGegenbauer(z) => z.max_degree(),
        BoundarySpec::SampledGrid(SampledGrid::Circle { values }) => values.len() / 2,
        BoundarySpec::SampledGrid(SampledGrid::Sphere2 { level, .. }) => *level,
        _ => 0,
    }
}

/// `|a − b| / max(|a|, |b|)`, zero when both are negligible.
pub fn relative_deviation(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale < 1e-12 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Neville extrapolation of `(s_j, v_j)` to `s = 0`; returns the value from
/// all points and the one from all but the last.
pub(crate) fn neville_at_zero(s: &[f64], v: &[f64]) -> (f64, f64) {
    let eval = |m: usize| {
        let mut p: Vec<f64> = v[..m].to_vec();
        for k in 1..m {
            for i in 0..m - k {
                p[i] = (s[i + k] * p[i] - s[i] * p[i + 1]) / (s[i + k] - s[i]);
            }
        }
        p[0]
    };
    let m = s.len();
    (eval(m), eval(m.saturating_sub(1).max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for g in [
            Geometry::Disk,
            Geometry::Ball(3),
            Geometry::Ball(4),
            Geometry::HalfSpace(2),
            Geometry::QuaternionBall,
            Geometry::QuaternionHalfSpace,
        ] {
            assert_eq!(g.name().parse::<Geometry>().unwrap(), g);
        }
        for f in Form::ALL {
            assert_eq!(f.name().parse::<Form>().unwrap(), f);
        }
        assert!("ball5".parse::<Geometry>().is_err());
    }

    #[test]
    fn neville_is_exact_on_polynomials() {
        let s = [0.4, 0.2, 0.1, 0.05];
        let v: Vec<f64> = s.iter().map(|x| 2.0 - x + 3.0 * x * x - x * x * x).collect();
        let (a, b) = neville_at_zero(&s, &v);
        assert!((a - 2.0).abs() < 1e-13);
        assert!((b - 2.0).abs() > 1e-6);
    }

    #[test]
    fn deviation_conventions() {
        assert_eq!(relative_deviation(0.0, 1e-13), 0.0);
        assert!((relative_deviation(1.0, 0.9) - 0.1).abs() < 1e-15);
    }
}
