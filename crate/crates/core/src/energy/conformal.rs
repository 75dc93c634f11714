//! Transport of the double integral between the disk and the upper half
//! plane by the boundary map of `L(z) = (z − i)/(z + i)`.

use crate::error::{Error, Result};
use crate::extension::{BoundarySpec, CircleFourier, SampledGrid};
use crate::quadrature::gauss::normalize_breaks;
use crate::quadrature::{extrapolate_exclusion, gl_composite, gl_interval, pairwise_sum, Estimate, SingularSchedule};

use super::double::double_integral_energy;
use super::{relative_deviation, Geometry, Settings};

/// Disk and line double integrals of the same data and their relative
/// difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalRecord {
    pub disk: Estimate,
    pub line: Estimate,
    pub relative_difference: f64,
}

/// Polar angle of `L(x)` for real `x`: `L(x) = (x² − 1 − 2ix)/(x² + 1)`.
fn boundary_angle(x: f64) -> f64 {
    (-2.0 * x).atan2(x * x - 1.0)
}

/// `∫_R φ` with panels refining around `centers` at scale `fine` and the
/// tails beyond `±m` mapped by `t = ±m/u`.
fn line_rule(centers: &[f64], fine: f64, m: f64, points: usize) -> Vec<(f64, f64)> {
    let mut breaks = Vec::new();
    for &a in centers {
        for j in 0..=16 {
            breaks.push(a + fine * j as f64);
            breaks.push(a - fine * j as f64);
        }
        let mut d = 32.0 * fine;
        while d < 2.0 * m {
            breaks.push(a + d);
            breaks.push(a - d);
            d *= 2.0;
        }
    }
    let mut rule = gl_composite(&normalize_breaks(breaks, -m, m), points);
    for (u, w) in gl_interval(0.0, 1.0, points) {
        let jac = w * m / (u * u);
        rule.push((m / u, jac));
        rule.push((-m / u, jac));
    }
    rule
}

/// `(1/2π) ∫∫ |g(x) − g(t)|²/|x − t|² dx dt` on the real line for
/// `g(x) = f(arg L(x))`, computed as `(1/π) ∫_{h>ε} D(h)/h² dh` with
/// `D(h) = ∫ |g(t+h) − g(t)|² dt` and extrapolated in `ε`.
pub fn line_double_integral(c: &CircleFourier, level: usize, schedule: &SingularSchedule) -> Result<Estimate> {
    let k = c.max_degree().max(1) as f64;
    let at_infinity = c.eval(0.0);
    let g = |x: f64| c.eval(boundary_angle(x)) - at_infinity;
    let points = 12 + 2 * level;
    let fine = 0.125 / k;
    let difference = |h: f64| -> f64 {
        let m = 4.0 * (1.0 + h.abs());
        let terms: Vec<f64> = line_rule(&[0.0, -h], fine, m, points)
            .into_iter()
            .map(|(t, w)| w * (g(t + h) - g(t)).powi(2))
            .collect();
        pairwise_sum(&terms)
    };
    let far = 8.0;
    let tail = gl_interval(0.0, 1.0, points);
    let truncated = |eps: f64| -> Result<f64> {
        let count = ((far - eps) / (2.0 * fine)).ceil() as usize;
        let breaks: Vec<f64> = (0..=count).map(|j| eps + (far - eps) * j as f64 / count as f64).collect();
        let mut radial = gl_composite(&breaks, points);
        radial.extend(tail.iter().map(|&(u, w)| (far / u, w * far / (u * u))));
        let terms: Vec<f64> = radial.iter().map(|&(h, w)| w * difference(h) / (h * h)).collect();
        Ok(pairwise_sum(&terms) / std::f64::consts::PI)
    };
    extrapolate_exclusion(schedule, truncated)
}

/// Double-integral energies of `f` on the circle and of its transport to the
/// line.
pub fn conformal_transport_check(spec: &BoundarySpec, settings: &Settings) -> Result<ConformalRecord> {
    let c = match spec {
        BoundarySpec::CircleFourier(c) => c.clone(),
        BoundarySpec::SampledGrid(SampledGrid::Circle { values }) => SampledGrid::circle_coefficients(values)?,
        other => {
            return Err(Error::Inadmissible(format!(
                "conformal transport needs circle data, got {}",
                other.kind_name()
            )))
        }
    };
    let disk = double_integral_energy(Geometry::Disk, spec, settings)?;
    let line = line_double_integral(&c, settings.level, &settings.schedule)?;
    Ok(ConformalRecord {
        disk,
        line,
        relative_difference: relative_deviation(disk.value, line.value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::FourierTerm;
    use std::f64::consts::PI;

    #[test]
    fn transported_cosine_is_rational() {
        for x in [-3.0, -0.5, 0.0, 0.7, 10.0] {
            let expected = (x * x - 1.0) / (x * x + 1.0);
            assert!((boundary_angle(x).cos() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn cosine_and_mixture() {
        let s = Settings::default();
        let cos = BoundarySpec::CircleFourier(CircleFourier::new(0.0, vec![FourierTerm { k: 1, a: 1.0, b: 0.0 }]).unwrap());
        let r = conformal_transport_check(&cos, &s).unwrap();
        assert!((r.line.value - PI).abs() < 1e-3 * PI, "{r:?}");
        assert!(r.relative_difference < 1e-3);
        let mix = BoundarySpec::CircleFourier(
            CircleFourier::new(0.0, vec![FourierTerm { k: 1, a: 1.0, b: 0.0 }, FourierTerm { k: 2, a: 0.5, b: 0.0 }]).unwrap(),
        );
        let r = conformal_transport_check(&mix, &s).unwrap();
        assert!((r.line.value - 1.5 * PI).abs() < 1e-3 * 1.5 * PI, "{r:?}");
    }

    #[test]
    fn constant_gives_zero() {
        let c = CircleFourier::new(2.0, vec![]).unwrap();
        let e = line_double_integral(&c, 0, &SingularSchedule::default()).unwrap();
        assert_eq!(e.value, 0.0);
    }
}
