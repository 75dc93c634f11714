//! Weighted improper integrals `∫_0^∞ h(y) y^λ dy`.

use crate::error::{Error, Result};

use super::rules::{integrate, ray_rule};
use super::Estimate;

/// Envelope `|h(y)| ≤ amplitude · e^{-rate·y}` assumed beyond the cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayTail {
    pub amplitude: f64,
    pub rate: f64,
}

impl RayTail {
    /// Bound on `∫_Y^∞ amplitude e^{-rate y} y^λ dy`; `y^λ e^{-rate y}` is
    /// log-concave, so the integral is at most the integrand at `Y` divided
    /// by the decay rate of `e^{-rate y} y^λ` there.
    pub fn bound(&self, power: f64, cap: f64) -> f64 {
        let decay = self.rate - power / cap;
        if decay <= 0.0 {
            return f64::INFINITY;
        }
        self.amplitude * (-self.rate * cap).exp() * cap.powf(power) / decay
    }
}

/// Graded Gauss–Legendre on `(0, cap]` at `2·level` and `level` nodes per
/// panel; the error is their difference plus the tail bound. Fails when the
/// tail bound alone exceeds `tolerance`.
pub fn ray_integral<H>(
    h: H,
    power: f64,
    cap: f64,
    level: usize,
    tail: RayTail,
    tolerance: f64,
) -> Result<Estimate>
where
    H: Fn(f64) -> f64 + Sync,
{
    if !(0.0..=1.0).contains(&power) {
        return Err(Error::Domain(format!("weight power {power} outside [0, 1]")));
    }
    let tail_bound = tail.bound(power, cap);
    if !(tail_bound <= tolerance) {
        return Err(Error::CapTooSmall {
            tail: tail_bound,
            tolerance,
        });
    }
    let fine = integrate(&ray_rule(power, cap, 2 * level)?, |y| h(y[0]))?;
    let coarse = integrate(&ray_rule(power, cap, level)?, |y| h(y[0]))?;
    Ok(Estimate {
        value: fine,
        error: (fine - coarse).abs() + tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const TAIL: RayTail = RayTail {
        amplitude: 1.0,
        rate: 4.0 * PI,
    };

    #[test]
    fn exponential_moments() {
        let e0 = ray_integral(|y| (-4.0 * PI * y).exp(), 0.0, 4.0, 10, TAIL, 1e-12).unwrap();
        assert!((e0.value - 1.0 / (4.0 * PI)).abs() < 1e-10);
        assert!(e0.error < 1e-10);
        let e1 = ray_integral(|y| (-4.0 * PI * y).exp(), 1.0, 4.0, 10, TAIL, 1e-12).unwrap();
        assert!((e1.value - 1.0 / (16.0 * PI * PI)).abs() < 1e-10);
        let half = ray_integral(|y| (-4.0 * PI * y).exp(), 0.5, 4.0, 10, TAIL, 1e-12).unwrap();
        let exact = statrs::function::gamma::gamma(1.5) / (4.0 * PI).powf(1.5);
        assert!((half.value - exact).abs() < 1e-10);
    }

    #[test]
    fn zero_integrand() {
        let e = ray_integral(|_| 0.0, 0.5, 4.0, 4, TAIL, 1e-12).unwrap();
        assert_eq!(e.value, 0.0);
    }

    #[test]
    fn short_cap_is_rejected() {
        let err = ray_integral(|y| (-4.0 * PI * y).exp(), 0.0, 0.5, 8, TAIL, 1e-12).unwrap_err();
        assert!(matches!(err, Error::CapTooSmall { .. }));
    }

    #[test]
    fn power_out_of_range() {
        assert!(ray_integral(|_| 0.0, 1.5, 4.0, 4, TAIL, 1.0).is_err());
    }
}
