//! Singular double integrals over `S^{n-1} × S^{n-1}` (and their flat
//! analogues) by excluding a chord ball of radius `ε` and extrapolating
//! `ε → 0`.
//!
//! For the difference-quotient integrands used here, averaging over the
//! directions around the diagonal makes the excluded mass an odd function of
//! the exclusion radius, so `I(ε) = I₀ + c₁ε + c₃ε³ + …`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::special_fn::sphere_area;

use super::gauss::gl_interval;
use super::rules::{direction_rule, sphere_rule, SphereKind};
use super::sum::pairwise_sum;
use super::Estimate;

/// Decreasing exclusion radii and the number of them used by the
/// extrapolation.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSchedule {
    pub radii: Vec<f64>,
    pub order: usize,
}

impl SingularSchedule {
    pub fn new(radii: Vec<f64>, order: usize) -> Result<Self> {
        if radii.len() < 3 {
            return Err(Error::Domain("singular schedule needs at least three radii".into()));
        }
        if radii.iter().any(|r| !(*r > 0.0)) || radii.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Domain("exclusion radii must be positive and strictly decreasing".into()));
        }
        if order < 2 || order > radii.len() {
            return Err(Error::Domain(format!(
                "extrapolation order {order} must lie in 2..={}",
                radii.len()
            )));
        }
        Ok(Self { radii, order })
    }

    /// `count` radii halving from `first`, all used.
    pub fn geometric(first: f64, count: usize) -> Result<Self> {
        let radii = (0..count).map(|i| first * 0.5f64.powi(i as i32)).collect();
        Self::new(radii, count)
    }
}

impl Default for SingularSchedule {
    fn default() -> Self {
        Self::geometric(0.4, 6).expect("default schedule is valid")
    }
}

/// Fits `I₀ + Σ_j c_j ε^{2j-1}` through the points and returns `I₀`.
fn richardson_odd(eps: &[f64], vals: &[f64]) -> f64 {
    let m = eps.len();
    let mut a = vec![vec![0.0; m + 1]; m];
    for i in 0..m {
        a[i][0] = 1.0;
        for j in 1..m {
            a[i][j] = eps[i].powi(2 * j as i32 - 1);
        }
        a[i][m] = vals[i];
    }
    // column scaling keeps the elimination well balanced
    for j in 1..m {
        let s = a.iter().map(|row| row[j].abs()).fold(0.0, f64::max);
        if s > 0.0 {
            for row in a.iter_mut() {
                row[j] /= s;
            }
        }
    }
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&p, &q| a[p][col].abs().partial_cmp(&a[q][col].abs()).expect("finite"))
            .expect("non-empty pivot range");
        a.swap(col, piv);
        for r in 0..m {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for c in col..=m {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
    }
    a[0][m] / a[0][0]
}

/// Evaluates `I(ε)` over the schedule, checks that successive increments
/// shrink, and extrapolates to `ε = 0`. The error estimate is the spread of
/// the two highest-order extrapolants.
pub fn extrapolate_exclusion<F>(schedule: &SingularSchedule, truncated: F) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let eps: Vec<f64> = schedule.radii[..schedule.order].to_vec();
    let vals = eps
        .par_iter()
        .map(|&e| truncated(e))
        .collect::<Result<Vec<f64>>>()?;
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let noise = 1e-13 * scale.max(f64::MIN_POSITIVE);
    let incs: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    for (i, w) in incs.windows(2).enumerate() {
        if w[1] > noise && w[1] > w[0] {
            return Err(Error::ScheduleTooCoarse(format!(
                "increment grows between radii {:e} and {:e} ({:e} -> {:e})",
                eps[i + 1],
                eps[i + 2],
                w[0],
                w[1]
            )));
        }
    }
    let value = richardson_odd(&eps, &vals);
    let previous = richardson_odd(&eps[..eps.len() - 1], &vals[..vals.len() - 1]);
    Ok(Estimate {
        value,
        error: (value - previous).abs(),
    })
}

/// Extrapolants using the first `j` points, `j = 2..=order`; exposes the
/// convergence history of the estimate.
pub fn extrapolant_history<F>(schedule: &SingularSchedule, truncated: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let eps: Vec<f64> = schedule.radii[..schedule.order].to_vec();
    let vals = eps
        .par_iter()
        .map(|&e| truncated(e))
        .collect::<Result<Vec<f64>>>()?;
    Ok((2..=eps.len())
        .map(|j| richardson_odd(&eps[..j], &vals[..j]))
        .collect())
}

/// Householder reflection taking `e₀` to the unit vector `eta`; it maps
/// `e₀^⊥` onto `eta^⊥`.
pub(crate) fn frame_image(eta: &[f64], local: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = eta.iter().map(|x| -x).collect();
    v[0] += 1.0;
    let vv: f64 = v.iter().map(|x| x * x).sum();
    if vv < 1e-24 {
        return local.to_vec();
    }
    let dot: f64 = v.iter().zip(local).map(|(a, b)| a * b).sum();
    local
        .iter()
        .zip(&v)
        .map(|(x, vi)| x - 2.0 * dot / vv * vi)
        .collect()
}

/// Geodesic angle below which the chord is shorter than `eps`.
fn exclusion_angle(eps: f64) -> f64 {
    2.0 * (eps / 2.0).min(1.0).asin()
}

/// `∫∫_{|η₁−η₂|>ε} G(η₁, η₂) dS dS` on `S^{n-1}`, extrapolated to `ε → 0`.
///
/// The inner integral uses geodesic polar coordinates about `η₁`:
/// `η₂ = cos ψ η₁ + sin ψ ω`, `ω ⊥ η₁`, with `ψ ∈ [ψ_ε, π]` so the exclusion
/// boundary is a grid line.
pub fn double_sphere_singular<G>(
    kind: SphereKind,
    level: usize,
    schedule: &SingularSchedule,
    g: G,
) -> Result<Estimate>
where
    G: Fn(&[f64], &[f64]) -> f64 + Sync,
{
    let n = kind.ambient();
    let outer = sphere_rule::<f64>(kind, level)?;
    let fiber = direction_rule(n - 1, level)?;
    let truncated = |eps: f64| -> Result<f64> {
        let psi = gl_interval(exclusion_angle(eps), std::f64::consts::PI, 2 * level);
        let rows: Vec<f64> = (0..outer.len())
            .into_par_iter()
            .map(|i| {
                let eta1 = outer.node(i);
                let mut terms = Vec::with_capacity(psi.len() * fiber.len());
                for &(p, wp) in &psi {
                    let (s, c) = p.sin_cos();
                    let jac = wp * s.powi(n as i32 - 2);
                    for (omega, wo) in &fiber {
                        let mut local = vec![0.0; n];
                        local[1..].copy_from_slice(omega);
                        let dir = frame_image(eta1, &local);
                        let eta2: Vec<f64> = eta1.iter().zip(&dir).map(|(a, d)| c * a + s * d).collect();
                        terms.push(jac * wo * g(eta1, &eta2));
                    }
                }
                outer.weight(i) * pairwise_sum(&terms)
            })
            .collect();
        finite_sum(&rows)
    };
    extrapolate_exclusion(schedule, truncated)
}

/// Zonal reduction of [`double_sphere_singular`] for `n ∈ {3, 4}`.
///
/// `g(t₁, t₂, chord)` receives the polar cosines `tᵢ = ηᵢ·e` and the chord
/// length; the remaining angles integrate out analytically:
/// `θ₁` carries `ω_{n−2} sin^{n−2}θ₁`, `ψ` carries `sin^{n−2}ψ` and the angle
/// `β` between `ω` and the projected pole carries `ω_{n−3} sin^{n−3}β`, with
/// `t₂ = cos ψ t₁ + sin ψ sin θ₁ cos β`.
pub fn double_sphere_singular_zonal<G>(
    n: usize,
    level: usize,
    schedule: &SingularSchedule,
    g: G,
) -> Result<Estimate>
where
    G: Fn(f64, f64, f64) -> f64 + Sync,
{
    if !(3..=4).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let pi = std::f64::consts::PI;
    let m = 2 * level;
    let theta = gl_interval(0.0, pi, m);
    let beta = gl_interval(0.0, pi, m);
    let (w_outer, w_beta) = (sphere_area(n - 2)?, sphere_area(n - 3)?);
    let truncated = |eps: f64| -> Result<f64> {
        let psi = gl_interval(exclusion_angle(eps), pi, m);
        let rows: Vec<f64> = theta
            .par_iter()
            .map(|&(th, wth)| {
                let (s1, t1) = th.sin_cos();
                let mut terms = Vec::with_capacity(psi.len() * beta.len());
                for &(p, wp) in &psi {
                    let (sp, cp) = p.sin_cos();
                    let chord = 2.0 * (p / 2.0).sin();
                    let jac = wp * sp.powi(n as i32 - 2);
                    for &(b, wb) in &beta {
                        let t2 = (cp * t1 + sp * s1 * b.cos()).clamp(-1.0, 1.0);
                        terms.push(jac * wb * b.sin().powi(n as i32 - 3) * g(t1, t2, chord));
                    }
                }
                wth * s1.powi(n as i32 - 2) * pairwise_sum(&terms)
            })
            .collect();
        Ok(w_outer * w_beta * finite_sum(&rows)?)
    };
    extrapolate_exclusion(schedule, truncated)
}

fn finite_sum(rows: &[f64]) -> Result<f64> {
    if let Some(index) = rows.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            index,
            point: Vec::new(),
        });
    }
    Ok(pairwise_sum(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn chord2(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
    }

    #[test]
    fn richardson_recovers_odd_model() {
        let eps = [0.4, 0.2, 0.1, 0.05];
        let vals: Vec<f64> = eps.iter().map(|e| 3.0 - 2.0 * e + 0.5 * e * e * e).collect();
        assert!((richardson_odd(&eps, &vals) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn circle_cosine_gives_pi() {
        let est = double_sphere_singular(SphereKind::Circle, 32, &SingularSchedule::default(), |a, b| {
            (a[0] - b[0]).powi(2) / chord2(a, b)
        })
        .unwrap();
        let v = est.value / (2.0 * PI);
        assert!((v - PI).abs() < 1e-6, "{v}");
        assert!(est.error < 1e-6);
    }

    #[test]
    fn constant_data_gives_zero() {
        let est = double_sphere_singular(SphereKind::Sphere2, 6, &SingularSchedule::default(), |_, _| 0.0)
            .unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn legendre_p2_on_s2() {
        let p2 = |t: f64| 1.5 * t * t - 0.5;
        let est = double_sphere_singular_zonal(3, 16, &SingularSchedule::default(), |t1, t2, c| {
            (p2(t1) - p2(t2)).powi(2) / c.powi(3)
        })
        .unwrap();
        let v = est.value / (4.0 * PI);
        assert!((v - 8.0 * PI / 5.0).abs() < 1e-3 * 8.0 * PI / 5.0, "{v}");
    }

    #[test]
    fn generic_and_zonal_agree_on_s2() {
        let p2 = |t: f64| 1.5 * t * t - 0.5;
        let sched = SingularSchedule::default();
        let zonal = double_sphere_singular_zonal(3, 12, &sched, |t1, t2, c| {
            (p2(t1) - p2(t2)).powi(2) / c.powi(3)
        })
        .unwrap();
        let full = double_sphere_singular(SphereKind::Sphere2, 12, &sched, |a, b| {
            (p2(a[2]) - p2(b[2])).powi(2) / chord2(a, b).powf(1.5)
        })
        .unwrap();
        assert!((zonal.value - full.value).abs() < 1e-3 * zonal.value);
    }

    #[test]
    fn bad_schedules() {
        assert!(SingularSchedule::new(vec![0.1, 0.2, 0.05], 3).is_err());
        assert!(SingularSchedule::new(vec![0.2, 0.1], 2).is_err());
        assert!(SingularSchedule::new(vec![0.4, 0.2, 0.1], 4).is_err());
    }

    #[test]
    fn growing_increments_are_rejected() {
        let sched = SingularSchedule::default();
        let err = extrapolate_exclusion(&sched, |e| Ok((1.0 / e).sin())).unwrap_err();
        assert!(matches!(err, Error::ScheduleTooCoarse(_)));
    }
}
