//! Harmonic extension into the disk and the balls `B₃`, `B₄`, spherical
//! projection norms, and the holomorphic disk field.

use num_complex::Complex64;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::quadrature::{
    gl_composite, gauss::graded_breaks, pairwise_sum, rules::direction_rule, sphere_rule,
    SphereKind,
};
use crate::special_fn::{coeff_c, gegenbauer, sphere_area};

use super::boundary::{dot, BoundarySpec, CircleFourier, SampledGrid, ZonalGegenbauer};
use super::field::{FieldDomain, ParavectorField};

/// `‖Y_k(f)‖²_{L²(S^{n-1})}` per degree, with an error estimate for data
/// that had to be projected numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionNorms {
    /// Ambient dimension `n` of `S^{n-1}`.
    pub n: usize,
    pub entries: Vec<(usize, f64)>,
    pub error: f64,
}

impl ProjectionNorms {
    pub fn get(&self, k: usize) -> f64 {
        self.entries.iter().filter(|e| e.0 == k).map(|e| e.1).sum()
    }

    /// `Σ_k ‖Y_k‖²`, the squared `L²` norm.
    pub fn total(&self) -> f64 {
        pairwise_sum(&self.entries.iter().map(|e| e.1).collect::<Vec<_>>())
    }

    /// `Σ_k k ‖Y_k‖²`.
    pub fn weighted(&self, weight: impl Fn(usize) -> f64) -> f64 {
        pairwise_sum(&self.entries.iter().map(|&(k, v)| weight(k) * v).collect::<Vec<_>>())
    }
}

fn circle_data(spec: &BoundarySpec) -> Result<Option<CircleFourier>> {
    match spec {
        BoundarySpec::CircleFourier(c) => Ok(Some(c.clone())),
        BoundarySpec::SampledGrid(SampledGrid::Circle { values }) => {
            Ok(Some(SampledGrid::circle_coefficients(values)?))
        }
        _ => Ok(None),
    }
}

fn radius_and_direction(point: &[f64]) -> Result<(f64, Vec<f64>)> {
    let r = point.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(r < 1.0) {
        return Err(Error::Domain(format!("point at radius {r} is not inside the unit ball")));
    }
    let dir = if r > 0.0 {
        point.iter().map(|x| x / r).collect()
    } else {
        let mut e = vec![0.0; point.len()];
        e[0] = 1.0;
        e
    };
    Ok((r, dir))
}

/// Spectral Poisson extension `u(rξ) = Σ r^k γ_k P_k(ξ·e)` (or the Fourier
/// series in the disk).
pub fn poisson_extend_ball(spec: &BoundarySpec, point: &[f64]) -> Result<f64> {
    let (r, xi) = radius_and_direction(point)?;
    if let Some(c) = circle_data(spec)? {
        check_dim(point, 2)?;
        let th = point[1].atan2(point[0]);
        return Ok(c.a0
            + c.terms
                .iter()
                .map(|t| {
                    let (s, co) = (t.k as f64 * th).sin_cos();
                    r.powi(t.k as i32) * (t.a * co + t.b * s)
                })
                .sum::<f64>());
    }
    match spec {
        BoundarySpec::ZonalGegenbauer(z) => {
            check_dim(point, z.n)?;
            let t = dot(&xi, &z.axis);
            let mut s = 0.0;
            for (k, &g) in z.coeffs.iter().enumerate() {
                if g != 0.0 {
                    s += g * r.powi(k as i32) * gegenbauer(z.n, k, t)?;
                }
            }
            Ok(s)
        }
        other => Err(Error::Inadmissible(format!(
            "{} data cannot be extended into a ball",
            other.kind_name()
        ))),
    }
}

fn check_dim(point: &[f64], n: usize) -> Result<()> {
    if point.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: point.len(),
        });
    }
    Ok(())
}

/// Poisson kernel of the unit ball in `R^n`,
/// `P(x, η) = (1 − |x|²) / (ω_{n−1} |η − x|^n)`, normalized so that it
/// integrates to one over the sphere.
pub fn ball_poisson_kernel(x: &[f64], eta: &[f64]) -> f64 {
    let n = x.len();
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let d2: f64 = x.iter().zip(eta).map(|(a, b)| (a - b) * (a - b)).sum();
    let omega = sphere_area(n - 1).expect("n >= 2");
    (1.0 - r2) / (omega * d2.powf(n as f64 / 2.0))
}

/// Kernel-quadrature Poisson extension. The sphere is parametrized by the
/// geodesic angle `ψ` from `x/|x|`, graded toward `ψ = 0` at the kernel's
/// width `1 − |x|`, times a direction rule on the orthogonal sphere.
pub fn poisson_kernel_ball(spec: &BoundarySpec, point: &[f64], level: usize) -> Result<f64> {
    let (r, xi) = radius_and_direction(point)?;
    let n = point.len();
    let eval: Box<dyn Fn(&[f64]) -> f64 + Sync> = if let Some(c) = circle_data(spec)? {
        check_dim(point, 2)?;
        Box::new(move |eta: &[f64]| c.eval(eta[1].atan2(eta[0])))
    } else if let BoundarySpec::ZonalGegenbauer(z) = spec {
        check_dim(point, z.n)?;
        let z = z.clone();
        Box::new(move |eta: &[f64]| z.eval(eta).unwrap_or(f64::NAN))
    } else {
        return Err(Error::Inadmissible(format!(
            "{} data cannot be extended into a ball",
            spec.kind_name()
        )));
    };
    let degree = match spec {
        BoundarySpec::ZonalGegenbauer(z) => z.max_degree(),
        _ => circle_data(spec)?.map(|c| c.max_degree()).unwrap_or(0),
    };
    let pi = std::f64::consts::PI;
    let finest = ((1.0 - r) / 8.0).max(1e-6);
    let psi = gl_composite(&graded_breaks(0.0, finest, 0.0, pi), 12 + level);
    let dirs = direction_rule(n - 1, degree / 2 + 2 + level)?;
    let omega = sphere_area(n - 1)?;
    let mut terms = Vec::with_capacity(psi.len() * dirs.len());
    for &(p, wp) in &psi {
        let (s, c) = p.sin_cos();
        let kern = (1.0 - r * r) / (omega * (1.0 + r * r - 2.0 * r * c).powf(n as f64 / 2.0));
        let jac = wp * s.powi(n as i32 - 2) * kern;
        for (dir, wd) in &dirs {
            let mut local = vec![0.0; n];
            local[1..].copy_from_slice(dir);
            let ortho = crate::quadrature::singular::frame_image(&xi, &local);
            let eta: Vec<f64> = xi.iter().zip(&ortho).map(|(a, o)| c * a + s * o).collect();
            terms.push(jac * wd * eval(&eta));
        }
    }
    Ok(pairwise_sum(&terms))
}

/// Analytic gradient of the spectral extension.
pub fn harmonic_gradient_ball(spec: &BoundarySpec, point: &[f64]) -> Result<Vec<f64>> {
    let (r, xi) = radius_and_direction(point)?;
    if let Some(c) = circle_data(spec)? {
        check_dim(point, 2)?;
        let th = point[1].atan2(point[0]);
        let (st, ct) = th.sin_cos();
        let (mut ur, mut ut) = (0.0, 0.0);
        for t in &c.terms {
            let k = t.k as f64;
            let (s, co) = (k * th).sin_cos();
            let rk = r.powi(t.k as i32 - 1);
            ur += k * rk * (t.a * co + t.b * s);
            ut += k * rk * (-t.a * s + t.b * co);
        }
        return Ok(vec![ur * ct - ut * st, ur * st + ut * ct]);
    }
    match spec {
        BoundarySpec::ZonalGegenbauer(z) => {
            check_dim(point, z.n)?;
            let t = dot(&xi, &z.axis);
            let mut g = vec![0.0; z.n];
            for (k, gam, p, d) in z.terms_with_derivative(t)? {
                if k == 0 {
                    continue;
                }
                let rk = r.powi(k as i32 - 1);
                for j in 0..z.n {
                    g[j] += gam * rk * (k as f64 * p * xi[j] + d * (z.axis[j] - t * xi[j]));
                }
            }
            Ok(g)
        }
        other => Err(Error::Inadmissible(format!(
            "{} data cannot be extended into a ball",
            other.kind_name()
        ))),
    }
}

/// `‖Y_k(f)‖²` per degree without an explicit harmonic basis: circle data
/// give `π(a_k² + b_k²)` (and `2πa₀²`), zonal data `γ_k²/c_{n,k}` by the
/// reproducing property. Sampled data are projected numerically with
/// `c_{n,k} ∬ f(ξ) f(η) P_k(ξ·η)`, and the Parseval defect is reported as
/// the error.
pub fn laplace_projection_norms(spec: &BoundarySpec) -> Result<ProjectionNorms> {
    let pi = std::f64::consts::PI;
    if let Some(c) = circle_data(spec)? {
        let mut entries = vec![(0, 2.0 * pi * c.a0 * c.a0)];
        for (k, (a, b)) in c.coefficients().into_iter().enumerate().skip(1) {
            if a != 0.0 || b != 0.0 {
                entries.push((k, pi * (a * a + b * b)));
            }
        }
        let error = if let BoundarySpec::SampledGrid(_) = spec {
            let norms = ProjectionNorms {
                n: 2,
                entries: entries.clone(),
                error: 0.0,
            };
            (norms.total() - spec.l2_norm_sqr_quadrature(1)?).abs()
        } else {
            0.0
        };
        return Ok(ProjectionNorms { n: 2, entries, error });
    }
    match spec {
        BoundarySpec::ZonalGegenbauer(z) => zonal_norms(z),
        BoundarySpec::SampledGrid(SampledGrid::Sphere2 { level, values }) => sampled_sphere_norms(*level, values),
        other => Err(Error::Inadmissible(format!(
            "{} data have no spherical-harmonic projections",
            other.kind_name()
        ))),
    }
}

fn zonal_norms(z: &ZonalGegenbauer) -> Result<ProjectionNorms> {
    let mut entries = Vec::new();
    for (k, &g) in z.coeffs.iter().enumerate() {
        if g != 0.0 {
            entries.push((k, g * g / coeff_c(z.n, k)?));
        }
    }
    Ok(ProjectionNorms {
        n: z.n,
        entries,
        error: 0.0,
    })
}

fn sampled_sphere_norms(level: usize, values: &[f64]) -> Result<ProjectionNorms> {
    let rule = sphere_rule::<f64>(SphereKind::Sphere2, level)?;
    if values.len() != rule.len() {
        return Err(Error::Inadmissible(format!(
            "expected {} samples for a level-{level} sphere grid, got {}",
            rule.len(),
            values.len()
        )));
    }
    let pts: Vec<&[f64]> = (0..rule.len()).map(|i| rule.node(i)).collect();
    let wf: Vec<f64> = values.iter().zip(rule.weights()).map(|(v, w)| v * w).collect();
    let mut entries = Vec::new();
    // degrees up to level - 1 are resolved exactly by the product rule
    for k in 0..level {
        let c = coeff_c(3, k)?;
        let mut rows = Vec::with_capacity(pts.len());
        for i in 0..pts.len() {
            let mut row = Vec::with_capacity(pts.len());
            for j in 0..pts.len() {
                let t = dot(pts[i], pts[j]).clamp(-1.0, 1.0);
                row.push(wf[j] * gegenbauer(3, k, t)?);
            }
            rows.push(wf[i] * pairwise_sum(&row));
        }
        let v = c * pairwise_sum(&rows);
        if v.abs() > 1e-15 {
            entries.push((k, v.max(0.0)));
        }
    }
    let total = pairwise_sum(&values.iter().zip(rule.weights()).map(|(v, w)| w * v * v).collect::<Vec<_>>());
    let norms = ProjectionNorms {
        n: 3,
        entries,
        error: 0.0,
    };
    let error = (norms.total() - total).abs();
    Ok(ProjectionNorms { error, ..norms })
}

/// Holomorphic polynomial `F(z) = a₀ + Σ (a_k − i b_k) z^k` whose real part
/// on the circle is the given Fourier series, as a `Cl(0,1)`-valued field
/// with `x₀ = Re z`, `x₁ = Im z`, `e₁ ≅ i`.
pub fn disk_holomorphic_field(c: &CircleFourier) -> ParavectorField<Multivector<f64>> {
    let coeffs: Vec<Complex64> = c
        .coefficients()
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| if k == 0 { Complex64::new(c.a0, 0.0) } else { Complex64::new(a, -b) })
        .collect();
    let coeffs_d = coeffs.clone();
    let to_mv = |z: Complex64| Multivector::from_coeffs(1, &[z.re, z.im]).expect("Cl(0,1) has two blades");
    ParavectorField::new("disk_holomorphic", FieldDomain::Ball { radius: 1.0 }, 2, move |p| {
        let z = Complex64::new(p[0], p[1]);
        to_mv(coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * z + ck))
    })
    .with_d0(move |p| {
        let z = Complex64::new(p[0], p[1]);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, ck) in coeffs_d.iter().enumerate().skip(1).rev() {
            acc = acc * z + ck * k as f64;
        }
        to_mv(acc)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::boundary::FourierTerm;
    use crate::extension::field::dirac_residual;
    use std::f64::consts::PI;

    fn cos_theta() -> BoundarySpec {
        BoundarySpec::CircleFourier(CircleFourier::new(0.0, vec![FourierTerm { k: 1, a: 1.0, b: 0.0 }]).unwrap())
    }

    fn p2_s2() -> BoundarySpec {
        BoundarySpec::ZonalGegenbauer(ZonalGegenbauer::new(3, vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]).unwrap())
    }

    #[test]
    fn spectral_examples() {
        assert!((poisson_extend_ball(&cos_theta(), &[0.5, 0.0]).unwrap() - 0.5).abs() < 1e-15);
        let one = BoundarySpec::ZonalGegenbauer(ZonalGegenbauer::new(3, vec![0.0, 0.0, 1.0], vec![1.0]).unwrap());
        assert_eq!(poisson_extend_ball(&one, &[0.1, -0.3, 0.2]).unwrap(), 1.0);
        assert_eq!(poisson_extend_ball(&p2_s2(), &[0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!(poisson_extend_ball(&cos_theta(), &[1.0, 0.0]).is_err());
    }

    #[test]
    fn kernel_matches_spectral() {
        let spec = BoundarySpec::ZonalGegenbauer(
            ZonalGegenbauer::new(3, vec![0.0, 0.6, 0.8], vec![0.2, -1.0, 0.5, 0.0, 0.3]).unwrap(),
        );
        for p in [[0.1, 0.2, 0.3], [0.0, 0.85, -0.2], [-0.6, 0.1, 0.6]] {
            let a = poisson_extend_ball(&spec, &p).unwrap();
            let b = poisson_kernel_ball(&spec, &p, 4).unwrap();
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
        let disk = cos_theta();
        let a = poisson_kernel_ball(&disk, &[0.6, 0.6], 2).unwrap();
        assert!((a - 0.6).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let spec = BoundarySpec::ZonalGegenbauer(
            ZonalGegenbauer::new(4, vec![0.5, 0.5, 0.5, 0.5], vec![0.0, 1.0, -3.0, 0.7]).unwrap(),
        );
        let x = [0.1, -0.2, 0.3, 0.15];
        let g = harmonic_gradient_ball(&spec, &x).unwrap();
        let h = 1e-5;
        for j in 0..4 {
            let mut a = x;
            let mut b = x;
            a[j] += h;
            b[j] -= h;
            let fd = (poisson_extend_ball(&spec, &a).unwrap() - poisson_extend_ball(&spec, &b).unwrap()) / (2.0 * h);
            assert!((fd - g[j]).abs() < 1e-8);
        }
    }

    #[test]
    fn projection_norm_examples() {
        let n1 = laplace_projection_norms(&cos_theta()).unwrap();
        assert!((n1.get(1) - PI).abs() < 1e-15);
        let s2 = BoundarySpec::ZonalGegenbauer(ZonalGegenbauer::new(3, vec![1.0, 0.0, 0.0], vec![0.0, 0.0, -2.0]).unwrap());
        assert!((laplace_projection_norms(&s2).unwrap().get(2) - 16.0 * PI / 5.0).abs() < 1e-13);
        let s3 = BoundarySpec::ZonalGegenbauer(ZonalGegenbauer::new(4, vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, -3.0]).unwrap());
        assert!((laplace_projection_norms(&s3).unwrap().get(2) - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn sampled_sphere_projection() {
        let level = 6;
        let rule = sphere_rule::<f64>(SphereKind::Sphere2, level).unwrap();
        let values: Vec<f64> = rule.iter().map(|(p, _)| -2.0 * (1.5 * p[0] * p[0] - 0.5) + p[2]).collect();
        let norms = laplace_projection_norms(&BoundarySpec::SampledGrid(SampledGrid::Sphere2 { level, values })).unwrap();
        assert!((norms.get(2) - 16.0 * PI / 5.0).abs() < 1e-10);
        assert!((norms.get(1) - 4.0 * PI / 3.0).abs() < 1e-10);
        assert!(norms.error < 1e-10);
    }

    #[test]
    fn disk_field_is_holomorphic() {
        let c = CircleFourier::new(
            0.0,
            vec![
                FourierTerm { k: 1, a: 3.0, b: 0.0 },
                FourierTerm { k: 2, a: 1.0, b: 0.0 },
                FourierTerm { k: 5, a: 0.0, b: -2.0 },
            ],
        )
        .unwrap();
        let f = disk_holomorphic_field(&c);
        let p = [0.3, -0.4];
        assert!(dirac_residual(&f, &p, 1e-4).unwrap() < 1e-7);
        // real part on the circle reproduces the data
        let th = 0.7f64;
        let v = f.eval(&[0.999_999 * th.cos(), 0.999_999 * th.sin()]).sc();
        assert!((v - c.eval(th)).abs() < 1e-4);
        let d = f.d0(&p);
        let fd = (f.eval(&[p[0] + 1e-6, p[1]]) - f.eval(&[p[0] - 1e-6, p[1]])).scale(0.5e6);
        assert!(d.max_abs_diff(&fd) < 1e-6);
    }
}
