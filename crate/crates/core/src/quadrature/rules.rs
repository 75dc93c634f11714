//! Product rules on spheres, boxes, rays and compactified whole/half spaces.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::gauss::{gauss_legendre, gl_composite};
use super::sum::{pairwise, Integrable};

/// Which domain a [`QuadratureRule`] discretizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DomainKind<T> {
    /// Unit circle `S¹ ⊂ R²`.
    Circle,
    /// Unit sphere `S² ⊂ R³`.
    Sphere2,
    /// Unit sphere `S³ ⊂ R⁴`.
    Sphere3,
    /// Cube `[-L, L]^n` around a center.
    Box { dim: usize, half_width: T },
    /// Ray `(0, Y]` with weight `y^λ` folded into the weights.
    Ray { power: T, cap: T },
    /// All of `R^n`, polar coordinates with a compactifying radial map.
    WholeSpace { dim: usize },
    /// Upper half-space `R^n × (0, ∞)`; last coordinate is the height.
    HalfSpace { dim: usize },
}

/// Sphere rules by ambient dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereKind {
    Circle,
    Sphere2,
    Sphere3,
}

impl SphereKind {
    /// Sphere `S^{n-1}` in `R^n`.
    pub fn for_ambient(n: usize) -> Result<Self> {
        match n {
            2 => Ok(Self::Circle),
            3 => Ok(Self::Sphere2),
            4 => Ok(Self::Sphere3),
            _ => Err(Error::UnsupportedDimension(n)),
        }
    }

    pub fn ambient(self) -> usize {
        match self {
            Self::Circle => 2,
            Self::Sphere2 => 3,
            Self::Sphere3 => 4,
        }
    }
}

/// Nodes (flattened, `point_dim` coordinates each) and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub kind: DomainKind<T>,
    pub level: usize,
    point_dim: usize,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn from_parts(
        kind: DomainKind<T>,
        level: usize,
        point_dim: usize,
        nodes: Vec<T>,
        weights: Vec<T>,
    ) -> Result<Self> {
        if point_dim == 0 || nodes.len() != point_dim * weights.len() {
            return Err(Error::Domain(format!(
                "{} node coordinates for {} weights of dimension {point_dim}",
                nodes.len(),
                weights.len()
            )));
        }
        Ok(Self {
            kind,
            level,
            point_dim,
            nodes,
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point_dim(&self) -> usize {
        self.point_dim
    }

    pub fn node(&self, i: usize) -> &[T] {
        &self.nodes[i * self.point_dim..(i + 1) * self.point_dim]
    }

    pub fn weight(&self, i: usize) -> T {
        self.weights[i]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[T], T)> + '_ {
        self.nodes
            .chunks_exact(self.point_dim)
            .zip(self.weights.iter().copied())
    }

    pub fn total_weight(&self) -> T {
        super::sum::pairwise_sum(&self.weights)
    }
}

/// `Σ wᵢ g(xᵢ)`: nodes are evaluated in parallel, gathered in node order and
/// reduced by the fixed pairwise tree, so the result does not depend on the
/// number of worker threads.
pub fn integrate<T, V, G>(rule: &QuadratureRule<T>, g: G) -> Result<V>
where
    T: Real,
    V: Integrable<T>,
    G: Fn(&[T]) -> V + Sync,
{
    let values: Vec<V> = (0..rule.len())
        .into_par_iter()
        .map(|i| g(rule.node(i)).scaled(rule.weight(i)))
        .collect();
    if let Some(index) = values.iter().position(|v| !v.all_finite()) {
        return Err(Error::NonFinite {
            index,
            point: rule.node(index).iter().map(|c| c.as_f64()).collect(),
        });
    }
    pairwise::<T, V>(&values).ok_or_else(|| Error::Domain("empty quadrature rule".into()))
}

/// Product rule on `S¹`, `S²` or `S³`.
///
/// * circle: `2·level` equispaced points;
/// * sphere2: `level` Gauss–Legendre nodes in the polar cosine times
///   `2·level` azimuths, exact through degree `2·level − 1`;
/// * sphere3: `level` Gauss–Chebyshev (second kind) nodes in the first
///   coordinate, which absorbs the `sqrt(1−t²)` fiber Jacobian, times the
///   sphere2 rule on each fiber.
pub fn sphere_rule<T: Real>(kind: SphereKind, level: usize) -> Result<QuadratureRule<T>> {
    if level == 0 {
        return Err(Error::Domain("sphere rule level must be >= 1".into()));
    }
    let (dim, nodes, weights) = match kind {
        SphereKind::Circle => {
            let m = 2 * level;
            let h = T::lit(2.0) * T::PI() / T::from_count(m);
            let mut nodes = Vec::with_capacity(2 * m);
            for j in 0..m {
                let th = h * T::from_count(j);
                nodes.push(th.cos());
                nodes.push(th.sin());
            }
            (2, nodes, vec![h; m])
        }
        SphereKind::Sphere2 => sphere2_parts::<T>(level),
        SphereKind::Sphere3 => {
            let (_, fiber_nodes, fiber_weights) = sphere2_parts::<T>(level);
            let step = T::PI() / T::from_count(level + 1);
            let mut nodes = Vec::new();
            let mut weights = Vec::new();
            for j in 1..=level {
                let psi = step * T::from_count(j);
                let (t, s) = (psi.cos(), psi.sin());
                let wt = step * s * s;
                for (p, &w) in fiber_nodes.chunks_exact(3).zip(&fiber_weights) {
                    nodes.extend_from_slice(&[t, s * p[0], s * p[1], s * p[2]]);
                    weights.push(wt * w);
                }
            }
            (4, nodes, weights)
        }
    };
    let kind = match kind {
        SphereKind::Circle => DomainKind::Circle,
        SphereKind::Sphere2 => DomainKind::Sphere2,
        SphereKind::Sphere3 => DomainKind::Sphere3,
    };
    QuadratureRule::from_parts(kind, level, dim, nodes, weights)
}

fn sphere2_parts<T: Real>(level: usize) -> (usize, Vec<T>, Vec<T>) {
    let gl = gauss_legendre::<T>(level);
    let m = 2 * level;
    let h = T::lit(2.0) * T::PI() / T::from_count(m);
    let mut nodes = Vec::with_capacity(3 * level * m);
    let mut weights = Vec::with_capacity(level * m);
    for (&t, &wt) in gl.nodes.iter().zip(&gl.weights) {
        let s = (T::one() - t * t).max(T::zero()).sqrt();
        for j in 0..m {
            let phi = h * T::from_count(j);
            nodes.extend_from_slice(&[t, s * phi.cos(), s * phi.sin()]);
            weights.push(wt * h);
        }
    }
    (3, nodes, weights)
}

/// Tensor rule on the cube `center + [-L, L]^n`: each axis is split into
/// panels of width at most one, with `level` Gauss–Legendre nodes per panel.
pub fn box_rule(center: &[f64], half_width: f64, level: usize) -> Result<QuadratureRule<f64>> {
    let n = center.len();
    if n == 0 || n > 4 {
        return Err(Error::UnsupportedDimension(n));
    }
    if !(half_width > 0.0) || level == 0 {
        return Err(Error::Domain("box rule needs L > 0 and level >= 1".into()));
    }
    let panels = (2.0 * half_width).ceil().max(1.0) as usize;
    let breaks: Vec<f64> = (0..=panels)
        .map(|j| -half_width + 2.0 * half_width * j as f64 / panels as f64)
        .collect();
    let axis = gl_composite(&breaks, level);
    let total = axis.len().pow(n as u32);
    let mut nodes = Vec::with_capacity(total * n);
    let mut weights = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rem = flat;
        let mut w = 1.0;
        for c in center {
            let (x, wx) = axis[rem % axis.len()];
            rem /= axis.len();
            nodes.push(c + x);
            w *= wx;
        }
        weights.push(w);
    }
    QuadratureRule::from_parts(
        DomainKind::Box {
            dim: n,
            half_width,
        },
        level,
        n,
        nodes,
        weights,
    )
}

/// Number of geometric panels in the ray rule.
const RAY_PANELS: usize = 24;

/// Graded composite rule on `(0, Y]` with the weight `y^λ` folded in.
/// Breakpoints `Y·2^{-j}` resolve both the endpoint behaviour of `y^λ` and
/// the decay scale of typical integrands.
pub fn ray_rule(power: f64, cap: f64, level: usize) -> Result<QuadratureRule<f64>> {
    if !(cap > 0.0) || level == 0 {
        return Err(Error::Domain("ray rule needs a positive cap and level >= 1".into()));
    }
    let mut breaks: Vec<f64> = (0..=RAY_PANELS).map(|j| cap * 0.5f64.powi(j as i32)).collect();
    breaks.push(0.0);
    breaks.reverse();
    let pairs = gl_composite(&breaks, level);
    let nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let weights: Vec<f64> = pairs.iter().map(|&(y, w)| w * y.powf(power)).collect();
    QuadratureRule::from_parts(DomainKind::Ray { power, cap }, level, 1, nodes, weights)
}

/// Directions on `S^{n-1}` for `n ∈ {1, 2, 3}`; `n = 1` is `{±1}`.
pub fn direction_rule(n: usize, level: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    match n {
        1 => Ok(vec![(vec![-1.0], 1.0), (vec![1.0], 1.0)]),
        2 | 3 | 4 => {
            let r = sphere_rule::<f64>(SphereKind::for_ambient(n)?, level)?;
            Ok(r.iter().map(|(p, w)| (p.to_vec(), w)).collect())
        }
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

/// Radial map `ρ = ρ₀ (s/(1−s))²` on `s ∈ (0,1)`; returns `(ρ, dρ/ds · w)`.
fn compact_radial(rho0: f64, level: usize) -> Vec<(f64, f64)> {
    let breaks = [0.0, 0.25, 0.5, 0.75, 1.0];
    gl_composite(&breaks, level)
        .into_iter()
        .map(|(s, w)| {
            let q = s / (1.0 - s);
            (rho0 * q * q, w * rho0 * 2.0 * s / (1.0 - s).powi(3))
        })
        .collect()
}

/// Rule on all of `R^n` (`n ≤ 3`) for integrands that decay at least like
/// `|x|^{-n-2}`: polar coordinates around `center`, radius compactified
/// with scale `rho0`. `level` sets nodes per radial panel; directions use
/// `direction_level`.
pub fn whole_space_rule(
    center: &[f64],
    rho0: f64,
    level: usize,
    direction_level: usize,
) -> Result<QuadratureRule<f64>> {
    let n = center.len();
    let dirs = direction_rule(n, direction_level)?;
    let radial = compact_radial(rho0, level);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for &(rho, wr) in &radial {
        let jac = wr * rho.powi(n as i32 - 1);
        for (omega, wo) in &dirs {
            nodes.extend(center.iter().zip(omega).map(|(c, o)| c + rho * o));
            weights.push(jac * wo);
        }
    }
    QuadratureRule::from_parts(DomainKind::WholeSpace { dim: n }, level, n, nodes, weights)
}

/// Rule on the upper half-space `R^n × (0, ∞)`, `n ≤ 3`: polar coordinates
/// about `(center, 0)` with the compactified radius and the polar angle
/// from the height axis mapped by `θ = (π/2)(1 − (1−τ)²)`, which clusters
/// nodes toward the boundary plane. Points are `(x_1..x_n, y)`.
pub fn half_space_rule(
    center: &[f64],
    rho0: f64,
    level: usize,
    direction_level: usize,
) -> Result<QuadratureRule<f64>> {
    let n = center.len();
    let dirs = direction_rule(n, direction_level)?;
    let radial = compact_radial(rho0, level);
    let polar: Vec<(f64, f64)> = gl_composite(&[0.0, 0.5, 1.0], level)
        .into_iter()
        .map(|(tau, w)| {
            let th = std::f64::consts::FRAC_PI_2 * (1.0 - (1.0 - tau).powi(2));
            (th, w * std::f64::consts::PI * (1.0 - tau))
        })
        .collect();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for &(rho, wr) in &radial {
        let jr = wr * rho.powi(n as i32);
        for &(th, wt) in &polar {
            let (s, c) = th.sin_cos();
            let jt = wt * s.powi(n as i32 - 1);
            for (omega, wo) in &dirs {
                nodes.extend(center.iter().zip(omega).map(|(x, o)| x + rho * s * o));
                nodes.push(rho * c);
                weights.push(jr * jt * wo);
            }
        }
    }
    let dim = n + 1;
    QuadratureRule::from_parts(DomainKind::HalfSpace { dim: n }, level, dim, nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sphere_measures() {
        let c = sphere_rule::<f64>(SphereKind::Circle, 5).unwrap();
        assert!((c.total_weight() - 2.0 * PI).abs() < 1e-13);
        let s2 = sphere_rule::<f64>(SphereKind::Sphere2, 6).unwrap();
        assert!((s2.total_weight() - 4.0 * PI).abs() < 1e-12);
        let s3 = sphere_rule::<f64>(SphereKind::Sphere3, 6).unwrap();
        assert!((s3.total_weight() - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn nodes_lie_on_spheres() {
        for kind in [SphereKind::Circle, SphereKind::Sphere2, SphereKind::Sphere3] {
            let r = sphere_rule::<f64>(kind, 4).unwrap();
            for (p, _) in r.iter() {
                let n2: f64 = p.iter().map(|x| x * x).sum();
                assert!((n2 - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn box_gaussian() {
        let r = box_rule(&[0.0], 6.0, 10).unwrap();
        let v: f64 = integrate(&r, |x| (-PI * x[0] * x[0]).exp()).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let r2 = box_rule(&[0.5, -0.25], 6.0, 12).unwrap();
        let v2: f64 = integrate(&r2, |x| {
            (-PI * ((x[0] - 0.5).powi(2) + (x[1] + 0.25).powi(2))).exp()
        })
        .unwrap();
        assert!((v2 - 1.0).abs() < 1e-12, "{v2}");
    }

    #[test]
    fn whole_space_gaussian() {
        for n in 1..=3 {
            let c = vec![0.2; n];
            let r = whole_space_rule(&c, 1.0, 24, 8).unwrap();
            let v: f64 = integrate(&r, |x| {
                (-PI * x.iter().map(|t| (t - 0.2) * (t - 0.2)).sum::<f64>()).exp()
            })
            .unwrap();
            assert!((v - 1.0).abs() < 1e-10, "n={n} v={v}");
        }
    }

    #[test]
    fn half_space_gaussian() {
        // ∫ e^{-π(|x|²+y²)} over the half-space is one half
        for n in 1..=3 {
            let r = half_space_rule(&vec![0.0; n], 1.0, 24, 8).unwrap();
            let v: f64 = integrate(&r, |p| (-PI * p.iter().map(|t| t * t).sum::<f64>()).exp()).unwrap();
            assert!((v - 0.5).abs() < 1e-10, "n={n} v={v}");
        }
    }

    #[test]
    fn ray_weights() {
        let r = ray_rule(1.0, 10.0, 12).unwrap();
        let v: f64 = integrate(&r, |y| (-4.0 * PI * y[0]).exp()).unwrap();
        assert!((v - 1.0 / (16.0 * PI * PI)).abs() < 1e-14);
    }

    #[test]
    fn non_finite_node_is_reported() {
        let r = sphere_rule::<f64>(SphereKind::Circle, 2).unwrap();
        let err = integrate(&r, |p| if p[1] > 0.5 { f64::NAN } else { 1.0 }).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 1, .. }));
    }
}
