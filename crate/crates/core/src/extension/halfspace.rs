//! Harmonic and monogenic extension into the upper half-space
//! `R^{n+1}_+ = {(x, y) : y > 0}`.
//!
//! Three independent evaluation routes are provided for Gaussian data:
//!
//! * kernel: convolution with the Poisson kernel and the conjugate
//!   (Riesz) kernels by adaptive polar quadrature around the target point;
//! * Fourier: `u = ∫ f̂(t) e^{−2πi t·x} e^{−2π|t|y} dt` with the multiplier
//!   `−i t_k/|t|` for the conjugates, under `f̂(t) = ∫ e^{2πi x·t} f(x) dx`;
//! * subordination: the Poisson semigroup written as an average of heat
//!   semigroups, which has closed forms on Gaussians and stays accurate on
//!   the boundary plane itself.
//!
//! The conjugates `v_k` satisfy `∂_y u = Σ ∂_k v_k`, `∂_y v_k = −∂_k u`, so
//! `F = u + Σ v_k e_k` is left-monogenic for `D = ½(∂_y + Σ e_k ∂_k)`.

use num_complex::Complex64;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::quadrature::{gauss::normalize_breaks, gl_composite, pairwise_sum, rules::direction_rule};
use crate::special_fn::sphere_area;

use super::boundary::{dist, dot, BoundarySpec, GaussianFamily, GaussianTerm, SampledGrid};
use super::field::{FieldDomain, ParavectorField};

/// `u`, `∂_y u`, `v_k` and `∂_y v_k` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionValues {
    pub u: f64,
    pub u_y: f64,
    pub v: Vec<f64>,
    pub v_y: Vec<f64>,
}

impl ExtensionValues {
    fn zero(n: usize) -> Self {
        Self {
            u: 0.0,
            u_y: 0.0,
            v: vec![0.0; n],
            v_y: vec![0.0; n],
        }
    }

    fn add_scaled(&mut self, other: &[f64], w: f64) {
        let n = self.v.len();
        self.u += w * other[0];
        self.u_y += w * other[1];
        for k in 0..n {
            self.v[k] += w * other[2 + k];
            self.v_y[k] += w * other[2 + n + k];
        }
    }

    /// `u + Σ v_k e_k` in `Cl(0,n)`.
    pub fn paravector(&self) -> Multivector<f64> {
        Multivector::paravector(self.v.len(), self.u, &self.v).expect("n <= 3")
    }

    /// `∂_y u + Σ ∂_y v_k e_k`.
    pub fn paravector_y(&self) -> Multivector<f64> {
        Multivector::paravector(self.v.len(), self.u_y, &self.v_y).expect("n <= 3")
    }
}

fn check_height(y: f64) -> Result<()> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("height y = {y} must be positive")));
    }
    Ok(())
}

fn gaussian(spec: &BoundarySpec) -> Result<&GaussianFamily> {
    match spec {
        BoundarySpec::GaussianFamily(g) => Ok(g),
        other => Err(Error::Inadmissible(format!(
            "{} data cannot be extended into a half-space by this route",
            other.kind_name()
        ))),
    }
}

/// Kernel values `[P, ∂_y P, Q_k…, ∂_y Q_k…]` at displacement `d = t − x`.
fn kernels(n: usize, y: f64, d: &[f64], out: &mut [f64]) {
    let c = 2.0 / sphere_area(n).expect("n >= 1");
    let r2 = dot(d, d);
    let q = y * y + r2;
    let q1 = q.powf(-(n as f64 + 1.0) / 2.0);
    let q3 = q1 / q;
    let np1 = n as f64 + 1.0;
    out[0] = c * y * q1;
    out[1] = c * (q1 - np1 * y * y * q3);
    for k in 0..n {
        out[2 + k] = c * d[k] * q1;
        out[2 + n + k] = -c * np1 * y * d[k] * q3;
    }
}

/// Panel nodes for the radial variable of the polar rule about `x`.
fn radial_nodes(lower: f64, upper: f64, y: f64, width: f64) -> Vec<(f64, f64)> {
    let mut breaks = Vec::new();
    let mut g = y / 8.0;
    while g < upper {
        breaks.push(g);
        g *= 2.0;
    }
    let step = width / 2.0;
    let mut m = (lower / step).ceil();
    while m * step < upper {
        breaks.push(m * step);
        m += 1.0;
    }
    gl_composite(&normalize_breaks(breaks, lower, upper), 12)
}

/// Contribution of one Gaussian term to all kernel integrals.
fn kernel_term(term: &GaussianTerm, n: usize, x: &[f64], y: f64, acc: &mut ExtensionValues) {
    let reach = term.support_radius();
    let d = dist(&term.center, x);
    let mut kv = vec![0.0; 2 + 2 * n];
    let mut disp = vec![0.0; n];
    let mut sums: Vec<Vec<f64>> = vec![Vec::new(); 2 + 2 * n];
    let mut push = |t: &[f64], w: f64, kv: &mut Vec<f64>, disp: &mut Vec<f64>| {
        for j in 0..n {
            disp[j] = t[j] - x[j];
        }
        kernels(n, y, disp, kv);
        let fw = w * term.eval(t);
        for (s, k) in sums.iter_mut().zip(kv.iter()) {
            s.push(fw * k);
        }
    };
    if d >= 2.0 * reach {
        // kernel is smooth across the support: tensor rule on its box
        let axis: Vec<Vec<(f64, f64)>> = term
            .center
            .iter()
            .map(|c| {
                let b: Vec<f64> = (0..=4).map(|j| c - reach + reach * j as f64 / 2.0).collect();
                gl_composite(&b, 12)
            })
            .collect();
        let total: usize = axis.iter().map(|a| a.len()).product();
        let mut t = vec![0.0; n];
        for flat in 0..total {
            let mut rem = flat;
            let mut w = 1.0;
            for j in 0..n {
                let (tj, wj) = axis[j][rem % axis[j].len()];
                rem /= axis[j].len();
                t[j] = tj;
                w *= wj;
            }
            push(&t, w, &mut kv, &mut disp);
        }
    } else {
        let upper = d + reach;
        let lower = (d - reach).max(0.0);
        let radial = radial_nodes(lower, upper, y, term.width);
        // trapezoidal aliasing of the envelope on the circle of radius `upper`
        let level = ((10.0 * upper / term.width).ceil() as usize).max(16);
        let dirs = direction_rule(n, level).expect("n <= 3");
        let mut t = vec![0.0; n];
        for &(rho, wr) in &radial {
            let jac = wr * rho.powi(n as i32 - 1);
            for (omega, wo) in &dirs {
                for j in 0..n {
                    t[j] = x[j] + rho * omega[j];
                }
                push(&t, jac * wo, &mut kv, &mut disp);
            }
        }
    }
    let totals: Vec<f64> = sums.iter().map(|s| pairwise_sum(s)).collect();
    acc.add_scaled(&totals, 1.0);
}

/// All kernel-route quantities at `(x, y)`.
pub fn kernel_extension(f: &GaussianFamily, x: &[f64], y: f64) -> Result<ExtensionValues> {
    check_height(y)?;
    if x.len() != f.n {
        return Err(Error::DimensionMismatch {
            left: f.n,
            right: x.len(),
        });
    }
    let mut acc = ExtensionValues::zero(f.n);
    for term in &f.terms {
        kernel_term(term, f.n, x, y, &mut acc);
    }
    Ok(acc)
}

fn kernel_extension_line(half_width: f64, values: &[f64], x: f64, y: f64) -> ExtensionValues {
    let mut pts = SampledGrid::line_points(half_width, values.len());
    let mut g = y / 8.0;
    while g < 4.0 * half_width {
        pts.push(x - g);
        pts.push(x + g);
        g *= 2.0;
    }
    pts.push(x);
    let rule = gl_composite(&normalize_breaks(pts, -half_width, half_width), 8);
    let mut acc = ExtensionValues::zero(1);
    let mut kv = [0.0; 4];
    let mut cols: Vec<Vec<f64>> = vec![Vec::with_capacity(rule.len()); 4];
    for &(t, w) in &rule {
        kernels(1, y, &[t - x], &mut kv);
        let fw = w * SampledGrid::line_eval(half_width, values, t);
        for (c, k) in cols.iter_mut().zip(kv) {
            c.push(fw * k);
        }
    }
    let totals: Vec<f64> = cols.iter().map(|c| pairwise_sum(c)).collect();
    acc.add_scaled(&totals, 1.0);
    acc
}

fn kernel_values(spec: &BoundarySpec, x: &[f64], y: f64) -> Result<ExtensionValues> {
    check_height(y)?;
    match spec {
        BoundarySpec::SampledGrid(SampledGrid::Line { half_width, values }) => {
            if x.len() != 1 {
                return Err(Error::DimensionMismatch { left: 1, right: x.len() });
            }
            Ok(kernel_extension_line(*half_width, values, x[0], y))
        }
        _ => kernel_extension(gaussian(spec)?, x, y),
    }
}

/// Poisson extension `u(x, y) = ∫ P_y(x − t) f(t) dt`,
/// `P_y(x) = (2/ω_n) y / (y² + |x|²)^{(n+1)/2}`, by kernel quadrature.
pub fn poisson_extend_halfspace(spec: &BoundarySpec, x: &[f64], y: f64) -> Result<f64> {
    Ok(kernel_values(spec, x, y)?.u)
}

/// Conjugate harmonic `v_k(x, y) = (2/ω_n) ∫ (t_k − x_k) f(t) / (y² + |t − x|²)^{(n+1)/2} dt`.
pub fn riesz_conjugate(spec: &BoundarySpec, x: &[f64], y: f64, k: usize) -> Result<f64> {
    if k == 0 || k > x.len() {
        return Err(Error::Domain(format!("conjugate index {k} outside 1..={}", x.len())));
    }
    Ok(kernel_values(spec, x, y)?.v[k - 1])
}

/// `F = u + Σ v_k e_k` from the kernel route.
pub fn monogenic_extension_halfspace(spec: &BoundarySpec, x: &[f64], y: f64) -> Result<Multivector<f64>> {
    Ok(kernel_values(spec, x, y)?.paravector())
}

/// Polar nodes over frequency space `R^n` covering the support of `f̂`,
/// with panels fine enough for oscillation at spatial offset `offset`.
pub fn spectral_nodes(f: &GaussianFamily, offset: f64, level: usize) -> Vec<(Vec<f64>, f64)> {
    let reach = f.spectral_reach().max(1e-3);
    let spread = offset + f.terms.iter().map(|t| dot(&t.center, &t.center).sqrt()).fold(0.0, f64::max);
    let h = (0.5 / f.max_width().max(1e-3)).min(0.25 / (1.0 + spread));
    let panels = (reach / h).ceil().max(1.0) as usize;
    let mut breaks: Vec<f64> = (0..=panels).map(|j| reach * j as f64 / panels as f64).collect();
    // grading toward the origin for weights like |t|^{1/2}
    let first = breaks[1];
    breaks.extend((1..=12).map(|j| first * 0.5f64.powi(j)));
    let breaks = normalize_breaks(breaks, 0.0, reach);
    let radial = gl_composite(&breaks, 10 + level);
    let dir_level = ((std::f64::consts::PI * reach * (spread + 1.0)).ceil() as usize + 4 + level).max(8);
    let dirs = direction_rule(f.n, dir_level).expect("n <= 3");
    let mut out = Vec::with_capacity(radial.len() * dirs.len());
    for &(rho, wr) in &radial {
        let jac = wr * rho.powi(f.n as i32 - 1);
        for (omega, wo) in &dirs {
            out.push((omega.iter().map(|o| rho * o).collect(), jac * wo));
        }
    }
    out
}

/// Fourier route for `u` and the conjugates at `(x, y)`.
pub fn fourier_extension(f: &GaussianFamily, x: &[f64], y: f64) -> Result<ExtensionValues> {
    check_height(y)?;
    let n = f.n;
    let nodes = spectral_nodes(f, dot(x, x).sqrt(), 0);
    let mut cols: Vec<Vec<f64>> = vec![Vec::with_capacity(nodes.len()); 2 + 2 * n];
    let two_pi = 2.0 * std::f64::consts::PI;
    for (t, w) in &nodes {
        let rho = dot(t, t).sqrt();
        let base = f.fourier(t) * Complex64::from_polar(w * (-two_pi * rho * y).exp(), -two_pi * dot(t, x));
        cols[0].push(base.re);
        cols[1].push(-two_pi * rho * base.re);
        for k in 0..n {
            let m = Complex64::new(0.0, -t[k] / rho);
            let vk = base * m;
            cols[2 + k].push(vk.re);
            cols[2 + n + k].push(-two_pi * rho * vk.re);
        }
    }
    let totals: Vec<f64> = cols.iter().map(|c| pairwise_sum(c)).collect();
    let mut acc = ExtensionValues::zero(n);
    acc.add_scaled(&totals, 1.0);
    Ok(acc)
}

/// Fourier-route Poisson extension.
pub fn poisson_extend_halfspace_fourier(spec: &BoundarySpec, x: &[f64], y: f64) -> Result<f64> {
    Ok(fourier_extension(gaussian(spec)?, x, y)?.u)
}

/// Fourier-multiplier route for `v_k`.
pub fn riesz_conjugate_fourier(spec: &BoundarySpec, x: &[f64], y: f64, k: usize) -> Result<f64> {
    if k == 0 || k > x.len() {
        return Err(Error::Domain(format!("conjugate index {k} outside 1..={}", x.len())));
    }
    Ok(fourier_extension(gaussian(spec)?, x, y)?.v[k - 1])
}

/// Values from the subordinated heat representation.
#[derive(Debug, Clone, PartialEq)]
pub struct SubordinatedValues {
    pub u: f64,
    pub u_y: f64,
    /// `∂u/∂x_k`.
    pub grad_x: Vec<f64>,
    pub v: Vec<f64>,
}

impl SubordinatedValues {
    /// `|∇u|²` over all `n + 1` variables.
    pub fn grad_sqr(&self) -> f64 {
        self.u_y * self.u_y + dot(&self.grad_x, &self.grad_x)
    }

    pub fn paravector(&self) -> Multivector<f64> {
        Multivector::paravector(self.v.len(), self.u, &self.v).expect("n <= 3")
    }

    /// `∂_y F = ∂_y u − Σ ∂_k u e_k`.
    pub fn paravector_y(&self) -> Multivector<f64> {
        let neg: Vec<f64> = self.grad_x.iter().map(|g| -g).collect();
        Multivector::paravector(self.v.len(), self.u_y, &neg).expect("n <= 3")
    }
}

const SIGMA_STEP: f64 = 0.25;

/// Subordination route at `(x, y)`, valid for `y ≥ 0`.
///
/// With `e^{sΔ}` the heat semigroup and `H_s = e^{sΔ} f`,
/// `u = ∫ ψ_y(s) H_s ds`, `ψ_y(s) = y s^{−3/2} e^{−y²/4s} / (2√π)`, and
/// `v_k = ∫ s^{−1/2} e^{−y²/4s} ∂_k H_s ds / √π`, whence
/// `∂_y u = Σ ∂_k v_k = ∫ s^{−1/2} e^{−y²/4s} ΔH_s ds / √π`. Each integral is
/// a trapezoid sum in `σ = ln s`.
pub fn subordinated(f: &GaussianFamily, x: &[f64], y: f64) -> Result<SubordinatedValues> {
    if !(y >= 0.0) {
        return Err(Error::Domain(format!("height y = {y} must be non-negative")));
    }
    let n = f.n;
    let pi = std::f64::consts::PI;
    let sqrt_pi = pi.sqrt();
    let mut out = SubordinatedValues {
        u: 0.0,
        u_y: 0.0,
        grad_x: vec![0.0; n],
        v: vec![0.0; n],
    };
    for term in &f.terms {
        let w2 = term.width * term.width;
        let z: Vec<f64> = x.iter().zip(&term.center).map(|(a, c)| a - c).collect();
        let z2 = dot(&z, &z);
        let a2 = dot(&term.frequency, &term.frequency);
        let k0 = Complex64::from_polar(
            term.amplitude * (-pi * w2 * a2).exp(),
            2.0 * pi * dot(&term.frequency, &term.center),
        );
        let q: Vec<Complex64> = z
            .iter()
            .zip(&term.frequency)
            .map(|(zj, aj)| Complex64::new(*zj, -w2 * aj))
            .collect();
        let qq: Complex64 = q.iter().map(|v| v * v).sum();
        let floor = w2.ln() - 75.0;
        let lo = if y > 0.0 { (2.0 * y.ln() - 6.0).max(floor) } else { floor };
        let hi = (y * y).max(w2).max(z2 + w2).ln() + 78.0 / (n as f64 + 1.0) + 4.0;
        let steps = ((hi - lo) / SIGMA_STEP).ceil() as usize;
        let (mut su, mut suy) = (Vec::with_capacity(steps), Vec::with_capacity(steps));
        let mut sg: Vec<Vec<f64>> = vec![Vec::with_capacity(steps); n];
        let mut sv: Vec<Vec<f64>> = vec![Vec::with_capacity(steps); n];
        for j in 0..=steps {
            let sigma = lo + SIGMA_STEP * j as f64;
            let s = sigma.exp();
            let big_w2 = w2 + 4.0 * pi * s;
            let e = k0 * (w2 / big_w2).powf(n as f64 / 2.0) * (-pi * qq / big_w2).exp();
            let damp = if y > 0.0 { (-y * y / (4.0 * s)).exp() } else { 1.0 };
            let wv = SIGMA_STEP * s.sqrt() * damp / sqrt_pi;
            let lap = e * (4.0 * pi * pi * qq / (big_w2 * big_w2) - 2.0 * pi * n as f64 / big_w2);
            suy.push(wv * lap.re);
            let wu = if y > 0.0 { SIGMA_STEP * y * damp / (2.0 * sqrt_pi * s.sqrt()) } else { 0.0 };
            su.push(wu * e.re);
            for k in 0..n {
                let dk = (e * (-2.0 * pi * q[k] / big_w2)).re;
                sg[k].push(wu * dk);
                sv[k].push(wv * dk);
            }
        }
        out.u_y += pairwise_sum(&suy);
        for k in 0..n {
            out.v[k] += pairwise_sum(&sv[k]);
        }
        if y > 0.0 {
            out.u += pairwise_sum(&su);
            for k in 0..n {
                out.grad_x[k] += pairwise_sum(&sg[k]);
            }
        }
    }
    if y == 0.0 {
        out.u = f.eval(x);
        out.grad_x = f.gradient(x);
    }
    Ok(out)
}

/// `F = u + Σ v_k e_k` evaluated by the kernel route, with analytic `∂_y F`.
/// Points are `(y, x₁, …, x_n)`.
pub fn halfspace_kernel_field(f: &GaussianFamily) -> ParavectorField<Multivector<f64>> {
    let (g, h) = (f.clone(), f.clone());
    ParavectorField::new("halfspace_kernel", FieldDomain::HalfSpace, f.n + 1, move |p| {
        kernel_extension(&g, &p[1..], p[0]).map(|v| v.paravector()).unwrap_or_else(|_| nan_mv(g.n))
    })
    .with_d0(move |p| {
        kernel_extension(&h, &p[1..], p[0]).map(|v| v.paravector_y()).unwrap_or_else(|_| nan_mv(h.n))
    })
}

/// The same field evaluated through the subordinated representation.
pub fn halfspace_subordinated_field(f: &GaussianFamily) -> ParavectorField<Multivector<f64>> {
    let (g, h) = (f.clone(), f.clone());
    ParavectorField::new("halfspace_subordinated", FieldDomain::HalfSpace, f.n + 1, move |p| {
        subordinated(&g, &p[1..], p[0]).map(|v| v.paravector()).unwrap_or_else(|_| nan_mv(g.n))
    })
    .with_d0(move |p| {
        subordinated(&h, &p[1..], p[0]).map(|v| v.paravector_y()).unwrap_or_else(|_| nan_mv(h.n))
    })
}

fn nan_mv(n: usize) -> Multivector<f64> {
    Multivector::scalar(n, f64::NAN).expect("n <= 3")
}
