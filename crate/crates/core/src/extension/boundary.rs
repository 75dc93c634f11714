//! Boundary data descriptions shared by every energy route.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{gl_composite, pairwise_sum, sphere_rule, SphereKind};
use crate::special_fn::{gegenbauer, gegenbauer_with_derivative};

/// Largest degree accepted for band-limited specs.
pub const MAX_DEGREE: usize = 64;

/// One harmonic `a cos kθ + b sin kθ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierTerm {
    pub k: usize,
    pub a: f64,
    pub b: f64,
}

/// `f(θ) = a₀ + Σ (a_k cos kθ + b_k sin kθ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFourier {
    pub a0: f64,
    pub terms: Vec<FourierTerm>,
}

impl CircleFourier {
    pub fn new(a0: f64, terms: Vec<FourierTerm>) -> Result<Self> {
        for t in &terms {
            if t.k == 0 || t.k > MAX_DEGREE {
                return Err(Error::Inadmissible(format!(
                    "circle harmonic degree {} outside 1..={MAX_DEGREE}",
                    t.k
                )));
            }
        }
        Ok(Self { a0, terms })
    }

    /// `(a_k, b_k)` with repeated degrees merged, `k = 1..=max`.
    pub fn coefficients(&self) -> Vec<(f64, f64)> {
        let max = self.max_degree();
        let mut out = vec![(0.0, 0.0); max + 1];
        for t in &self.terms {
            out[t.k].0 += t.a;
            out[t.k].1 += t.b;
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(|t| t.k).max().unwrap_or(0)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.a0
            + self
                .terms
                .iter()
                .map(|t| {
                    let (s, c) = (t.k as f64 * theta).sin_cos();
                    t.a * c + t.b * s
                })
                .sum::<f64>()
    }
}

/// `f(ξ) = Σ_k γ_k P_k^n(ξ·e)` on `S^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalGegenbauer {
    pub n: usize,
    pub axis: Vec<f64>,
    /// `γ_k` indexed by degree.
    pub coeffs: Vec<f64>,
}

impl ZonalGegenbauer {
    pub fn new(n: usize, axis: Vec<f64>, coeffs: Vec<f64>) -> Result<Self> {
        if !(2..=4).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        if axis.len() != n {
            return Err(Error::Inadmissible(format!(
                "pole axis has {} components, expected {n}",
                axis.len()
            )));
        }
        let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::Inadmissible("pole axis must be nonzero".into()));
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::Inadmissible(format!("zonal degree exceeds {MAX_DEGREE}")));
        }
        Ok(Self {
            n,
            axis: axis.iter().map(|x| x / norm).collect(),
            coeffs,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Value at a unit vector.
    pub fn eval(&self, xi: &[f64]) -> Result<f64> {
        let t = dot(xi, &self.axis);
        self.eval_zonal(t)
    }

    /// Value as a function of the polar cosine `t = ξ·e`.
    pub fn eval_zonal(&self, t: f64) -> Result<f64> {
        let mut s = 0.0;
        for (k, &g) in self.coeffs.iter().enumerate() {
            if g != 0.0 {
                s += g * gegenbauer(self.n, k, t)?;
            }
        }
        Ok(s)
    }

    /// `(P_k(t), P_k'(t))` for each nonzero coefficient.
    pub fn terms_with_derivative(&self, t: f64) -> Result<Vec<(usize, f64, f64, f64)>> {
        let mut out = Vec::new();
        for (k, &g) in self.coeffs.iter().enumerate() {
            if g != 0.0 {
                let (p, d) = gegenbauer_with_derivative(self.n, k, t)?;
                out.push((k, g, p, d));
            }
        }
        Ok(out)
    }
}

/// `A exp(−π|x−c|²/w²) cos(2π a·x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianTerm {
    pub amplitude: f64,
    pub center: Vec<f64>,
    pub width: f64,
    pub frequency: Vec<f64>,
}

impl GaussianTerm {
    pub fn isotropic(amplitude: f64, center: Vec<f64>, width: f64) -> Self {
        let n = center.len();
        Self {
            amplitude,
            center,
            width,
            frequency: vec![0.0; n],
        }
    }

    /// Radius beyond which the envelope is below `1e-21` of its peak.
    pub fn support_radius(&self) -> f64 {
        4.0 * self.width
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().zip(&self.center).map(|(a, c)| (a - c) * (a - c)).sum();
        let w2 = self.width * self.width;
        self.amplitude * (-std::f64::consts::PI * r2 / w2).exp() * (2.0 * std::f64::consts::PI * dot(&self.frequency, x)).cos()
    }

    pub fn gradient(&self, x: &[f64], out: &mut [f64]) {
        let pi = std::f64::consts::PI;
        let r2: f64 = x.iter().zip(&self.center).map(|(a, c)| (a - c) * (a - c)).sum();
        let w2 = self.width * self.width;
        let env = self.amplitude * (-pi * r2 / w2).exp();
        let (s, c) = (2.0 * pi * dot(&self.frequency, x)).sin_cos();
        for j in 0..x.len() {
            out[j] += env * (-2.0 * pi * (x[j] - self.center[j]) / w2 * c - 2.0 * pi * self.frequency[j] * s);
        }
    }

    /// `∫ e^{2πi x·t} f(x) dx`.
    pub fn fourier(&self, t: &[f64]) -> Complex64 {
        let pi = std::f64::consts::PI;
        let n = t.len() as i32;
        let w = self.width;
        let pref = 0.5 * self.amplitude * w.powi(n);
        let mut acc = Complex64::new(0.0, 0.0);
        for sign in [1.0, -1.0] {
            let shifted: Vec<f64> = t.iter().zip(&self.frequency).map(|(ti, ai)| ti + sign * ai).collect();
            let r2 = dot(&shifted, &shifted);
            let phase = 2.0 * pi * dot(&self.center, &shifted);
            acc += Complex64::from_polar(pref * (-pi * w * w * r2).exp(), phase);
        }
        acc
    }
}

/// Sum of modulated Gaussians on `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianFamily {
    pub n: usize,
    pub terms: Vec<GaussianTerm>,
}

impl GaussianFamily {
    pub fn new(n: usize, terms: Vec<GaussianTerm>) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        for t in &terms {
            if t.center.len() != n || t.frequency.len() != n {
                return Err(Error::Inadmissible(format!(
                    "Gaussian term dimension does not match n = {n}"
                )));
            }
            if !(t.width > 0.0) {
                return Err(Error::Inadmissible("Gaussian width must be positive".into()));
            }
        }
        Ok(Self { n, terms })
    }

    /// `e^{−π|x|²}` on `R^n`.
    pub fn standard(n: usize) -> Result<Self> {
        Self::new(n, vec![GaussianTerm::isotropic(1.0, vec![0.0; n], 1.0)])
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.n];
        for t in &self.terms {
            t.gradient(x, &mut g);
        }
        g
    }

    pub fn fourier(&self, t: &[f64]) -> Complex64 {
        self.terms.iter().map(|term| term.fourier(t)).sum()
    }

    /// Mean of the centers; natural origin for polar rules.
    pub fn centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.n];
        if self.terms.is_empty() {
            return c;
        }
        for t in &self.terms {
            for (ci, ti) in c.iter_mut().zip(&t.center) {
                *ci += ti;
            }
        }
        c.iter().map(|x| x / self.terms.len() as f64).collect()
    }

    /// Radius of a ball around the centroid containing every support.
    pub fn reach(&self) -> f64 {
        let c = self.centroid();
        self.terms
            .iter()
            .map(|t| dist(&t.center, &c) + t.support_radius())
            .fold(0.0, f64::max)
    }

    pub fn min_width(&self) -> f64 {
        self.terms.iter().map(|t| t.width).fold(f64::INFINITY, f64::min)
    }

    pub fn max_width(&self) -> f64 {
        self.terms.iter().map(|t| t.width).fold(0.0, f64::max)
    }

    /// Largest frequency radius where `f̂` is non-negligible.
    pub fn spectral_reach(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| dot(&t.frequency, &t.frequency).sqrt() + 4.0 / t.width)
            .fold(0.0, f64::max)
    }

    pub fn translated(&self, shift: &[f64]) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| GaussianTerm {
                    center: t.center.iter().zip(shift).map(|(c, s)| c + s).collect(),
                    ..t.clone()
                })
                .collect(),
        }
    }
}

/// Raw samples.
#[derive(Debug, Clone, PartialEq)]
pub enum SampledGrid {
    /// Values at `θ_j = 2πj/N`.
    Circle { values: Vec<f64> },
    /// Values at the nodes of the sphere2 rule of the given level.
    Sphere2 { level: usize, values: Vec<f64> },
    /// Values at `N` equispaced points of `[−L, L]`, endpoints included;
    /// the data are taken to vanish outside.
    Line { half_width: f64, values: Vec<f64> },
}

impl SampledGrid {
    /// Discrete Fourier coefficients of circle samples, up to the Nyquist
    /// degree (exclusive).
    pub fn circle_coefficients(values: &[f64]) -> Result<CircleFourier> {
        let n = values.len();
        if n < 4 {
            return Err(Error::Inadmissible("need at least four circle samples".into()));
        }
        let kmax = ((n - 1) / 2).min(MAX_DEGREE);
        let a0 = pairwise_sum(values) / n as f64;
        let mut terms = Vec::new();
        for k in 1..=kmax {
            let (mut ca, mut cb) = (Vec::with_capacity(n), Vec::with_capacity(n));
            for (j, v) in values.iter().enumerate() {
                let th = 2.0 * std::f64::consts::PI * (j * k % n) as f64 / n as f64;
                ca.push(v * th.cos());
                cb.push(v * th.sin());
            }
            let (a, b) = (2.0 * pairwise_sum(&ca) / n as f64, 2.0 * pairwise_sum(&cb) / n as f64);
            if a != 0.0 || b != 0.0 {
                terms.push(FourierTerm { k, a, b });
            }
        }
        CircleFourier::new(a0, terms)
    }

    /// Sample points of a line grid.
    pub fn line_points(half_width: f64, count: usize) -> Vec<f64> {
        (0..count)
            .map(|j| -half_width + 2.0 * half_width * j as f64 / (count - 1) as f64)
            .collect()
    }

    /// Linear interpolation of line samples (zero outside the window).
    pub fn line_eval(half_width: f64, values: &[f64], x: f64) -> f64 {
        let m = values.len();
        if m < 2 || x < -half_width || x > half_width {
            return 0.0;
        }
        let h = 2.0 * half_width / (m - 1) as f64;
        let s = (x + half_width) / h;
        let j = (s.floor() as usize).min(m - 2);
        let f = s - j as f64;
        values[j] * (1.0 - f) + values[j + 1] * f
    }
}

/// Boundary data for one energy computation.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundarySpec {
    CircleFourier(CircleFourier),
    ZonalGegenbauer(ZonalGegenbauer),
    GaussianFamily(GaussianFamily),
    SampledGrid(SampledGrid),
}

impl BoundarySpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::CircleFourier(_) => "circle_fourier",
            Self::ZonalGegenbauer(_) => "zonal_gegenbauer",
            Self::GaussianFamily(_) => "gaussian_family",
            Self::SampledGrid(_) => "sampled_grid",
        }
    }

    /// `c·f`.
    pub fn scaled(&self, c: f64) -> Self {
        match self {
            Self::CircleFourier(s) => Self::CircleFourier(CircleFourier {
                a0: c * s.a0,
                terms: s
                    .terms
                    .iter()
                    .map(|t| FourierTerm {
                        k: t.k,
                        a: c * t.a,
                        b: c * t.b,
                    })
                    .collect(),
            }),
            Self::ZonalGegenbauer(s) => Self::ZonalGegenbauer(ZonalGegenbauer {
                coeffs: s.coeffs.iter().map(|g| c * g).collect(),
                ..s.clone()
            }),
            Self::GaussianFamily(s) => Self::GaussianFamily(GaussianFamily {
                n: s.n,
                terms: s
                    .terms
                    .iter()
                    .map(|t| GaussianTerm {
                        amplitude: c * t.amplitude,
                        ..t.clone()
                    })
                    .collect(),
            }),
            Self::SampledGrid(g) => Self::SampledGrid(match g {
                SampledGrid::Circle { values } => SampledGrid::Circle {
                    values: values.iter().map(|v| c * v).collect(),
                },
                SampledGrid::Sphere2 { level, values } => SampledGrid::Sphere2 {
                    level: *level,
                    values: values.iter().map(|v| c * v).collect(),
                },
                SampledGrid::Line { half_width, values } => SampledGrid::Line {
                    half_width: *half_width,
                    values: values.iter().map(|v| c * v).collect(),
                },
            }),
        }
    }

    /// `‖f‖²_{L²}` from the analytic description.
    pub fn l2_norm_sqr(&self) -> Result<f64> {
        match self {
            Self::CircleFourier(s) => {
                let pi = std::f64::consts::PI;
                let coeffs = s.coefficients();
                Ok(2.0 * pi * s.a0 * s.a0
                    + pi * coeffs.iter().skip(1).map(|(a, b)| a * a + b * b).sum::<f64>())
            }
            Self::ZonalGegenbauer(s) => Ok(s
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, g)| g * g / crate::special_fn::coeff_c(s.n, k).unwrap_or(f64::NAN))
                .sum()),
            Self::GaussianFamily(f) => gaussian_l2_closed_form(f),
            Self::SampledGrid(_) => Err(Error::Inadmissible(
                "sampled data have no analytic L2 norm; use quadrature".into(),
            )),
        }
    }

    /// `‖f‖²_{L²}` by direct quadrature of `|f|²` (independent of
    /// [`BoundarySpec::l2_norm_sqr`]).
    pub fn l2_norm_sqr_quadrature(&self, level: usize) -> Result<f64> {
        let pi = std::f64::consts::PI;
        match self {
            Self::CircleFourier(s) => {
                let m = 2 * (s.max_degree() + 1) * level.max(1);
                let h = 2.0 * pi / m as f64;
                let vals: Vec<f64> = (0..m).map(|j| s.eval(h * j as f64).powi(2) * h).collect();
                Ok(pairwise_sum(&vals))
            }
            Self::ZonalGegenbauer(s) => {
                let kind = SphereKind::for_ambient(s.n)?;
                let rule = sphere_rule::<f64>(kind, s.max_degree() + 2 + level)?;
                crate::quadrature::integrate(&rule, |p| s.eval(p).map(|v| v * v).unwrap_or(f64::NAN))
            }
            Self::GaussianFamily(f) => {
                let c = f.centroid();
                let rule = crate::quadrature::whole_space_rule(&c, f.max_width(), 8 * level.max(2), 4 * level.max(2))?;
                crate::quadrature::integrate(&rule, |x| f.eval(x).powi(2))
            }
            Self::SampledGrid(g) => match g {
                SampledGrid::Circle { values } => {
                    let h = 2.0 * pi / values.len() as f64;
                    Ok(h * pairwise_sum(&values.iter().map(|v| v * v).collect::<Vec<_>>()))
                }
                SampledGrid::Sphere2 { level, values } => {
                    let rule = sphere_rule::<f64>(SphereKind::Sphere2, *level)?;
                    check_len(values.len(), rule.len())?;
                    let terms: Vec<f64> = values.iter().zip(rule.weights()).map(|(v, w)| w * v * v).collect();
                    Ok(pairwise_sum(&terms))
                }
                SampledGrid::Line { half_width, values } => {
                    let pts = SampledGrid::line_points(*half_width, values.len());
                    let rule = gl_composite(&pts, 4);
                    let terms: Vec<f64> = rule
                        .iter()
                        .map(|&(x, w)| w * SampledGrid::line_eval(*half_width, values, x).powi(2))
                        .collect();
                    Ok(pairwise_sum(&terms))
                }
            },
        }
    }
}

/// `∫ f²` for a Gaussian family from pairwise Gaussian overlap integrals.
fn gaussian_l2_closed_form(f: &GaussianFamily) -> Result<f64> {
    // ∫ e^{-π|x-c₁|²/w₁²} e^{-π|x-c₂|²/w₂²} cos(2πa₁·x) cos(2πa₂·x) dx, each
    // cosine split into exponentials and the Gaussian integral done in closed
    // form with a complex linear term.
    let pi = std::f64::consts::PI;
    let n = f.n as i32;
    let mut total = 0.0;
    for p in &f.terms {
        for q in &f.terms {
            let (a1, a2) = (1.0 / (p.width * p.width), 1.0 / (q.width * q.width));
            let alpha = a1 + a2;
            let mut acc = Complex64::new(0.0, 0.0);
            for s1 in [1.0, -1.0] {
                for s2 in [1.0, -1.0] {
                    // exponent: -π α|x|² + 2π x·(a1 c1 + a2 c2) - π(a1|c1|² + a2|c2|²) + 2πi x·(s1 f1 + s2 f2)
                    let mut e = Complex64::new(-pi * (a1 * dot(&p.center, &p.center) + a2 * dot(&q.center, &q.center)), 0.0);
                    for j in 0..f.n {
                        let b = Complex64::new(
                            a1 * p.center[j] + a2 * q.center[j],
                            s1 * p.frequency[j] + s2 * q.frequency[j],
                        );
                        e += pi * b * b / alpha;
                    }
                    acc += e.exp();
                }
            }
            total += p.amplitude * q.amplitude * 0.25 * acc.re * alpha.powf(-(n as f64) / 2.0);
        }
    }
    Ok(total)
}

fn check_len(got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Inadmissible(format!("expected {want} samples, got {got}")));
    }
    Ok(())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
