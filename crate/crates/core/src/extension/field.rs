//! Hypercomplex-valued fields on balls and half-spaces, and finite
//! difference checks of the Cauchy–Riemann operator.

use std::fmt;
use std::sync::Arc;

use crate::clifford::Hypercomplex;
use crate::error::{Error, Result};

/// Where a field lives. Points are `(x₀, x₁, …, x_m)`; on the half-space
/// `x₀` is the height `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldDomain {
    Ball { radius: f64 },
    HalfSpace,
}

impl FieldDomain {
    /// Distance to the boundary (infinite when there is none to respect).
    pub fn margin(&self, p: &[f64]) -> f64 {
        match self {
            Self::Ball { radius } => radius - p.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Self::HalfSpace => p[0],
        }
    }
}

type Eval<V> = Arc<dyn Fn(&[f64]) -> V + Send + Sync>;

/// A map from domain points to hypercomplex values, optionally with an
/// analytic `∂/∂x₀`.
#[derive(Clone)]
pub struct ParavectorField<V> {
    pub id: String,
    pub domain: FieldDomain,
    /// Number of coordinates of a domain point.
    pub point_dim: usize,
    eval: Eval<V>,
    d0: Option<Eval<V>>,
}

impl<V: Hypercomplex> ParavectorField<V> {
    pub fn new(
        id: impl Into<String>,
        domain: FieldDomain,
        point_dim: usize,
        eval: impl Fn(&[f64]) -> V + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            domain,
            point_dim,
            eval: Arc::new(eval),
            d0: None,
        }
    }

    pub fn with_d0(mut self, d0: impl Fn(&[f64]) -> V + Send + Sync + 'static) -> Self {
        self.d0 = Some(Arc::new(d0));
        self
    }

    pub fn has_analytic_d0(&self) -> bool {
        self.d0.is_some()
    }

    pub fn eval(&self, p: &[f64]) -> V {
        (self.eval)(p)
    }

    /// `∂F/∂x₀`, analytic when available and a fourth-order central
    /// difference otherwise.
    pub fn d0(&self, p: &[f64]) -> V {
        match &self.d0 {
            Some(d) => d(p),
            None => {
                let h = 1e-3 * self.domain.margin(p).clamp(1e-3, 1.0);
                let shift = |s: f64| {
                    let mut q = p.to_vec();
                    q[0] += s;
                    self.eval(&q)
                };
                (shift(-2.0 * h) - shift(2.0 * h) + (shift(h) - shift(-h)).scale(8.0)).scale(1.0 / (12.0 * h))
            }
        }
    }

    fn check_margin(&self, p: &[f64], h: f64) -> Result<()> {
        if p.len() != self.point_dim {
            return Err(Error::DimensionMismatch {
                left: self.point_dim,
                right: p.len(),
            });
        }
        if !(h > 0.0) || self.domain.margin(p) < h {
            return Err(Error::MarginViolation {
                h,
                point: p.to_vec(),
            });
        }
        Ok(())
    }

    /// Central-difference partial derivatives `∂_j F`, `j = 0..point_dim`.
    pub fn partials(&self, p: &[f64], h: f64) -> Result<Vec<V>> {
        self.check_margin(p, h)?;
        Ok((0..self.point_dim)
            .map(|j| {
                let mut a = p.to_vec();
                let mut b = p.to_vec();
                a[j] += h;
                b[j] -= h;
                (self.eval(&a) - self.eval(&b)).scale(0.5 / h)
            })
            .collect())
    }

    /// `D F = ½ Σ_j u_j ∂_j F` with centered differences (left action of the
    /// units `u_0 = 1, u_1, …`).
    pub fn dirac(&self, p: &[f64], h: f64) -> Result<V> {
        let parts = self.partials(p, h)?;
        let probe = self.eval(p);
        let mut acc = probe.zero_like();
        for (j, d) in parts.iter().enumerate() {
            acc = acc + probe.unit(j) * *d;
        }
        Ok(acc.scale(0.5))
    }

    /// `D̄ F = ½ (∂₀ F − Σ_k u_k ∂_k F)` with centered differences.
    pub fn dirac_bar(&self, p: &[f64], h: f64) -> Result<V> {
        let parts = self.partials(p, h)?;
        let probe = self.eval(p);
        let mut acc = parts[0];
        for (j, d) in parts.iter().enumerate().skip(1) {
            acc = acc - probe.unit(j) * *d;
        }
        Ok(acc.scale(0.5))
    }

    /// Gradient of the scalar part by centered differences.
    pub fn scalar_gradient(&self, p: &[f64], h: f64) -> Result<Vec<f64>> {
        Ok(self.partials(p, h)?.iter().map(|d| d.scalar_part()).collect())
    }

    /// Largest Dirac residual over a set of probe points.
    pub fn check_monogenic(&self, probes: &[Vec<f64>], h: f64, threshold: f64) -> Result<f64> {
        let mut worst = 0.0f64;
        for p in probes {
            let r = dirac_residual(self, p, h)?;
            if !(r <= threshold) {
                return Err(Error::NotMonogenic {
                    residual: r,
                    point: p.clone(),
                });
            }
            worst = worst.max(r);
        }
        Ok(worst)
    }
}

impl<V> fmt::Debug for ParavectorField<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParavectorField")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("point_dim", &self.point_dim)
            .field("analytic_d0", &self.d0.is_some())
            .finish()
    }
}

/// `|D F|` at `p` by centered differences with step `h`.
pub fn dirac_residual<V: Hypercomplex>(field: &ParavectorField<V>, p: &[f64], h: f64) -> Result<f64> {
    Ok(field.dirac(p, h)?.norm_sqr().sqrt())
}
