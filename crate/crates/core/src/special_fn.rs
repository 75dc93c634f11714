//! Gegenbauer polynomials normalized by `P_k^n(1) = 1`, the expansion
//! constants `c_{n,k}`, sphere areas and Gamma helpers.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Slack allowed past `±1` before an argument is rejected; covers rounding in
/// dot products of unit vectors.
const ENDPOINT_SLACK: f64 = 1e-12;

fn check_argument<T: Real>(t: T) -> Result<T> {
    let one = T::one();
    let slack = T::lit(ENDPOINT_SLACK);
    if !(t >= -one - slack && t <= one + slack) {
        return Err(Error::Domain(format!(
            "Gegenbauer argument {} outside [-1, 1]",
            t.as_f64()
        )));
    }
    Ok(t.max(-one).min(one))
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("Gegenbauer dimension n = {n} must be >= 2")));
    }
    Ok(())
}

/// Fills `out[k] = P_k^n(t)` for `k < out.len()`.
///
/// Recurrence with `λ = n/2 - 1`:
/// `(k + 2λ) P_{k+1} = 2(k + λ) t P_k - k P_{k-1}`.
fn fill_values<T: Real>(n: usize, t: T, out: &mut [T]) {
    let lambda = T::lit(n as f64 / 2.0 - 1.0);
    let two = T::lit(2.0);
    for k in 0..out.len() {
        out[k] = match k {
            0 => T::one(),
            1 => t,
            _ => {
                let km = T::from_count(k - 1);
                (two * (km + lambda) * t * out[k - 1] - km * out[k - 2]) / (km + two * lambda)
            }
        };
    }
}

/// `P_k^n(t)`; Chebyshev `T_k` for `n = 2`, Legendre for `n = 3`.
pub fn gegenbauer<T: Real>(n: usize, k: usize, t: T) -> Result<T> {
    check_dim(n)?;
    let t = check_argument(t)?;
    let mut buf = vec![T::zero(); k + 1];
    fill_values(n, t, &mut buf);
    Ok(buf[k])
}

/// `(P_k^n(t), dP_k^n/dt)` from the differentiated recurrence.
pub fn gegenbauer_with_derivative<T: Real>(n: usize, k: usize, t: T) -> Result<(T, T)> {
    check_dim(n)?;
    let t = check_argument(t)?;
    let lambda = T::lit(n as f64 / 2.0 - 1.0);
    let two = T::lit(2.0);
    let (mut p_prev, mut p) = (T::zero(), T::one());
    let (mut d_prev, mut d) = (T::zero(), T::zero());
    for j in 0..k {
        let jj = T::from_count(j);
        let (p_next, d_next) = if j == 0 {
            (t, T::one())
        } else {
            let denom = jj + two * lambda;
            (
                (two * (jj + lambda) * t * p - jj * p_prev) / denom,
                (two * (jj + lambda) * (p + t * d) - jj * d_prev) / denom,
            )
        };
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    Ok((p, d))
}

/// Gamma function. Integer and half-integer arguments are evaluated exactly
/// by finite products; other positive arguments go through `statrs`.
pub fn gamma(x: f64) -> f64 {
    let twice = 2.0 * x;
    if x > 0.0 && twice == twice.round() && twice <= 340.0 {
        let m = twice.round() as u64;
        if m % 2 == 0 {
            // Γ(m/2) = (m/2 - 1)!
            (1..m / 2).fold(1.0, |acc, j| acc * j as f64)
        } else {
            // Γ(j + 1/2) = √π Π_{i<j} (i + 1/2)
            let j = m / 2;
            (0..j).fold(std::f64::consts::PI.sqrt(), |acc, i| acc * (i as f64 + 0.5))
        }
    } else {
        statrs::function::gamma::gamma(x)
    }
}

/// Surface area `ω_m` of the unit sphere `S^m ⊂ R^{m+1}`.
pub fn sphere_area(m: usize) -> Result<f64> {
    if m == 0 {
        // two points; only used as a counting measure in zonal reductions
        return Ok(2.0);
    }
    let h = (m as f64 + 1.0) / 2.0;
    Ok(2.0 * std::f64::consts::PI.powf(h) / gamma(h))
}

/// `c_{n,k}`, the constant making `c_{n,k} ∫ P_k(ξ·η) P_k(ξ·e) dS_ξ = P_k(η·e)`.
pub fn coeff_c(n: usize, k: usize) -> Result<f64> {
    check_dim(n)?;
    let omega = sphere_area(n - 1)?;
    if k == 0 {
        return Ok(1.0 / omega);
    }
    let (nf, kf) = (n as f64, k as f64);
    // ratio Γ(n+k-1) / (k! Γ(n-1)) = binom(n+k-2, k), formed as a product
    let binom = (1..=k).fold(1.0, |acc, j| acc * (nf - 2.0 + j as f64) / j as f64);
    Ok((nf + 2.0 * kf - 2.0) * binom / ((nf + kf - 2.0) * omega))
}

/// Caches `P_0^n(t) .. P_K^n(t)` per argument `t`.
///
/// Lookups take a read lock; a miss computes the full row outside any lock
/// and inserts it under a short write lock, so evaluation is safe from
/// concurrent quadrature workers.
pub struct GegenbauerTable<T> {
    n: usize,
    max_degree: usize,
    cache: RwLock<HashMap<u64, Arc<[T]>>>,
}

impl<T: Real> GegenbauerTable<T> {
    pub fn new(n: usize, max_degree: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n,
            max_degree,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// All degrees `0..=K` at `t`.
    pub fn row(&self, t: T) -> Result<Arc<[T]>> {
        let t = check_argument(t)?;
        let key = t.as_f64().to_bits();
        if let Some(row) = self.cache.read().expect("cache lock poisoned").get(&key) {
            return Ok(Arc::clone(row));
        }
        let mut buf = vec![T::zero(); self.max_degree + 1];
        fill_values(self.n, t, &mut buf);
        let row: Arc<[T]> = buf.into();
        self.cache
            .write()
            .expect("cache lock poisoned")
            .entry(key)
            .or_insert_with(|| Arc::clone(&row));
        Ok(row)
    }

    pub fn eval(&self, k: usize, t: T) -> Result<T> {
        if k > self.max_degree {
            return Err(Error::Domain(format!(
                "degree {k} exceeds table maximum {}",
                self.max_degree
            )));
        }
        Ok(self.row(t)?[k])
    }

    pub fn cached_rows(&self) -> usize {
        self.cache.read().expect("cache lock poisoned").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn degree_zero_is_one() {
        for n in 2..=5 {
            for &t in &[-1.0, -0.3, 0.0, 0.7, 1.0] {
                assert_eq!(gegenbauer(n, 0, t).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn chebyshev_and_legendre() {
        assert!((gegenbauer::<f64>(2, 2, 0.5).unwrap() + 0.5).abs() < 1e-15);
        for &t in &[-0.9, -0.2, 0.4, 1.0] {
            let p2: f64 = gegenbauer(3, 2, t).unwrap();
            assert!((p2 - (3.0 * t * t - 1.0) / 2.0).abs() < 1e-14);
            let p3: f64 = gegenbauer(3, 3, t).unwrap();
            assert!((p3 - (5.0 * t * t * t - 3.0 * t) / 2.0).abs() < 1e-14);
            let c3: f64 = gegenbauer(2, 3, t).unwrap();
            assert!((c3 - (3.0 * t.acos()).cos()).abs() < 1e-13);
            // n = 4: U_k(t)/(k+1)
            let u2: f64 = gegenbauer(4, 2, t).unwrap();
            assert!((u2 - (4.0 * t * t - 1.0) / 3.0).abs() < 1e-14);
        }
        assert_eq!(gegenbauer(3, 2, 1.0f64).unwrap(), 1.0);
    }

    #[test]
    fn derivative_matches_closed_forms() {
        for &t in &[-0.8, 0.1, 0.6] {
            let (p, d): (f64, f64) = gegenbauer_with_derivative(3, 2, t).unwrap();
            assert!((p - (3.0 * t * t - 1.0) / 2.0).abs() < 1e-14);
            assert!((d - 3.0 * t).abs() < 1e-14);
            let (_, d4): (f64, f64) = gegenbauer_with_derivative(4, 2, t).unwrap();
            assert!((d4 - 8.0 * t / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn domain_error_outside_interval() {
        assert!(matches!(gegenbauer(3, 2, 1.5), Err(Error::Domain(_))));
        assert!(gegenbauer(3, 2, 1.0 + 1e-14).is_ok());
    }

    #[test]
    fn f32_evaluation() {
        let v: f32 = gegenbauer(3, 2, 0.5f32).unwrap();
        assert!((v + 0.125).abs() < 1e-6);
    }

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(1).unwrap() - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(2).unwrap() - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3).unwrap() - 2.0 * PI * PI).abs() < 1e-13);
    }

    #[test]
    fn expansion_constants() {
        for k in 1..10 {
            assert!((coeff_c(2, k).unwrap() - 1.0 / PI).abs() < 1e-15);
        }
        assert!((coeff_c(3, 2).unwrap() - 5.0 / (4.0 * PI)).abs() < 1e-15);
        assert!((coeff_c(4, 2).unwrap() - 9.0 / (2.0 * PI * PI)).abs() < 1e-15);
        assert!((coeff_c(3, 0).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-15);
        // classical (2k+1)/4π on S²
        for k in 0..8 {
            let want = (2 * k + 1) as f64 / (4.0 * PI);
            assert!((coeff_c(3, k).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn gamma_exact_and_general() {
        assert_eq!(gamma(5.0), 24.0);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma(2.5) - 0.75 * PI.sqrt()).abs() < 1e-15);
        assert!((gamma(1.25) - 0.906_402_477_055_477).abs() < 1e-12);
    }

    #[test]
    fn table_caches_rows() {
        let table = GegenbauerTable::<f64>::new(3, 6).unwrap();
        let a = table.eval(2, 0.3).unwrap();
        let b = table.eval(5, 0.3).unwrap();
        assert_eq!(table.cached_rows(), 1);
        assert_eq!(a, gegenbauer(3, 2, 0.3).unwrap());
        assert_eq!(b, gegenbauer(3, 5, 0.3).unwrap());
        assert!(table.eval(7, 0.3).is_err());
    }
}
