//! Gauss–Legendre nodes and weights plus small one-dimensional helpers.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::scalar::Real;

use super::sum::pairwise_sum;

/// Nodes in ascending order on `[-1, 1]` and matching weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

/// Computes the `m`-point Gauss–Legendre rule by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre<T: Real>(m: usize) -> GaussLegendre<T> {
    assert!(m >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![T::zero(); m];
    let mut weights = vec![T::zero(); m];
    let mf = T::from_count(m);
    let two = T::lit(2.0);
    let tol = T::epsilon() * T::lit(4.0);
    for i in 0..m.div_ceil(2) {
        let mut x = (T::PI() * (T::from_count(i) + T::lit(0.75)) / (mf + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= tol {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(m, x);
        if d.is_finite() {
            dp = d;
        }
        let w = two / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = T::zero();
    }
    GaussLegendre { nodes, weights }
}

fn legendre_and_derivative<T: Real>(m: usize, x: T) -> (T, T) {
    let (mut p0, mut p1) = (T::one(), x);
    for k in 2..=m {
        let kf = T::from_count(k);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let mf = T::from_count(m);
    let d = mf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Cached `f64` rule; quadrature code asks for the same sizes repeatedly.
pub fn gl(m: usize) -> Arc<GaussLegendre<f64>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GaussLegendre<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(rule) = cache.read().expect("rule cache poisoned").get(&m) {
        return Arc::clone(rule);
    }
    let rule = Arc::new(gauss_legendre::<f64>(m));
    cache
        .write()
        .expect("rule cache poisoned")
        .entry(m)
        .or_insert_with(|| Arc::clone(&rule))
        .clone()
}

/// `m`-point rule mapped to `[a, b]`, as `(node, weight)` pairs.
pub fn gl_interval(a: f64, b: f64, m: usize) -> Vec<(f64, f64)> {
    let rule = gl(m);
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| (mid + half * x, half * w))
        .collect()
}

/// Composite rule over consecutive breakpoints, `m` nodes per panel.
pub fn gl_composite(breaks: &[f64], m: usize) -> Vec<(f64, f64)> {
    breaks
        .windows(2)
        .filter(|p| p[1] > p[0])
        .flat_map(|p| gl_interval(p[0], p[1], m))
        .collect()
}

/// `∫_a^b f` with an `m`-point rule, summed pairwise.
pub fn integrate_interval(a: f64, b: f64, m: usize, f: impl Fn(f64) -> f64) -> f64 {
    let terms: Vec<f64> = gl_interval(a, b, m).into_iter().map(|(x, w)| w * f(x)).collect();
    pairwise_sum(&terms)
}

/// Sums `w f(x)` over a list of pairs.
pub fn apply(rule: &[(f64, f64)], f: impl Fn(f64) -> f64) -> f64 {
    let terms: Vec<f64> = rule.iter().map(|&(x, w)| w * f(x)).collect();
    pairwise_sum(&terms)
}

/// Sorted, deduplicated breakpoints clipped to `[lo, hi]` (both included).
pub fn normalize_breaks(mut pts: Vec<f64>, lo: f64, hi: f64) -> Vec<f64> {
    pts.push(lo);
    pts.push(hi);
    pts.retain(|p| p.is_finite() && *p >= lo && *p <= hi);
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    let span = (hi - lo).abs().max(1e-300);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * span);
    pts
}

/// Breakpoints refining geometrically toward `at` from both sides inside
/// `[lo, hi]`, finest offset `finest`.
pub fn graded_breaks(at: f64, finest: f64, lo: f64, hi: f64) -> Vec<f64> {
    let mut pts = vec![at];
    let mut d = finest;
    while at - d > lo || at + d < hi {
        pts.push(at - d);
        pts.push(at + d);
        d *= 2.0;
    }
    normalize_breaks(pts, lo, hi)
}
