mod common;

use approx::assert_relative_eq;
use dirichlet_core::quadrature::{gauss_legendre, gl_interval, integrate, sphere_rule, SphereKind};
use dirichlet_core::special_fn::gamma;
use proptest::prelude::*;

/// `∫_{S^{d-1}} x^α dS`.
fn sphere_monomial(alpha: &[u32]) -> f64 {
    if alpha.iter().any(|a| a % 2 == 1) {
        return 0.0;
    }
    let betas: Vec<f64> = alpha.iter().map(|&a| (a as f64 + 1.0) / 2.0).collect();
    2.0 * betas.iter().map(|&b| gamma(b)).product::<f64>() / gamma(betas.iter().sum())
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn gauss_legendre_is_exact_through_degree_2m_minus_1(
        m in 1usize..24,
        coeffs in prop::collection::vec(-1.0f64..1.0, 48),
        a in -2.0f64..0.0,
        len in 0.1f64..3.0,
    ) {
        let b = a + len;
        let degree = 2 * m - 1;
        let poly = |x: f64| coeffs[..=degree].iter().rev().fold(0.0, |acc, c| acc * x + c);
        let exact: f64 = coeffs[..=degree]
            .iter()
            .enumerate()
            .map(|(k, c)| c * (b.powi(k as i32 + 1) - a.powi(k as i32 + 1)) / (k as f64 + 1.0))
            .sum();
        let approx: f64 = gl_interval(a, b, m).iter().map(|&(x, w)| w * poly(x)).sum();
        prop_assert!((approx - exact).abs() <= 1e-12 * (1.0 + exact.abs()), "{approx} vs {exact}");
    }

    #[test]
    fn sphere_rules_integrate_monomials(
        ambient in 2usize..=4,
        level in 2usize..10,
        raw in prop::collection::vec(0u32..20, 4),
    ) {
        let kind = SphereKind::for_ambient(ambient).unwrap();
        let rule = sphere_rule::<f64>(kind, level).unwrap();
        let budget = 2 * level as u32 - 1;
        let mut alpha: Vec<u32> = raw[..ambient].to_vec();
        while alpha.iter().sum::<u32>() > budget {
            let i = alpha.iter().position(|a| *a > 0).unwrap();
            alpha[i] -= 1;
        }
        let approx: f64 = integrate(&rule, |x: &[f64]| {
            x.iter().zip(&alpha).map(|(xi, &a)| xi.powi(a as i32)).product::<f64>()
        })
        .unwrap();
        let exact = sphere_monomial(&alpha);
        prop_assert!((approx - exact).abs() <= 1e-12, "{alpha:?}: {approx} vs {exact}");
    }
}

#[test]
fn single_precision_rules_follow_double() {
    let single = gauss_legendre::<f32>(8);
    let double = gauss_legendre::<f64>(8);
    for (a, b) in single.nodes.iter().zip(&double.nodes) {
        assert_relative_eq!(*a as f64, *b, epsilon = 1e-6);
    }
}

#[test]
fn sphere_areas() {
    for (ambient, area) in [(2, 2.0 * std::f64::consts::PI), (3, 4.0 * std::f64::consts::PI), (4, 2.0 * std::f64::consts::PI.powi(2))] {
        let rule = sphere_rule::<f64>(SphereKind::for_ambient(ambient).unwrap(), 6).unwrap();
        assert_relative_eq!(rule.total_weight(), area, max_relative = 1e-14);
    }
}
