mod common;

use dirichlet_core::clifford::{Multivector, Quaternion};
use num_rational::Rational64;
use proptest::prelude::*;

fn mv(dim: usize, c: &[f64]) -> Multivector<f64> {
    Multivector::from_coeffs(dim, &c[..1 << dim]).unwrap()
}

fn rational_mv(dim: usize, c: &[i64]) -> Multivector<Rational64> {
    let coeffs: Vec<Rational64> = c[..1 << dim].iter().map(|&k| Rational64::new(k, 7)).collect();
    Multivector::from_coeffs(dim, &coeffs).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 16)
}

proptest! {
    #![proptest_config(common::config(256))]

    #[test]
    fn associativity(dim in 1usize..=4, a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (mv(dim, &a), mv(dim, &b), mv(dim, &c));
        let left = (a * b) * c;
        let right = a * (b * c);
        prop_assert!(left.max_abs_diff(&right) <= 1e-14, "{}", left.max_abs_diff(&right));
    }

    #[test]
    fn exact_associativity_over_rationals(
        dim in 1usize..=4,
        a in prop::collection::vec(-20i64..20, 16),
        b in prop::collection::vec(-20i64..20, 16),
        c in prop::collection::vec(-20i64..20, 16),
    ) {
        let (a, b, c) = (rational_mv(dim, &a), rational_mv(dim, &b), rational_mv(dim, &c));
        prop_assert_eq!((a * b) * c, a * (b * c));
    }

    #[test]
    fn distributivity(dim in 1usize..=4, a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (mv(dim, &a), mv(dim, &b), mv(dim, &c));
        prop_assert!((a * (b + c)).max_abs_diff(&(a * b + a * c)) <= 1e-14);
    }

    #[test]
    fn conjugation_reverses_products(dim in 1usize..=4, a in coeffs(), b in coeffs()) {
        let (a, b) = (mv(dim, &a), mv(dim, &b));
        prop_assert!((a * b).conj().max_abs_diff(&(b.conj() * a.conj())) <= 1e-14);
    }

    #[test]
    fn paravector_norm_is_multiplicative(dim in 1usize..=3, a in coeffs(), b in coeffs()) {
        let p = Multivector::paravector(dim, a[0], &a[1..=dim]).unwrap();
        let q = Multivector::paravector(dim, b[0], &b[1..=dim]).unwrap();
        prop_assert!(((p * p.conj()).sc() - p.norm_sqr()).abs() <= 1e-14);
        prop_assert!(((p * q).norm_sqr() - p.norm_sqr() * q.norm_sqr()).abs() <= 1e-13);
    }

    #[test]
    fn quaternion_norm_is_multiplicative(a in coeffs(), b in coeffs()) {
        let p = Quaternion::new(a[0], a[1], a[2], a[3]);
        let q = Quaternion::new(b[0], b[1], b[2], b[3]);
        prop_assert!(((p * q).norm_sqr() - p.norm_sqr() * q.norm_sqr()).abs() <= 1e-14);
        let lhs = (p * q).to_cl02();
        let rhs = p.to_cl02() * q.to_cl02();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-15);
    }
}

#[test]
fn generator_relations_exact() {
    for dim in 1..=4 {
        let one = Multivector::<Rational64>::scalar(dim, Rational64::from_integer(1)).unwrap();
        for j in 1..=dim {
            let ej = Multivector::<Rational64>::generator(dim, j).unwrap();
            assert_eq!(ej * ej, -one);
            for k in (j + 1)..=dim {
                let ek = Multivector::<Rational64>::generator(dim, k).unwrap();
                assert_eq!(ej * ek, -(ek * ej));
            }
        }
    }
}

#[test]
fn hamilton_relations() {
    let (i, j, k) = (Quaternion::<f64>::i(), Quaternion::<f64>::j(), Quaternion::<f64>::k());
    let minus_one = Quaternion::new(-1.0, 0.0, 0.0, 0.0);
    assert_eq!(i * i, minus_one);
    assert_eq!(i * j * k, minus_one);
    assert_eq!(i * j, k);
    assert_eq!(j * i, -k);
}
