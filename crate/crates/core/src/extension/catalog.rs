//! Closed-form monogenic fields used to evaluate Ahlfors integrals and to
//! validate the Cauchy–Riemann machinery.

use crate::clifford::{Multivector, Quaternion};
use crate::error::{Error, Result};

use super::boundary::{BoundarySpec, ZonalGegenbauer};
use super::field::{dirac_residual, FieldDomain, ParavectorField};

/// Identifiers accepted by [`catalog_monogenic`].
pub const CATALOG_IDS: [&str; 5] = ["ball3_k1", "ball3_k2", "quat_k1", "quat_k2", "halfspace_cauchy"];

/// A catalog field with its value algebra.
#[derive(Debug, Clone)]
pub enum CatalogField {
    Clifford(ParavectorField<Multivector<f64>>),
    Quaternion(ParavectorField<Quaternion<f64>>),
}

impl CatalogField {
    pub fn id(&self) -> &str {
        match self {
            Self::Clifford(f) => &f.id,
            Self::Quaternion(f) => &f.id,
        }
    }

    /// Scalar part at a point.
    pub fn scalar_at(&self, p: &[f64]) -> f64 {
        match self {
            Self::Clifford(f) => f.eval(p).sc(),
            Self::Quaternion(f) => f.eval(p).w,
        }
    }

    pub fn point_dim(&self) -> usize {
        match self {
            Self::Clifford(f) => f.point_dim,
            Self::Quaternion(f) => f.point_dim,
        }
    }

    pub fn domain(&self) -> FieldDomain {
        match self {
            Self::Clifford(f) => f.domain,
            Self::Quaternion(f) => f.domain,
        }
    }

    /// `|D F|` at `p` by centered differences with step `h`.
    pub fn dirac_residual(&self, p: &[f64], h: f64) -> Result<f64> {
        match self {
            Self::Clifford(f) => dirac_residual(f, p, h),
            Self::Quaternion(f) => dirac_residual(f, p, h),
        }
    }
}

fn cl2(s: f64, v1: f64, v2: f64) -> Multivector<f64> {
    Multivector::paravector(2, s, &[v1, v2]).expect("Cl(0,2)")
}

fn unit_ball() -> FieldDomain {
    FieldDomain::Ball { radius: 1.0 }
}

/// Look up a field by identifier.
pub fn catalog_monogenic(id: &str) -> Result<CatalogField> {
    let field = match id {
        "ball3_k1" => CatalogField::Clifford(
            ParavectorField::new(id, unit_ball(), 3, |p| cl2(p[1], -p[0], 0.0)).with_d0(|_| cl2(0.0, -1.0, 0.0)),
        ),
        "ball3_k2" => CatalogField::Clifford(
            ParavectorField::new(id, unit_ball(), 3, |p| {
                cl2(p[1] * p[1] + p[2] * p[2] - 2.0 * p[0] * p[0], -2.0 * p[0] * p[1], -2.0 * p[0] * p[2])
            })
            .with_d0(|p| cl2(-4.0 * p[0], -2.0 * p[1], -2.0 * p[2])),
        ),
        "quat_k1" => CatalogField::Quaternion(
            ParavectorField::new(id, unit_ball(), 4, |p| Quaternion::new(p[1], -p[0], 0.0, 0.0))
                .with_d0(|_| Quaternion::new(0.0, -1.0, 0.0, 0.0)),
        ),
        "quat_k2" => CatalogField::Quaternion(
            ParavectorField::new(id, unit_ball(), 4, |p| {
                let r2 = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
                Quaternion::new(r2 - 3.0 * p[0] * p[0], -2.0 * p[0] * p[1], -2.0 * p[0] * p[2], -2.0 * p[0] * p[3])
            })
            .with_d0(|p| Quaternion::new(-6.0 * p[0], -2.0 * p[1], -2.0 * p[2], -2.0 * p[3])),
        ),
        "halfspace_cauchy" => CatalogField::Clifford(halfspace_cauchy(1.0, 2)?),
        _ => {
            return Err(Error::UnknownCatalog {
                id: id.to_string(),
                available: CATALOG_IDS.join(", "),
            })
        }
    };
    Ok(field)
}

/// Boundary data whose harmonic extension is the scalar part of the
/// catalog field, where one exists.
pub fn catalog_boundary(id: &str) -> Result<Option<BoundarySpec>> {
    let zonal = |n: usize, axis: Vec<f64>, coeffs: Vec<f64>| -> Result<Option<BoundarySpec>> {
        Ok(Some(BoundarySpec::ZonalGegenbauer(ZonalGegenbauer::new(n, axis, coeffs)?)))
    };
    match id {
        "ball3_k1" => zonal(3, vec![0.0, 1.0, 0.0], vec![0.0, 1.0]),
        "ball3_k2" => zonal(3, vec![1.0, 0.0, 0.0], vec![0.0, 0.0, -2.0]),
        "quat_k1" => zonal(4, vec![0.0, 1.0, 0.0, 0.0], vec![0.0, 1.0]),
        "quat_k2" => zonal(4, vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, -3.0]),
        "halfspace_cauchy" => Ok(None),
        _ => Err(Error::UnknownCatalog {
            id: id.to_string(),
            available: CATALOG_IDS.join(", "),
        }),
    }
}

/// Shifted Cauchy kernel `E(w) = w̄ / |w|^{n+1}` on the upper half-space of
/// `R^{n+1}`, `w = (y + y₀) + Σ x_k e_k`; a field with nonpolynomial
/// structure and a pole at distance `y₀` below the boundary plane.
pub fn halfspace_cauchy(y0: f64, n: usize) -> Result<ParavectorField<Multivector<f64>>> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    if !(y0 > 0.0) {
        return Err(Error::Domain(format!("pole offset {y0} must be positive")));
    }
    let split = move |p: &[f64]| {
        let w0 = p[0] + y0;
        let r2 = w0 * w0 + p[1..].iter().map(|x| x * x).sum::<f64>();
        (w0, r2)
    };
    let np1 = n as f64 + 1.0;
    Ok(ParavectorField::new("halfspace_cauchy", FieldDomain::HalfSpace, n + 1, move |p| {
        let (w0, r2) = split(p);
        let s = r2.powf(-np1 / 2.0);
        let v: Vec<f64> = p[1..].iter().map(|x| -x * s).collect();
        Multivector::paravector(n, w0 * s, &v).expect("n <= 3")
    })
    .with_d0(move |p| {
        let (w0, r2) = split(p);
        let s = r2.powf(-np1 / 2.0);
        let t = np1 * w0 * r2.powf(-(np1 + 2.0) / 2.0);
        let v: Vec<f64> = p[1..].iter().map(|x| t * x).collect();
        Multivector::paravector(n, s - t * w0, &v).expect("n <= 3")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::ball::poisson_extend_ball;

    fn probes(dim: usize) -> Vec<Vec<f64>> {
        let base = [0.31, -0.22, 0.17, 0.05];
        vec![base[..dim].to_vec(), base[..dim].iter().map(|x| -0.5 * x).collect()]
    }

    #[test]
    fn catalog_monogenics_are_monogenic() {
        for id in ["ball3_k1", "ball3_k2", "quat_k1", "quat_k2"] {
            match catalog_monogenic(id).unwrap() {
                CatalogField::Clifford(f) => {
                    assert!(f.check_monogenic(&probes(3), 1e-3, 1e-9).is_ok(), "{id}")
                }
                CatalogField::Quaternion(f) => {
                    assert!(f.check_monogenic(&probes(4), 1e-3, 1e-9).is_ok(), "{id}")
                }
            }
        }
    }

    #[test]
    fn analytic_d0_matches_differences() {
        if let CatalogField::Quaternion(f) = catalog_monogenic("quat_k2").unwrap() {
            let p = [0.2, 0.1, -0.3, 0.4];
            let fd = f.partials(&p, 1e-4).unwrap()[0];
            let d = f.d0(&p);
            assert!((fd.w - d.w).abs() + (fd.x - d.x).abs() < 1e-8);
        }
    }

    #[test]
    fn scalar_parts_match_boundary_data() {
        for id in ["ball3_k1", "ball3_k2", "quat_k1", "quat_k2"] {
            let field = catalog_monogenic(id).unwrap();
            let spec = catalog_boundary(id).unwrap().unwrap();
            for p in probes(field.point_dim()) {
                let u = poisson_extend_ball(&spec, &p).unwrap();
                assert!((u - field.scalar_at(&p)).abs() < 1e-12, "{id}");
            }
        }
    }

    #[test]
    fn cauchy_field_is_monogenic() {
        for n in 1..=3 {
            let f = halfspace_cauchy(0.5, n).unwrap();
            let mut p = vec![0.3, 0.2, -0.1, 0.4];
            p.truncate(n + 1);
            assert!(dirac_residual(&f, &p, 1e-4).unwrap() < 1e-6);
            let fd = f.partials(&p, 1e-5).unwrap()[0].clone();
            assert!(fd.max_abs_diff(&f.d0(&p)) < 1e-6);
        }
    }

    #[test]
    fn unknown_id_lists_available() {
        let msg = catalog_monogenic("nope").unwrap_err().to_string();
        assert!(msg.contains("ball3_k2") && msg.contains("quat_k2"));
    }
}
