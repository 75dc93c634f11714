//! Built-in boundary data, each with the geometry, forms, tolerance and
//! auxiliary checks it is verified with by default.

use dirichlet_core::energy::{Form, Geometry};
use dirichlet_core::extension::{catalog_boundary, BoundarySpec, CircleFourier, FourierTerm, GaussianFamily};

use crate::config::Check;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub geometry: Geometry,
    pub spec: BoundarySpec,
    pub catalog: Option<&'static str>,
    pub forms: Vec<Form>,
    pub tolerance: f64,
    pub checks: Vec<Check>,
}

pub const CORPUS_IDS: [&str; 7] = [
    "disk_douglas",
    "ball3_zonal_k2",
    "ball4_zonal_k2",
    "half1_gauss",
    "half2_gauss",
    "half3_gauss",
    "moebius_cos",
];

const ENERGIES: [Form; 4] = [Form::Gradient, Form::Fourier, Form::Double, Form::Ahlfors];

fn circle(terms: &[(usize, f64, f64)]) -> BoundarySpec {
    let terms = terms.iter().map(|&(k, a, b)| FourierTerm { k, a, b }).collect();
    BoundarySpec::CircleFourier(CircleFourier::new(0.0, terms).expect("corpus data are valid"))
}

fn gaussian(n: usize) -> BoundarySpec {
    BoundarySpec::GaussianFamily(GaussianFamily::standard(n).expect("corpus data are valid"))
}

fn catalog(id: &str) -> BoundarySpec {
    catalog_boundary(id)
        .expect("catalog id is valid")
        .expect("catalog field has ball boundary data")
}

pub fn lookup(id: &str) -> Option<CorpusEntry> {
    let with_series = || {
        let mut f = ENERGIES.to_vec();
        f.push(Form::AhlforsSeries);
        f
    };
    let entry = match id {
        "disk_douglas" => CorpusEntry {
            id: "disk_douglas",
            geometry: Geometry::Disk,
            spec: circle(&[(1, 3.0, 0.0), (2, 1.0, 0.0), (5, 0.0, -2.0)]),
            catalog: None,
            forms: ENERGIES.to_vec(),
            tolerance: 1e-6,
            checks: vec![Check::Monogenic, Check::Stokes],
        },
        "ball3_zonal_k2" => CorpusEntry {
            id: "ball3_zonal_k2",
            geometry: Geometry::Ball(3),
            spec: catalog("ball3_k2"),
            catalog: Some("ball3_k2"),
            forms: with_series(),
            tolerance: 2e-2,
            checks: vec![Check::Monogenic, Check::Stokes, Check::Equivalence],
        },
        "ball4_zonal_k2" => CorpusEntry {
            id: "ball4_zonal_k2",
            geometry: Geometry::QuaternionBall,
            spec: catalog("quat_k2"),
            catalog: Some("quat_k2"),
            forms: with_series(),
            tolerance: 5e-2,
            checks: vec![Check::Monogenic, Check::Stokes, Check::Equivalence],
        },
        "half1_gauss" => CorpusEntry {
            id: "half1_gauss",
            geometry: Geometry::HalfSpace(1),
            spec: gaussian(1),
            catalog: None,
            forms: ENERGIES.to_vec(),
            tolerance: 1e-2,
            checks: vec![Check::Monogenic, Check::Stokes, Check::GLambda],
        },
        "half2_gauss" => CorpusEntry {
            id: "half2_gauss",
            geometry: Geometry::HalfSpace(2),
            spec: gaussian(2),
            catalog: None,
            forms: ENERGIES.to_vec(),
            tolerance: 1e-2,
            checks: vec![],
        },
        "half3_gauss" => CorpusEntry {
            id: "half3_gauss",
            geometry: Geometry::QuaternionHalfSpace,
            spec: gaussian(3),
            catalog: None,
            forms: ENERGIES.to_vec(),
            tolerance: 5e-2,
            checks: vec![],
        },
        "moebius_cos" => CorpusEntry {
            id: "moebius_cos",
            geometry: Geometry::Disk,
            spec: circle(&[(1, 1.0, 0.0)]),
            catalog: None,
            forms: ENERGIES.to_vec(),
            tolerance: 1e-3,
            checks: vec![Check::Conformal],
        },
        _ => return None,
    };
    Some(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_id_resolves_to_admissible_data() {
        for id in CORPUS_IDS {
            let e = lookup(id).unwrap();
            assert_eq!(e.id, id);
            e.geometry.check_admissible(&e.spec).unwrap();
            assert!(e.tolerance > 0.0);
        }
        assert!(lookup("nope").is_none());
    }
}
