//! Identity verification across forms and the resulting report.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extension::{laplace_projection_norms, BoundarySpec};
use crate::quadrature::Estimate;

use super::ahlfors::ahlfors_boundary_energy;
use super::double::double_integral_energy;
use super::gradient::gradient_energy;
use super::spectral::{ball_ahlfors_series, fourier_form_energy, h2_norm, h_half_seminorm};
use super::{relative_deviation, Form, Geometry, Settings};

/// Boundary data on a geometry, with the catalog field used by the Ahlfors
/// form on balls.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyProblem {
    pub geometry: Geometry,
    pub spec: BoundarySpec,
    pub catalog: Option<String>,
    pub function_id: String,
}

impl EnergyProblem {
    pub fn new(geometry: Geometry, spec: BoundarySpec, function_id: impl Into<String>) -> Self {
        Self {
            geometry,
            spec,
            catalog: None,
            function_id: function_id.into(),
        }
    }

    pub fn with_catalog(mut self, id: impl Into<String>) -> Self {
        self.catalog = Some(id.into());
        self
    }

    /// Rejects forms that are undefined for the geometry or lack inputs.
    pub fn check_form(&self, form: Form) -> Result<()> {
        let g = self.geometry;
        if !form.defined_on(g) {
            return Err(Error::Inadmissible(format!("form {form} is not defined on {g}")));
        }
        if form == Form::Ahlfors && matches!(g.scalar_geometry(), Geometry::Ball(_)) && self.catalog.is_none() {
            return Err(Error::Inadmissible(format!(
                "form ahlfors on {g} needs a catalog monogenic field"
            )));
        }
        g.check_admissible(&self.spec)
    }

    /// One form with its error estimate.
    pub fn compute(&self, form: Form, settings: &Settings) -> Result<Estimate> {
        self.check_form(form)?;
        let (g, spec) = (self.geometry, &self.spec);
        match form {
            Form::Gradient => gradient_energy(g, spec, settings),
            Form::Fourier => fourier_form_energy(g, spec, settings),
            Form::Double => double_integral_energy(g, spec, settings),
            Form::Ahlfors => ahlfors_boundary_energy(g, spec, self.catalog.as_deref(), settings),
            Form::AhlforsSeries => {
                let n = g.sphere_ambient().expect("series is defined on balls only");
                let norms = laplace_projection_norms(spec)?;
                let series = ball_ahlfors_series(n - 1, &norms)?;
                let top = norms.entries.iter().map(|e| 0.5 * (e.0 as f64 + n as f64 / 2.0)).fold(0.0, f64::max);
                Ok(Estimate {
                    value: series,
                    error: top * norms.error,
                })
            }
            Form::H2Norm => h2_norm(g, spec),
            Form::HHalfSeminorm => h_half_seminorm(g, spec, settings),
        }
    }

    /// Whether the ball Ahlfors series must differ from the energy: some
    /// degree `k ≥ 1` with `k ≠ n/2` carries mass.
    fn series_expected_distinct(&self) -> Result<bool> {
        let n = self.geometry.sphere_ambient().unwrap_or(0);
        let norms = laplace_projection_norms(&self.spec)?;
        Ok(norms
            .entries
            .iter()
            .any(|&(k, v)| k >= 1 && 2 * k != n - 1 && v > 1e-14 * norms.total().max(1.0)))
    }
}

/// A computed form.
#[derive(Debug, Clone, PartialEq)]
pub struct FormValue {
    pub form: Form,
    pub value: f64,
    pub error: f64,
    /// Wall time in seconds.
    pub seconds: f64,
}

/// Outcome of [`verify_identities`].
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub geometry: Geometry,
    pub function_id: String,
    /// Computed forms in canonical order.
    pub values: Vec<FormValue>,
    /// Forms whose computation failed, with the reason.
    pub failures: Vec<(Form, String)>,
    /// Largest relative deviation among the energy forms.
    pub max_pairwise_relative_deviation: f64,
    /// `ahlforsSeries / energy` on balls, when both were computed.
    pub ahlfors_series_ratio: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

impl EnergyReport {
    pub fn get(&self, form: Form) -> Option<&FormValue> {
        self.values.iter().find(|v| v.form == form)
    }

    /// Forms whose error estimate exceeds `tolerance · max(|value|, 1e−12)`.
    pub fn over_budget(&self) -> Vec<Form> {
        self.values
            .iter()
            .filter(|v| !(v.error <= self.tolerance * v.value.abs().max(1e-12)))
            .map(|v| v.form)
            .collect()
    }
}

/// Computes the requested forms, checks that the energy forms agree within
/// `tolerance` and that every error estimate is within budget. On balls the
/// Ahlfors series is recorded separately: it must differ from the energy
/// exactly when the spectrum has a degree `k ≠ n/2`.
pub fn verify_identities(
    problem: &EnergyProblem,
    forms: &[Form],
    tolerance: f64,
    settings: &Settings,
) -> Result<EnergyReport> {
    if !(tolerance > 0.0) {
        return Err(Error::Domain(format!("tolerance {tolerance} must be positive")));
    }
    let mut wanted: Vec<Form> = forms.to_vec();
    wanted.sort();
    wanted.dedup();
    for &f in &wanted {
        problem.check_form(f)?;
    }
    let results: Vec<(Form, Result<Estimate>, f64)> = wanted
        .par_iter()
        .map(|&f| {
            let start = Instant::now();
            let r = problem.compute(f, settings);
            (f, r, start.elapsed().as_secs_f64())
        })
        .collect();
    let mut values = Vec::new();
    let mut failures = Vec::new();
    for (form, r, seconds) in results {
        match r {
            Ok(e) => values.push(FormValue {
                form,
                value: e.value,
                error: e.error,
                seconds,
            }),
            Err(e) => failures.push((form, e.to_string())),
        }
    }
    let energies: Vec<f64> = values.iter().filter(|v| v.form.is_energy()).map(|v| v.value).collect();
    let mut deviation = 0.0f64;
    for (i, a) in energies.iter().enumerate() {
        for b in &energies[i + 1..] {
            deviation = deviation.max(relative_deviation(*a, *b));
        }
    }
    let reference = values
        .iter()
        .find(|v| v.form == Form::Gradient)
        .or_else(|| values.iter().find(|v| v.form == Form::Fourier))
        .map(|v| v.value);
    let series = values.iter().find(|v| v.form == Form::AhlforsSeries).map(|v| v.value);
    let ahlfors_series_ratio = match (series, reference) {
        (Some(s), Some(r)) if r != 0.0 => Some(s / r),
        _ => None,
    };
    let mut report = EnergyReport {
        geometry: problem.geometry,
        function_id: problem.function_id.clone(),
        values,
        failures,
        max_pairwise_relative_deviation: deviation,
        ahlfors_series_ratio,
        tolerance,
        pass: false,
    };
    let series_ok = match (series, reference) {
        (Some(s), Some(r)) => {
            let distinct = relative_deviation(s, r) > tolerance;
            distinct == problem.series_expected_distinct()?
        }
        _ => true,
    };
    report.pass = report.failures.is_empty()
        && deviation.is_finite()
        && deviation <= tolerance
        && report.over_budget().is_empty()
        && series_ok;
    Ok(report)
}
