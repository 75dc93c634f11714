//! Suite configuration: a TOML document with one `[[case]]` table per
//! verification case.
//!
//! ```toml
//! seed = 7
//! workers = 2
//!
//! [output]
//! format = "json"
//! path = "report.json"
//! timings = false
//!
//! [[case]]
//! id = "douglas"
//! function = "disk_douglas"
//! forms = ["gradient", "fourier"]
//! level = 3
//!
//! [[case]]
//! id = "inline"
//! function = "two_modes"
//! geometry = "disk"
//! tolerance = 1e-8
//! spec = { kind = "circle_fourier", terms = [{ k = 1, a = 1.0 }, { k = 3, b = 0.5 }] }
//! ```

use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use dirichlet_core::energy::{EnergyProblem, Form, Geometry, Settings};
use dirichlet_core::extension::{
    BoundarySpec, CircleFourier, FourierTerm, GaussianFamily, GaussianTerm, SampledGrid, ZonalGegenbauer, CATALOG_IDS,
};
use dirichlet_core::quadrature::SingularSchedule;
use serde::Deserialize;
use toml::Spanned;

use crate::corpus::{self, CORPUS_IDS};

/// A rejected configuration, with the 1-based line it refers to when known.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn new(line: Option<usize>, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "config error at line {l}: {}", self.message),
            None => write!(f, "config error: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Checks run alongside the energy forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Dirac residual of the monogenic field at seeded probe points.
    Monogenic,
    /// Volume integral of `|D̄F|²` against the boundary Ahlfors integral.
    Stokes,
    /// Closure of the ball Ahlfors series against its energy splitting.
    Equivalence,
    /// Weighted square-function norms against their spectral forms.
    GLambda,
    /// Disk double integral against the one transported to the line.
    Conformal,
}

impl Check {
    pub const ALL: [Check; 5] = [Self::Monogenic, Self::Stokes, Self::Equivalence, Self::GLambda, Self::Conformal];

    pub fn name(self) -> &'static str {
        match self {
            Self::Monogenic => "monogenic",
            Self::Stokes => "stokes",
            Self::Equivalence => "equivalence",
            Self::GLambda => "gLambda",
            Self::Conformal => "conformal",
        }
    }

    /// Whether the check applies to the problem.
    pub fn applies_to(self, p: &EnergyProblem) -> Result<(), String> {
        let g = p.geometry.scalar_geometry();
        let ok = match self {
            Self::Monogenic | Self::Stokes => match g {
                Geometry::Disk => matches!(p.spec, BoundarySpec::CircleFourier(_)),
                Geometry::Ball(_) => p.catalog.is_some(),
                Geometry::HalfSpace(_) => matches!(p.spec, BoundarySpec::GaussianFamily(_)),
                _ => false,
            },
            Self::Equivalence => matches!(g, Geometry::Ball(_)),
            Self::GLambda => matches!(g, Geometry::HalfSpace(_)) && matches!(p.spec, BoundarySpec::GaussianFamily(_)),
            Self::Conformal => g == Geometry::Disk,
        };
        if ok {
            Ok(())
        } else {
            Err(format!(
                "check {} does not apply to {} data on {}{}",
                self.name(),
                p.spec.kind_name(),
                p.geometry,
                if g.is_bounded() && g != Geometry::Disk && p.catalog.is_none() {
                    " without a catalog field"
                } else {
                    ""
                }
            ))
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|c| c.name()).collect();
            format!("unknown check `{s}` (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(format!("unknown output format `{s}` (expected json or csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSettings {
    pub format: OutputFormat,
    /// Standard output when absent.
    pub path: Option<PathBuf>,
    /// Wall times are nondeterministic, so they are emitted only on request.
    pub timings: bool,
}

impl Default for OutputSettings {
    fn default() -> Self {
        Self {
            format: OutputFormat::Json,
            path: None,
            timings: false,
        }
    }
}

/// A resolved case.
#[derive(Debug, Clone)]
pub struct VerifyCase {
    pub id: String,
    pub problem: EnergyProblem,
    pub forms: Vec<Form>,
    pub tolerance: f64,
    pub settings: Settings,
    pub checks: Vec<Check>,
}

impl VerifyCase {
    /// A corpus entry with its default forms, tolerance and checks.
    pub fn from_corpus(id: &str) -> Result<Self, ConfigError> {
        let e = corpus::lookup(id).ok_or_else(|| ConfigError::new(None, unknown_function(id)))?;
        let mut problem = EnergyProblem::new(e.geometry, e.spec, e.id);
        if let Some(c) = e.catalog {
            problem = problem.with_catalog(c);
        }
        Ok(Self {
            id: e.id.to_string(),
            problem,
            forms: e.forms,
            tolerance: e.tolerance,
            settings: Settings::default(),
            checks: e.checks,
        })
    }

    /// Rejects forms and checks that do not apply to the problem.
    pub fn validate(&self) -> Result<(), String> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(format!("tolerance {} must be positive", self.tolerance));
        }
        for &f in &self.forms {
            self.problem.check_form(f).map_err(|e| e.to_string())?;
        }
        for &c in &self.checks {
            c.applies_to(&self.problem)?;
        }
        Ok(())
    }
}

fn unknown_function(id: &str) -> String {
    format!(
        "unknown function `{id}`: use a corpus id ({}) or give an inline spec",
        CORPUS_IDS.join(", ")
    )
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Seeds the probe points of the monogenic check.
    pub seed: u64,
    /// Concurrent cases; overridden by `DIRICHLET_WORKERS`.
    pub workers: Option<usize>,
    pub output: OutputSettings,
    pub cases: Vec<VerifyCase>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSuite {
    #[serde(default)]
    seed: u64,
    workers: Option<usize>,
    output: Option<RawOutput>,
    #[serde(default, rename = "case")]
    cases: Vec<Spanned<RawCase>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    format: Option<String>,
    path: Option<PathBuf>,
    #[serde(default)]
    timings: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    id: String,
    function: String,
    geometry: Option<String>,
    spec: Option<RawSpec>,
    catalog: Option<String>,
    forms: Option<Vec<String>>,
    tolerance: Option<f64>,
    level: Option<usize>,
    schedule: Option<RawSchedule>,
    checks: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchedule {
    radii: Vec<f64>,
    order: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFourierTerm {
    k: usize,
    #[serde(default)]
    a: f64,
    #[serde(default)]
    b: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGaussianTerm {
    amplitude: f64,
    center: Vec<f64>,
    width: f64,
    frequency: Option<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawSpec {
    CircleFourier {
        #[serde(default)]
        a0: f64,
        terms: Vec<RawFourierTerm>,
    },
    ZonalGegenbauer {
        n: usize,
        axis: Vec<f64>,
        coeffs: Vec<f64>,
    },
    GaussianFamily {
        n: usize,
        terms: Vec<RawGaussianTerm>,
    },
    SampledCircle {
        values: Vec<f64>,
    },
    SampledSphere {
        level: usize,
        values: Vec<f64>,
    },
    SampledLine {
        half_width: f64,
        values: Vec<f64>,
    },
}

impl RawSpec {
    fn build(self) -> dirichlet_core::Result<BoundarySpec> {
        Ok(match self {
            Self::CircleFourier { a0, terms } => BoundarySpec::CircleFourier(CircleFourier::new(
                a0,
                terms.into_iter().map(|t| FourierTerm { k: t.k, a: t.a, b: t.b }).collect(),
            )?),
            Self::ZonalGegenbauer { n, axis, coeffs } => {
                BoundarySpec::ZonalGegenbauer(ZonalGegenbauer::new(n, axis, coeffs)?)
            }
            Self::GaussianFamily { n, terms } => BoundarySpec::GaussianFamily(GaussianFamily::new(
                n,
                terms
                    .into_iter()
                    .map(|t| {
                        let dim = t.center.len();
                        GaussianTerm {
                            amplitude: t.amplitude,
                            center: t.center,
                            width: t.width,
                            frequency: t.frequency.unwrap_or_else(|| vec![0.0; dim]),
                        }
                    })
                    .collect(),
            )?),
            Self::SampledCircle { values } => BoundarySpec::SampledGrid(SampledGrid::Circle { values }),
            Self::SampledSphere { level, values } => BoundarySpec::SampledGrid(SampledGrid::Sphere2 { level, values }),
            Self::SampledLine { half_width, values } => {
                BoundarySpec::SampledGrid(SampledGrid::Line { half_width, values })
            }
        })
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

fn parse_list<T: FromStr>(items: &[String]) -> Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    items.iter().map(|s| s.parse::<T>().map_err(|e| e.to_string())).collect()
}

fn resolve_case(raw: RawCase) -> Result<VerifyCase, String> {
    if raw.id.is_empty() || !raw.id.chars().all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c)) {
        return Err(format!("case id `{}` must be nonempty and use only [A-Za-z0-9_.-]", raw.id));
    }
    let geometry = raw
        .geometry
        .as_deref()
        .map(|g| g.parse::<Geometry>().map_err(|e| e.to_string()))
        .transpose()?;
    let mut case = match raw.spec {
        Some(spec) => {
            let geometry = geometry.ok_or("an inline spec needs a geometry")?;
            let spec = spec.build().map_err(|e| e.to_string())?;
            VerifyCase {
                id: raw.id.clone(),
                problem: EnergyProblem::new(geometry, spec, raw.function.clone()),
                forms: Form::ALL.iter().copied().filter(|f| f.is_energy()).collect(),
                tolerance: 1e-2,
                settings: Settings::default(),
                checks: vec![],
            }
        }
        None => {
            let mut c = VerifyCase::from_corpus(&raw.function).map_err(|e| e.message)?;
            if let Some(g) = geometry {
                if g != c.problem.geometry {
                    return Err(format!(
                        "function `{}` lives on {}, not {g}",
                        raw.function, c.problem.geometry
                    ));
                }
            }
            c.id = raw.id.clone();
            c
        }
    };
    if let Some(cat) = raw.catalog {
        if !CATALOG_IDS.contains(&cat.as_str()) {
            return Err(format!("unknown catalog field `{cat}` (available: {})", CATALOG_IDS.join(", ")));
        }
        case.problem.catalog = Some(cat);
    }
    if let Some(forms) = raw.forms {
        case.forms = parse_list(&forms)?;
    }
    if let Some(checks) = raw.checks {
        case.checks = parse_list(&checks)?;
    }
    if let Some(t) = raw.tolerance {
        case.tolerance = t;
    }
    if let Some(l) = raw.level {
        case.settings.level = l;
    }
    if let Some(s) = raw.schedule {
        let order = s.order.unwrap_or(s.radii.len());
        case.settings.schedule = SingularSchedule::new(s.radii, order).map_err(|e| e.to_string())?;
    }
    case.validate()?;
    Ok(case)
}

/// Parses and validates a suite configuration. Unknown keys are rejected.
pub fn parse_config(text: &str) -> Result<SuiteConfig, ConfigError> {
    let raw: RawSuite = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| line_of(text, s.start));
        ConfigError::new(line, e.message().trim_end())
    })?;
    let mut output = OutputSettings::default();
    if let Some(o) = raw.output {
        if let Some(f) = o.format {
            output.format = f.parse().map_err(|e: String| ConfigError::new(None, e))?;
        }
        output.path = o.path;
        output.timings = o.timings;
    }
    if raw.workers == Some(0) {
        return Err(ConfigError::new(None, "workers must be at least 1"));
    }
    let mut seen = HashSet::new();
    let mut cases = Vec::with_capacity(raw.cases.len());
    for spanned in raw.cases {
        let line = Some(line_of(text, spanned.span().start));
        let rc = spanned.into_inner();
        if !seen.insert(rc.id.clone()) {
            return Err(ConfigError::new(line, format!("duplicate case id `{}`", rc.id)));
        }
        let id = rc.id.clone();
        let case = resolve_case(rc).map_err(|m| ConfigError::new(line, format!("case `{id}`: {m}")))?;
        cases.push(case);
    }
    Ok(SuiteConfig {
        seed: raw.seed,
        workers: raw.workers,
        output,
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_case_takes_corpus_defaults() {
        let cfg = parse_config("[[case]]\nid = \"a\"\nfunction = \"disk_douglas\"\n").unwrap();
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.output, OutputSettings::default());
        let c = &cfg.cases[0];
        assert_eq!(c.tolerance, 1e-6);
        assert_eq!(c.settings, Settings::default());
        assert_eq!(c.forms, vec![Form::Gradient, Form::Fourier, Form::Double, Form::Ahlfors]);
    }

    #[test]
    fn empty_suite_is_valid() {
        assert!(parse_config("").unwrap().cases.is_empty());
    }

    #[test]
    fn inline_spec_is_built() {
        let text = r#"
[[case]]
id = "two"
function = "two_modes"
geometry = "disk"
spec = { kind = "circle_fourier", terms = [{ k = 1, a = 1.0 }, { k = 3, b = 0.5 }] }
forms = ["fourier", "gradient"]
checks = ["conformal"]
schedule = { radii = [0.2, 0.1, 0.05], order = 3 }
"#;
        let c = &parse_config(text).unwrap().cases[0];
        assert_eq!(c.problem.function_id, "two_modes");
        assert_eq!(c.checks, vec![Check::Conformal]);
        assert_eq!(c.settings.schedule.radii, vec![0.2, 0.1, 0.05]);
    }

    #[test]
    fn unknown_key_reports_its_line() {
        let err = parse_config("seed = 1\n\n[[case]]\nid = \"a\"\nfunction = \"disk_douglas\"\ncolour = 3\n").unwrap_err();
        assert_eq!(err.line, Some(6), "{err}");
        assert!(err.message.contains("colour"), "{err}");
    }

    #[test]
    fn unknown_spec_key_is_rejected() {
        let text = "[[case]]\nid = \"a\"\nfunction = \"f\"\ngeometry = \"disk\"\nspec = { kind = \"circle_fourier\", terms = [], extra = 1 }\n";
        assert!(parse_config(text).unwrap_err().message.contains("extra"));
    }

    #[test]
    fn ball_ahlfors_needs_a_catalog_field() {
        let text = r#"
[[case]]
id = "b"
function = "zonal"
geometry = "ball3"
spec = { kind = "zonal_gegenbauer", n = 3, axis = [1.0, 0.0, 0.0], coeffs = [0.0, 0.0, -2.0] }
forms = ["gradient", "ahlfors"]
"#;
        let err = parse_config(text).unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(err.message.contains("catalog"), "{err}");
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let text = "[[case]]\nid = \"a\"\nfunction = \"disk_douglas\"\n[[case]]\nid = \"a\"\nfunction = \"moebius_cos\"\n";
        let err = parse_config(text).unwrap_err();
        assert_eq!(err.line, Some(4));
        assert!(err.message.contains("duplicate"));
    }

    #[test]
    fn inconsistent_cases_are_rejected() {
        for (body, needle) in [
            ("function = \"nope\"", "unknown function"),
            ("function = \"disk_douglas\"\ntolerance = 0.0", "tolerance"),
            ("function = \"disk_douglas\"\nforms = [\"ahlforsSeries\"]", "not defined"),
            ("function = \"disk_douglas\"\nchecks = [\"gLambda\"]", "does not apply"),
            ("function = \"disk_douglas\"\ngeometry = \"ball3\"", "lives on disk"),
            ("function = \"disk_douglas\"\ncatalog = \"x\"", "unknown catalog"),
            ("function = \"disk_douglas\"\nlevel = -1", "invalid value"),
        ] {
            let err = parse_config(&format!("[[case]]\nid = \"a\"\n{body}\n")).unwrap_err();
            assert!(err.message.contains(needle), "{body}: {err}");
            assert!(err.line.is_some());
        }
    }
}
