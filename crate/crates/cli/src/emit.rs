//! JSON and CSV reports. Numbers carry 17 significant digits so that
//! parsing the output recovers the computed doubles exactly.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::config::OutputFormat;
use crate::runner::{CaseReport, ConvergenceRow};

/// A double written as `d.ddddddddddddddddde±x`; non-finite values are `null`.
#[derive(Debug, Clone, Copy)]
pub struct Num(pub f64);

impl PartialEq for Num {
    fn eq(&self, other: &Self) -> bool {
        self.0.to_bits() == other.0.to_bits() || (self.0.is_nan() && other.0.is_nan())
    }
}

pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawValue::from_string(format_number(self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Num(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueRecord {
    pub value: Num,
    pub error: Num,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CheckEntry {
    pub value: Num,
    pub reference: Num,
    pub deviation: Num,
    pub tolerance: Num,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
}

/// The serialized form of one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CaseRecord {
    pub case: String,
    pub geometry: String,
    pub function_id: String,
    pub level: usize,
    pub tolerance: Num,
    /// Computed forms in canonical order.
    pub values: IndexMap<String, ValueRecord>,
    /// Forms that could not be computed, or `case` when nothing ran.
    pub failures: IndexMap<String, String>,
    pub max_pairwise_relative_deviation: Num,
    pub ahlfors_series_ratio: Option<Num>,
    pub checks: IndexMap<String, CheckEntry>,
    pub pass: bool,
    /// Wall seconds per form, present only when requested.
    pub timings: Option<IndexMap<String, Num>>,
}

impl CaseRecord {
    pub fn new(r: &CaseReport, geometry: &str, function_id: &str, tolerance: f64, timings: bool) -> Self {
        let mut rec = CaseRecord {
            case: r.id.clone(),
            geometry: geometry.to_string(),
            function_id: function_id.to_string(),
            level: r.level,
            tolerance: Num(tolerance),
            values: IndexMap::new(),
            failures: IndexMap::new(),
            max_pairwise_relative_deviation: Num(f64::NAN),
            ahlfors_series_ratio: None,
            checks: r
                .checks
                .iter()
                .map(|c| {
                    (
                        c.name.clone(),
                        CheckEntry {
                            value: Num(c.value),
                            reference: Num(c.reference),
                            deviation: Num(c.deviation),
                            tolerance: Num(c.tolerance),
                            pass: c.pass,
                            message: c.message.clone(),
                        },
                    )
                })
                .collect(),
            pass: r.pass,
            timings: None,
        };
        match &r.report {
            Ok(e) => {
                for v in &e.values {
                    rec.values.insert(
                        v.form.name().to_string(),
                        ValueRecord {
                            value: Num(v.value),
                            error: Num(v.error),
                        },
                    );
                }
                for (f, m) in &e.failures {
                    rec.failures.insert(f.name().to_string(), m.clone());
                }
                rec.max_pairwise_relative_deviation = Num(e.max_pairwise_relative_deviation);
                rec.ahlfors_series_ratio = e.ahlfors_series_ratio.map(Num);
                if timings {
                    rec.timings = Some(e.values.iter().map(|v| (v.form.name().to_string(), Num(v.seconds))).collect());
                }
            }
            Err(m) => {
                rec.failures.insert("case".to_string(), m.clone());
            }
        }
        rec
    }
}

/// Records for a run, in case order.
pub fn records(reports: &[CaseReport], cases: &[crate::VerifyCase], timings: bool) -> Vec<CaseRecord> {
    reports
        .iter()
        .zip(cases)
        .map(|(r, c)| {
            CaseRecord::new(
                r,
                &c.problem.geometry.name(),
                &c.problem.function_id,
                c.tolerance,
                timings,
            )
        })
        .collect()
}

pub const CSV_HEADER: &str = "case,geometry,form,value,error_estimate,pass";

fn csv(records: &[CaseRecord]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        for (form, v) in &r.values {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.case,
                r.geometry,
                form,
                format_number(v.value.0).replace("null", ""),
                format_number(v.error.0).replace("null", ""),
                r.pass
            );
        }
        for form in r.failures.keys() {
            let _ = writeln!(out, "{},{},{},,,false", r.case, r.geometry, form);
        }
    }
    out
}

/// Serializes reports. JSON output is an array with one object per case.
pub fn emit_report(records: &[CaseRecord], format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(records).expect("records serialize");
            s.push('\n');
            s.into_bytes()
        }
        OutputFormat::Csv => csv(records).into_bytes(),
    }
}

/// Value-versus-level table.
pub fn convergence_csv(
    case: &str,
    geometry: &str,
    rows: &[ConvergenceRow],
) -> Vec<u8> {
    let mut out = String::from("case,geometry,form,level,value,error_estimate\n");
    for row in rows {
        let (v, e) = match &row.result {
            Ok((v, e)) => (format_number(*v), format_number(*e)),
            Err(_) => (String::new(), String::new()),
        };
        let _ = writeln!(out, "{case},{geometry},{},{},{v},{e}", row.form.name(), row.level);
    }
    out.into_bytes()
}
