//! Study ingestion, validation, and deterministic report files.
//!
//! Two input formats carry the same content:
//!
//! - canonical JSON (see `docs/study.schema.json` in the repository):
//!   one object with `study_id`, `quantile_levels`, and a `variables` array
//!   whose entries map expert ids to assessed quantile values;
//! - flat CSV with header
//!   `study_id,variable_id,expert_id,q05,q50,q95,realization`,
//!   one row per expert×variable, UTF-8, `.` decimal separator — the shape
//!   published expert-judgment datasets usually arrive in.
//!
//! Experts missing any calibration variable are dropped at ingestion with a
//! machine-readable reason, mirroring how incomplete experts are treated in
//! published studies. All output files are byte-stable for a fixed input and
//! configuration: object keys are sorted and every float is printed with 12
//! significant digits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::expert_cdf::{CdfError, QuantileAssessment};
use crate::pipeline::{SaConvention, ScoreReport};

#[derive(Debug, Error)]
pub enum StudyIoError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV at line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("schema violation ({context}): {message}")]
    Schema { context: String, message: String },
    #[error("no expert assessed every calibration variable; nothing to score")]
    NoCompleteExperts,
    #[error("report has no experts; refusing to write partial files")]
    EmptyReport,
    #[error(transparent)]
    Cdf(#[from] CdfError),
}

/// Input format of a study file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StudyFormat {
    Json,
    Csv,
}

impl StudyFormat {
    /// Infer the format from a file extension, defaulting to JSON.
    pub fn from_path(path: &Path) -> StudyFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => StudyFormat::Csv,
            _ => StudyFormat::Json,
        }
    }
}

/// Optional per-study configuration overrides carried inside the file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StudyOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overshoot: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<SaConvention>,
}

/// One calibration variable: its realization and every expert's assessment.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationVariable {
    pub variable_id: String,
    pub realization: f64,
    pub unit: String,
    /// Keyed by expert id; sorted, hence deterministic iteration.
    pub assessments: BTreeMap<String, QuantileAssessment>,
}

/// A validated elicitation study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyRecord {
    pub study_id: String,
    pub quantile_levels: Vec<f64>,
    pub variables: Vec<CalibrationVariable>,
    pub overrides: Option<StudyOverrides>,
}

impl StudyRecord {
    /// Expert ids present in every variable (sorted).
    pub fn expert_ids(&self) -> Vec<String> {
        let mut ids: BTreeSet<String> = BTreeSet::new();
        if let Some(first) = self.variables.first() {
            ids = first.assessments.keys().cloned().collect();
        }
        for v in &self.variables {
            ids.retain(|id| v.assessments.contains_key(id));
        }
        ids.into_iter().collect()
    }

    pub fn n_vars(&self) -> usize {
        self.variables.len()
    }
}

/// Why an expert was removed at ingestion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DroppedExpert {
    pub expert_id: String,
    /// Machine-readable reason code, e.g. `incomplete`.
    pub reason: String,
    pub detail: String,
}

/// Everything that happened on the way in: drops, clamps, warnings.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IngestionDiagnostics {
    pub dropped_experts: Vec<DroppedExpert>,
    /// Filled in by the scoring pipeline: realizations outside an expert's
    /// interpolated support whose pit was clamped to 0 or 1.
    pub clamped_pits: u32,
    pub warnings: Vec<String>,
}

// ---------------------------------------------------------------------------
// loading
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStudy {
    study_id: String,
    quantile_levels: Vec<f64>,
    variables: Vec<RawVariable>,
    #[serde(default)]
    overrides: Option<StudyOverrides>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariable {
    variable_id: String,
    realization: f64,
    #[serde(default)]
    unit: String,
    assessments: BTreeMap<String, Vec<f64>>,
}

/// Load and validate a study file.
pub fn load_study(
    path: &Path,
    format: StudyFormat,
) -> Result<(StudyRecord, IngestionDiagnostics), StudyIoError> {
    let data = std::fs::read_to_string(path)
        .map_err(|source| StudyIoError::Io { path: path.to_path_buf(), source })?;
    load_study_str(&data, format)
}

/// Load and validate a study from an in-memory string.
pub fn load_study_str(
    data: &str,
    format: StudyFormat,
) -> Result<(StudyRecord, IngestionDiagnostics), StudyIoError> {
    match format {
        StudyFormat::Json => {
            let raw: RawStudy = serde_json::from_str(data)?;
            build_study(raw)
        }
        StudyFormat::Csv => {
            let raw = parse_csv(data)?;
            build_study(raw)
        }
    }
}

const CSV_HEADER: [&str; 7] =
    ["study_id", "variable_id", "expert_id", "q05", "q50", "q95", "realization"];

fn parse_csv(data: &str) -> Result<RawStudy, StudyIoError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(data.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| StudyIoError::Csv { line: 1, message: e.to_string() })?
        .clone();
    if headers.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(StudyIoError::Csv {
            line: 1,
            message: format!(
                "expected header {:?}, got {:?}",
                CSV_HEADER.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut study_id: Option<String> = None;
    let mut order: Vec<String> = Vec::new();
    let mut vars: BTreeMap<String, (f64, String, BTreeMap<String, Vec<f64>>)> = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| StudyIoError::Csv {
            line: e.position().map(|p| p.line()).unwrap_or(0),
            message: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize| -> Result<&str, StudyIoError> {
            record.get(i).ok_or(StudyIoError::Csv {
                line,
                message: format!("missing column {}", CSV_HEADER[i]),
            })
        };
        let num = |i: usize| -> Result<f64, StudyIoError> {
            field(i)?.trim().parse::<f64>().map_err(|e| StudyIoError::Csv {
                line,
                message: format!("column {}: {e}", CSV_HEADER[i]),
            })
        };
        let sid = field(0)?.to_string();
        match &study_id {
            None => study_id = Some(sid),
            Some(existing) if *existing != sid => {
                return Err(StudyIoError::Csv {
                    line,
                    message: format!("mixed study ids '{existing}' and '{sid}'"),
                });
            }
            _ => {}
        }
        let variable_id = field(1)?.to_string();
        let expert_id = field(2)?.to_string();
        let values = vec![num(3)?, num(4)?, num(5)?];
        let realization = num(6)?;
        let entry = vars.entry(variable_id.clone()).or_insert_with(|| {
            order.push(variable_id.clone());
            (realization, String::new(), BTreeMap::new())
        });
        if entry.0 != realization {
            return Err(StudyIoError::Csv {
                line,
                message: format!(
                    "variable '{variable_id}' has conflicting realizations {} and {realization}",
                    entry.0
                ),
            });
        }
        if entry.2.insert(expert_id.clone(), values).is_some() {
            return Err(StudyIoError::Csv {
                line,
                message: format!("duplicate row for variable '{variable_id}', expert '{expert_id}'"),
            });
        }
    }
    let study_id = study_id.ok_or(StudyIoError::Csv { line: 1, message: "no data rows".into() })?;
    let variables = order
        .into_iter()
        .map(|variable_id| {
            let (realization, unit, assessments) = vars.remove(&variable_id).expect("ordered key");
            RawVariable { variable_id, realization, unit, assessments }
        })
        .collect();
    Ok(RawStudy {
        study_id,
        quantile_levels: vec![0.05, 0.5, 0.95],
        variables,
        overrides: None,
    })
}

fn build_study(raw: RawStudy) -> Result<(StudyRecord, IngestionDiagnostics), StudyIoError> {
    let schema = |context: &str, message: String| StudyIoError::Schema {
        context: context.to_string(),
        message,
    };
    if raw.study_id.is_empty() {
        return Err(schema("study_id", "must be non-empty".into()));
    }
    if raw.variables.is_empty() {
        return Err(schema("variables", "at least one calibration variable required".into()));
    }
    let mut prev = 0.0;
    for &p in &raw.quantile_levels {
        if !p.is_finite() || p <= prev || p >= 1.0 {
            return Err(schema(
                "quantile_levels",
                format!("must be strictly increasing in (0, 1), got {:?}", raw.quantile_levels),
            ));
        }
        prev = p;
    }
    if raw.quantile_levels.is_empty() {
        return Err(schema("quantile_levels", "must be non-empty".into()));
    }

    let mut seen_vars = BTreeSet::new();
    let mut all_experts = BTreeSet::new();
    let mut variables = Vec::with_capacity(raw.variables.len());
    for v in &raw.variables {
        if !seen_vars.insert(v.variable_id.clone()) {
            return Err(schema("variables", format!("duplicate variable id '{}'", v.variable_id)));
        }
        if !v.realization.is_finite() {
            return Err(schema(
                &format!("variable '{}'", v.variable_id),
                format!("realization must be finite, got {}", v.realization),
            ));
        }
        if v.assessments.is_empty() {
            return Err(schema(
                &format!("variable '{}'", v.variable_id),
                "needs at least one expert assessment".into(),
            ));
        }
        for e in v.assessments.keys() {
            all_experts.insert(e.clone());
        }
    }

    // experts missing any variable are dropped, not errors
    let mut dropped = Vec::new();
    let mut complete: BTreeSet<String> = all_experts.clone();
    for v in &raw.variables {
        complete.retain(|e| v.assessments.contains_key(e));
    }
    for e in &all_experts {
        if !complete.contains(e) {
            let missing: Vec<&str> = raw
                .variables
                .iter()
                .filter(|v| !v.assessments.contains_key(e))
                .map(|v| v.variable_id.as_str())
                .collect();
            dropped.push(DroppedExpert {
                expert_id: e.clone(),
                reason: "incomplete".into(),
                detail: format!("missing variables: {}", missing.join(", ")),
            });
        }
    }
    if complete.is_empty() {
        return Err(StudyIoError::NoCompleteExperts);
    }

    for v in raw.variables {
        let mut assessments = BTreeMap::new();
        for (expert, values) in v.assessments {
            if !complete.contains(&expert) {
                continue;
            }
            let assessment = QuantileAssessment::new(raw.quantile_levels.clone(), values)
                .map_err(|e| {
                    schema(
                        &format!("variable '{}', expert '{expert}'", v.variable_id),
                        e.to_string(),
                    )
                })?;
            assessments.insert(expert, assessment);
        }
        variables.push(CalibrationVariable {
            variable_id: v.variable_id,
            realization: v.realization,
            unit: v.unit,
            assessments,
        });
    }

    let record = StudyRecord {
        study_id: raw.study_id,
        quantile_levels: raw.quantile_levels,
        variables,
        overrides: raw.overrides,
    };
    let diagnostics =
        IngestionDiagnostics { dropped_experts: dropped, clamped_pits: 0, warnings: Vec::new() };
    Ok((record, diagnostics))
}

// ---------------------------------------------------------------------------
// writing
// ---------------------------------------------------------------------------

/// Serialize a study in the requested format (canonical, byte-stable).
pub fn write_study(record: &StudyRecord, format: StudyFormat) -> String {
    match format {
        StudyFormat::Json => {
            let mut out = String::new();
            write_canonical(&study_to_value(record), &mut out, 0);
            out.push('\n');
            out
        }
        StudyFormat::Csv => {
            let mut out = String::new();
            out.push_str(&CSV_HEADER.join(","));
            out.push('\n');
            for v in &record.variables {
                for (expert, q) in &v.assessments {
                    let vals = q.values();
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        record.study_id,
                        v.variable_id,
                        expert,
                        fmt_f64(vals[0]),
                        fmt_f64(vals[1]),
                        fmt_f64(vals[2]),
                        fmt_f64(v.realization)
                    );
                }
            }
            out
        }
    }
}

/// Write a study to disk.
pub fn write_study_file(
    record: &StudyRecord,
    path: &Path,
    format: StudyFormat,
) -> Result<(), StudyIoError> {
    std::fs::write(path, write_study(record, format))
        .map_err(|source| StudyIoError::Io { path: path.to_path_buf(), source })
}

fn study_to_value(record: &StudyRecord) -> Value {
    let variables: Vec<Value> = record
        .variables
        .iter()
        .map(|v| {
            let assessments: serde_json::Map<String, Value> = v
                .assessments
                .iter()
                .map(|(e, q)| {
                    (e.clone(), Value::Array(q.values().iter().map(|x| json_num(*x)).collect()))
                })
                .collect();
            let mut m = serde_json::Map::new();
            m.insert("variable_id".into(), Value::String(v.variable_id.clone()));
            m.insert("realization".into(), json_num(v.realization));
            m.insert("unit".into(), Value::String(v.unit.clone()));
            m.insert("assessments".into(), Value::Object(assessments));
            Value::Object(m)
        })
        .collect();
    let mut m = serde_json::Map::new();
    m.insert("study_id".into(), Value::String(record.study_id.clone()));
    m.insert(
        "quantile_levels".into(),
        Value::Array(record.quantile_levels.iter().map(|p| json_num(*p)).collect()),
    );
    m.insert("variables".into(), Value::Array(variables));
    if let Some(overrides) = &record.overrides {
        m.insert(
            "overrides".into(),
            serde_json::to_value(overrides).expect("overrides serialize"),
        );
    }
    Value::Object(m)
}

fn json_num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// Report files written by [`write_report`].
pub const REPORT_JSON: &str = "report.json";
pub const REPORT_EXPERTS_CSV: &str = "experts.csv";
pub const REPORT_SA_BY_RANK_CSV: &str = "sa_by_rank.csv";
pub const REPORT_PIT_HISTOGRAM_CSV: &str = "pit_histogram.csv";

/// Write the full report bundle into `dir`: `report.json` plus the flat
/// per-expert CSV and the two plot-data files. Deterministic bytes for a
/// fixed report; nothing is written when the report has no experts.
pub fn write_report(report: &ScoreReport, dir: &Path) -> Result<Vec<PathBuf>, StudyIoError> {
    if report.experts.is_empty() {
        return Err(StudyIoError::EmptyReport);
    }
    std::fs::create_dir_all(dir)
        .map_err(|source| StudyIoError::Io { path: dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    let put = |name: &str, contents: String| -> Result<PathBuf, StudyIoError> {
        let path = dir.join(name);
        std::fs::write(&path, contents)
            .map_err(|source| StudyIoError::Io { path: path.clone(), source })?;
        Ok(path)
    };
    written.push(put(REPORT_JSON, report_json(report))?);
    written.push(put(REPORT_EXPERTS_CSV, experts_csv(report))?);
    written.push(put(REPORT_SA_BY_RANK_CSV, sa_by_rank_csv(report))?);
    written.push(put(REPORT_PIT_HISTOGRAM_CSV, pit_histogram_csv(report))?);
    Ok(written)
}

/// Canonical JSON rendering of the report (sorted keys, 12-significant-digit
/// floats).
pub fn report_json(report: &ScoreReport) -> String {
    let value = serde_json::to_value(report).expect("report serializes");
    let mut out = String::new();
    write_canonical(&value, &mut out, 0);
    out.push('\n');
    out
}

fn experts_csv(report: &ScoreReport) -> String {
    let mut out = String::from(
        "study_id,expert_id,n_vars,crps_sa,crps_sa_convention,cm_sa,z_sum,location_bias,\
         mape,mape_unstable,clamped_pits,count_below_q05,count_q05_q50,count_q50_q95,count_above_q95\n",
    );
    for e in &report.experts {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            report.study_id,
            e.expert_id,
            e.n_vars,
            fmt_f64(e.crps_sa),
            e.crps_sa_convention.as_str(),
            fmt_f64(e.cm_sa),
            fmt_f64(e.z_sum),
            fmt_f64(e.location_bias),
            e.mape.map(fmt_f64).unwrap_or_default(),
            e.mape_unstable,
            e.clamped_pits,
            e.inter_quantile_counts[0],
            e.inter_quantile_counts[1],
            e.inter_quantile_counts[2],
            e.inter_quantile_counts[3],
        );
    }
    out
}

fn sa_by_rank_csv(report: &ScoreReport) -> String {
    let mut out = String::from("rank,expert_id,crps_sa,cm_sa\n");
    for row in &report.sa_by_rank {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row.rank,
            row.expert_id,
            fmt_f64(row.crps_sa),
            fmt_f64(row.cm_sa)
        );
    }
    out
}

fn pit_histogram_csv(report: &ScoreReport) -> String {
    let mut out = String::from("bin_low,bin_high,count\n");
    let bins = report.pit_histogram.len();
    for (i, count) in report.pit_histogram.iter().enumerate() {
        let lo = i as f64 / bins as f64;
        let hi = (i + 1) as f64 / bins as f64;
        let _ = writeln!(out, "{},{},{}", fmt_f64(lo), fmt_f64(hi), count);
    }
    out
}

/// Fixed 12-significant-digit float formatting used in every output file.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // normalize -0.0
        return "0.0".to_string();
    }
    format!("{x:.11e}")
}

/// Canonical JSON printer: serde_json's map already sorts keys; floats are
/// rendered through [`fmt_f64`] so bytes never depend on shortest-roundtrip
/// formatting.
fn write_canonical(value: &Value, out: &mut String, indent: usize) {
    let pad = |out: &mut String, n: usize| {
        for _ in 0..n {
            out.push_str("  ");
        }
    };
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Value::Number(n) => {
            if n.is_i64() || n.is_u64() {
                let _ = write!(out, "{n}");
            } else {
                out.push_str(&fmt_f64(n.as_f64().expect("finite float")));
            }
        }
        Value::String(s) => {
            let _ = write!(out, "{}", Value::String(s.clone()));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                pad(out, indent + 1);
                write_canonical(item, out, indent + 1);
            }
            out.push('\n');
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (k, v)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                pad(out, indent + 1);
                let _ = write!(out, "{}: ", Value::String(k.clone()));
                write_canonical(v, out, indent + 1);
            }
            out.push('\n');
            pad(out, indent);
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "study_id": "s1",
        "quantile_levels": [0.05, 0.5, 0.95],
        "variables": [
            {"variable_id": "v1", "realization": 2.5,
             "assessments": {"alice": [1.0, 2.0, 3.0]}}
        ]
    }"#;

    #[test]
    fn minimal_json_loads() {
        let (record, diag) = load_study_str(MINIMAL, StudyFormat::Json).unwrap();
        assert_eq!(record.study_id, "s1");
        assert_eq!(record.n_vars(), 1);
        assert_eq!(record.expert_ids(), vec!["alice"]);
        assert!(diag.dropped_experts.is_empty());
    }

    #[test]
    fn incomplete_expert_dropped_with_reason() {
        let data = r#"{
            "study_id": "s1",
            "quantile_levels": [0.05, 0.5, 0.95],
            "variables": [
                {"variable_id": "v1", "realization": 2.5,
                 "assessments": {"alice": [1.0, 2.0, 3.0], "bob": [0.5, 1.5, 2.5]}},
                {"variable_id": "v2", "realization": 4.0,
                 "assessments": {"alice": [3.0, 4.0, 5.0]}}
            ]
        }"#;
        let (record, diag) = load_study_str(data, StudyFormat::Json).unwrap();
        assert_eq!(record.expert_ids(), vec!["alice"]);
        assert_eq!(diag.dropped_experts.len(), 1);
        assert_eq!(diag.dropped_experts[0].expert_id, "bob");
        assert_eq!(diag.dropped_experts[0].reason, "incomplete");
        assert!(diag.dropped_experts[0].detail.contains("v2"));
        // the dropped expert's assessments are gone from the record too
        assert!(!record.variables[0].assessments.contains_key("bob"));
    }

    #[test]
    fn non_increasing_quantiles_rejected() {
        let data = r#"{
            "study_id": "s1",
            "quantile_levels": [0.05, 0.5, 0.95],
            "variables": [
                {"variable_id": "v1", "realization": 2.5,
                 "assessments": {"alice": [2.0, 2.0, 3.0]}}
            ]
        }"#;
        match load_study_str(data, StudyFormat::Json) {
            Err(StudyIoError::Schema { context, message }) => {
                assert!(context.contains("alice"), "{context}");
                assert!(message.contains("strictly increasing"), "{message}");
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_variable_ids_rejected() {
        let data = r#"{
            "study_id": "s1",
            "quantile_levels": [0.05, 0.5, 0.95],
            "variables": [
                {"variable_id": "v1", "realization": 2.5,
                 "assessments": {"alice": [1.0, 2.0, 3.0]}},
                {"variable_id": "v1", "realization": 2.5,
                 "assessments": {"alice": [1.0, 2.0, 3.0]}}
            ]
        }"#;
        assert!(matches!(
            load_study_str(data, StudyFormat::Json),
            Err(StudyIoError::Schema { .. })
        ));
    }

    #[test]
    fn all_experts_incomplete_is_an_error() {
        let data = r#"{
            "study_id": "s1",
            "quantile_levels": [0.05, 0.5, 0.95],
            "variables": [
                {"variable_id": "v1", "realization": 1.0,
                 "assessments": {"alice": [1.0, 2.0, 3.0]}},
                {"variable_id": "v2", "realization": 1.0,
                 "assessments": {"bob": [1.0, 2.0, 3.0]}}
            ]
        }"#;
        assert!(matches!(
            load_study_str(data, StudyFormat::Json),
            Err(StudyIoError::NoCompleteExperts)
        ));
    }

    #[test]
    fn csv_roundtrip_and_validation() {
        let csv = "study_id,variable_id,expert_id,q05,q50,q95,realization\n\
                   s1,v1,alice,1,2,3,2.5\n\
                   s1,v1,bob,2,4,8,2.5\n\
                   s1,v2,alice,8,9,12,10\n\
                   s1,v2,bob,5,10,15,10\n";
        let (record, _) = load_study_str(csv, StudyFormat::Csv).unwrap();
        assert_eq!(record.expert_ids(), vec!["alice", "bob"]);
        assert_eq!(record.variables[0].variable_id, "v1");
        assert_eq!(record.variables[1].realization, 10.0);

        let rewritten = write_study(&record, StudyFormat::Csv);
        let (record2, _) = load_study_str(&rewritten, StudyFormat::Csv).unwrap();
        assert_eq!(record, record2);
    }

    #[test]
    fn csv_duplicate_row_rejected_with_line() {
        let csv = "study_id,variable_id,expert_id,q05,q50,q95,realization\n\
                   s1,v1,alice,1,2,3,2.5\n\
                   s1,v1,alice,1,2,3,2.5\n";
        match load_study_str(csv, StudyFormat::Csv) {
            Err(StudyIoError::Csv { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("duplicate"));
            }
            other => panic!("expected csv error, got {other:?}"),
        }
    }

    #[test]
    fn csv_conflicting_realization_rejected() {
        let csv = "study_id,variable_id,expert_id,q05,q50,q95,realization\n\
                   s1,v1,alice,1,2,3,2.5\n\
                   s1,v1,bob,2,4,8,99\n";
        assert!(matches!(load_study_str(csv, StudyFormat::Csv), Err(StudyIoError::Csv { .. })));
    }

    #[test]
    fn csv_bad_header_rejected() {
        let csv = "study,var,expert,a,b,c,real\ns1,v1,alice,1,2,3,2.5\n";
        assert!(matches!(load_study_str(csv, StudyFormat::Csv), Err(StudyIoError::Csv { line: 1, .. })));
    }

    #[test]
    fn json_write_load_is_idempotent() {
        let (record, _) = load_study_str(MINIMAL, StudyFormat::Json).unwrap();
        let first = write_study(&record, StudyFormat::Json);
        let (reloaded, _) = load_study_str(&first, StudyFormat::Json).unwrap();
        let second = write_study(&reloaded, StudyFormat::Json);
        assert_eq!(first, second);
        assert_eq!(record, reloaded);
    }

    #[test]
    fn missing_file_error_names_path() {
        let err = load_study(Path::new("/nonexistent/study.json"), StudyFormat::Json).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/study.json"));
    }

    #[test]
    fn format_inference() {
        assert_eq!(StudyFormat::from_path(Path::new("a/b/study.CSV")), StudyFormat::Csv);
        assert_eq!(StudyFormat::from_path(Path::new("study.json")), StudyFormat::Json);
        assert_eq!(StudyFormat::from_path(Path::new("study")), StudyFormat::Json);
    }

    #[test]
    fn float_formatting_is_fixed_width_significant() {
        assert_eq!(fmt_f64(0.0), "0.0");
        assert_eq!(fmt_f64(-0.0), "0.0");
        assert_eq!(fmt_f64(0.725), "7.25000000000e-1");
        assert_eq!(fmt_f64(-1.0), "-1.00000000000e0");
        // parseable back to the same double at 12 significant digits
        let x = 0.19666666666666666;
        let s = fmt_f64(x);
        let back: f64 = s.parse().unwrap();
        assert!((back - x).abs() < 1e-12);
    }
}
