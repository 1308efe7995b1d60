use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{CliError, Output};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub height: String,
    pub h: u32,
    pub points: usize,
    /// Points whose f-values exceed the height bound.
    pub excluded: usize,
    pub work_prec: i64,
    pub branch: String,
    pub depth: u32,
    pub hypersurfaces: usize,
    pub max_degree: u32,
    pub d_prime: Option<u32>,
    pub envelope_ok: bool,
    pub contained: usize,
    pub contained_to_precision: usize,
    pub transcendental: usize,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolylogRow {
    pub height: String,
    pub h: u32,
    pub points: usize,
    pub degree: u32,
    pub bound: u32,
    /// bound / h^d
    pub c_bound: String,
    /// degree / h^d
    pub c_measured: String,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizeRow {
    pub generator: Option<usize>,
    pub variable: Option<usize>,
    pub degree: u32,
    pub m: Option<u64>,
    pub n: u64,
    pub e: u32,
    pub exact_monic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub height: String,
    pub h: u32,
    pub points: usize,
    pub hypersurfaces: usize,
    pub normalize_ms: f64,
    pub enumerate_ms: f64,
    pub cover_ms: f64,
    pub classify_ms: f64,
    pub deterministic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "rows", rename_all = "lowercase")]
pub enum Rows {
    Count(Vec<CountRow>),
    Polylog(Vec<PolylogRow>),
    Normalize(Vec<NormalizeRow>),
    Bench(Vec<BenchRow>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub mode: String,
    pub field: String,
    pub sigma: u32,
    pub epsilon: String,
    pub prec_ceiling: i64,
    /// Envelope constant: max over rows of N_tran^b / H^a for ε = a/b.
    pub c_pow: Option<String>,
    pub rows: Rows,
}

impl RunReport {
    /// The report with wall times zeroed, for reproducibility checks.
    pub fn without_timings(&self) -> RunReport {
        let mut r = self.clone();
        match &mut r.rows {
            Rows::Count(rows) => rows.iter_mut().for_each(|x| x.wall_ms = 0.0),
            Rows::Polylog(rows) => rows.iter_mut().for_each(|x| x.wall_ms = 0.0),
            Rows::Normalize(_) => {}
            Rows::Bench(rows) => rows.iter_mut().for_each(|x| {
                x.normalize_ms = 0.0;
                x.enumerate_ms = 0.0;
                x.cover_ms = 0.0;
                x.classify_ms = 0.0;
            }),
        }
        r
    }

    pub fn fingerprint(&self) -> String {
        serde_json::to_string(&self.without_timings()).expect("report serializes")
    }

    pub fn count_rows(&self) -> Option<&[CountRow]> {
        match &self.rows {
            Rows::Count(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        fn rows_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| CliError::Problem(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Problem(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv is utf-8"))
        }
        match &self.rows {
            Rows::Count(r) => rows_csv(r),
            Rows::Polylog(r) => rows_csv(r),
            Rows::Normalize(r) => rows_csv(r),
            Rows::Bench(r) => rows_csv(r),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Output {
    /// Writes `report.{csv,json}` and every dump into `dir`, or the report
    /// to stdout when there is no directory.
    pub fn write(&self, dir: Option<&Path>, format: Format) -> Result<(), CliError> {
        let body = match format {
            Format::Csv => self.report.to_csv()?,
            Format::Json => serde_json::to_string_pretty(&self.report.to_json()).expect("json") + "\n",
        };
        let Some(dir) = dir else {
            std::io::stdout().write_all(body.as_bytes())?;
            return Ok(());
        };
        std::fs::create_dir_all(dir)?;
        let name = match format {
            Format::Csv => "report.csv",
            Format::Json => "report.json",
        };
        std::fs::write(dir.join(name), body)?;
        for (file, v) in &self.dumps {
            std::fs::write(dir.join(file), serde_json::to_string_pretty(v).expect("json") + "\n")?;
        }
        Ok(())
    }
}
