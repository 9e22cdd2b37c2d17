//! Loading the quarterly dataset from a wide CSV file, plus descriptive
//! statistics and a light data-quality report.
//!
//! Layout: one row per quarter, one column per variable, e.g.
//!
//! ```text
//! period,REER,USLR,M2,CPI,WIR
//! 2001Q4,98.1,4.75,123456789.0,3.6,4.9
//! ```
//!
//! Columns listed in [`DatasetSchema::log_columns`] are replaced by their
//! natural logarithm on load and keep their original name.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::timeseries::{log_transform, Frame, Period, Series, SeriesError};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error("missing column {0:?}")]
    MissingColumn(String),
    #[error("line {line}: cannot parse period {value:?}")]
    BadPeriodFormat { line: u64, value: String },
    #[error("line {line}: column {column:?} has non-numeric cell {value:?}")]
    NonNumericCell { line: u64, column: String, value: String },
    #[error("gap in periods: {0} is missing")]
    GapInPeriods(Period),
    #[error("duplicate period {0}")]
    DuplicatePeriod(Period),
    #[error("column {column:?} has a non-positive value at {period}; cannot take logs")]
    NonPositiveValue { column: String, period: Period },
    #[error("dataset has no rows")]
    EmptyFrame,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Which CSV columns to read and which of them enter in logs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DatasetSchema {
    pub period_column: String,
    pub variable_columns: Vec<String>,
    pub log_columns: Vec<String>,
}

impl Default for DatasetSchema {
    fn default() -> Self {
        Self {
            period_column: "period".into(),
            variable_columns: ["REER", "USLR", "M2", "CPI", "WIR"].map(String::from).to_vec(),
            log_columns: vec!["M2".into()],
        }
    }
}

impl DatasetSchema {
    pub fn validate(&self) -> Result<(), IngestError> {
        if self.variable_columns.is_empty() {
            return Err(IngestError::InvalidSchema("no variable columns".into()));
        }
        for (i, name) in self.variable_columns.iter().enumerate() {
            if *name == self.period_column {
                return Err(IngestError::InvalidSchema(format!(
                    "period column {name:?} listed as a variable"
                )));
            }
            if self.variable_columns[..i].contains(name) {
                return Err(IngestError::InvalidSchema(format!("duplicate variable {name:?}")));
            }
        }
        if let Some(c) = self.log_columns.iter().find(|c| !self.variable_columns.contains(c)) {
            return Err(IngestError::InvalidSchema(format!(
                "log column {c:?} is not a variable column"
            )));
        }
        Ok(())
    }
}

pub fn load_csv(path: impl AsRef<Path>, schema: &DatasetSchema) -> Result<Frame, IngestError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => IngestError::FileNotFound(path.to_path_buf()),
        _ => IngestError::Io { path: path.to_path_buf(), source: e },
    })?;
    read_csv(file, schema)
}

/// Same as [`load_csv`] over any byte source.
pub fn read_csv<R: Read>(reader: R, schema: &DatasetSchema) -> Result<Frame, IngestError> {
    schema.validate()?;
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let index_of = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IngestError::MissingColumn(name.to_string()))
    };
    let period_idx = index_of(&schema.period_column)?;
    let var_idx = schema
        .variable_columns
        .iter()
        .map(|c| index_of(c))
        .collect::<Result<Vec<_>, _>>()?;

    let mut rows: Vec<(Period, Vec<f64>)> = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let raw_period = record.get(period_idx).unwrap_or("");
        let period: Period = raw_period.parse().map_err(|_| IngestError::BadPeriodFormat {
            line,
            value: raw_period.to_string(),
        })?;
        let mut values = Vec::with_capacity(var_idx.len());
        for (&idx, column) in var_idx.iter().zip(&schema.variable_columns) {
            let cell = record.get(idx).unwrap_or("");
            let v = cell
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| IngestError::NonNumericCell {
                    line,
                    column: column.clone(),
                    value: cell.to_string(),
                })?;
            values.push(v);
        }
        rows.push((period, values));
    }
    if rows.is_empty() {
        return Err(IngestError::EmptyFrame);
    }

    rows.sort_by_key(|(p, _)| *p);
    for w in rows.windows(2) {
        let (prev, next) = (w[0].0, w[1].0);
        if prev == next {
            return Err(IngestError::DuplicatePeriod(next));
        }
        if prev.succ() != next {
            return Err(IngestError::GapInPeriods(prev.succ()));
        }
    }

    let start = rows[0].0;
    let mut columns = Vec::with_capacity(var_idx.len());
    for (j, name) in schema.variable_columns.iter().enumerate() {
        let values: Vec<f64> = rows.iter().map(|(_, v)| v[j]).collect();
        let mut series = Series::new(name.clone(), start, values)?;
        if schema.log_columns.contains(name) {
            series = match log_transform(&series) {
                Ok(s) => s.renamed(name.clone()),
                Err(SeriesError::NonPositiveValue(i)) => {
                    return Err(IngestError::NonPositiveValue {
                        column: name.clone(),
                        period: start.advance(i as i64),
                    })
                }
                Err(e) => return Err(e.into()),
            };
        }
        columns.push(series);
    }
    Ok(Frame::new(columns)?)
}

/// Writes the frame in the canonical wide layout with LF line endings and
/// 17 significant digits, so [`read_csv`] (with no log columns) restores it exactly.
pub fn write_csv<W: Write>(frame: &Frame, period_column: &str, out: W) -> Result<(), IngestError> {
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut header = vec![period_column.to_string()];
    header.extend(frame.names().map(String::from));
    wtr.write_record(&header)?;
    for i in 0..frame.len() {
        let mut row = vec![frame.columns()[0].period_at(i).to_string()];
        row.extend(frame.columns().iter().map(|c| format_g17(c.values()[i])));
        wtr.write_record(&row)?;
    }
    wtr.flush().map_err(|e| IngestError::Csv(e.into()))?;
    Ok(())
}

/// `%.17g`-style rendering: 17 significant digits, trailing zeros trimmed.
pub fn format_g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Descriptive statistics for one column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub variable: String,
    pub minimum: f64,
    pub mean: f64,
    pub maximum: f64,
    pub count: usize,
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    compensated_sum(values) / values.len() as f64
}

pub fn summary_stats(frame: &Frame) -> Result<Vec<SummaryRow>, IngestError> {
    if frame.is_empty() {
        return Err(IngestError::EmptyFrame);
    }
    Ok(frame
        .columns()
        .iter()
        .map(|c| {
            let v = c.values();
            let minimum = v.iter().copied().fold(f64::INFINITY, f64::min);
            let maximum = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            // rounding can put a constant column's mean one ulp outside [min, max]
            let mean = mean(v).clamp(minimum, maximum);
            SummaryRow {
                variable: c.name().to_string(),
                minimum,
                mean,
                maximum,
                count: v.len(),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Finding {
    /// Constant column; a regression on it is degenerate.
    ZeroVariance(String),
    /// `|y_t − y_{t−1}|` exceeds [`JUMP_THRESHOLD_SD`] standard deviations of
    /// the column computed without `y_t`.
    LargeJump { column: String, period: Period, jump: f64, sd: f64 },
}

impl std::fmt::Display for Finding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Finding::ZeroVariance(c) => write!(f, "column {c:?} is constant"),
            Finding::LargeJump { column, period, jump, sd } => {
                write!(f, "column {column:?} jumps by {jump} at {period} ({:.1} sd)", jump.abs() / sd)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub observations: usize,
    pub findings: Vec<Finding>,
}

pub const JUMP_THRESHOLD_SD: f64 = 10.0;

fn sample_sd(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let n = values.clone().count();
    if n < 2 {
        return 0.0;
    }
    let m = values.clone().sum::<f64>() / n as f64;
    (values.map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
}

pub fn validate(frame: &Frame) -> ValidationReport {
    let mut findings = Vec::new();
    for c in frame.columns() {
        let v = c.values();
        if v.iter().all(|&x| x == v[0]) {
            findings.push(Finding::ZeroVariance(c.name().to_string()));
            continue;
        }
        for t in 1..v.len() {
            let others = v.iter().enumerate().filter(|&(i, _)| i != t).map(|(_, &x)| x);
            let sd = sample_sd(others);
            let jump = (v[t] - v[t - 1]).abs();
            if sd > 0.0 && jump > JUMP_THRESHOLD_SD * sd {
                findings.push(Finding::LargeJump {
                    column: c.name().to_string(),
                    period: c.period_at(t),
                    jump,
                    sd,
                });
            }
        }
    }
    ValidationReport { observations: frame.len(), findings }
}
