//! Multichannel CSV ingestion and report emission.
//!
//! Input format: a header row of channel names followed by numeric rows,
//! comma separated, `.` decimal point, `#` starting comment lines. Reports
//! go out as JSON (full structure, one object) or CSV (one row per
//! directed pair).

use std::io::Write;
use std::path::Path;

use gca_qmee::gca::DirectedIndex;
use gca_qmee::TimeSeries;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Parsed multichannel table: one column of equal length per channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelTable {
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    /// Metadata only; never enters the analysis.
    pub sample_rate: Option<f64>,
}

impl ChannelTable {
    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn to_time_series(&self) -> Result<Vec<TimeSeries>, CliError> {
        self.names
            .iter()
            .zip(&self.columns)
            .map(|(name, col)| TimeSeries::new(name.clone(), col.clone()).map_err(CliError::from))
            .collect()
    }
}

/// Reads a channel table from `path`.
pub fn parse_csv(path: &Path) -> Result<ChannelTable, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .has_headers(true)
        .from_path(path)
        .map_err(|e| CliError::Parse { row: 0, col: 0, message: e.to_string() })?;

    let names: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Parse { row: 0, col: 0, message: e.to_string() })?
        .iter()
        .map(str::to_string)
        .collect();
    if names.is_empty() || names.iter().all(String::is_empty) {
        return Err(CliError::Parse { row: 0, col: 0, message: "missing header row".into() });
    }

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1; // 1-based data row, header is row 0
        let record =
            record.map_err(|e| CliError::Parse { row, col: 0, message: e.to_string() })?;
        // skip fully blank lines
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != names.len() {
            return Err(CliError::RaggedRow { row, expected: names.len(), got: record.len() });
        }
        for (col, cell) in record.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| CliError::NonNumericCell {
                row,
                col: col + 1,
                cell: cell.to_string(),
            })?;
            if !value.is_finite() {
                return Err(CliError::NonNumericCell { row, col: col + 1, cell: cell.to_string() });
            }
            columns[col].push(value);
        }
    }
    if columns[0].is_empty() {
        return Err(CliError::Parse { row: 1, col: 0, message: "no data rows".into() });
    }
    Ok(ChannelTable { names, columns, sample_rate: None })
}

/// Fully resolved configuration echoed into every report so runs are
/// self-describing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub input: String,
    pub criterion: String,
    pub sigma: f64,
    pub epsilon: f64,
    pub max_iters: usize,
    pub tol: f64,
    pub ridge: f64,
    pub p_max: usize,
    pub order_rule: String,
    pub bic_variant: String,
    pub common_order: bool,
    pub center: bool,
    pub sample_rate: Option<f64>,
}

/// One failed pair inside a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFailure {
    pub from: String,
    pub to: String,
    pub error: String,
}

/// Machine-readable analysis report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub criterion: String,
    pub config: ConfigEcho,
    pub channels: Vec<String>,
    /// Two entries per successful pair, ordered by (from, to).
    pub pairs: Vec<DirectedIndex>,
    /// Directed index matrix F[from][to]; null on the diagonal and for
    /// failed pairs.
    pub matrix: Vec<Vec<Option<f64>>>,
    pub failures: Vec<PairFailure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Serializes the report; `path` of `-` writes to stdout.
pub fn emit_report(report: &Report, format: OutputFormat, path: &str) -> Result<(), CliError> {
    if report.pairs.is_empty() {
        return Err(CliError::EmptyReport);
    }
    let body = render_report(report, format)?;
    if path == "-" {
        std::io::stdout().write_all(body.as_bytes())?;
    } else {
        std::fs::write(path, body)?;
    }
    Ok(())
}

fn render_report(report: &Report, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::Parse { row: 0, col: 0, message: e.to_string() })?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut s = String::from("from,to,f,p,criterion\n");
            for p in &report.pairs {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    p.from, p.to, p.f, p.order, report.criterion
                ));
            }
            Ok(s)
        }
    }
}
