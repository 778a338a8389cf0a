//! CLI error type; everything here exits with code 1 (clap handles usage
//! errors with code 2 on its own).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("csv parse error at row {row}, column {col}: {message}")]
    Parse { row: usize, col: usize, message: String },

    #[error("row {row} has {got} cells, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },

    #[error("non-numeric cell '{cell}' at row {row}, column {col}")]
    NonNumericCell { row: usize, col: usize, cell: String },

    #[error("nothing to report: no channel pair completed")]
    EmptyReport,

    #[error("{0}")]
    InvalidArgs(String),

    #[error(transparent)]
    Core(#[from] gca_qmee::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
