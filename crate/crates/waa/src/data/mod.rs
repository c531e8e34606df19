//! Dataset construction: CSV ingestion, grid binning of point clouds into
//! discrete measures, synthetic samplers, PCA reduction, a k-means
//! baseline, smoothing, and quantization of polygons into atom clouds.
//!
//! Everything here is deterministic: samplers take explicit seeds, and the
//! numeric routines are pure, so identical inputs always produce identical
//! outputs (a property the command-line tools lean on for byte-identical
//! reruns).

mod ingest;
mod quantize;
mod reduce;
mod synth;

pub use ingest::{read_column_csv, read_measure_csv, read_rows_csv, RawDataset};
pub use quantize::{bin_to_measure, quantize_polygon, quantize_polygon_grid, BinningSpec};
pub use reduce::{kmeans, moving_average_centered, pca_reduce};
pub use synth::{sample_gaussian, sample_uniform_disk, synthetic_rates};

use thiserror::Error;

use crate::ot::OtError;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("row {row} has {got} values, expected {want}")]
    RaggedRow { row: usize, got: usize, want: usize },
    #[error("non-finite value in row {row}")]
    NonFinite { row: usize },
    #[error("data has no variance; nothing to reduce")]
    RankError,
    #[error("requested {requested} components, but the data supports at most {max}")]
    TooManyComponents { requested: usize, max: usize },
    #[error("covariance must be symmetric positive definite")]
    BadCovariance,
    #[error("k must be between 1 and the number of points ({n}), got {k}")]
    BadClusterCount { k: usize, n: usize },
    #[error("invalid binning: {0}")]
    InvalidBinning(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Measure(#[from] OtError),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}
