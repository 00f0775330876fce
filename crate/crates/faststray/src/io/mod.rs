//! File ingestion and result serialization.
//!
//! Two input formats are supported: plain CSV with a configurable column
//! layout, and the GeoLife PLT format with its fixed six-line header.
//! Timestamps are rebased to start at zero during parsing. Results are
//! written as a plain-text document; docs/output-format.md in the
//! repository describes every format byte for byte.

mod csv;
mod geo;
mod report;

pub use csv::{parse_csv, write_csv, ColumnSpec};
pub use geo::{
    parse_plt, project_to_local, GeoPoint, LocalProjection, METERS_PER_DEGREE_LATITUDE,
};
pub use report::{write_result, RESULT_FORMAT_VERSION};

use thiserror::Error;

use crate::trajectory::TrajectoryError;

/// Failures while reading input files.
#[derive(Debug, Error)]
pub enum IngestError {
    /// A malformed record; `line` is 1-based and counts every file line,
    /// headers included.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A latitude outside [-90, 90] or longitude outside [-180, 180].
    #[error("line {line}: coordinates ({latitude}, {longitude}) are outside the valid latitude/longitude ranges")]
    OutOfRangeCoordinate {
        line: usize,
        latitude: f64,
        longitude: f64,
    },
    /// The records parsed but do not form a valid trajectory.
    #[error(transparent)]
    Trajectory(#[from] TrajectoryError),
}
