//! GeoLife PLT parsing and planar projection of geographic tracks.

use super::IngestError;
use crate::trajectory::{Trajectory, TrajectoryError};

/// Meters per degree of latitude, the scale of the equirectangular
/// projection. Longitude degrees shrink with the cosine of the origin
/// latitude.
pub const METERS_PER_DEGREE_LATITUDE: f64 = 111_320.0;

/// Number of header lines a PLT file carries before its records.
const PLT_HEADER_LINES: usize = 6;

/// GeoLife altitude sentinel for "no valid reading".
const PLT_INVALID_ALTITUDE: f64 = -777.0;

/// One geographic sample: WGS-84 degrees plus elapsed seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoPoint {
    /// Degrees in [-90, 90].
    pub latitude: f64,
    /// Degrees in [-180, 180].
    pub longitude: f64,
    /// Altitude as recorded in the source file, when valid. The planar
    /// projection ignores it.
    pub altitude: Option<f64>,
    /// Seconds since the first sample of the file.
    pub timestamp: f64,
}

/// Equirectangular projection into meters around a fixed origin.
///
/// Accurate to well under half a percent for tracks within a few
/// kilometers of the origin, which covers per-file GPS logs.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalProjection {
    pub origin_latitude: f64,
    pub origin_longitude: f64,
    pub meters_per_degree_lat: f64,
    pub meters_per_degree_lon: f64,
}

impl LocalProjection {
    /// Projection centered on the given origin. The longitude scale is
    /// non-negative and reaches 0 only at the poles.
    pub fn about(origin_latitude: f64, origin_longitude: f64) -> Self {
        Self {
            origin_latitude,
            origin_longitude,
            meters_per_degree_lat: METERS_PER_DEGREE_LATITUDE,
            meters_per_degree_lon: METERS_PER_DEGREE_LATITUDE
                * origin_latitude.to_radians().cos(),
        }
    }

    /// Planar position of `point` in meters: x east, y north. The origin
    /// maps to (0, 0).
    pub fn project(&self, point: &GeoPoint) -> [f64; 2] {
        [
            (point.longitude - self.origin_longitude) * self.meters_per_degree_lon,
            (point.latitude - self.origin_latitude) * self.meters_per_degree_lat,
        ]
    }
}

/// Parses a GeoLife PLT file: six header lines, then one record per line
/// of `latitude,longitude,0,altitude,fractional_days,date,time`.
///
/// Timestamps come from the fractional-day field (days since 1899-12-30)
/// scaled to seconds and rebased so the first record is at 0. A file with
/// no records is not an error; it parses to an empty list.
pub fn parse_plt(text: &str) -> Result<Vec<GeoPoint>, IngestError> {
    let mut points = Vec::new();
    let mut first_seconds: Option<f64> = None;
    for (index, line) in text.lines().enumerate() {
        if index < PLT_HEADER_LINES {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let line_number = index + 1;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() < 5 {
            return Err(IngestError::Parse {
                line: line_number,
                message: format!("expected at least 5 fields, got {}", fields.len()),
            });
        }
        let number = |column: usize, what: &str| -> Result<f64, IngestError> {
            fields[column].parse().map_err(|_| IngestError::Parse {
                line: line_number,
                message: format!("cannot parse {what} {:?}", fields[column]),
            })
        };
        let latitude = number(0, "latitude")?;
        let longitude = number(1, "longitude")?;
        if !(-90.0..=90.0).contains(&latitude) || !(-180.0..=180.0).contains(&longitude) {
            return Err(IngestError::OutOfRangeCoordinate {
                line: line_number,
                latitude,
                longitude,
            });
        }
        let altitude = number(3, "altitude")?;
        let days = number(4, "day count")?;
        let seconds = days * 86_400.0;
        let first = *first_seconds.get_or_insert(seconds);
        points.push(GeoPoint {
            latitude,
            longitude,
            altitude: (altitude != PLT_INVALID_ALTITUDE).then_some(altitude),
            timestamp: seconds - first,
        });
    }
    Ok(points)
}

/// Projects geographic samples to a 2-D trajectory in meters, centered on
/// the first sample. Timestamps and sample count carry over unchanged.
pub fn project_to_local(points: &[GeoPoint]) -> Result<Trajectory, TrajectoryError> {
    let first = points.first().ok_or(TrajectoryError::TooShort(0))?;
    let projection = LocalProjection::about(first.latitude, first.longitude);
    let rows: Vec<[f64; 2]> = points.iter().map(|p| projection.project(p)).collect();
    let times: Vec<f64> = points.iter().map(|p| p.timestamp).collect();
    Trajectory::new(&rows, &times)
}
