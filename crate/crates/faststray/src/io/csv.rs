//! Plain CSV trajectory parsing and serialization.

use std::fmt;
use std::str::FromStr;

use super::IngestError;
use crate::trajectory::Trajectory;

/// Maps trajectory fields to 0-based CSV column indices. A missing `z`
/// produces a 2-D trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnSpec {
    pub t: usize,
    pub x: usize,
    pub y: usize,
    pub z: Option<usize>,
}

impl ColumnSpec {
    /// Spatial dimension this mapping produces.
    pub fn dimension(&self) -> usize {
        if self.z.is_some() {
            3
        } else {
            2
        }
    }

    /// Default mapping for a row with `column_count` fields: the first
    /// three or four columns in `t, x, y, z` order. `None` below three
    /// columns.
    pub fn infer(column_count: usize) -> Option<Self> {
        match column_count {
            0..=2 => None,
            3 => Some(Self {
                t: 0,
                x: 1,
                y: 2,
                z: None,
            }),
            _ => Some(Self {
                t: 0,
                x: 1,
                y: 2,
                z: Some(3),
            }),
        }
    }
}

impl fmt::Display for ColumnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.z {
            Some(z) => write!(f, "{}:{}:{}:{}", self.t, self.x, self.y, z),
            None => write!(f, "{}:{}:{}", self.t, self.x, self.y),
        }
    }
}

impl FromStr for ColumnSpec {
    type Err = String;

    /// Parses `t:x:y` or `t:x:y:z` with 0-based column indices.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(format!("expected t:x:y or t:x:y:z, got {s:?}"));
        }
        let mut indices = Vec::with_capacity(parts.len());
        for part in &parts {
            let index: usize = part
                .trim()
                .parse()
                .map_err(|_| format!("invalid column index {part:?}"))?;
            if indices.contains(&index) {
                return Err(format!("column index {index} is used twice in {s:?}"));
            }
            indices.push(index);
        }
        Ok(Self {
            t: indices[0],
            x: indices[1],
            y: indices[2],
            z: indices.get(3).copied(),
        })
    }
}

/// Parses comma-separated trajectory records.
///
/// Blank lines are skipped; `has_header` skips the first line. Timestamps
/// are rebased so the first record is at 0. Errors carry the 1-based file
/// line of the offending record.
pub fn parse_csv(
    text: &str,
    columns: &ColumnSpec,
    has_header: bool,
) -> Result<Trajectory, IngestError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut times: Vec<f64> = Vec::new();
    for (index, line) in text.lines().enumerate() {
        if has_header && index == 0 {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let line_number = index + 1;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let value = |column: usize| -> Result<f64, IngestError> {
            let raw = fields.get(column).ok_or_else(|| IngestError::Parse {
                line: line_number,
                message: format!("missing column {column}; the row has {} fields", fields.len()),
            })?;
            raw.parse().map_err(|_| IngestError::Parse {
                line: line_number,
                message: format!("cannot parse {raw:?} in column {column} as a number"),
            })
        };
        times.push(value(columns.t)?);
        let mut row = vec![value(columns.x)?, value(columns.y)?];
        if let Some(z) = columns.z {
            row.push(value(z)?);
        }
        rows.push(row);
    }
    if let Some(&first) = times.first() {
        for t in &mut times {
            *t -= first;
        }
    }
    Ok(Trajectory::new(&rows, &times)?)
}

/// Serializes a trajectory as `t,x,y[,z]` rows.
///
/// Values use the shortest representation that parses back to the same
/// float, so `parse_csv` on the output reproduces the trajectory exactly
/// (its timestamps already start at 0, making the rebase a no-op).
pub fn write_csv(trajectory: &Trajectory) -> String {
    let mut out = String::new();
    for (point, t) in trajectory.points().zip(trajectory.timestamps()) {
        out.push_str(&t.to_string());
        for coordinate in point {
            out.push(',');
            out.push_str(&coordinate.to_string());
        }
        out.push('\n');
    }
    out
}
