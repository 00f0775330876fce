//! Result document serialization.
//!
//! The document is line-oriented plain text: `key value` pairs, then the
//! kept samples, then optional reconstruction samples. All floating-point
//! values carry 9 significant digits. docs/output-format.md specifies the
//! layout byte for byte.

use std::io::{self, Write};

use crate::metrics::{format_metric, EvaluationReport};
use crate::trajectory::SimplifyResult;

/// Version tag written on the document's first line.
pub const RESULT_FORMAT_VERSION: u32 = 1;

/// Writes the result document for one simplification run.
///
/// `spline_samples` are `(time, position)` pairs of the reconstructed
/// curve; an empty slice omits the samples section entirely.
pub fn write_result<W: Write>(
    result: &SimplifyResult,
    report: &EvaluationReport,
    spline_samples: &[(f64, Vec<f64>)],
    dest: &mut W,
) -> io::Result<()> {
    debug_assert_eq!(result.simplified.len(), report.simplified_count);
    writeln!(dest, "faststray-result {RESULT_FORMAT_VERSION}")?;
    writeln!(dest, "coefficient {}", report.params.coefficient)?;
    writeln!(dest, "alpha {}", report.params.alpha)?;
    writeln!(dest, "beta {}", report.params.beta)?;
    writeln!(dest, "gamma {}", report.params.gamma)?;
    writeln!(dest, "dim {}", result.simplified.dim())?;
    writeln!(dest, "original_count {}", report.original_count)?;
    writeln!(dest, "kept_count {}", report.simplified_count)?;
    writeln!(
        dest,
        "reduction_percent {}",
        format_metric(report.reduction_percent)
    )?;
    writeln!(
        dest,
        "synchronous_error {}",
        format_metric(report.synchronous_error)
    )?;
    writeln!(
        dest,
        "relative_error_percent {}",
        format_metric(report.relative_error_percent)
    )?;
    writeln!(dest, "diameter_approximate {}", report.diameter_approximate)?;
    writeln!(
        dest,
        "simplify_runtime_s {}",
        format_metric(report.simplify_runtime.as_secs_f64())
    )?;
    writeln!(
        dest,
        "spline_runtime_s {}",
        format_metric(report.spline_runtime.as_secs_f64())
    )?;

    write!(dest, "kept_indices")?;
    for index in &result.kept_indices {
        write!(dest, " {index}")?;
    }
    writeln!(dest)?;

    writeln!(dest, "kept_points")?;
    let kept = &result.simplified;
    for (point, t) in kept.points().zip(kept.timestamps()) {
        write!(dest, "{}", format_metric(*t))?;
        for coordinate in point {
            write!(dest, " {}", format_metric(*coordinate))?;
        }
        writeln!(dest)?;
    }

    if !spline_samples.is_empty() {
        writeln!(dest, "spline_samples {}", spline_samples.len())?;
        for (t, position) in spline_samples {
            write!(dest, "{}", format_metric(*t))?;
            for coordinate in position {
                write!(dest, " {}", format_metric(*coordinate))?;
            }
            writeln!(dest)?;
        }
    }
    Ok(())
}
