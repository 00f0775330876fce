//! Command-line front end for the faststray library.
//!
//! Three modes share one flag set: the default simplifies a trajectory
//! file into a result document, `--sweep` compares suppression windows in
//! a table, and `--bench-sizes` times the simplifier on synthetic curves.
//! Every number in the output comes from a library call; this layer only
//! parses flags, moves bytes, and picks exit codes: 0 success, 1 bad
//! arguments or unparseable data, 2 I/O failure.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::Parser;
use faststray::io::{parse_csv, parse_plt, project_to_local, write_result, ColumnSpec, IngestError};
use faststray::metrics::{
    bench_simplify, evaluate, format_metric, growth_exponent, rdp_baseline, sweep_gamma,
    sweep_table,
};
use faststray::trajectory::{CoefficientKind, SimplifyParams};
use faststray::Trajectory;

const DEFAULT_BETA: usize = 2;
const BENCH_REPETITIONS: usize = 5;

#[derive(Parser, Debug)]
#[command(
    name = "faststray",
    version,
    about = "Linear-time trajectory simplification with spline reconstruction"
)]
struct Args {
    /// Input trajectory file.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Input format: csv or plt (GeoLife).
    #[arg(long, default_value = "csv")]
    format: String,

    /// CSV column mapping t:x:y or t:x:y:z with 0-based indices.
    /// Inferred from the column count when omitted.
    #[arg(long)]
    columns: Option<String>,

    /// Skip the first CSV line as a header row.
    #[arg(long)]
    has_header: bool,

    /// Smoothing half-window (0 disables the filter).
    #[arg(long, default_value_t = 1)]
    alpha: usize,

    /// Correlation half-window; the direction coefficient ignores it
    /// [default: 2]
    #[arg(long)]
    beta: Option<usize>,

    /// Suppression half-window: larger keeps fewer points.
    #[arg(long, default_value_t = 2)]
    gamma: usize,

    /// Scoring coefficient: correlation or direction.
    #[arg(long, default_value = "correlation")]
    coefficient: String,

    /// Comma-separated gamma values; selects sweep mode.
    #[arg(long)]
    sweep: Option<String>,

    /// Adds distance-threshold baseline columns to the sweep table.
    #[arg(long)]
    baseline_epsilon: Option<f64>,

    /// Number of uniform reconstruction samples in the result document.
    #[arg(long, default_value_t = 0)]
    samples: usize,

    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Comma-separated synthetic input sizes; selects bench mode.
    #[arg(long)]
    bench_sizes: Option<String>,
}

/// Failures mapped to exit codes: bad arguments or unparseable content
/// exit 1, filesystem trouble exits 2.
enum CliError {
    Usage(String),
    Io(String),
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Io(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &Args) -> Result<(), CliError> {
    if args.sweep.is_some() && args.bench_sizes.is_some() {
        return Err(usage("--sweep and --bench-sizes select different modes; pass one"));
    }
    let kind = CoefficientKind::from_str(&args.coefficient).map_err(usage)?;
    if args.beta.is_some() && kind == CoefficientKind::Direction {
        eprintln!("warning: the direction coefficient ignores --beta");
    }
    let params = SimplifyParams::new(
        args.alpha,
        args.beta.unwrap_or(DEFAULT_BETA),
        args.gamma,
        kind,
    )
    .map_err(|e| usage(e.to_string()))?;
    for warning in params.range_warnings() {
        eprintln!("warning: {warning}");
    }

    if let Some(raw) = &args.bench_sizes {
        return cmd_bench(args, raw, kind);
    }
    // Validate the flag set fully before touching the filesystem.
    let gammas: Option<Vec<usize>> = match &args.sweep {
        Some(raw) => {
            let gammas = parse_list(raw, "gamma")?;
            if gammas.contains(&0) {
                return Err(usage("gamma must be at least 1"));
            }
            Some(gammas)
        }
        None => None,
    };
    let trajectory = load_trajectory(args)?;
    match gammas {
        Some(gammas) => cmd_sweep(args, &gammas, &trajectory, &params),
        None => cmd_simplify(args, &trajectory, &params),
    }
}

/// Parses a non-empty comma-separated list, ignoring blank entries.
fn parse_list<T: FromStr>(raw: &str, what: &str) -> Result<Vec<T>, CliError> {
    let mut values = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        values.push(
            part.parse()
                .map_err(|_| usage(format!("invalid {what} entry {part:?}")))?,
        );
    }
    if values.is_empty() {
        return Err(usage(format!("the {what} list is empty")));
    }
    Ok(values)
}

fn load_trajectory(args: &Args) -> Result<Trajectory, CliError> {
    let path = args
        .input
        .as_deref()
        .ok_or_else(|| usage("--input is required unless --bench-sizes is given"))?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let ingest = |error: IngestError| usage(format!("{}: {error}", path.display()));
    match args.format.as_str() {
        "csv" => {
            let spec = match &args.columns {
                Some(raw) => raw.parse::<ColumnSpec>().map_err(usage)?,
                None => {
                    let count = text
                        .lines()
                        .skip(usize::from(args.has_header))
                        .find(|line| !line.trim().is_empty())
                        .map_or(0, |line| line.split(',').count());
                    ColumnSpec::infer(count).ok_or_else(|| {
                        usage(format!(
                            "cannot infer a column mapping from {count} fields; pass --columns"
                        ))
                    })?
                }
            };
            parse_csv(&text, &spec, args.has_header).map_err(ingest)
        }
        "plt" => {
            if args.columns.is_some() {
                return Err(usage("--columns only applies to csv input"));
            }
            let records = parse_plt(&text).map_err(ingest)?;
            project_to_local(&records).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        other => Err(usage(format!("unknown format {other:?}; expected csv or plt"))),
    }
}

fn cmd_simplify(
    args: &Args,
    trajectory: &Trajectory,
    params: &SimplifyParams,
) -> Result<(), CliError> {
    let run = evaluate(trajectory, params).map_err(|e| usage(e.to_string()))?;
    let samples = uniform_samples(&run, trajectory, args.samples);
    let mut buffer = Vec::new();
    write_result(&run.result, &run.report, &samples, &mut buffer)
        .expect("writing to memory cannot fail");
    let document = String::from_utf8(buffer).expect("the document is ASCII");
    write_output(args.output.as_deref(), &document)
}

/// Evaluates the reconstruction at `count` uniformly spaced times across
/// the input's full time range.
fn uniform_samples(
    run: &faststray::metrics::PipelineRun,
    trajectory: &Trajectory,
    count: usize,
) -> Vec<(f64, Vec<f64>)> {
    let first = *trajectory.timestamps().first().expect("validated non-empty");
    let last = *trajectory.timestamps().last().expect("validated non-empty");
    let times: Vec<f64> = match count {
        0 => Vec::new(),
        1 => vec![first],
        _ => (0..count)
            .map(|i| first + (last - first) * i as f64 / (count - 1) as f64)
            .collect(),
    };
    let positions = run.spline.evaluate_batch(&times);
    times.into_iter().zip(positions).collect()
}

fn cmd_sweep(
    args: &Args,
    gammas: &[usize],
    trajectory: &Trajectory,
    params: &SimplifyParams,
) -> Result<(), CliError> {
    let reports = sweep_gamma(trajectory, params, gammas).map_err(|e| usage(e.to_string()))?;
    let baseline = args
        .baseline_epsilon
        .map(|epsilon| rdp_baseline(trajectory, epsilon));
    let table = sweep_table(&reports, baseline.as_ref());
    write_output(args.output.as_deref(), &table)
}

fn cmd_bench(args: &Args, raw_sizes: &str, kind: CoefficientKind) -> Result<(), CliError> {
    let sizes: Vec<usize> = parse_list(raw_sizes, "size")?;
    if sizes.contains(&0) {
        return Err(usage("bench sizes must be positive"));
    }
    let points = bench_simplify(&sizes, kind, BENCH_REPETITIONS);
    let mut out = String::from("size\tseconds\n");
    for point in &points {
        writeln!(out, "{}\t{}", point.size, format_metric(point.seconds))
            .expect("writing to memory cannot fail");
    }
    if let Some(exponent) = growth_exponent(&points) {
        writeln!(out, "growth_exponent {}", format_metric(exponent))
            .expect("writing to memory cannot fail");
    }
    write_output(args.output.as_deref(), &out)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}
