//! The `schlicht` command line: argument parsing, config merging, command
//! dispatch and report output.

mod config;
mod presets;
mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::extremals::{build_extremal, conjecture_probe, m_threshold, ConstantsTable, Family};
use crate::geometry::{membership_scan, preservation_check, valence_integral, ClassSpec};
use crate::operators::OperatorSpec;
use crate::proof_lab::{lattice_node, phi, scan_phi_min, ProofParams};
use crate::series::{EvaluationGrid, TruncatedSeries, DEFAULT_ANGULAR_COUNT};

pub use presets::preset_resolver;
pub use report::{format_float, to_json, Outcome, Report};

/// Largest accepted truncation order.
pub const MAX_ORDER: usize = 1024;
/// Largest accepted angular sample count.
pub const MAX_ANGLES: usize = 65536;

#[derive(Parser, Debug)]
#[command(name = "schlicht", version, about = "Integral operators on starlike and convex function classes")]
pub struct Cli {
    /// JSON object of default flag values (explicit flags win).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Truncation order of generated series.
    #[arg(long, global = true, default_value_t = crate::DEFAULT_ORDER)]
    pub order: usize,
    /// Include wall-clock time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Series literal: `1,0.375` (coefficients of z, z^2, ...) or JSON.
    #[arg(long, conflicts_with = "preset")]
    pub series: Option<String>,
    /// Named function: koebe, identity, halfplane, poly:m, expstar:k, blaschke:a, pvalent:p.
    #[arg(long)]
    pub preset: Option<String>,
    /// Level for the S_M presets.
    #[arg(long = "M")]
    pub level: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Outermost sampled radius.
    #[arg(long = "rho-max")]
    pub rho_max: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_ANGULAR_COUNT)]
    pub angles: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply an operator to a series.
    Transform {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        input: Input,
    },
    /// Scan a function for class membership.
    Check {
        #[arg(long)]
        class: String,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Scan a function and its image under an operator.
    Preserve {
        #[arg(long)]
        class: String,
        #[arg(long)]
        op: String,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Threshold constants, the octic root and R(M) samples.
    Constants {
        #[arg(long = "c-max", default_value_t = 5)]
        c_max: u32,
    },
    /// Polynomial witness for a level M > 1/2.
    Extremal {
        #[arg(long = "M")]
        level: f64,
    },
    /// Minimize phi over the square.
    PhiScan {
        #[arg(long)]
        c: u32,
        #[arg(long = "M")]
        level: f64,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        /// Write every lattice value as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Convexity margins of Libera images over a ladder of levels.
    Probe {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, value_delimiter = ',', default_value = "poly,expstar,blaschke")]
        families: Vec<String>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Circle average of Re(z k'/k) for k = int_0^z t^(c-1) f(t) dt.
    Valence {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        c: u32,
        #[arg(long, default_value_t = 0.9)]
        rho: f64,
        #[arg(long, default_value_t = DEFAULT_ANGULAR_COUNT)]
        angles: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Transform { .. } => "transform",
            Command::Check { .. } => "check",
            Command::Preserve { .. } => "preserve",
            Command::Constants { .. } => "constants",
            Command::Extremal { .. } => "extremal",
            Command::PhiScan { .. } => "phi-scan",
            Command::Probe { .. } => "probe",
            Command::Valence { .. } => "valence",
        }
    }
}

/// Failure of a run: configuration problems exit 2, failed checks exit 1.
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Check(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            RunError::Check(_) => 1,
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolated(_)
            | Error::AllRadiiClipped(_)
            | Error::ZeroOnCircle { .. }
            | Error::ZeroDenominator { .. }
            | Error::NoSignChange(..) => RunError::Check(e.to_string()),
            _ => RunError::Usage(e.to_string()),
        }
    }
}

/// Parses `argv`, runs the command and writes the report. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match config::parse_with_config(&argv) {
        Ok(cli) => cli,
        Err(config::ParseFailure::Clap(e)) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
        Err(config::ParseFailure::Config(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    match execute(&cli) {
        Ok(report) => match emit(&cli, &report) {
            Ok(()) => report.verdict.exit_code(),
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(e) => {
            let msg = match &e {
                RunError::Usage(m) | RunError::Check(m) => m,
            };
            eprintln!("error: {msg}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> std::io::Result<()> {
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn check_order(order: usize) -> Result<usize> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::BadParams(format!("--order must be in 1..={MAX_ORDER}, got {order}")));
    }
    Ok(order)
}

fn check_angles(angles: usize) -> Result<usize> {
    if angles > MAX_ANGLES {
        return Err(Error::InvalidGrid(format!("--angles must be at most {MAX_ANGLES}, got {angles}")));
    }
    Ok(angles)
}

fn resolve_input(input: &Input, order: usize, args: &mut Map<String, Value>) -> Result<TruncatedSeries> {
    if let Some(m) = input.level {
        args.insert("M".into(), json!(m));
    }
    match (&input.series, &input.preset) {
        (Some(s), None) => {
            args.insert("series".into(), json!(s));
            TruncatedSeries::parse_literal(s, order)
        }
        (None, Some(p)) => {
            args.insert("preset".into(), json!(p));
            preset_resolver(p, input.level, order)
        }
        _ => Err(Error::BadParams("exactly one of --series or --preset is required".into())),
    }
}

fn grid_from(g: &GridArgs, default_rho: Option<f64>, args: &mut Map<String, Value>) -> Result<EvaluationGrid> {
    let angles = check_angles(g.angles)?;
    args.insert("angles".into(), json!(angles));
    match g.rho_max.or(default_rho) {
        Some(rho) => {
            args.insert("rho-max".into(), json!(rho));
            EvaluationGrid::capped(rho, angles)
        }
        None => EvaluationGrid::new(EvaluationGrid::default_grid().radii().to_vec(), angles),
    }
}

fn series_json(s: &TruncatedSeries) -> Value {
    let mut v = serde_json::to_value(s.to_literal()).expect("series serializes");
    if let Some(short) = s.to_shorthand() {
        v["shorthand"] = json!(short);
    }
    v
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("result serializes")
}

/// Runs the parsed command and builds its report.
pub fn execute(cli: &Cli) -> std::result::Result<Report, RunError> {
    let start = Instant::now();
    let order = check_order(cli.order)?;
    let mut args = Map::new();
    args.insert("order".into(), json!(order));
    let mut warnings = Vec::new();
    let (results, verdict) = match &cli.command {
        Command::Transform { op, input } => {
            let op: OperatorSpec = op.parse()?;
            args.insert("op".into(), json!(op.to_string()));
            let f = resolve_input(input, order, &mut args)?;
            let image = op.apply(&f)?;
            let out = json!({
                "input": series_json(&f),
                "output": series_json(&image),
                "series": image.to_shorthand(),
            });
            (out, Outcome::Info)
        }
        Command::Check { class, input, grid } => {
            let class_spec: ClassSpec = class.parse()?;
            args.insert("class".into(), json!(class));
            let f = resolve_input(input, order, &mut args)?;
            let grid = grid_from(grid, Some(0.99), &mut args)?;
            let report = membership_scan(&f, &class_spec, &grid)?;
            warnings.extend(report.warnings.clone());
            let verdict = Outcome::from_pass(report.passed());
            (to_value(&report), verdict)
        }
        Command::Preserve { class, op, input, grid } => {
            let class_spec: ClassSpec = class.parse()?;
            let op: OperatorSpec = op.parse()?;
            args.insert("class".into(), json!(class));
            args.insert("op".into(), json!(op.to_string()));
            let f = resolve_input(input, order, &mut args)?;
            let grid = grid_from(grid, None, &mut args)?;
            let (before, after) = preservation_check(&f, &class_spec, &op, &grid)?;
            warnings.extend(before.warnings.iter().map(|w| format!("before: {w}")));
            warnings.extend(after.warnings.iter().map(|w| format!("after: {w}")));
            let verdict = if before.passed() { Outcome::from_pass(after.passed()) } else { Outcome::Info };
            (json!({"before": to_value(&before), "after": to_value(&after)}), verdict)
        }
        Command::Constants { c_max } => {
            args.insert("c-max".into(), json!(c_max));
            let table = ConstantsTable::build(*c_max)?;
            let verdict = Outcome::from_pass(table.checks.iter().all(|(_, ok)| *ok));
            for (name, ok) in &table.checks {
                if !ok {
                    warnings.push(format!("check failed: {name}"));
                }
            }
            (to_value(&table), verdict)
        }
        Command::Extremal { level } => {
            args.insert("M".into(), json!(level));
            let w = build_extremal(*level)?;
            (to_value(&w), Outcome::Pass)
        }
        Command::PhiScan { c, level, grid, csv } => {
            args.insert("c".into(), json!(c));
            args.insert("M".into(), json!(level));
            args.insert("grid".into(), json!(grid));
            let params = ProofParams::new(*c, *level)?;
            let scan = scan_phi_min(&params, *grid)?;
            if let Some(path) = csv {
                write_phi_csv(path, &params, *grid).map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))?;
            }
            let verdict = if *level < m_threshold(*c) { Outcome::from_pass(scan.min_value > 0.0) } else { Outcome::Info };
            let mut v = to_value(&scan);
            v["params"] = to_value(&params);
            (v, verdict)
        }
        Command::Probe { from, to, step, families, csv, grid } => {
            let fams = families.iter().map(|s| s.parse::<Family>()).collect::<Result<Vec<_>>>()?;
            args.insert("from".into(), json!(from));
            args.insert("to".into(), json!(to));
            args.insert("step".into(), json!(step));
            args.insert("families".into(), json!(fams.iter().map(|f| f.name()).collect::<Vec<_>>()));
            let grid = grid_from(grid, None, &mut args)?;
            let rows = conjecture_probe(*from, *to, *step, &fams, &grid, order)?;
            if let Some(path) = csv {
                write_probe_csv(path, &rows).map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))?;
            }
            let verdict = Outcome::from_pass(rows.iter().all(|r| r.consistent != Some(false)));
            (json!({"rows": to_value(&rows)}), verdict)
        }
        Command::Valence { input, c, rho, angles } => {
            args.insert("c".into(), json!(c));
            args.insert("rho".into(), json!(rho));
            args.insert("angles".into(), json!(angles));
            let f = resolve_input(input, order, &mut args)?;
            // k = int_0^z t^(c-1) f(t) dt
            let k = f
                .shift_down(1)
                .map_err(|_| Error::BadParams("valence needs f(0) = 0".into()))?
                .shift_up(*c as usize)
                .integrate_from_zero();
            let value = valence_integral(&k, *rho, check_angles(*angles)?)?;
            let expected = (f.lowest_power() + *c as usize) as f64;
            let verdict = Outcome::from_pass((value - expected).abs() < 1e-6);
            (json!({"valence": value, "expected": expected}), verdict)
        }
    };
    let mut report = Report::new(cli.command.name(), args, results, warnings, verdict);
    if cli.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

fn write_phi_csv(path: &Path, params: &ProofParams, n: usize) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "x,y,phi")?;
    for i in 0..n {
        let x = lattice_node(i, n);
        for j in 0..n {
            let y = lattice_node(j, n);
            writeln!(w, "{},{},{}", format_float(x), format_float(y), format_float(phi(x, y, params)))?;
        }
    }
    w.flush()
}

fn write_probe_csv(path: &Path, rows: &[crate::extremals::ProbeRow]) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "M,family,label,min_margin,argmin_re,argmin_im,expectation,consistent")?;
    for r in rows {
        let expectation = to_value(&r.expectation);
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            format_float(r.m_level),
            r.family,
            r.label,
            format_float(r.min_margin),
            format_float(r.argmin.re),
            format_float(r.argmin.im),
            expectation.as_str().unwrap_or(""),
            r.consistent.map(|b| b.to_string()).unwrap_or_default()
        )?;
    }
    w.flush()
}

/// Caps the global rayon pool at `SCHLICHT_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("SCHLICHT_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}
