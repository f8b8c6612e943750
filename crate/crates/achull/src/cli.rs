//! The `achull` command line: approximate a hull from a CSV of points, or
//! run the scaling benchmark from a JSON spec.
//!
//! Exit codes: 0 on success, 2 for input or usage problems, 3 when the
//! projection solver fails to converge.

use crate::bench::{run_benchmark, table_to_csv, BenchSpec};
use crate::builder::{build, BuildConfig, TieMode};
use crate::error::{Error, Result};
use crate::io::{load_points, report_to_json, run_report, LoadOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Parser)]
#[command(
    name = "achull",
    version,
    about = "Approximate convex hull of a point cloud via greedy vertex selection",
    args_conflicts_with_subcommands = true,
    subcommand_negates_reqs = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scaling sweep defined by a JSON spec and emit a CSV table.
    Bench {
        /// JSON file with n_points, dimensions, max_vertices, seed,
        /// repetitions.
        #[arg(long)]
        spec: PathBuf,
        /// Write the table here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// CSV file of points, one per row.
    #[arg(long, required = true)]
    input: Option<PathBuf>,
    /// Vertex budget V (defaults to the number of unique points).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_vertices: Option<u64>,
    /// Target worst-case distance.
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    /// Interior-point threshold: a float, or "auto" for scale-relative.
    #[arg(long, default_value = "auto")]
    tol_interior: AutoOrValue,
    /// Tie handling in the directed search.
    #[arg(long, value_enum, default_value_t = TieArg::Deterministic)]
    tie: TieArg,
    /// Seed for --tie random.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for the search's first-row evaluations.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    /// CSV field delimiter.
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Treat the first CSV row as a header.
    #[arg(long)]
    has_header: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TieArg {
    Deterministic,
    Random,
}

#[derive(Debug, Clone, Copy)]
enum AutoOrValue {
    Auto,
    Value(f64),
}

impl FromStr for AutoOrValue {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(AutoOrValue::Auto);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| format!("expected a number or \"auto\", got {s:?}"))?;
        if !v.is_finite() || v <= 0.0 {
            return Err(format!("tolerance must be positive, got {s}"));
        }
        Ok(AutoOrValue::Value(v))
    }
}

/// Parse and execute; returns the process exit code. Never panics on bad
/// input: usage problems print to stderr and map to exit 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here too; they exit 0 on stdout.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Some(Command::Bench { spec, output }) => {
            let text = std::fs::read_to_string(&spec)?;
            let spec: BenchSpec = serde_json::from_str(&text)?;
            let rows = run_benchmark(&spec)?;
            emit(output.as_deref(), &table_to_csv(&rows))
        }
        None => run_hull(cli.run),
    }
}

fn run_hull(args: RunArgs) -> Result<()> {
    let input = args.input.expect("clap enforces --input");
    if !args.epsilon.is_finite() || args.epsilon < 0.0 {
        return Err(Error::contract(format!(
            "--epsilon must be a finite nonnegative number, got {}",
            args.epsilon
        )));
    }
    if !args.delimiter.is_ascii() {
        return Err(Error::contract("--delimiter must be an ASCII character"));
    }
    let options = LoadOptions {
        delimiter: args.delimiter as u8,
        has_header: args.has_header,
    };
    let loaded = load_points(&input, &options)?;

    let threads = args.threads as usize;
    let config = BuildConfig {
        max_vertices: args
            .max_vertices
            .map(|v| v as usize)
            .unwrap_or(loaded.points.count()),
        epsilon_des: args.epsilon,
        tol_interior: match args.tol_interior {
            AutoOrValue::Auto => None,
            AutoOrValue::Value(v) => Some(v),
        },
        tie_mode: match args.tie {
            TieArg::Deterministic => TieMode::Deterministic,
            TieArg::Random => TieMode::SeededRandom(args.seed.unwrap_or(0)),
        },
        parallel_first_row: threads > 1,
        ..BuildConfig::default()
    };

    let (hull, trace) = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::contract(format!("cannot create thread pool: {e}")))?;
        pool.install(|| build(&loaded.points, &config))?
    } else {
        build(&loaded.points, &config)?
    };

    let report = run_report(&input, &loaded, &config, threads, &hull, &trace);
    emit(args.output.as_deref(), &report_to_json(&report)?)
}

fn emit(path: Option<&std::path::Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}
