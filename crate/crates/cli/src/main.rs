//! `qwb` — expand q-series expressions, verify identity corpora, scan for
//! coefficient congruences, and cache coefficient tables.
//!
//! Exit codes: 0 success, 1 verification/evaluation failure, 2 usage or
//! parse error, 3 I/O error.

mod cache;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qwb_core::dsl::{self, MemoCache, Report, RunOptions, Statement, StatementKind, Verdict};
use qwb_core::{Error as CoreError, Ring};

#[derive(Parser)]
#[command(name = "qwb", version, about = "Exact q-series workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an expression and print its coefficients.
    Expand {
        /// Expression, e.g. `E[1]^3` or `extract(phiMock, 10, 9)`.
        expr: String,
        /// Number of trusted coefficients (default: QWB_ORDER or 32).
        #[arg(long)]
        order: Option<i64>,
        /// Coefficient ring: int, rat, or `mod:<m>`.
        #[arg(long, default_value = "int")]
        ring: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run every statement in a .qid corpus file.
    Verify {
        file: PathBuf,
        /// Cap every evaluation order (statements needing more report
        /// insufficient precision).
        #[arg(long)]
        order: Option<i64>,
        /// Run statements on this many threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Only run statements whose label contains this substring.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Compute a coefficient table, optionally backed by a cache file.
    Coeffs {
        /// Expression or builtin name, e.g. "phiMock".
        expr: String,
        /// Table length.
        #[arg(long)]
        count: i64,
        #[arg(long, default_value = "int")]
        ring: String,
        /// Cache file path: loaded when valid, written otherwise.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Comma-separated indices to print (default: the first few).
        #[arg(long, value_delimiter = ',')]
        indices: Vec<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Enumerate arithmetic progressions whose coefficients vanish mod M.
    Scan {
        expr: String,
        /// Largest progression step to try.
        #[arg(long = "maxA")]
        max_a: i64,
        /// Moduli to test, comma separated.
        #[arg(long, value_delimiter = ',')]
        moduli: Vec<u64>,
        /// Minimum trusted witnesses for a reported progression.
        #[arg(long = "min-witnesses", default_value_t = 25)]
        min_witnesses: i64,
        /// Number of coefficients to compute.
        #[arg(long, default_value_t = 500)]
        count: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Failure modes mapped onto the exit-code contract.
enum AppError {
    Usage(String),
    Eval(String),
    Io(String),
}

impl AppError {
    fn exit(&self) -> ExitCode {
        match self {
            AppError::Eval(_) => ExitCode::from(1),
            AppError::Usage(_) => ExitCode::from(2),
            AppError::Io(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Usage(m) | AppError::Eval(m) | AppError::Io(m) => m,
        }
    }
}

fn usage_err(e: CoreError) -> AppError {
    AppError::Usage(e.to_string())
}

/// Treat a reader that closed the pipe early as success.
fn emit(result: std::io::Result<()>) -> Result<(), AppError> {
    match result {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(AppError::Io(format!("stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit()
        }
    }
}

fn env_order() -> Option<i64> {
    std::env::var("QWB_ORDER").ok().and_then(|v| v.parse().ok())
}

fn parse_ring(text: &str) -> Result<Ring, AppError> {
    Ring::parse(text).map_err(usage_err)
}

fn dispatch(cli: Cli) -> Result<ExitCode, AppError> {
    match cli.command {
        Command::Expand {
            expr,
            order,
            ring,
            format,
        } => cmd_expand(&expr, order, &ring, format),
        Command::Verify {
            file,
            order,
            jobs,
            format,
            filter,
        } => cmd_verify(&file, order, jobs, format, filter.as_deref()),
        Command::Coeffs {
            expr,
            count,
            ring,
            cache,
            indices,
            format,
        } => cmd_coeffs(&expr, count, &ring, cache.as_deref(), &indices, format),
        Command::Scan {
            expr,
            max_a,
            moduli,
            min_witnesses,
            count,
            format,
        } => cmd_scan(&expr, max_a, &moduli, min_witnesses, count, format),
    }
}

/// Largest order/count accepted on the command line.
const MAX_ORDER: i64 = 10_000_000;

fn check_order(what: &str, n: i64) -> Result<i64, AppError> {
    if (1..=MAX_ORDER).contains(&n) {
        Ok(n)
    } else {
        Err(AppError::Usage(format!(
            "{what} must be between 1 and {MAX_ORDER}, got {n}"
        )))
    }
}

fn cmd_expand(
    expr_text: &str,
    order: Option<i64>,
    ring_text: &str,
    format: Format,
) -> Result<ExitCode, AppError> {
    let expr = dsl::parse_expr(expr_text).map_err(usage_err)?;
    let ring = parse_ring(ring_text)?;
    let order = check_order("--order", order.or_else(env_order).unwrap_or(32))?;
    let cache = MemoCache::new();
    let series =
        dsl::eval(&expr, order, &ring, &cache).map_err(|e| AppError::Eval(e.to_string()))?;
    emit(output::print_expansion(&expr, &series, order, &ring, format == Format::Json))?;
    Ok(ExitCode::SUCCESS)
}

fn load_statements(path: &std::path::Path) -> Result<Vec<Statement>, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Io(format!("{}: {e}", path.display())))?;
    dsl::parse_statements(&text).map_err(usage_err)
}

fn cmd_verify(
    path: &std::path::Path,
    order_cap: Option<i64>,
    jobs: usize,
    format: Format,
    filter: Option<&str>,
) -> Result<ExitCode, AppError> {
    let mut stmts = load_statements(path)?;
    if let Some(pat) = filter {
        stmts.retain(|s| s.label.contains(pat));
    }
    let order_cap = order_cap.map(|n| check_order("--order", n)).transpose()?;
    let opts = RunOptions {
        default_order: check_order("QWB_ORDER", env_order().unwrap_or(120))?,
        order_cap,
    };
    let reports = run_all(&stmts, &opts, jobs);
    emit(output::print_reports(&reports, format == Format::Json))?;
    let all_pass = reports.iter().all(Report::passed);
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_all(stmts: &[Statement], opts: &RunOptions, jobs: usize) -> Vec<Report> {
    let cache = MemoCache::new();
    if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            stmts
                .par_iter()
                .map(|s| dsl::run_statement(s, opts, &cache))
                .collect()
        })
    } else {
        dsl::run(stmts, opts, &cache)
    }
}

fn cmd_coeffs(
    expr_text: &str,
    count: i64,
    ring_text: &str,
    cache_path: Option<&std::path::Path>,
    indices: &[i64],
    format: Format,
) -> Result<ExitCode, AppError> {
    let count = check_order("--count", count)?;
    let expr = dsl::parse_expr(expr_text).map_err(usage_err)?;
    let ring = parse_ring(ring_text)?;
    let label = expr.to_string();

    let table = match cache_path {
        Some(path) if path.exists() => {
            match cache::load(path, &label, &ring).map_err(AppError::Io)? {
                Some(table) if table.count() as i64 >= count => table,
                // valid header but too short: recompute and rewrite
                _ => cache::compute_and_write(&expr, &label, &ring, count, Some(path))?,
            }
        }
        path => cache::compute_and_write(&expr, &label, &ring, count, path)?,
    };
    emit(output::print_table(&table, count, indices, format == Format::Json))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(
    expr_text: &str,
    max_a: i64,
    moduli: &[u64],
    min_witnesses: i64,
    count: i64,
    format: Format,
) -> Result<ExitCode, AppError> {
    if moduli.is_empty() {
        return Err(AppError::Usage(
            "--moduli requires at least one modulus".into(),
        ));
    }
    if moduli.iter().any(|&m| m < 2) {
        return Err(AppError::Usage("moduli must be >= 2".into()));
    }
    if max_a < 1 || min_witnesses < 1 {
        return Err(AppError::Usage("scan parameters must be positive".into()));
    }
    let count = check_order("--count", count)?;
    let expr = dsl::parse_expr(expr_text).map_err(usage_err)?;
    let stmt = Statement {
        label: "scan".into(),
        kind: StatementKind::Scan {
            expr,
            max_step: max_a,
            moduli: moduli.to_vec(),
            min_witnesses,
            count,
        },
        order: None,
        ring: None,
    };
    let report = dsl::run_statement(&stmt, &RunOptions::default(), &MemoCache::new());
    if let dsl::Detail::Error { message } = &report.detail {
        return Err(AppError::Eval(message.clone()));
    }
    emit(output::print_scan(&report, format == Format::Json))?;
    Ok(if report.verdict == Verdict::Pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
