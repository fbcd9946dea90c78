//! `stablefit` command-line tool.
//!
//! Exit status: 0 success, 2 usage / input-file / parameter-domain errors,
//! 3 data errors, 4 convergence failures.

mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stablefit::estimation::tables::TABLES_ENV_VAR;
use stablefit::{
    compare_distributions, fit_ecf, fit_mle, fit_quantile, fit_student_t, load_price_csv, log_returns, sample,
    summary_stats, CsvSchema, EvalOptions, FitResult, GofReport, McCullochTables, Method, ReturnSeries, SeededRng,
    StableError, StableParams, SummaryStats, TFitResult,
};

#[derive(Parser, Debug)]
#[command(
    name = "stablefit",
    version,
    about = "Fit alpha-stable laws to return data and compare heavy-tailed alternatives",
    after_help = format!(
        "Exit status: 0 ok, 2 usage/file/parameter error, 3 data error, 4 convergence failure.\n\
         Set {TABLES_ENV_VAR} to load McCulloch tables from a file instead of the built-in copy."
    )
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summary statistics of the log returns.
    Summary(InputArgs),
    /// Stable-parameter estimates, one row per method.
    Fit {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated subset of mle, quantile, ecf.
        #[arg(long, value_delimiter = ',', default_values = ["mle", "quantile", "ecf"])]
        method: Vec<MethodArg>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Kolmogorov-Smirnov comparison of stable, Cauchy, Student-t and Levy fits.
    Gof {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Draw from a stable law (S1 parameters), one value per line.
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
        /// Number of draws.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Price CSV with a header row.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "Date")]
    date_col: String,
    #[arg(long, default_value = "Close")]
    close_col: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TolArgs {
    /// Relative quadrature tolerance.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Absolute quadrature tolerance.
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Cap on adaptive quadrature subdivisions.
    #[arg(long)]
    max_subdivisions: Option<usize>,
}

impl TolArgs {
    fn options(&self) -> Result<EvalOptions, StableError> {
        let d = EvalOptions::default();
        let o = EvalOptions {
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(d.abs_tol),
            max_subdivisions: self.max_subdivisions.unwrap_or(d.max_subdivisions),
        };
        o.validate()?;
        Ok(o)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Structured,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MethodArg {
    Mle,
    Quantile,
    Ecf,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Mle => Method::Mle,
            MethodArg::Quantile => Method::Quantile,
            MethodArg::Ecf => Method::Ecf,
        }
    }
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<StableError> for Failure {
    fn from(e: StableError) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn exit_code(e: &StableError) -> u8 {
    match e {
        StableError::Domain { .. } | StableError::Io { .. } | StableError::Table(_) => 2,
        StableError::Convergence(_) => 4,
        StableError::DegenerateData(_)
        | StableError::InsufficientData { .. }
        | StableError::Parse { .. }
        | StableError::Schema(_)
        | StableError::EmptyFile(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("stablefit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Summary(input) => {
            let data = load(&input)?;
            let stats = summary_stats(&data)?;
            let text = match input.format {
                Format::Table => render::summary_table(&data.asset_id, &stats),
                Format::Structured => json(&SummaryDoc {
                    asset_id: &data.asset_id,
                    date_range: date_range(&data),
                    summary: stats,
                }),
            };
            emit(&text, input.out.as_ref())
        }
        Command::Fit { input, method, tol } => {
            let opts = tol.options()?;
            let data = load(&input)?;
            let mut methods: Vec<Method> = Vec::new();
            for m in method {
                if !methods.contains(&m.into()) {
                    methods.push(m.into());
                }
            }
            let rows: Vec<(Method, Result<FitResult, StableError>)> =
                methods.iter().map(|&m| (m, fit_one(m, &data, &opts))).collect();
            let text = match input.format {
                Format::Table => render::fit_table(&data.asset_id, data.len(), &rows),
                Format::Structured => json(&FitDoc {
                    asset_id: &data.asset_id,
                    n_obs: data.len(),
                    results: rows.iter().map(|(m, r)| FitEntry::new(*m, r)).collect(),
                }),
            };
            emit(&text, input.out.as_ref())?;
            // Rows fail independently; the status reports the first failure.
            match rows.into_iter().find_map(|(_, r)| r.err()) {
                Some(e) => Err(Failure {
                    code: exit_code(&e),
                    message: format!("one or more methods failed: {e}"),
                }),
                None => Ok(()),
            }
        }
        Command::Gof { input, tol } => {
            let opts = tol.options()?;
            let data = load(&input)?;
            let stable = fit_mle(&data, &opts)?;
            let t = fit_student_t(&data)?;
            let report = compare_distributions(&data, &stable, &t, &opts)?;
            let text = match input.format {
                Format::Table => render::gof_table(&data.asset_id, &report),
                Format::Structured => json(&GofDoc {
                    asset_id: &data.asset_id,
                    stable_fit: &stable,
                    student_t_fit: &t,
                    report: &report,
                }),
            };
            emit(&text, input.out.as_ref())
        }
        Command::Simulate {
            alpha,
            beta,
            gamma,
            delta,
            n,
            seed,
            out,
        } => {
            let p = StableParams::new(alpha, beta, gamma, delta)?;
            let x = sample(&p, n, &mut SeededRng::new(seed))?;
            let mut text = String::with_capacity(n * 24);
            for v in x {
                text.push_str(&format!("{v}\n"));
            }
            emit(&text, out.as_ref())
        }
    }
}

fn load(input: &InputArgs) -> Result<ReturnSeries, Failure> {
    let schema = CsvSchema {
        date_col: input.date_col.clone(),
        close_col: input.close_col.clone(),
    };
    let prices = load_price_csv(&input.input, &schema)?;
    Ok(log_returns(&prices)?)
}

fn fit_one(m: Method, data: &ReturnSeries, opts: &EvalOptions) -> Result<FitResult, StableError> {
    match m {
        Method::Mle => fit_mle(data, opts),
        Method::Quantile => fit_quantile(data, &McCullochTables::from_env_or_embedded()?),
        Method::Ecf => fit_ecf(data),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    let res = match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| format!("cannot write output: {e}"))
        }
    };
    res.map_err(|message| Failure { code: 2, message })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable document");
    s.push('\n');
    s
}

fn date_range(data: &ReturnSeries) -> Option<[String; 2]> {
    data.date_range.map(|(a, b)| [a.to_string(), b.to_string()])
}

#[derive(Serialize)]
struct SummaryDoc<'a> {
    asset_id: &'a str,
    date_range: Option<[String; 2]>,
    summary: SummaryStats,
}

#[derive(Serialize)]
struct FitDoc<'a> {
    asset_id: &'a str,
    n_obs: usize,
    results: Vec<FitEntry<'a>>,
}

#[derive(Serialize)]
struct FitEntry<'a> {
    method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit: Option<&'a FitResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl<'a> FitEntry<'a> {
    fn new(method: Method, r: &'a Result<FitResult, StableError>) -> Self {
        match r {
            Ok(f) => FitEntry {
                method,
                fit: Some(f),
                error: None,
            },
            Err(e) => FitEntry {
                method,
                fit: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Serialize)]
struct GofDoc<'a> {
    asset_id: &'a str,
    stable_fit: &'a FitResult,
    student_t_fit: &'a TFitResult,
    report: &'a GofReport,
}
