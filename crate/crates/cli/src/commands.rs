use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use strassen_core::engine::{naive_multiply, strassen_multiply_with, FlopCounter, Matrix, Options};
use strassen_core::flopmodel::naive_flops;
use strassen_core::report::{self, Cell, Table, TableRow};
use strassen_core::rng::random_matrix;
use strassen_core::{ExactRatio, Strategy};

use crate::matrix_file::{read_matrix, write_matrix, MatrixFileError};
use crate::table_io::{write_table, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] strassen_core::Error),
    #[error(transparent)]
    File(#[from] MatrixFileError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// 2 for usage and domain errors, 1 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            _ => 2,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(format!("output failed: {e}"))
    }
}

/// Writes `table` to `out_path`, or to `stdout` when no path is given.
fn emit(
    table: &Table,
    format: Format,
    out_path: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    match out_path {
        Some(path) => {
            let file = File::create(path).map_err(|source| CliError::Output {
                path: path.to_path_buf(),
                source,
            })?;
            let mut w = BufWriter::new(file);
            write_table(table, format, &mut w)
                .and_then(|_| w.flush())
                .map_err(|source| CliError::Output {
                    path: path.to_path_buf(),
                    source,
                })
        }
        None => Ok(write_table(table, format, stdout)?),
    }
}

/// Parameters and model cost for one strategy, or the comparison of every
/// applicable strategy when none is given.
pub fn analyze(
    n: u64,
    strategy: Option<Strategy>,
    format: Format,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let table = match strategy {
        Some(s) => Table::new(format!("analyze n={n}"), vec![report::strategy_row(n, s)?]),
        None => report::case_report(n)?,
    };
    emit(&table, format, None, stdout)
}

pub struct MultiplyArgs<'a> {
    pub a: &'a Path,
    pub b: &'a Path,
    pub out: &'a Path,
    pub strategy: Strategy,
    pub count_flops: bool,
    pub workers: usize,
}

pub fn multiply(args: &MultiplyArgs<'_>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let a = read_matrix(args.a)?;
    let b = read_matrix(args.b)?;
    let mut counter = FlopCounter::new();
    let (c, predicted, params) = if args.strategy == Strategy::NaiveOnly {
        let c = naive_multiply(&a, &b, &mut counter)?;
        let (n, p, q) = (a.rows() as u64, a.cols() as u64, b.cols() as u64);
        let predicted = BigInt::from(n * q) * (2 * p - 1);
        (c, predicted, None)
    } else {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(CliError::Usage(format!(
                "strategy {} needs square inputs of equal order, got {}x{} ({}) and {}x{} ({})",
                args.strategy,
                a.rows(),
                a.cols(),
                args.a.display(),
                b.rows(),
                b.cols(),
                args.b.display(),
            )));
        }
        let choice = args.strategy.choose(a.rows() as u64)?;
        let options = Options {
            workers: args.workers,
            probe: None,
        };
        let c = strassen_multiply_with(&a, &b, &choice, &mut counter, &options)?;
        let predicted = choice.predicted_flops.clone();
        (c, predicted, Some(choice))
    };
    write_matrix(args.out, &c)?;
    if args.count_flops {
        if let Some(choice) = params {
            writeln!(
                stdout,
                "m={} k={} n_tilde={} d={}",
                choice.m, choice.k, choice.n_tilde, choice.d
            )?;
        }
        writeln!(
            stdout,
            "adds={} muls={} total={} predicted={}",
            counter.adds,
            counter.muls,
            counter.total(),
            predicted
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Figure1,
    Figure2,
    Worst,
    Best,
    Average,
}

#[derive(Debug, Clone, Copy)]
pub struct ReproduceSettings {
    /// Last `p` for figure2 and best.
    pub p_max: u32,
    /// Last order scanned by worst and best.
    pub n_max: u64,
    /// Last partial average `E_k` for average.
    pub depth: u32,
    /// Last interval enumerated for average.
    pub alpha_max: u32,
}

impl Default for ReproduceSettings {
    fn default() -> Self {
        ReproduceSettings {
            p_max: 20,
            n_max: 4096,
            depth: 30,
            alpha_max: 12,
        }
    }
}

pub fn reproduction_table(target: Target, settings: &ReproduceSettings) -> Result<Table, CliError> {
    Ok(match target {
        Target::Figure1 => report::bundle_figure1(),
        Target::Figure2 => report::bundle_figure2(settings.p_max)?,
        Target::Worst => report::bundle_worst(settings.n_max)?,
        Target::Best => report::bundle_best(settings.p_max, settings.n_max)?,
        Target::Average => report::bundle_average(settings.depth, settings.alpha_max)?,
    })
}

/// Emits the dataset; fails with an internal error if any built-in check
/// does not pass.
pub fn reproduce(
    target: Target,
    settings: &ReproduceSettings,
    format: Format,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let table = reproduction_table(target, settings)?;
    emit(&table, format, out, stdout)?;
    let failed: Vec<&str> = table
        .checks()
        .filter(|(_, ok)| !ok)
        .map(|(row, _)| row.label.as_str())
        .collect();
    if !failed.is_empty() {
        return Err(CliError::Internal(format!(
            "failed checks: {}",
            failed.join("; ")
        )));
    }
    Ok(())
}

pub fn gen(n: usize, seed: u64, out: &Path) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    write_matrix(out, &random_matrix(n, n, seed))?;
    Ok(())
}

pub struct BenchArgs {
    pub sizes: Vec<u64>,
    pub strategies: Vec<Strategy>,
    pub reps: usize,
    pub seed: u64,
    pub workers: usize,
}

/// One row per `(size, strategy)`: exact counted flops, the model
/// prediction, the ratio to the naive count and the median wall time.
pub fn bench_table(args: &BenchArgs) -> Result<Table, CliError> {
    if args.reps == 0 {
        return Err(CliError::Usage("reps must be at least 1".into()));
    }
    if args.sizes.is_empty() || args.sizes.contains(&0) {
        return Err(CliError::Usage("sizes must be positive".into()));
    }
    if args.strategies.is_empty() {
        return Err(CliError::Usage("at least one strategy is required".into()));
    }
    let mut rows = Vec::new();
    for &n in &args.sizes {
        let order = n as usize;
        let a = random_matrix(order, order, args.seed);
        let b = random_matrix(order, order, args.seed.wrapping_add(1));
        for &strategy in &args.strategies {
            let choice = strategy.choose(n)?;
            let options = Options {
                workers: args.workers,
                probe: None,
            };
            let mut times = Vec::with_capacity(args.reps);
            let mut counter = FlopCounter::new();
            for _ in 0..args.reps {
                counter = FlopCounter::new();
                let start = Instant::now();
                let c: Matrix = if strategy == Strategy::NaiveOnly {
                    naive_multiply(&a, &b, &mut counter)?
                } else {
                    strassen_multiply_with(&a, &b, &choice, &mut counter, &options)?
                };
                times.push(start.elapsed().as_secs_f64());
                std::hint::black_box(c);
            }
            let ratio = ExactRatio::new(counter.total_exact(), naive_flops(n)?)?;
            rows.push(
                TableRow::new(format!("n={n} {strategy}"))
                    .with("n", Cell::int(n))
                    .with("strategy", Cell::text(strategy.to_string()))
                    .with("m", Cell::int(choice.m))
                    .with("k", Cell::int(choice.k))
                    .with("n_tilde", Cell::int(choice.n_tilde))
                    .with("adds", Cell::int(counter.adds))
                    .with("muls", Cell::int(counter.muls))
                    .with("flops", Cell::Int(counter.total_exact()))
                    .with("predicted_flops", Cell::Int(choice.predicted_flops.clone()))
                    .with("ratio_to_naive", Cell::Ratio(ratio.clone()))
                    .with("ratio_to_naive_decimal", Cell::decimal(&ratio))
                    .with(
                        "median_seconds",
                        Cell::text(format!("{:.6e}", median(&mut times))),
                    ),
            );
        }
    }
    Ok(Table::new("bench", rows))
}

pub fn bench(args: &BenchArgs, format: Format, stdout: &mut dyn Write) -> Result<(), CliError> {
    emit(&bench_table(args)?, format, None, stdout)
}

/// Splits a comma-separated strategy list. The comma inside
/// `explicit:<m>,<k>` binds to the preceding entry.
pub fn parse_strategy_list(list: &str) -> Result<Vec<Strategy>, CliError> {
    let mut names: Vec<String> = Vec::new();
    for part in list.split(',').map(str::trim) {
        match names.last_mut() {
            Some(last)
                if last.starts_with("explicit:")
                    && !last.contains(',')
                    && !part.is_empty()
                    && part.bytes().all(|b| b.is_ascii_digit()) =>
            {
                last.push(',');
                last.push_str(part);
            }
            _ => names.push(part.to_string()),
        }
    }
    names
        .iter()
        .map(|n| {
            n.parse::<Strategy>()
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect()
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}
