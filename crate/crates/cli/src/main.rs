use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use strassen_cli::commands::{self, BenchArgs, MultiplyArgs, ReproduceSettings, Target};
use strassen_cli::table_io::Format;
use strassen_cli::CliError;
use strassen_core::Strategy;

/// Strassen multiplication for arbitrary orders, with exact cost analysis.
#[derive(Parser)]
#[command(name = "strassen", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the embedding (m, k, n_tilde, d) and model cost for order n
    Analyze {
        n: u64,
        /// naive | strassen | optimal | pow2cut:<j> | explicit:<m>,<k>; all when omitted
        #[arg(long)]
        strategy: Option<Strategy>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Multiply two matrix files
    Multiply {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, default_value = "optimal")]
        strategy: Strategy,
        /// Print counted additions and multiplications next to the model
        #[arg(long)]
        count_flops: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
    },
    /// Emit a self-checking dataset for a figure or a padding analysis
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        p_max: u32,
        #[arg(long, default_value_t = 4096)]
        n_max: u64,
        #[arg(long, default_value_t = 30)]
        depth: u32,
        #[arg(long, default_value_t = 12)]
        alpha_max: u32,
    },
    /// Write an n x n matrix with entries uniform in [-1, 1) (SplitMix64)
    Gen {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Time strategies and count their flops
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
        /// Comma-separated strategy names
        #[arg(long, default_value = "naive,strassen,optimal")]
        strategies: String,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Analyze {
            n,
            strategy,
            format,
        } => commands::analyze(n, strategy, format, &mut out),
        Command::Multiply {
            a,
            b,
            out: out_path,
            strategy,
            count_flops,
            workers,
        } => commands::multiply(
            &MultiplyArgs {
                a: &a,
                b: &b,
                out: &out_path,
                strategy,
                count_flops,
                workers: workers as usize,
            },
            &mut out,
        ),
        Command::Reproduce {
            target,
            format,
            out: out_path,
            p_max,
            n_max,
            depth,
            alpha_max,
        } => {
            let settings = ReproduceSettings {
                p_max,
                n_max,
                depth,
                alpha_max,
            };
            commands::reproduce(target, &settings, format, out_path.as_deref(), &mut out)
        }
        Command::Gen { n, seed, out: path } => commands::gen(n, seed, &path),
        Command::Bench {
            sizes,
            strategies,
            reps,
            seed,
            workers,
            format,
        } => commands::bench(
            &BenchArgs {
                sizes,
                strategies: commands::parse_strategy_list(&strategies)?,
                reps,
                seed,
                workers: workers as usize,
            },
            format,
            &mut out,
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
