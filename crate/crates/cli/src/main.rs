use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use haarint::bench;
use haarint::commands::{
    cmd_asymptotic, cmd_cache_clear, cmd_hciz, cmd_integrate, cmd_wg, HcizInput, IntegrateArgs, Output,
};
use haarint::CliError;

#[derive(Parser)]
#[command(name = "haarint", version, about = "Exact moments of Haar-random and Gaussian matrices")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Clear memoization caches before running.
    #[arg(long, global = true)]
    cold: bool,
    /// Worker threads for benchmark rows.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
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
    /// Integrate a polynomial expression against a measure.
    Integrate {
        expr: String,
        #[arg(long)]
        measure: String,
        /// Expand the result in inverse powers of the dimension up to this order.
        #[arg(long)]
        asymptotic: Option<i64>,
        /// Evaluate a symbolic result at this dimension.
        #[arg(long)]
        dim_override: Option<i64>,
        #[arg(long)]
        degree_limit: Option<usize>,
    },
    /// Laurent-expand a rational function, or an integral when --measure is given.
    Asymptotic {
        expr: String,
        #[arg(long, default_value = "d")]
        var: String,
        #[arg(long, default_value_t = 3)]
        order: i64,
        #[arg(long)]
        measure: Option<String>,
    },
    /// Print a Weingarten table.
    Wg {
        family: String,
        k: usize,
        #[arg(long, default_value = "d")]
        dim: String,
        #[arg(long)]
        degree_limit: Option<usize>,
    },
    /// Harish-Chandra–Itzykson–Zuber integral.
    Hciz(HciArgs),
    /// Run a benchmark suite.
    Bench {
        suite: String,
        #[arg(long, default_value_t = 30)]
        samples: usize,
    },
    /// Clear memoization caches.
    CacheClear,
}

#[derive(Args)]
struct HciArgs {
    /// Comma-separated eigenvalues of A.
    #[arg(long, requires = "b", conflicts_with_all = ["a_file", "formal"])]
    a: Option<String>,
    #[arg(long, requires = "a")]
    b: Option<String>,
    /// JSON matrix file for A.
    #[arg(long, requires = "b_file", conflicts_with = "formal")]
    a_file: Option<PathBuf>,
    #[arg(long, requires = "a_file")]
    b_file: Option<PathBuf>,
    /// Symbolic closed form at this dimension.
    #[arg(long)]
    formal: Option<String>,
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    if cli.cold {
        haarint_core::cache::clear_caches();
    }
    match &cli.command {
        Command::Integrate { expr, measure, asymptotic, dim_override, degree_limit } => cmd_integrate(&IntegrateArgs {
            expr: expr.clone(),
            measure: measure.clone(),
            asymptotic: *asymptotic,
            dim_override: *dim_override,
            cold: cli.cold,
            degree_limit: *degree_limit,
        }),
        Command::Asymptotic { expr, var, order, measure } => cmd_asymptotic(expr, var, *order, measure.as_deref()),
        Command::Wg { family, k, dim, degree_limit } => cmd_wg(family, *k, dim, *degree_limit),
        Command::Hciz(h) => {
            let input = match (&h.a, &h.b, &h.a_file, &h.b_file, &h.formal) {
                (Some(a), Some(b), None, None, None) => HcizInput::Eigenvalues(a.clone(), b.clone()),
                (None, None, Some(a), Some(b), None) => HcizInput::Files(a.clone(), b.clone()),
                (None, None, None, None, Some(d)) => HcizInput::Formal(d.clone()),
                _ => return Err(CliError::parse("give --a/--b, --a-file/--b-file, or --formal")),
            };
            cmd_hciz(&input)
        }
        Command::Bench { suite, samples } => {
            let rows = bench::run_suite(suite, *samples, cli.threads)?;
            Ok(Output { text: bench::to_csv(&rows), json: bench::to_json(suite, *samples, &rows) })
        }
        Command::CacheClear => Ok(cmd_cache_clear()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text.trim_end()),
                Format::Json => println!("{}", out.json),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            match cli.format {
                Format::Text => eprintln!("error[{}]: {}", err.kind, err.message),
                Format::Json => println!("{}", err.to_json()),
            }
            ExitCode::from(err.code as u8)
        }
    }
}
