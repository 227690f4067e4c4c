mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use torus_leibniz::harness::Report;
use torus_leibniz::{Error, Result};

use commands::*;

/// Numerical experiments for fractional Leibniz rules on the torus.
#[derive(Parser, Debug)]
#[command(name = "torus-leibniz", version)]
struct Cli {
    /// Directory for `<name>.report.txt`, `<name>.csv` and `<name>.plotdata`.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Base name of the output files; defaults to the subcommand name.
    #[arg(long, global = true)]
    name: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate the Leibniz constant for one exponent tuple.
    VerifyLeibniz(VerifyLeibniz),
    /// Estimate the product-estimate constant for one exponent tuple.
    VerifyProduct(VerifyProduct),
    /// Classify an exponent tuple and list the clauses behind the verdict.
    ExponentCheck(ExponentCheck),
    /// Estimate constants for several tuples.
    EstimateConstant(EstimateConstant),
    /// Track ratio growth under concentration across orders s.
    SharpnessScan(SharpnessScanArgs),
    /// Fit decay constants of a kernel.
    KernelDecay(KernelDecay),
    /// Compare the periodized Bessel kernel with its symbol.
    KernelConsistency(KernelConsistency),
    /// Check Poisson summation for a Gaussian or the Bessel kernel G_2.
    PoissonCheck(PoissonCheck),
    /// Check the transference identity between the torus and the line.
    TransferenceCheck(TransferenceCheck),
    /// Sweep dyadic commutator ratios over scales.
    CommutatorSweep(CommutatorSweep),
    /// Check the three-piece paraproduct reconstruction.
    ParaproductCheck(ParaproductCheck),
    /// Run an experiment described by a flat `key = value` file.
    Run {
        config: PathBuf,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::Domain(_) | Error::Parse(_) => 2,
        Error::Numeric { .. } | Error::Resource(_) | Error::Singularity | Error::Io(_) => 1,
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("TORUS_LEIBNIZ_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::Config(format!("TORUS_LEIBNIZ_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Config(format!("cannot size the thread pool: {e}")))
}

fn execute(command: &Command, line: &str) -> Result<Report> {
    match command {
        Command::VerifyLeibniz(a) => verify_leibniz(a, line),
        Command::VerifyProduct(a) => verify_product(a, line),
        Command::ExponentCheck(a) => exponent_check(a, line),
        Command::EstimateConstant(a) => estimate_constants(a, line),
        Command::SharpnessScan(a) => sharpness(a, line),
        Command::KernelDecay(a) => kernel_decay(a, line),
        Command::KernelConsistency(a) => kernel_consistency(a, line),
        Command::PoissonCheck(a) => poisson(a, line),
        Command::TransferenceCheck(a) => transference(a, line),
        Command::CommutatorSweep(a) => commutator(a, line),
        Command::ParaproductCheck(a) => paraproduct(a, line),
        Command::Run { .. } => Err(Error::Config("experiment files cannot nest 'run'".into())),
    }
}

/// The invocation as recorded in reports: output placement is left out so
/// identical experiments give identical report bodies.
fn command_line(args: &[String]) -> String {
    let mut kept = Vec::new();
    let mut iter = args.iter();
    while let Some(a) = iter.next() {
        if a == "--out-dir" || a == "--name" {
            iter.next();
        } else if !(a.starts_with("--out-dir=") || a.starts_with("--name=")) {
            kept.push(a);
        }
    }
    kept.into_iter()
        .map(|a| {
            if a.chars().any(|c| c.is_whitespace() || c == '"') {
                format!("{a:?}")
            } else {
                a.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> ExitCode {
    let mut args: Vec<String> = std::env::args().collect();
    let mut cli = Cli::parse_from(&args);
    if let Command::Run { config } = &cli.command {
        let extra = match config::config_args(config) {
            Ok(extra) => extra,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        };
        // Global flags given on the command line still apply.
        let mut rebuilt = vec![args[0].clone(), "--out-dir".into(), cli.out_dir.display().to_string()];
        if let Some(name) = &cli.name {
            rebuilt.extend(["--name".into(), name.clone()]);
        }
        rebuilt.extend(extra);
        args = rebuilt;
        cli = Cli::parse_from(&args);
    }
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(exit_code(&e));
    }
    let line = command_line(&args[1..]);
    let result = execute(&cli.command, &line).and_then(|mut report| {
        if let Some(name) = &cli.name {
            report.name = name.clone();
        }
        let written = report.write(&cli.out_dir)?;
        Ok((report, written))
    });
    match result {
        Ok((report, written)) => {
            print!("{}", report.body());
            for path in written {
                eprintln!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
