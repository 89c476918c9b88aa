//! Command-line driver: tuple verification, curve induction, torsion
//! reports, family evaluation, parameter sweeps, and extension search.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;
use commands::{CmdError, SweepFormat};

#[derive(Parser)]
#[command(
    name = "dioquad",
    version,
    about = "Rational Diophantine quadruples and the elliptic curves they induce"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Diophantine property (embedded corpus when no input given)
    Verify(VerifyArgs),
    /// Induced curve, distinguished points, and certificates of a quadruple
    Induce(InduceArgs),
    /// Torsion classification with a reduction-mod-p cross-check
    Torsion(TorsionArgs),
    /// Evaluate a parametric family at one parameter point
    Family(FamilyArgs),
    /// Sieve a family over a parameter grid and rank by Mestre-Nagao score
    Sweep(SweepArgs),
    /// Search m*P + n*Q for quintuple extensions of a quadruple
    Extend(ExtendArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Tuple file: one comma-separated tuple per line, '#' comments
    #[arg(long, conflicts_with = "tuple")]
    file: Option<PathBuf>,
    /// One tuple as comma-separated fractions, e.g. "1,3,8,120"
    #[arg(long)]
    tuple: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct InduceArgs {
    /// Ordered quadruple a,b,c,d as comma-separated fractions
    #[arg(long)]
    tuple: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TorsionArgs {
    /// Quadruple whose induced curve to classify
    #[arg(long, conflicts_with_all = ["p1", "p2"])]
    tuple: Option<String>,
    /// Raw model coefficient p1 of y² = x(x+p1)(x+p2)
    #[arg(long, requires = "p2")]
    p1: Option<String>,
    /// Raw model coefficient p2
    #[arg(long, requires = "p1")]
    p2: Option<String>,
    /// Good odd primes used for the gcd cross-check
    #[arg(long, default_value_t = 10)]
    primes: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name: z2z2, z2z2v, z2z4, z2z6, or z2z8
    #[arg(long)]
    name: String,
    /// Parameter assignment, e.g. "k=23" or "t=2,u=3"
    #[arg(long)]
    params: String,
    /// Fourth-element mode for z2z4: regular or prop3
    #[arg(long, default_value = "regular")]
    c_mode: String,
    /// Classify the induced curve and compare with the advertised torsion
    #[arg(long)]
    check_torsion: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Family name: z2z2, z2z2v, z2z4, z2z6, or z2z8
    #[arg(long)]
    name: String,
    /// Grid axes, e.g. "t=142/53,v=2..8 step 1/2"
    #[arg(long)]
    params: String,
    /// Prime cutoff N of the Mestre-Nagao sum
    #[arg(long = "sieve-N")]
    sieve_n: u64,
    /// Keep this many top-scoring rows (0 keeps all)
    #[arg(long, default_value_t = 10)]
    top: usize,
    /// Worker threads (0 uses the default pool)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Fourth-element mode for z2z4: regular or prop3
    #[arg(long, default_value = "regular")]
    c_mode: String,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct ExtendArgs {
    /// Quadruple to extend, as comma-separated fractions
    #[arg(long)]
    tuple: String,
    /// Search all m*P + n*Q with |m|, |n| at most this depth
    #[arg(long)]
    depth: i64,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => commands::verify(a.file.as_deref(), a.tuple.as_deref(), a.json),
        Command::Induce(a) => commands::induce(&a.tuple, a.json),
        Command::Torsion(a) => commands::torsion(
            a.tuple.as_deref(),
            a.p1.as_deref(),
            a.p2.as_deref(),
            a.primes,
            a.json,
        ),
        Command::Family(a) => {
            commands::family(&a.name, &a.params, &a.c_mode, a.check_torsion, a.json)
        }
        Command::Sweep(a) => {
            let format = if a.json {
                SweepFormat::Json
            } else if a.csv {
                SweepFormat::Csv
            } else {
                SweepFormat::Human
            };
            commands::sweep(&a.name, &a.params, &a.c_mode, a.sieve_n, a.top, a.jobs, format)
        }
        Command::Extend(a) => commands::extend(&a.tuple, a.depth, a.json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Failed) => ExitCode::from(1),
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Degenerate(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
