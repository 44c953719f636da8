use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use arrcohom::cli::{run, OutputFormat, RunConfig, Subcommand};
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    /// Betti numbers and Poincaré polynomial of the complement
    Betti,
    /// Intersection poset with codimensions and Möbius values
    Poset,
    /// First page of the spectral sequence
    E1,
    /// Second page of the spectral sequence
    E2,
    /// Betti numbers from both combinatorial oracles
    Oracle,
    /// Run every consistency check; nonzero exit on any failure
    Check,
    /// Pages of a double complex file
    Ss,
}

/// Betti numbers of hyperplane arrangement complements.
///
/// Exit status: 0 success, 1 parse or validation error, 2 enumeration cap
/// exceeded, 3 failed consistency check.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    command: Command,
    /// Input file (`-` for stdin)
    input: PathBuf,
    /// Hyperplane sent to infinity for projective input (1-based; default: last)
    #[arg(long)]
    infinity: Option<usize>,
    /// Maximum number of hyperplanes for subset enumeration
    #[arg(long, default_value_t = arrcohom::DEFAULT_CAP)]
    cap: usize,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Print flat equations, gradings and every computed page
    #[arg(long)]
    verbose: bool,
    /// Skip the oracle cross-checks (ignored by `check`)
    #[arg(long)]
    no_oracle: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = if args.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.input)
    };
    let input = match input {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(1);
        }
    };
    let config = RunConfig {
        subcommand: match args.command {
            Command::Betti => Subcommand::Betti,
            Command::Poset => Subcommand::Poset,
            Command::E1 => Subcommand::E1,
            Command::E2 => Subcommand::E2,
            Command::Oracle => Subcommand::Oracle,
            Command::Check => Subcommand::Check,
            Command::Ss => Subcommand::Ss,
        },
        infinity_index: args.infinity,
        enumeration_cap: args.cap,
        output: if args.json {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        },
        verbose: args.verbose,
        oracle: !args.no_oracle,
    };
    let outcome = run(&config, &input);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.exit_code as u8)
}
