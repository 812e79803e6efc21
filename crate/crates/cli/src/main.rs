use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use torus_roots_cli::commands::{self, Input};
use torus_roots_cli::report::ReportDocument;
use torus_roots_cli::verify::{verify, Suite};
use torus_roots_cli::{search_cap, CliError};

#[derive(Parser)]
#[command(name = "torus-roots", version, about = "Demazure roots and weight monoids of quasi-affine toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Compact single-line JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Args)]
struct InputArgs {
    /// Fan document; standard input when absent or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Dual cones of the maximal cones.
    Dual(InputArgs),
    /// Face lattices of the maximal cones.
    Faces(InputArgs),
    /// Quasi-affinity test and boundary faces.
    QuasiAffine(InputArgs),
    /// Demazure roots whose derivations descend to the variety.
    Roots {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2)]
        bound: u64,
        /// Also print the exact description of the weight set.
        #[arg(long)]
        classify: bool,
    },
    /// Rebuild the weight monoid from the weight set and compare.
    Reconstruct(InputArgs),
    /// Run property suites on seeded random instances.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        instances: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest lattice rank drawn.
        #[arg(long, default_value_t = 4)]
        rank: usize,
    },
    /// Compare the two numerical weight monoids of the quotient example.
    Counterexample {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 2)]
        n: u64,
    },
}

fn read_input(args: &InputArgs) -> Result<Input, CliError> {
    let bytes = match &args.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).map_err(|e| CliError::Io(e.to_string()))?;
            buf
        }
    };
    Input::parse(bytes)
}

fn run(cli: &Cli) -> Result<ReportDocument, CliError> {
    let cap = search_cap()?;
    match &cli.command {
        Command::Dual(a) => commands::dual(&read_input(a)?),
        Command::Faces(a) => commands::faces(&read_input(a)?),
        Command::QuasiAffine(a) => commands::quasi_affine(&read_input(a)?),
        Command::Roots { input, bound, classify } => commands::roots(&read_input(input)?, *bound, *classify, cap),
        Command::Reconstruct(a) => commands::reconstruct(&read_input(a)?, cap),
        Command::Verify { suite, instances, seed, rank } => verify(*suite, *instances, *seed, *rank, cap),
        Command::Counterexample { d, s, n } => commands::counterexample(*d, *s, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let mut out = std::io::stdout().lock();
            if out.write_all(report.render(cli.pretty).as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
