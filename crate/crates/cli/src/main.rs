//! `milnor` command-line tool.

mod commands;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "milnor",
    version,
    about = "Exact graded pieces of Jacobian ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A form given inline, or read from a file with `@path`.
#[derive(Args, Debug, Clone)]
pub struct PolyInput {
    /// Homogeneous polynomial such as "x0^3 + x1^3 - 2*x0*x1*x2", or @FILE.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    /// Number of the last variable; defaults to the largest index in the polynomial.
    #[arg(long)]
    pub n: Option<usize>,
}

/// Either a form (its Jacobian generators are used) or a generator file.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct FormOrGens {
    /// Homogeneous polynomial, or @FILE.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// JSON generator file ("-" for standard input).
    #[arg(long, value_name = "FILE")]
    pub gens: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function a(k) of the Milnor algebra and b(k) = dim S_k - a(k).
    Hilbert {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    /// Graded piece E_k(f) of a Jacobian ideal, or (I_W)_k of a generator tuple.
    Piece {
        #[command(flatten)]
        input: FormOrGens,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: u32,
    },
    /// Recover the fiber of forms from a Jacobian piece.
    Reconstruct {
        /// JSON subspace file ("-" for standard input).
        #[arg(long, value_name = "FILE")]
        subspace: PathBuf,
        #[arg(long)]
        d: u32,
        /// Expected degree of the piece; checked against the file.
        #[arg(long)]
        k: Option<u32>,
        /// Expected last variable index; checked against the file.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Recover the generator tuple from an ideal piece.
    Recover {
        #[arg(long, value_name = "FILE")]
        subspace: PathBuf,
        #[arg(long)]
        d: u32,
    },
    /// Sebastiani-Thom report: number of summands and the fiber.
    St {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Whether the hypersurface f = 0 is smooth.
    Smooth {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Linear space of forms sharing the Jacobian generators.
    Fiber {
        #[command(flatten)]
        input: FormOrGens,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Associated form (Macaulay inverse system) of a generator tuple.
    InverseSystem {
        #[arg(long, value_name = "FILE")]
        gens: PathBuf,
    },
    /// Kernel of the differential of W -> (I_W)_k, or of f -> E_k(f).
    TangentKernel {
        #[command(flatten)]
        input: FormOrGens,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: u32,
    },
    /// Seeded random smooth form, or complete-intersection tuple with --tuple.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Require a form that is not a Sebastiani-Thom sum.
        #[arg(long, conflicts_with = "tuple")]
        non_st: bool,
        /// Emit a generator tuple of degree d - 1 instead of a form.
        #[arg(long)]
        tuple: bool,
        #[arg(long, default_value_t = milnor::st::DEFAULT_COEFF_BOUND)]
        coeff_bound: i64,
    },
    /// Run the acceptance battery.
    Suite {
        /// Restrict to one size (requires --d).
        #[arg(long, requires = "d")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        d: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        coeff_bound: Option<i64>,
        /// Wall-clock budget in seconds; criteria not started in time are skipped.
        #[arg(long, value_name = "SECONDS")]
        budget: Option<u64>,
    },
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Precondition(String),
    /// The suite ran but some criterion failed; carries the report.
    Suite(String),
}

impl From<milnor::Error> for Failure {
    fn from(err: milnor::Error) -> Self {
        if err.is_precondition() {
            Failure::Precondition(err.to_string())
        } else {
            Failure::Input(err.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::Input(err.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(err: serde_json::Error) -> Self {
        Failure::Input(format!("invalid JSON: {err}"))
    }
}

/// Reads a file, or standard input for "-".
pub fn read_source(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String, Failure> {
    use commands as c;
    let format = cli.format;
    match cli.command {
        Command::Hilbert { n, d } => c::hilbert(n, d, format),
        Command::Piece { input, n, k } => c::piece(&input, n, k, format),
        Command::Reconstruct { subspace, d, k, n } => c::reconstruct(&subspace, d, k, n, format),
        Command::Recover { subspace, d } => c::recover(&subspace, d, format),
        Command::St { input } => c::st(&input, format),
        Command::Smooth { input } => c::smooth(&input, format),
        Command::Fiber { input, n } => c::fiber(&input, n, format),
        Command::InverseSystem { gens } => c::inverse_system(&gens, format),
        Command::TangentKernel { input, n, k } => c::tangent_kernel(&input, n, k, format),
        Command::Random {
            n,
            d,
            seed,
            non_st,
            tuple,
            coeff_bound,
        } => c::random(n, d, seed, non_st, tuple, coeff_bound, format),
        Command::Suite {
            n,
            d,
            seed,
            coeff_bound,
            budget,
        } => c::suite(n.zip(d), seed, coeff_bound, budget, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let (text, code) = match run(cli) {
        Ok(text) => (text, 0),
        Err(Failure::Suite(text)) => (text, 1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    let written = match out {
        Some(path) => fs::write(&path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: {err}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
