use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod input;
mod sweep;

#[derive(Parser, Debug)]
#[command(name = "gitstab", version, about = "Stability checks for projective hypersurfaces")]
struct Cli {
    /// Machine-readable output with exact "p/q" numbers
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the random basis sweep
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of random invertible integer bases to try in addition to the given one
    #[arg(long, global = true, default_value_t = 0)]
    basis_sweep: usize,

    /// Box bound for weight enumeration
    #[arg(long, global = true)]
    bound: Option<i64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PolyInput {
    /// Polynomial text, e.g. "z0^3 + z1^3 - 2*z2*z3^2"
    #[arg(short = 'f', long = "poly", conflicts_with = "file", allow_hyphen_values = true)]
    pub poly: Option<String>,

    /// Read the polynomial from a file
    #[arg(long)]
    pub file: Option<PathBuf>,

    /// Number of homogeneous variables (defaults to the largest index + 1)
    #[arg(short = 'n', long = "n-vars")]
    pub n_vars: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print a polynomial in canonical form
    Parse(PolyInput),
    /// Minimal weight, weight spectrum and limit under a diagonal weight
    Mu {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short = 'w', long, allow_hyphen_values = true)]
        weights: String,
    },
    /// Limit polynomial under a diagonal weight
    Limit {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short = 'w', long, allow_hyphen_values = true)]
        weights: String,
    },
    /// Torus stability verdict (exit 0 stable, 3 weakly stable, 4 not weakly stable)
    Stability {
        #[command(flatten)]
        input: PolyInput,
        /// Also run the exhaustive box oracle with --bound
        #[arg(long)]
        oracle: bool,
    },
    /// Primitive integer destabilizing weight, if any
    Destabilize(PolyInput),
    /// Futaki invariant of a limit, or directly from kappa
    Futaki {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short = 'w', long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires_all = ["dim", "degree"], conflicts_with = "weights")]
        kappa: Option<String>,
        /// Projective dimension, used with --kappa
        #[arg(long)]
        dim: Option<usize>,
        /// Degree, used with --kappa
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Build the degeneration generated by a linear vector field
    Degenerate {
        #[command(flatten)]
        input: PolyInput,
        /// "diag:a,b,..." or a JSON matrix
        #[arg(long, allow_hyphen_values = true, conflicts_with = "from_destabilizer")]
        field: Option<String>,
        /// Weight vector to shift and rescale; without a value the LP destabilizer is used
        #[arg(long, num_args = 0..=1, default_missing_value = "", allow_hyphen_values = true)]
        from_destabilizer: Option<String>,
    },
    /// Compare the torus verdict with the Futaki criterion on a weight box (exit 5 on disagreement)
    Crosscheck(PolyInput),
    /// Classify a JSON-lines corpus of {"f": ..., "n_vars": ...}
    Corpus {
        /// Corpus path, or "-" for stdin
        #[arg(long, short = 'i')]
        input: PathBuf,
    },
    /// Print the simplex tableaus of the stability cone probe
    #[command(hide = true)]
    LpDebug(PolyInput),
}

pub struct Settings {
    pub json: bool,
    pub seed: u64,
    pub basis_sweep: usize,
    pub bound: Option<i64>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("GITSTAB_LOG")).init();
    let cli = Cli::parse();
    let settings = Settings {
        json: cli.json,
        seed: cli.seed,
        basis_sweep: cli.basis_sweep,
        bound: cli.bound,
    };
    let result = match &cli.command {
        Command::Parse(input) => commands::cmd_parse(&settings, input),
        Command::Mu { input, weights } => commands::cmd_mu(&settings, input, weights),
        Command::Limit { input, weights } => commands::cmd_limit(&settings, input, weights),
        Command::Stability { input, oracle } => commands::cmd_stability(&settings, input, *oracle),
        Command::Destabilize(input) => commands::cmd_destabilize(&settings, input),
        Command::Futaki { input, weights, kappa, dim, degree } => {
            commands::cmd_futaki(&settings, input, weights.as_deref(), kappa.as_deref(), *dim, *degree)
        }
        Command::Degenerate { input, field, from_destabilizer } => {
            commands::cmd_degenerate(&settings, input, field.as_deref(), from_destabilizer.as_deref())
        }
        Command::Crosscheck(input) => commands::cmd_crosscheck(&settings, input),
        Command::Corpus { input } => commands::cmd_corpus(&settings, input),
        Command::LpDebug(input) => commands::cmd_lp_debug(input),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gitstab: {e}");
            ExitCode::from(2)
        }
    }
}
