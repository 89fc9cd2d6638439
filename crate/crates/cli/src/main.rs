mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Weak Lefschetz Property of Stanley–Reisner type Artinian algebras.
#[derive(Debug, Parser)]
#[command(name = "wlp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Facet file: one facet per line, labels separated by spaces.
    pub file: Option<PathBuf>,
    /// Builtin complex, e.g. `octahedron` or `cycle(4)`.
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Rank,
    Criterion,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Face counts, Hilbert series, pseudomanifold status and socle.
    Info {
        #[command(flatten)]
        input: Input,
    },
    /// Decide WLP degree by degree.
    Check {
        #[command(flatten)]
        input: Input,
        /// Only the map from degree i to degree i+1.
        #[arg(long, conflicts_with = "all")]
        degree: Option<usize>,
        /// Every degree (the default).
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Rank)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        /// Print certificates and ranks.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Nagata idealization of A(Δ) and its WLP under random forms.
    Idealize {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = wlp_core::gorenstein::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Print the quadric generators (even cycles only).
        #[arg(long)]
        presentation: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write a complex as a facet file.
    Generate(GenerateArgs),
    /// Cross-check ranks against criteria on random complexes.
    Validate {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 9)]
        max_vertices: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Facet file to transform.
    #[arg(conflicts_with_all = ["builtin", "random"])]
    pub file: Option<PathBuf>,
    #[arg(long, value_name = "NAME", conflicts_with = "random")]
    pub builtin: Option<String>,
    /// Random independence complex of G(m, p) on `--vertices` vertices.
    #[arg(long, requires = "vertices")]
    pub random: bool,
    #[arg(long)]
    pub vertices: Option<usize>,
    /// Edge probability for `--random`.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// With `--random`, draw a few random facets instead of a flag complex.
    #[arg(long)]
    pub facet_set: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Apply barycentric subdivision this many times.
    #[arg(long, default_value_t = 0)]
    pub subdivide: usize,
    /// Remove the facet with this (0-based, sorted) index.
    #[arg(long, value_name = "INDEX")]
    pub remove_facet: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Info { input } => commands::info(&input),
        Command::Check { input, degree, all: _, method, json, verbose } => {
            commands::check(&input, degree, method, json, verbose)
        }
        Command::Idealize { input, trials, seed, presentation, json } => {
            commands::idealize(&input, trials, seed, presentation, json)
        }
        Command::Generate(args) => commands::generate(&args),
        Command::Validate { count, max_vertices, seed, sequential, json } => {
            commands::validate(count, max_vertices, seed, sequential, json)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
