mod commands;
mod params;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use params::ScalarMode;
use tlj::coeffs::Backend;
use tlj::scalars::DEFAULT_TOLERANCE;

#[derive(Debug)]
pub enum CliError {
    /// Exit 2.
    Parse(String),
    /// Exit 3, with the normalization residual.
    NotNormalized(f64),
    /// Exit 4. Carries the report, which still goes to stdout.
    Mismatch(String),
    /// Exit 1.
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::NotNormalized(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::NotNormalized(r) => write!(f, "parameters are not normalized (residual {r:e})"),
            CliError::Mismatch(_) => write!(f, "cross-check mismatch"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "tlj", version, about = "Vacuum coefficients of Jones representations of Thompson's group F")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Scalar backend.
    #[arg(long, global = true, value_enum, default_value_t = ScalarMode::Auto)]
    pub scalar: ScalarMode,
    /// Tolerance for float comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "TLJ_WORKERS")]
    pub workers: Option<usize>,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Suppress progress messages on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Loop value delta.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Use the chromatic point of delta instead of --a/--b.
    #[arg(long)]
    pub chromatic: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the vacuum coefficient of an element.
    Eval {
        #[command(flatten)]
        spec: SpecArgs,
        /// Word in the generators (`x0 x1^-1`) or `pair:<plus>,<minus>`.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value = "tl", value_parser = parse_backend)]
        backend: Backend,
        /// Compare against other backends; with no value, every applicable one.
        #[arg(long, num_args = 0..=1, default_missing_value = "all", value_delimiter = ',')]
        cross_check: Option<Vec<String>>,
    },
    /// List elements with at most --max-leaves leaves fixing the vacuum at t.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        max_leaves: usize,
    },
    /// Table of the coefficients of the powers of an element.
    Decay {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "x0", allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value_t = 10)]
        powers: usize,
    },
    /// The graph Gamma(g).
    Graph {
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Membership in the Jones subgroup or its mirror image.
    Member {
        #[arg(long, value_enum, default_value_t = Subgroup::Jones)]
        subgroup: Subgroup,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// List the nontrivial reduced elements with at most --max-leaves leaves.
    Enumerate {
        #[arg(long)]
        max_leaves: usize,
        /// Print counts per leaf number instead of the elements.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Subgroup {
    Jones,
    SigmaJones,
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e: tlj::coeffs::CoeffError| e.to_string())
}

fn run(cli: Cli) -> Result<String, CliError> {
    let run = &cli.run;
    if !(run.tolerance > 0.0) {
        return Err(CliError::Parse("--tolerance must be positive".into()));
    }
    if let Some(n) = run.workers {
        if n == 0 {
            return Err(CliError::Parse("--workers must be at least 1".into()));
        }
        // fails only if a pool already exists, which never happens here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Eval { spec, element, backend, cross_check } => {
            commands::eval(run, &spec, &element, backend, cross_check.as_deref())
        }
        Command::Scan { t, max_leaves } => commands::scan(run, &t, max_leaves),
        Command::Decay { spec, element, powers } => commands::decay(run, &spec, &element, powers),
        Command::Graph { element } => commands::graph(run, &element),
        Command::Member { subgroup, element } => commands::member(run, subgroup, &element),
        Command::Enumerate { max_leaves, count } => commands::enumerate(run, max_leaves, count),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Mismatch(report) = &e {
                print!("{report}");
            }
            eprintln!("tlj: {e}");
            ExitCode::from(e.code())
        }
    }
}
