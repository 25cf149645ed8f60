//! `indexlab`: construct, solve and verify index-coding instances.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input or usage,
//! 3 a search budget ran out.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod io;
mod report;
mod selftest;

use report::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "indexlab", version, about = "Index coding, minrank and set-system graph toolkit")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "INDEXLAB_THREADS")]
    threads: Option<usize>,

    /// Render results as an aligned table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build instances.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Minimum rank of a representing matrix.
    Minrank(MinrankArgs),
    /// Optimal index code length.
    Ell(EllArgs),
    /// Check that matrices represent a graph (and its complement).
    Verify(VerifyArgs),
    /// Encode with, or simulate, the linear code of a representing matrix.
    Code(CodeArgs),
    /// Graph utilities.
    Graph {
        #[command(subcommand)]
        what: GraphCmd,
    },
    /// Shared-request instances.
    P4 {
        #[command(subcommand)]
        what: P4Cmd,
    },
    /// Run the built-in invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    /// Set-system graph with intersection sizes congruent to -1 mod p^k.
    Ramsey(RamseyArgs),
}

#[derive(Args, Debug)]
pub struct RamseyArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub q: u32,
    /// Exponent of p; searched from --epsilon when omitted.
    #[arg(long, requires = "l")]
    pub k: Option<u32>,
    #[arg(long, requires = "k")]
    pub l: Option<u32>,
    /// Ground-set size (default p^(3k)).
    #[arg(long)]
    pub r: Option<u32>,
    /// Target ratio gap, as a decimal or fraction.
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long, default_value_t = 16)]
    pub k_max: u32,
    /// Graph output path.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Directory for P.json and Q.json.
    #[arg(long, value_name = "DIR")]
    pub emit_matrices: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MinrankMethod {
    Exact,
    Bounds,
}

#[derive(Args, Debug)]
pub struct MinrankArgs {
    #[arg(short, long)]
    pub graph: PathBuf,
    #[arg(short, long, default_value = "2")]
    pub field: String,
    #[arg(long, value_enum, default_value = "exact")]
    pub method: MinrankMethod,
    /// Search node budget.
    #[arg(long, default_value_t = indexlab_core::minrank::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Report path.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EllMethod {
    Confusion,
    Linear,
    Bounds,
}

#[derive(Args, Debug)]
pub struct EllArgs {
    #[arg(short, long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "confusion")]
    pub method: EllMethod,
    /// Largest source length for the confusion oracle (at most 8).
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// Longest linear code tried by --method linear (at most 4).
    #[arg(long, default_value_t = 4)]
    pub max_ell: usize,
    /// Colouring node budget.
    #[arg(long, default_value_t = u64::MAX)]
    pub budget: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(short, long)]
    pub graph: PathBuf,
    /// Matrix that should represent the graph.
    #[arg(short, long)]
    pub matrix: PathBuf,
    /// Matrix that should represent the complement.
    #[arg(short = 'q', long)]
    pub complement_matrix: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["encode", "simulate"])))]
pub struct CodeArgs {
    #[arg(short, long)]
    pub graph: PathBuf,
    #[arg(short, long)]
    pub matrix: PathBuf,
    /// Expected field of the matrix.
    #[arg(short, long)]
    pub field: Option<String>,
    /// Source word, bit i first.
    #[arg(long, value_name = "BITS")]
    pub encode: Option<String>,
    /// Run random broadcast rounds.
    #[arg(long)]
    pub simulate: bool,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include the transcript of every round.
    #[arg(long)]
    pub trace: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Apply an operator.
    Op(GraphOpArgs),
    /// Standard families.
    Gen(GraphGenArgs),
    /// Size and exact invariants.
    Info(GraphInfoArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GraphOp {
    Complement,
    Union,
    Blowup,
    Compose,
    Product,
}

#[derive(Args, Debug)]
pub struct GraphOpArgs {
    #[arg(value_enum)]
    pub op: GraphOp,
    /// Input graphs, in order.
    #[arg(short, long = "input", required = true)]
    pub inputs: Vec<PathBuf>,
    /// Copies per vertex for blowup.
    #[arg(short, long)]
    pub t: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    Complete,
    Empty,
    Cycle,
    Path,
    Tournament,
}

#[derive(Args, Debug)]
pub struct GraphGenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(short, long)]
    pub n: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GraphInfoArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum P4Cmd {
    /// Exact minimum rank of the instance.
    Minrank(P4Args),
    /// Minranks of the two receiver graphs.
    Bounds(P4Args),
}

#[derive(Args, Debug)]
pub struct P4Args {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long, default_value = "2")]
    pub field: String,
    #[arg(long, default_value_t = indexlab_core::minrank::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Flip one entry of P to a non-edge position.
    FlipEntry,
    /// Flip one bit of every transmitted codeword.
    CodewordBit,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Deliberately break one component to check the suite notices.
    #[arg(long, value_enum)]
    pub inject_fault: Option<Fault>,
    /// Run only these criteria (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn run(cli: &Cli) -> Result<(Outcome, Option<PathBuf>), CliError> {
    Ok(match &cli.command {
        Command::Construct {
            what: ConstructCmd::Ramsey(a),
        } => (commands::construct_ramsey(a)?, None),
        Command::Minrank(a) => (commands::minrank(a)?, a.output.clone()),
        Command::Ell(a) => (commands::ell(a)?, a.output.clone()),
        Command::Verify(a) => (commands::verify(a)?, a.output.clone()),
        Command::Code(a) => (commands::code(a)?, a.output.clone()),
        Command::Graph { what } => (commands::graph(what)?, None),
        Command::P4 { what } => (commands::p4(what)?, None),
        Command::Selftest(a) => (selftest::run(a)?, a.output.clone()),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("indexlab: cannot configure {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli) {
        Ok((outcome, out)) => {
            let code = outcome.status.exit_code();
            let target = cli.report.clone().or(out);
            let rendered = report::render(&argv, outcome, start.elapsed(), rayon::current_num_threads(), cli.pretty);
            if let Err(e) = report::emit(&rendered, target.as_deref()) {
                eprintln!("indexlab: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("indexlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
