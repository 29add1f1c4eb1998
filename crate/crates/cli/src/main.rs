use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use geored::{Mode, DEFAULT_TOL};
use geored_cli::commands;
use geored_cli::{CliError, Problem, EXIT_ERROR};

#[derive(Parser)]
#[command(
    name = "geored",
    version,
    about = "Generate, solve and verify graph-to-geometry reduction instances"
)]
struct Cli {
    /// Worker threads for solver enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Cylinder,
    Separation,
    Maxfs,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Is,
    Clique,
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance from a graph file.
    Gen {
        problem: Problem,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve an instance file; exit 0 if a solution exists, 1 if not.
    Solve {
        problem: Problem,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Generate, solve and compare against the brute-force oracle.
    Verify {
        target: VerifyTarget,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// List independent sets or cliques of size k.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        mode: OracleMode,
        /// List every ordering of each solution.
        #[arg(long)]
        ordered: bool,
    },
    /// Write an Erdős–Rényi random graph.
    RandomGraph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Gen {
            problem,
            graph,
            k,
            out: path,
        } => commands::cmd_gen(problem, &graph, k, &path, out),
        Command::Solve {
            problem,
            instance,
            tol,
        } => commands::cmd_solve(problem, &instance, tol, out),
        Command::Verify {
            target,
            graph,
            k,
            tol,
        } => {
            let problems: &[Problem] = match target {
                VerifyTarget::Cylinder => &[Problem::Cylinder],
                VerifyTarget::Separation => &[Problem::Separation],
                VerifyTarget::Maxfs => &[Problem::Maxfs],
                VerifyTarget::All => &Problem::ALL,
            };
            commands::cmd_verify(problems, &graph, k, tol, out)
        }
        Command::Oracle {
            graph,
            k,
            mode,
            ordered,
        } => {
            let mode = match mode {
                OracleMode::Is => Mode::IndependentSet,
                OracleMode::Clique => Mode::Clique,
            };
            commands::cmd_oracle(&graph, k, mode, ordered, out)
        }
        Command::RandomGraph {
            n,
            p,
            seed,
            out: path,
        } => commands::cmd_random_graph(n, p, seed, path.as_deref(), out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let code = match run(cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    };
    let _ = lock.flush();
    ExitCode::from(code)
}
