use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fairsim::error::Result;
use fairsim::nbta::{ARITY_CAP_ENV, DEFAULT_ARITY_CAP};
use fairsim_cli::commands::{self, Method, NdOptions, ProbOptions};
use fairsim_cli::report::CheckReport;
use fairsim_cli::suite::{random_suite, SuiteLimits};

const USAGE_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "fairsim", version, about = "Fair simulation checks for Büchi tree automata and probabilistic Büchi word automata")]
struct Cli {
    /// Largest symbol arity accepted by tuple enumeration.
    #[arg(long, global = true, env = ARITY_CAP_ENV, default_value_t = DEFAULT_ARITY_CAP)]
    arity_cap: usize,

    /// Omit the timing line from reports.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Fixpoint,
    Game,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fair simulation between two nondeterministic Büchi tree automata.
    CheckNd {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// Candidate relation to check; defaults to the largest fair simulation.
        #[arg(long)]
        relation: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        /// Write the simulation game with its winners to this file.
        #[arg(long)]
        dump_game: Option<PathBuf>,
    },
    /// Matrix fair simulation between two probabilistic Büchi word automata.
    CheckProb {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Search for approximation sequences instead of reading them.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 256)]
        iteration_cap: usize,
    },
    /// Measure of the cylinder of a finite word in the accepted language.
    LangProb {
        #[arg(long)]
        automaton: PathBuf,
        /// Letters, either juxtaposed or space-separated; empty for the whole space.
        #[arg(long, default_value = "")]
        word: String,
        /// Also print the no-divergence and acceptance vectors and the BSCCs.
        #[arg(long)]
        analysis: bool,
    },
    /// Bounded language-inclusion oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Seeded random cross-validation and soundness runs.
    Suite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_states: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Lasso words accepted on the left but not on the right (unary automata).
    Lasso {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long, default_value_t = 4)]
        stem_bound: usize,
        #[arg(long, default_value_t = 4)]
        loop_bound: usize,
    },
    /// Tree prefixes realizable on the left but not on the right.
    Prefix {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Cylinders with larger measure on the left.
    Cylinder {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
}

enum Output {
    Report(CheckReport),
    Text(String, u8),
}

fn run(cli: Cli) -> Result<Output> {
    let report = match cli.command {
        Command::CheckNd {
            lhs,
            rhs,
            relation,
            method,
            dump_game,
        } => commands::check_nd(&NdOptions {
            lhs,
            rhs,
            relation,
            method: match method {
                MethodArg::Fixpoint => Method::Fixpoint,
                MethodArg::Game => Method::Game,
                MethodArg::Both => Method::Both,
            },
            arity_cap: cli.arity_cap,
            dump_game,
        })?,
        Command::CheckProb {
            lhs,
            rhs,
            matrix,
            search,
            iteration_cap,
        } => commands::check_prob(&ProbOptions {
            lhs,
            rhs,
            matrix,
            search,
            iteration_cap,
        })?,
        Command::LangProb {
            automaton,
            word,
            analysis,
        } => return Ok(Output::Text(commands::lang_prob(&automaton, &word, analysis)?, 0)),
        Command::Oracle(OracleCommand::Lasso {
            lhs,
            rhs,
            stem_bound,
            loop_bound,
        }) => commands::oracle_lasso(&lhs, &rhs, stem_bound, loop_bound)?,
        Command::Oracle(OracleCommand::Prefix { lhs, rhs, depth }) => {
            commands::oracle_prefix(&lhs, &rhs, depth, cli.arity_cap)?
        }
        Command::Oracle(OracleCommand::Cylinder { lhs, rhs, max_len }) => {
            commands::oracle_cylinder(&lhs, &rhs, max_len)?
        }
        Command::Suite {
            seed,
            count,
            max_states,
        } => {
            let limits = SuiteLimits {
                max_states,
                ..SuiteLimits::default()
            };
            let summary = random_suite(seed, count, &limits)?;
            let code = if summary.passed() { 0 } else { 1 };
            return Ok(Output::Text(summary.to_string(), code));
        }
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let no_timing = cli.no_timing;
    match run(cli) {
        Ok(Output::Report(r)) => {
            print!("{}", if no_timing { r.render_body() } else { r.render() });
            ExitCode::from(r.exit_code() as u8)
        }
        Ok(Output::Text(text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}
