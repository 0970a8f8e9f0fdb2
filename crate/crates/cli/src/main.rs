use std::path::PathBuf;

use clap::{Parser, Subcommand};
use prehom_cli::commands::{self, CmdOutput};
use prehom_cli::config::RunConfig;

/// Exact relative invariants, irrationality certificates, and lattice
/// searches for selected prehomogeneous vector spaces.
#[derive(Parser)]
#[command(name = "prehom", version)]
struct Cli {
    /// Flat `key = value` config file; `--set` overrides win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Set or override one config entry (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Print the case classification table and auxiliary varieties.
    #[arg(long)]
    list_cases: bool,

    /// Worker threads for sharded searches (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a group element or trivector is sufficiently irrational
    Certify,
    /// Box / walk / basis search for configured target values
    Search,
    /// Verify the sl(2) isotypic decomposition and bracket generation
    Lemma13 {
        /// Scale E by 2 first to demonstrate the triple-relation check
        #[arg(long)]
        tamper: bool,
    },
    /// Split a semistable trivector along its K-operator eigenplanes
    Decompose,
    /// Print the derived invariant generators for a case
    Invariants,
    /// Quadratic-form density baseline with a doubling-radius error curve
    Baseline,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(mut cli: Cli) -> i32 {
    if let Some(n) = cli.threads {
        // Best effort: the global pool may already exist.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    if cli.list_cases {
        print!("{}", commands::CASES_TABLE);
        return 0;
    }
    let Some(command) = cli.command.take() else {
        eprintln!("error: missing subcommand (try --help or --list-cases)");
        return 2;
    };
    let cfg = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let result = match command {
        Command::Certify => commands::cmd_certify(&cfg),
        Command::Search => commands::cmd_search(&cfg),
        Command::Lemma13 { tamper } => commands::cmd_lemma13(tamper),
        Command::Decompose => commands::cmd_decompose(&cfg),
        Command::Invariants => commands::cmd_invariants(&cfg),
        Command::Baseline => commands::cmd_baseline(&cfg),
    };
    match result {
        Ok(CmdOutput { exit, text }) => {
            print!("{text}");
            exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            commands::exit_code(&e)
        }
    }
}

fn load_config(cli: &Cli) -> prehom_core::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::new(),
    };
    for kv in &cli.set {
        cfg.apply_override(kv)?;
    }
    Ok(cfg)
}
