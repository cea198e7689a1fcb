use std::path::PathBuf;
use std::process::ExitCode;

use blockslide::commands::{self, CliError, EXIT_DISCREPANCY};
use blockslide::fuzz::{FuzzConfig, Reference};
use blockslide::instance::Which;
use blockslide_core::generate::{Envelope, GenParams};
use blockslide_core::oracle::OracleLimits;
use blockslide_core::Strategy;
use clap::{Parser, Subcommand, ValueEnum};

/// Token sliding reachability on block graphs.
#[derive(Parser)]
#[command(name = "blockslide", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Set {
    Source,
    Target,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Mode {
    /// Rescan all pairs on every pass.
    #[default]
    Faithful,
    /// Revisit only pairs whose inputs changed.
    Worklist,
}

impl From<Mode> for Strategy {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Faithful => Strategy::Faithful,
            Mode::Worklist => Strategy::Worklist,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the target set is reachable from the source set.
    Decide {
        file: String,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        /// Also print per-component diagnostics.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Print the potential table of one token set.
    Potentials {
        file: String,
        #[arg(long, value_enum, default_value = "source")]
        set: Set,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// Answer by exhaustive search over the reconfiguration graph.
    Oracle {
        file: String,
        #[arg(long, default_value_t = OracleLimits::default().max_states)]
        max_states: usize,
        #[arg(long, default_value_t = OracleLimits::default().max_millis)]
        max_millis: u64,
    },
    /// Print a random instance.
    Gen {
        #[arg(long, default_value_t = 4)]
        blocks: usize,
        #[arg(long, default_value_t = 4)]
        max_clique: usize,
        #[arg(long, default_value_t = 2)]
        tokens: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the solver with the oracle on random instances.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 6)]
        max_blocks: usize,
        #[arg(long, default_value_t = 4)]
        max_clique: usize,
        #[arg(long, default_value_t = 4)]
        max_tokens: usize,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        /// Where to write the first failing instance.
        #[arg(long, default_value = "fuzz-failure.txt")]
        dump: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    match cli.command {
        Command::Decide {
            file,
            mode,
            verbose,
        } => {
            let inst = commands::read_instance(&file)?;
            Ok((commands::decide(&inst, mode.into(), verbose)?, 0))
        }
        Command::Potentials { file, set, mode } => {
            let inst = commands::read_instance(&file)?;
            let which = match set {
                Set::Source => Which::Source,
                Set::Target => Which::Target,
            };
            Ok((commands::potentials(&inst, which, mode.into())?, 0))
        }
        Command::Oracle {
            file,
            max_states,
            max_millis,
        } => {
            let inst = commands::read_instance(&file)?;
            let limits = OracleLimits::new(max_states, max_millis)?;
            Ok((commands::oracle(&inst, limits), 0))
        }
        Command::Gen {
            blocks,
            max_clique,
            tokens,
            seed,
        } => {
            let params = GenParams {
                seed,
                num_blocks: blocks,
                max_clique,
                token_count: tokens,
            };
            Ok((commands::gen(&params)?, 0))
        }
        Command::Fuzz {
            count,
            max_blocks,
            max_clique,
            max_tokens,
            max_vertices,
            seed,
            mode,
            dump,
        } => {
            let cfg = FuzzConfig {
                count,
                seed,
                envelope: Envelope {
                    max_blocks,
                    max_clique,
                    max_tokens,
                    max_vertices,
                },
                ..FuzzConfig::default()
            };
            let report = commands::fuzz(&cfg, &Reference(mode.into()))?;
            eprintln!(
                "yes {} no {} skipped {}",
                report.yes, report.no, report.skipped
            );
            let mut out = report.summary();
            out.push('\n');
            if let (Some(text), Some(f)) =
                (commands::failure_dump(&cfg, &report), &report.first_failure)
            {
                std::fs::write(&dump, text).map_err(|source| CliError::Io {
                    path: dump.display().to_string(),
                    source,
                })?;
                out.push_str(&format!(
                    "failure at index {} ({}): {}\ninstance written to {}\n",
                    f.index,
                    f.check,
                    f.detail,
                    dump.display()
                ));
                return Ok((out, EXIT_DISCREPANCY as u8));
            }
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
