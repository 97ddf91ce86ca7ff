use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cpn_cli::config::ScenarioConfig;
use cpn_cli::{commands, CliError, GlobalOptions};

#[derive(Parser, Debug)]
#[command(
    name = "cpn",
    version,
    about = "Quantum states as points of complex projective space"
)]
struct Cli {
    /// Emit JSON instead of CSV or plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the reduced Planck constant of the scenario.
    #[arg(long, global = true, allow_negative_numbers = true)]
    hbar: Option<f64>,
    /// Pass threshold for picture-check maxima.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Test hook: scale the Hamiltonian driving the Schrödinger side by (1 + PERTURB).
    #[arg(long, global = true, allow_negative_numbers = true)]
    perturb: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve a scenario and write its trajectory table.
    Evolve {
        config: PathBuf,
        /// Write to this path instead of the configured output_path.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Tabulate Bloch components t,x,y,z (dimension 2).
        #[arg(long)]
        bloch: bool,
    },
    /// Compare Schrödinger and Heisenberg expectations over the time grid.
    PictureCheck {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the Bloch vector of a two-level state.
    Bloch {
        #[arg(allow_hyphen_values = true, num_args = 1..)]
        amplitudes: Vec<String>,
    },
    /// Print affine chart coordinates and their transition to another chart.
    Chart {
        /// Chart index (nonzero amplitude) to express the state in.
        #[arg(long, short = 'k')]
        from: usize,
        /// Chart index to transition to.
        #[arg(long, short = 'j')]
        to: usize,
        #[arg(allow_hyphen_values = true, num_args = 1..)]
        amplitudes: Vec<String>,
    },
    /// Expand a Hermitian matrix in the generalized Gell-Mann basis.
    Decompose {
        /// JSON rows of [re, im] pairs, or @path to a file holding them.
        matrix: String,
    },
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let opts = GlobalOptions {
        json: cli.json,
        hbar: cli.hbar,
        tol: cli.tol,
        perturb: cli.perturb,
    };
    match cli.command {
        Command::Evolve {
            config,
            output,
            bloch,
        } => {
            let cfg = ScenarioConfig::load(&config)?;
            let text = commands::evolve(&cfg, &opts, bloch)?;
            emit(&text, output.as_ref().or(cfg.output_path.as_ref()))
        }
        Command::PictureCheck { config, output } => {
            let cfg = ScenarioConfig::load(&config)?;
            match commands::picture_check(&cfg, &opts) {
                Ok(text) => emit(&text, output.as_ref()),
                Err(CliError::CheckFailed(text)) => {
                    emit(&text, output.as_ref())?;
                    Err(CliError::CheckFailed(
                        "picture-check: deviation above tolerance".into(),
                    ))
                }
                Err(e) => Err(e),
            }
        }
        Command::Bloch { amplitudes } => emit(&commands::bloch(&amplitudes, &opts)?, None),
        Command::Chart {
            from,
            to,
            amplitudes,
        } => emit(&commands::chart(&amplitudes, from, to, &opts)?, None),
        Command::Decompose { matrix } => {
            let m = commands::parse_matrix_arg(&matrix)?;
            emit(&commands::decompose(&m, &opts)?, None)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cpn: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
