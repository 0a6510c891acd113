//! `phasekit` command-line runs. Exit code 0 when the run completed, 2 on any
//! input error. Physics verdicts are part of the output, never the exit code.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{LambdaGrid, StateSpec};

#[derive(Debug, Parser)]
#[command(name = "phasekit", version, about = "Phase-space and covariance-matrix tests of quantum states")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format, `csv` unless given. `tmsv` always writes JSON.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Grid points per axis (even, at least 16).
    #[arg(long)]
    grid: Option<usize>,
    /// Half-width of the square phase-space grid.
    #[arg(long)]
    extent: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vacuum overlap of the scaled first excited state over a λ range.
    Fidelity {
        #[arg(long, allow_negative_numbers = true)]
        lambda_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda_max: f64,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Second moments and the uncertainty test for a scaled number state.
    Uncertainty {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Truncated Fock-basis spectrum of a scaled number state.
    Spectrum {
        #[command(flatten)]
        state: StateArgs,
        /// Fock truncation dimension.
        #[arg(long, default_value_t = phasekit::fock::DEFAULT_DIM)]
        dim: usize,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Partial-scaling entanglement scan of a covariance file.
    Separability {
        #[arg(long)]
        cov: PathBuf,
        /// Comma-separated 1-based mode indices to scale, e.g. `2` or `1,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        modes: Vec<usize>,
        /// `default`, a comma list like `-1,-0.5,0.5`, or `start:stop:count`.
        #[arg(long, default_value = "default", allow_hyphen_values = true)]
        lambda_grid: LambdaGrid,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Covariance file for the two-mode squeezed vacuum.
    Tmsv {
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, value_enum, default_value_t = Layout::QBlockPBlock)]
        ordering: Layout,
    },
    /// Wigner → density → Wigner round-trip error.
    Roundtrip {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Args)]
struct StateArgs {
    /// Number state, `fock0`, `fock1`, ...
    #[arg(long)]
    state: StateSpec,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Layout {
    QBlockPBlock,
    Interleaved,
}

fn run(cli: Cli) -> Result<String, commands::CliError> {
    let Cli { command, format, out: _ } = cli;
    let table = match command {
        Command::Fidelity { lambda_min, lambda_max, steps, grid } => {
            commands::fidelity(lambda_min, lambda_max, steps, grid.grid, grid.extent)?
        }
        Command::Uncertainty { state, grid } => {
            commands::uncertainty(state.state, state.lambda, state.kappa, grid.grid, grid.extent)?
        }
        Command::Spectrum { state, dim, grid } => {
            commands::spectrum(state.state, state.lambda, state.kappa, dim, grid.grid, grid.extent)?
        }
        Command::Separability { cov, modes, lambda_grid, tol } => {
            let text = std::fs::read_to_string(&cov).map_err(|e| commands::CliError::Io { path: cov.clone(), source: e })?;
            commands::separability(&text, &modes, &lambda_grid, tol)?
        }
        Command::Tmsv { r, ordering } => {
            if format == Some(Format::Csv) {
                return Err(commands::CliError::Usage("tmsv writes covariance JSON; --format csv is not available".into()));
            }
            let layout = match ordering {
                Layout::QBlockPBlock => phasekit::gaussian::MatrixLayout::QBlockPBlock,
                Layout::Interleaved => phasekit::gaussian::MatrixLayout::Interleaved,
            };
            return commands::tmsv(r, layout);
        }
        Command::Roundtrip { state, grid } => {
            commands::roundtrip(state.state, state.lambda, state.kappa, grid.grid, grid.extent)?
        }
    };
    Ok(match format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = run(cli).and_then(|text| match &out {
        Some(path) => std::fs::write(path, text).map_err(|e| commands::CliError::Io { path: path.clone(), source: e }),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
