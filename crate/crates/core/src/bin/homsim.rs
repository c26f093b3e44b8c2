use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use homsim::scenario::{figures, parse_config, run_scenario, run_validation, OutputFormat, ScenarioError};

#[derive(Parser)]
#[command(name = "homsim", version, about = "Time-resolved two-photon interference datasets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario config over its grid.
    Run {
        /// Config file, or the name of a bundled figure config (see list-figures).
        config: String,
        /// Output file. Defaults to the config's output.path, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Worker threads. Defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run a built-in closed-form vs quadrature matrix.
    Validate {
        /// figures, symmetries or limits
        matrix: String,
        /// Replace every row tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the bundled figure configs.
    ListFigures,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn load_config(arg: &str) -> Result<String, ScenarioError> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(fig) = figures::figure(arg) {
            return Ok(fig.source.to_string());
        }
    }
    fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn run(config: &str, out: Option<PathBuf>, format: Option<Format>, jobs: Option<usize>) -> Result<(), ScenarioError> {
    let config = parse_config(&load_config(config)?)?;
    let dataset = run_scenario(&config, jobs)?;
    let output = config.output.clone().unwrap_or_default();
    let format = match format {
        Some(Format::Csv) => OutputFormat::Csv,
        Some(Format::Json) => OutputFormat::Json,
        None => output.format,
    };
    let text = match format {
        OutputFormat::Csv => dataset.to_csv(),
        OutputFormat::Json => dataset.to_json(),
    };
    match out.or(output.path) {
        Some(path) => fs::write(&path, text).map_err(|source| ScenarioError::Io { path, source }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| ScenarioError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            out,
            format,
            jobs,
        } => run(&config, out, format, jobs),
        Command::Validate { matrix, tol } => match run_validation(&matrix, tol) {
            Ok(report) => {
                print!("{}", report.render());
                return if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
            }
            Err(e) => Err(e),
        },
        Command::ListFigures => {
            for fig in &figures::FIGURES {
                println!("## {}: {}", fig.name, fig.summary);
                println!("{}", fig.source.trim_end());
                println!();
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("homsim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
