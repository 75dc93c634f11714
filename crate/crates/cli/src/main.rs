use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dirichlet_cli::config::{OutputFormat, OutputSettings, SuiteConfig, VerifyCase};
use dirichlet_cli::emit::{convergence_csv, emit_report, records};
use dirichlet_cli::runner::{convergence, run_suite};
use dirichlet_cli::{exit, parse_config, ConfigError};
use dirichlet_core::energy::Form;

#[derive(Parser)]
#[command(name = "dirichlet", version, about = "Verify Dirichlet energy identities across routes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite config or a single corpus case.
    Verify {
        /// Suite configuration (TOML).
        #[arg(long, conflicts_with_all = ["case", "forms", "level", "tolerance"])]
        config: Option<PathBuf>,
        /// Corpus id.
        #[arg(long, required_unless_present = "config")]
        case: Option<String>,
        /// Comma-separated forms; the corpus default otherwise.
        #[arg(long, value_delimiter = ',')]
        forms: Option<Vec<String>>,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Output file; standard output otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_parser = ["json", "csv"])]
        format: Option<String>,
        /// Include wall times (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Tabulate each form against the resolution level.
    Convergence {
        #[arg(long)]
        case: String,
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        forms: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Config(ConfigError),
    Io(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

fn config_error(message: String) -> Failure {
    Failure::Config(ConfigError { line: None, message })
}

fn single_case(
    id: &str,
    forms: Option<Vec<String>>,
    level: Option<usize>,
    tolerance: Option<f64>,
) -> Result<VerifyCase, Failure> {
    let mut case = VerifyCase::from_corpus(id)?;
    if let Some(forms) = forms {
        case.forms = forms
            .iter()
            .map(|f| f.parse::<Form>().map_err(|e| config_error(e.to_string())))
            .collect::<Result<_, _>>()?;
    }
    if let Some(l) = level {
        case.settings.level = l;
    }
    if let Some(t) = tolerance {
        case.tolerance = t;
    }
    case.validate().map_err(|m| config_error(format!("case `{id}`: {m}")))?;
    Ok(case)
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Io(format!("cannot write output: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Verify {
            config,
            case,
            forms,
            level,
            tolerance,
            out,
            format,
            timings,
        } => {
            let mut cfg = match (config, case) {
                (Some(path), _) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
                    parse_config(&text)?
                }
                (None, Some(id)) => SuiteConfig {
                    seed: 0,
                    workers: None,
                    output: OutputSettings::default(),
                    cases: vec![single_case(&id, forms, level, tolerance)?],
                },
                (None, None) => unreachable!("clap requires one of --config and --case"),
            };
            if let Some(f) = format {
                cfg.output.format = f.parse::<OutputFormat>().map_err(config_error)?;
            }
            if out.is_some() {
                cfg.output.path = out;
            }
            cfg.output.timings |= timings;
            let reports = run_suite(&cfg)?;
            let recs = records(&reports, &cfg.cases, cfg.output.timings);
            write_output(cfg.output.path.as_deref(), &emit_report(&recs, cfg.output.format))?;
            for r in &reports {
                if !r.pass {
                    eprintln!("FAIL {}", r.id);
                }
            }
            Ok(reports.iter().all(|r| r.pass))
        }
        Command::Convergence {
            case,
            levels,
            forms,
            out,
        } => {
            let c = single_case(&case, forms, None, None)?;
            let rows = convergence(&c, &levels);
            let ok = rows.iter().all(|r| r.result.is_ok());
            for row in &rows {
                if let Err(e) = &row.result {
                    eprintln!("{} at level {}: {e}", row.form.name(), row.level);
                }
            }
            write_output(
                out.as_deref(),
                &convergence_csv(&c.id, &c.problem.geometry.name(), &rows),
            )?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(true) => exit::PASS,
        Ok(false) => exit::FAIL,
        Err(Failure::Config(e)) => {
            eprintln!("{e}");
            exit::CONFIG
        }
        Err(Failure::Io(m)) => {
            eprintln!("{m}");
            exit::IO
        }
    };
    ExitCode::from(code as u8)
}
