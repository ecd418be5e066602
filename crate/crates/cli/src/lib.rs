//! Command-line front end for `livsic-core`.
//!
//! Inputs are JSON files in the format described in [`schema`]; every command
//! produces a [`Report`] whose `pass` field is the conjunction of its checks.
//! Exit status is 0 on pass, 1 on fail and 2 on input errors.

pub mod commands;
pub mod compare;
pub mod error;
pub mod report;
pub mod reproduce;
pub mod schema;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use livsic_core::inner::default_grid;
use livsic_core::C64;

pub use error::CliError;
pub use report::{Item, Report};

/// Default report tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "LIVSIC_TOL";

/// `livsic` command line.
#[derive(Debug, Parser)]
#[command(
    name = "livsic",
    version,
    about = "Extension theory of symmetric operators in finite dimensions"
)]
pub struct Cli {
    /// Report tolerance (default 1e-9, or the LIVSIC_TOL environment variable).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Sample points: a JSON list of complex numbers, inline or in a file.
    #[arg(long, global = true, value_name = "JSON|FILE")]
    pub grid: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Worked examples available to `reproduce`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    /// Index-one operator on C² with a three-dimensional extension.
    Fdeg,
    /// The two-dimensional shift ordered below a three-dimensional operator.
    Fdeg2,
}

/// Subcommands; each maps to one library operation.
#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Livsic characteristic function of a partial isometry.
    Livsic {
        /// Partial isometry V (matrix JSON).
        #[arg(long = "V", value_name = "FILE")]
        v: PathBuf,
    },
    /// Clark measure of a unitary extension.
    Clark {
        /// Partial isometry V on C^N.
        #[arg(long = "V", value_name = "FILE")]
        v: PathBuf,
        /// Unitary extension U on C^M, M ≥ N.
        #[arg(long = "U", value_name = "FILE")]
        u: PathBuf,
    },
    /// Circle measure ↔ half-plane Herglotz data.
    TransformMeasure {
        /// A measure, or Herglotz data {"p", "measure"}.
        #[arg(long, value_name = "FILE")]
        measure: PathBuf,
    },
    /// Characteristic function Φ[A;B] of an extension.
    ExtChar {
        /// Partial isometry V on C^N.
        #[arg(long = "V", value_name = "FILE")]
        v: PathBuf,
        /// Unitary extension U on C^M.
        #[arg(long = "U", value_name = "FILE")]
        u: PathBuf,
    },
    /// Divisibility of scalar inner functions (zero containment).
    Divides {
        /// Inner function Θ.
        #[arg(long, value_name = "FILE")]
        theta: PathBuf,
        /// Inner function Φ.
        #[arg(long, value_name = "FILE")]
        phi: PathBuf,
    },
    /// Frostman shift moving Θ(i) to 0.
    Frostman {
        /// Inner function Θ with |Θ(i)| < 1.
        #[arg(long, value_name = "FILE")]
        theta: PathBuf,
    },
    /// Alexandrov–Clark agreement for a unitary parameter.
    AcCheck {
        /// Partial isometry V.
        #[arg(long = "V", value_name = "FILE")]
        v: PathBuf,
        /// Unitary parameter on C^n.
        #[arg(long, value_name = "FILE")]
        uparam: PathBuf,
    },
    /// Model kernels: positivity, closed forms and the Λ identities.
    Kernels {
        /// Partial isometry V.
        #[arg(long = "V", value_name = "FILE")]
        v: PathBuf,
        /// Unitary extension U.
        #[arg(long = "U", value_name = "FILE")]
        u: PathBuf,
    },
    /// Expansion of a vector along the cyclic defect spaces at w.
    Cyclic {
        /// Partial isometry V.
        #[arg(long = "V", value_name = "FILE")]
        v: PathBuf,
        /// Unitary extension U.
        #[arg(long = "U", value_name = "FILE")]
        u: PathBuf,
        /// Vector h ∈ C^N (JSON list of complex numbers).
        #[arg(long, value_name = "FILE")]
        h: PathBuf,
        /// Non-real expansion point, JSON complex such as "[0.5, 1]".
        #[arg(long, value_name = "JSON", allow_hyphen_values = true)]
        w: String,
        /// Expansion order.
        #[arg(long, default_value_t = 10)]
        k: usize,
    },
    /// Extension whose characteristic function is Φ over a model of Θ.
    Synthesize {
        /// Inner function Θ vanishing at i.
        #[arg(long, value_name = "FILE")]
        theta: PathBuf,
        /// Inner function Φ divisible by Θ.
        #[arg(long, value_name = "FILE")]
        phi: PathBuf,
    },
    /// Checks a tabulated witness of the order between two operators.
    OrderCheck {
        /// Witness JSON.
        #[arg(long, value_name = "FILE")]
        witness: PathBuf,
    },
    /// Re-runs a worked example against its exact values.
    Reproduce {
        /// Which example.
        #[arg(value_enum)]
        example: Example,
    },
}

/// A resolved job: command plus tolerance and grid.
#[derive(Debug, Clone)]
pub struct JobConfig {
    /// What to run.
    pub command: Command,
    /// Report tolerance.
    pub tol: f64,
    /// Whether the tolerance was given by flag or environment (explicit
    /// tolerances apply literally to every item).
    pub tol_explicit: bool,
    /// Sample points.
    pub grid: Vec<C64>,
    /// Report destination.
    pub output: Option<PathBuf>,
}

impl JobConfig {
    /// Resolves flags, the environment and defaults.
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let env = std::env::var(TOL_ENV).ok();
        Self::resolve(cli, env.as_deref())
    }

    /// As [`JobConfig::from_cli`] with an explicit environment value.
    pub fn resolve(cli: Cli, env_tol: Option<&str>) -> Result<Self, CliError> {
        let env = match env_tol {
            Some(s) => Some(
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| CliError::Usage(format!("{TOL_ENV}={s}: {e}")))?,
            ),
            None => None,
        };
        let explicit = cli.tol.or(env);
        let tol = explicit.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Usage(format!(
                "tolerance must be positive and finite, got {tol}"
            )));
        }
        let grid = match &cli.grid {
            None => default_grid(),
            Some(g) => parse_grid(g)?,
        };
        Ok(JobConfig {
            command: cli.command,
            tol,
            tol_explicit: explicit.is_some(),
            grid,
            output: cli.output,
        })
    }

    /// Tolerance for an item whose natural accuracy floor is `floor`: the
    /// explicit tolerance if one was given, else `max(tol, floor)`.
    pub fn tol_for(&self, floor: f64) -> f64 {
        if self.tol_explicit {
            self.tol
        } else {
            self.tol.max(floor)
        }
    }

    /// Tolerance used for structural tests on input matrices.
    pub fn structural_tol(&self) -> f64 {
        self.tol.max(DEFAULT_TOL)
    }
}

fn parse_grid(g: &str) -> Result<Vec<C64>, CliError> {
    let trimmed = g.trim_start();
    let points: Vec<schema::JsonComplex> = if trimmed.starts_with('[') {
        schema::parse_json(g, "--grid")?
    } else {
        schema::read_json(std::path::Path::new(g))?
    };
    let points: Vec<C64> = points.into_iter().map(C64::from).collect();
    if let Some(z) = points
        .iter()
        .find(|z| z.im == 0.0 || !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(CliError::Field {
            field: "grid".into(),
            message: format!("point {z} is not a finite non-real number"),
        });
    }
    if points.is_empty() {
        return Err(CliError::Field {
            field: "grid".into(),
            message: "grid is empty".into(),
        });
    }
    Ok(points)
}

/// Runs a job.
pub fn run(cfg: &JobConfig) -> Result<Report, CliError> {
    commands::dispatch(cfg)
}

/// Runs a job and delivers its report; returns the process exit status.
pub fn run_and_emit(cfg: &JobConfig) -> i32 {
    match run(cfg) {
        Ok(report) => {
            let text = report.to_json();
            match &cfg.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return CliError::EXIT_CODE;
                    }
                }
                None => {
                    // A closed pipe (e.g. `| head`) is not an error of the job.
                    let _ = writeln!(std::io::stdout().lock(), "{text}");
                }
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            CliError::EXIT_CODE
        }
    }
}
