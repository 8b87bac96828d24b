//! Command-line runner: simulations, verification suites, superposition
//! audits, parameter scans and potential profiles, from declarative TOML
//! configs, emitting CSV (or whitespace-separated plot data).
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or config error,
//! 3 numerical failure.

mod config;
mod simulate;
mod superpose;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lhkit::milne_pinney::pdm_profile;
use lhkit::suite::{run_suite, SUITES};
use lhkit::verify::{all_required_pass, fmt_float, reports_to_csv, reports_to_text};

use config::Config;

#[derive(Parser)]
#[command(name = "lhkit", version, about = "Lie-Hamilton systems and their deformations: simulate, verify, superpose, scan")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a family and write a trajectory CSV with invariant columns
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// whitespace-separated output instead of CSV
        #[arg(long)]
        plot_data: bool,
    },
    /// Run a named check battery; exit 0 only if every required check passes
    Verify {
        #[arg(long)]
        suite: String,
        /// directory for report.csv and report.txt
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0xACCE_5501)]
        seed: u64,
    },
    /// Audit a superposition rule against integrated truth
    Superpose {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// sup-norm gate for the exit status
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long)]
        plot_data: bool,
    },
    /// Sweep the deformation parameter and report invariant drift per z
    Scan {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// drift gate for the pass column and the exit status
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Tabulate the position-dependent mass and potentials over an x-grid
    Potential {
        /// comma-separated deformation values, e.g. 0,0.05,0.1,0.2
        #[arg(long, value_delimiter = ',')]
        z: Vec<f64>,
        /// grid as min:max:count
        #[arg(long)]
        x_grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        plot_data: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "{m}"),
            Self::Numerical(m) => write!(f, "{m}"),
            Self::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Numerical(_) => 3,
            Self::Io(_) => 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl From<lhkit::Error> for CliError {
    fn from(e: lhkit::Error) -> Self {
        match e {
            lhkit::Error::InvalidArgument(m) => Self::Usage(m),
            other => Self::Numerical(other.to_string()),
        }
    }
}

pub fn load_config(path: &PathBuf) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("config parse error: {e}")))
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn join_row(fields: &[String], plot_data: bool) -> String {
    fields.join(if plot_data { " " } else { "," })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Simulate {
            config,
            out,
            seed,
            plot_data,
        } => {
            let cfg = load_config(&config)?;
            let _ = seed; // simulations are deterministic without sampling
            let sim = cfg
                .simulate
                .as_ref()
                .ok_or_else(|| CliError::Usage("config has no [simulate] section".into()))?;
            let csv = simulate::run(sim, &cfg.integrator, plot_data)?;
            write_output(&out, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, out, seed } => {
            if suite.is_empty() {
                return Err(CliError::Usage(format!(
                    "empty suite name; available: {}",
                    SUITES.join(", ")
                )));
            }
            let reports = run_suite(&suite, seed).ok_or_else(|| {
                CliError::Usage(format!("unknown suite '{suite}'; available: {}", SUITES.join(", ")))
            })?;
            print!("{}", reports_to_text(&reports));
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                std::fs::write(dir.join("report.csv"), reports_to_csv(&reports))?;
                std::fs::write(dir.join("report.txt"), reports_to_text(&reports))?;
            }
            if all_required_pass(&reports) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Superpose {
            config,
            out,
            tol,
            plot_data,
        } => {
            let cfg = load_config(&config)?;
            let sp = cfg
                .superpose
                .as_ref()
                .ok_or_else(|| CliError::Usage("config has no [superpose] section".into()))?;
            if sp.particulars.is_empty() {
                return Err(CliError::Usage(
                    "superposition audits need at least one particular solution".into(),
                ));
            }
            let (csv, sup_gap) = superpose::run(sp, &cfg.integrator, plot_data)?;
            write_output(&out, &csv)?;
            eprintln!("sup-norm gap: {}", fmt_float(sup_gap));
            if sup_gap <= tol {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Scan { config, out, tol } => {
            let cfg = load_config(&config)?;
            let scan = cfg
                .scan
                .as_ref()
                .ok_or_else(|| CliError::Usage("config has no [scan] section".into()))?;
            let (csv, all_ok) = simulate::scan(scan, tol)?;
            write_output(&out, &csv)?;
            if all_ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Potential {
            z,
            x_grid,
            out,
            plot_data,
        } => {
            let (x0, x1, n) = parse_grid(&x_grid)?;
            let mut rows = vec![join_row(
                &["z", "x", "mass", "u_osc", "u_rw"].map(String::from),
                plot_data,
            )];
            for &zv in &z {
                for k in 0..n {
                    let x = x0 + (x1 - x0) * k as f64 / (n - 1).max(1) as f64;
                    let (m, uo, ur) = pdm_profile(zv, x)?;
                    rows.push(join_row(
                        &[
                            fmt_float(zv),
                            fmt_float(x),
                            fmt_float(m),
                            fmt_float(uo),
                            fmt_float(ur),
                        ],
                        plot_data,
                    ));
                }
            }
            write_output(&out, &(rows.join("\n") + "\n"))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_grid(spec: &str) -> Result<(f64, f64, usize), CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!("grid '{spec}' is not min:max:count")));
    }
    let x0: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid minimum '{}'", parts[0])))?;
    let x1: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid maximum '{}'", parts[1])))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad grid count '{}'", parts[2])))?;
    if n == 0 || !(x1 > x0) {
        return Err(CliError::Usage("grid needs max > min and count >= 1".into()));
    }
    Ok((x0, x1, n))
}
