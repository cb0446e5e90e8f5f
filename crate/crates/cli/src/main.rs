//! `opcalc`: solve constant-coefficient ODEs, transform expressions, and
//! run the fractional and discrete-transform demonstrations.
//!
//! Exit status: 0 success, 1 tolerance breach or failed check, 2 usage, parse
//! or solver error.

mod commands;
mod problem;
mod solve;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use commands::{DemoFunction, Outcome};
use solve::SolveOptions;

/// Environment variable overriding the built-in default tolerances.
const TOL_ENV: &str = "OPCALC_TOL";

const SOLVE_TOL: f64 = 1e-6;
const TABLE_TOL: f64 = 2e-3;
const DEMO_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(name = "opcalc", version, about = "Operational calculus on causal functions")]
struct Cli {
    /// Tolerance for the oracle comparison of the command
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the equation in a problem file and compare with a time stepper
    Solve {
        file: PathBuf,
        /// Also report the traditional initial-value formula and where it conflicts
        #[arg(long)]
        compare_tlt: bool,
        /// Re-parse the printed closed forms and verify the initial values
        #[arg(long)]
        check: bool,
        /// Write samples as CSV (overrides the file's [output] csv)
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Forward or inverse Laplace transform of an expression
    Transform {
        #[command(subcommand)]
        direction: Direction,
    },
    #[command(hide = true)]
    Forward(ExprArgs),
    #[command(hide = true)]
    Invert(ExprArgs),
    /// Generalized derivative of real order alpha (negative: integral)
    #[command(allow_negative_numbers = true)]
    Fractional {
        #[arg(required_unless_present = "table")]
        alpha: Option<f64>,
        #[arg(required_unless_present = "table")]
        expr: Option<String>,
        /// Numeric check of the half-derivative table
        #[arg(long, conflicts_with_all = ["alpha", "expr"])]
        table: bool,
    },
    /// Fourier coefficients of a causal function over the full period and over [0, T/2]
    DiscreteDemo {
        #[arg(long, value_enum, default_value = "exp")]
        causal: DemoFunction,
        #[arg(long, default_value_t = 8.0)]
        period: f64,
        #[arg(long, default_value_t = 32)]
        harmonics: usize,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Direction {
    /// t-domain expression to its image, e.g. `exp(-2 t)*sin(3 t)`
    Forward(ExprArgs),
    /// image to the causal time function, e.g. `1/(s*(s+3))`
    Invert(ExprArgs),
}

#[derive(clap::Args)]
struct ExprArgs {
    expr: String,
    /// Run the concatenation check L{L⁻¹{L{f}}} = L{f}
    #[arg(long)]
    check: bool,
}

/// Flag, then problem file, then environment, then built-in default.
fn tolerance(flag: Option<f64>, file: Option<f64>, default: f64) -> Result<f64> {
    let env = match std::env::var(TOL_ENV) {
        Ok(v) => Some(v.trim().parse::<f64>().map_err(|_| anyhow!("{TOL_ENV}: `{v}` is not a number"))?),
        Err(_) => None,
    };
    let tol = flag.or(file).or(env).unwrap_or(default);
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(anyhow!("tolerance must be positive, got {tol}"))
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn expr(dir: Direction) -> Result<Outcome> {
    match dir {
        Direction::Forward(a) => commands::forward(&a.expr, a.check),
        Direction::Invert(a) => commands::invert(&a.expr, a.check),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let out = std::io::stdout();
    let mut out = out.lock();
    match cli.command {
        Command::Solve { file, compare_tlt, check, csv } => {
            let src = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let parsed = problem::parse(&src).with_context(|| file.display().to_string())?;
            let tol = tolerance(cli.tol, parsed.tol, SOLVE_TOL)?;
            let result = solve::solve(&parsed, &SolveOptions { compare_tlt, check, tol })?;
            out.write_all(result.report.as_bytes())?;
            if let Some(path) = csv.or(parsed.csv) {
                write_file(&path, &result.csv)?;
            }
            Ok(result.passed)
        }
        Command::Transform { direction } => finish(&mut out, expr(direction)?),
        Command::Forward(a) => finish(&mut out, expr(Direction::Forward(a))?),
        Command::Invert(a) => finish(&mut out, expr(Direction::Invert(a))?),
        Command::Fractional { table: true, .. } => {
            finish(&mut out, commands::table(tolerance(cli.tol, None, TABLE_TOL)?)?)
        }
        Command::Fractional { alpha: Some(alpha), expr: Some(e), .. } => {
            finish(&mut out, commands::fractional(alpha, &e)?)
        }
        Command::Fractional { .. } => unreachable!("clap enforces alpha and expr without --table"),
        Command::DiscreteDemo { causal, period, harmonics, csv } => {
            let tol = tolerance(cli.tol, None, DEMO_TOL)?;
            let (outcome, table) = commands::discrete_demo(causal, period, harmonics, tol)?;
            match csv {
                Some(path) => {
                    write_file(&path, &table)?;
                    out.write_all(outcome.text.as_bytes())?;
                }
                None => {
                    out.write_all(table.as_bytes())?;
                    eprint!("{}", outcome.text);
                }
            }
            Ok(outcome.passed)
        }
    }
}

fn finish(out: &mut impl Write, outcome: Outcome) -> Result<bool> {
    out.write_all(outcome.text.as_bytes())?;
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
