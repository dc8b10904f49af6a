//! `quadwalk`: enumerate quadrant walks, check the kernel-method identities,
//! print series and fit growth rates.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadwalk::asymptotics::{compare_to_paper_with, default_max_n, FitOptions};
use quadwalk::closedforms::{kreweras_parameter, solve_kreweras};
use quadwalk::enumerator::{count_walks, Aggregate};
use quadwalk::kernel::{orbit, r_series, symmetric_functions, y_root_vanishing, Kernel};
use quadwalk::series::TSeries;
use quadwalk::stepsets::{model_spec, Model, Sections, StepSet};
use quadwalk::verify::verify_model;
use thiserror::Error;

use output::{Emit, Format};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] quadwalk::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "quadwalk", version, about = "Exact counting of lattice walks in the quarter plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Named model: square, diagonal, kreweras or knight.
    #[arg(long, value_parser = parse_model, conflicts_with = "steps")]
    model: Option<Model>,
    /// Raw steps, e.g. "(0,1);(1,0);(0,-1);(-1,0)".
    #[arg(long, value_parser = parse_steps)]
    steps: Option<StepSet>,
}

impl Source {
    /// Steps and the default start point.
    fn resolve(&self) -> CliResult<(StepSet, (i32, i32))> {
        match (&self.model, &self.steps) {
            (Some(m), None) => {
                let spec = model_spec(*m);
                Ok((spec.steps, spec.start))
            }
            (None, Some(s)) => Ok((s.clone(), (0, 0))),
            _ => Err(CliError::Usage("give exactly one of --model and --steps".into())),
        }
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write here instead of standard output; relative paths are taken
    /// inside $QUADWALK_OUTPUT_DIR when it is set.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    /// The parameter X = t(2 + X^3) (Kreweras).
    X,
    Q00,
    Qx0,
    /// R(x) = x t Q(x,0).
    R,
    Y0,
    Y1,
    Orbit,
}

#[derive(Subcommand)]
enum Command {
    /// Count walks by dynamic programming.
    Enumerate {
        #[command(flatten)]
        source: Source,
        /// Start point "i,j"; defaults to the model's.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        start: Option<(i32, i32)>,
        #[arg(long)]
        max_len: usize,
        /// free, x_axis, origin or an endpoint i,j; omit for the full table.
        #[arg(long, value_parser = parse_aggregate)]
        aggregate: Option<Aggregate>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run every identity and closed-form check for a model.
    Verify {
        #[arg(value_parser = parse_model)]
        model: Model,
        #[arg(long, default_value_t = 16)]
        order: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print a series through a given order.
    Series {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, ignore_case = true)]
        what: What,
        #[arg(long, default_value_t = 10)]
        order: i32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Evaluate the sufficient holonomy criterion.
    Criterion {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fit mu^n n^alpha to a catalog sequence and compare with the table.
    Asymptotics {
        #[arg(long, value_parser = parse_model)]
        model: Model,
        #[arg(long, value_parser = parse_aggregate, default_value = "free")]
        aggregate: Aggregate,
        /// Defaults to 2000 for closed forms, 200 for enumeration.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = FitOptions::default().stride)]
        stride: usize,
        #[arg(long, default_value_t = FitOptions::default().depth)]
        depth: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: quadwalk::Error| e.to_string())
}

fn parse_steps(s: &str) -> Result<StepSet, String> {
    s.parse().map_err(|e: quadwalk::Error| e.to_string())
}

fn parse_aggregate(s: &str) -> Result<Aggregate, String> {
    s.parse().map_err(|e: quadwalk::Error| e.to_string())
}

fn parse_point(s: &str) -> Result<(i32, i32), String> {
    let bad = || format!("`{s}` is not a point i,j");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult<ExitCode> {
    match command {
        Command::Enumerate { source, start, max_len, aggregate, out } => {
            let (steps, default_start) = source.resolve()?;
            let start = start.unwrap_or(default_start);
            let table = count_walks(&steps, start, max_len)?;
            let report = output::EnumerateReport::new(&table, aggregate)?;
            report.emit(&out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { model, order, out } => {
            let report = verify_model(model, order)?;
            report.emit(&out)?;
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Series { source, what, order, out } => {
            if order < 0 {
                return Err(CliError::Usage("order must be nonnegative".into()));
            }
            series(&source, what, order, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Criterion { source, out } => {
            let (steps, _) = source.resolve()?;
            output::CriterionOutput { steps: steps.clone(), report: steps.analyze() }.emit(&out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Asymptotics { model, aggregate, max_n, stride, depth, out } => {
            let max_n = max_n.unwrap_or_else(|| default_max_n(model, aggregate));
            let opts = FitOptions { stride, depth };
            let report = compare_to_paper_with(model, aggregate, max_n, &opts)?;
            report.emit(&out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn series(source: &Source, what: What, order: i32, out: &OutputArgs) -> CliResult<()> {
    let (steps, start) = source.resolve()?;
    let kreweras = source.model == Some(Model::Kreweras);
    let kernel = Kernel::new(&steps);
    let s: TSeries = match what {
        What::X => {
            if !kreweras {
                return Err(CliError::Usage("X is defined for the kreweras model".into()));
            }
            kreweras_parameter(order)?
        }
        What::Q00 | What::Qx0 if kreweras && order >= 1 => {
            let sol = solve_kreweras(order)?;
            if what == What::Q00 {
                sol.q00
            } else {
                sol.qx0
            }
        }
        What::Q00 | What::Qx0 | What::R => {
            let table = count_walks(&steps, start, order.max(0) as usize)?;
            match what {
                What::Q00 => Sections::of(&table.series()).q00,
                What::Qx0 => Sections::of(&table.series()).qx0,
                _ => r_series(&table).truncate(order),
            }
        }
        What::Y0 => y_root_vanishing(&kernel, order)?,
        What::Y1 => {
            let y0 = y_root_vanishing(&kernel, order)?;
            &symmetric_functions(&kernel, order)?.e1 - &y0
        }
        What::Orbit => {
            let o = orbit(&kernel, order, 12)?;
            return o.emit(out);
        }
    };
    s.emit(out)
}
