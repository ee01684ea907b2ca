//! `latval`: batch front end for the valuation toolkit.
//!
//! Every command prints a JSON report on stdout. With `--out`, the primary
//! artifact goes to that file instead of the report's `result` field.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{ErrorKind, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "latval", version, about = "Exact valuations on lattice polygons")]
struct Cli {
    /// Working order of the truncated series.
    #[arg(long, global = true, env = "LATVAL_ORDER", default_value_t = latval_core::DEFAULT_ORDER)]
    order: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the primary artifact here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solution spaces of the parameter equations.
    Vd {
        #[command(subcommand)]
        action: VdAction,
    },
    /// Check one functional equation on a series.
    CheckLaw {
        #[arg(long)]
        law: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Apply sharp, dagger, diamond or the (s,t) change of variables.
    Transform {
        #[arg(long, value_enum)]
        op: TransformOp,
        #[arg(long)]
        input: PathBuf,
    },
    /// Values of a spec on a point, a unit segment and T.
    Construct(SpecArg),
    /// Z(P) for a spec and a polygon.
    Evaluate {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        polygon: PathBuf,
        /// Use a seeded triangulation instead of the canonical one.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Positive Laplace transform of a polygon from exact moments.
    Laplace {
        #[arg(long)]
        polygon: PathBuf,
    },
    /// Test Z(mP) = m^-delta Z(P)(mx, my).
    Dilative {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        delta: i32,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        m: Vec<i64>,
        /// A polygon file or a directory of them.
        #[arg(long)]
        polygons: PathBuf,
    },
    /// Split a spec into dilative components.
    Decompose {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        delta_max: i32,
        /// `auto`, or a constant to force.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        kappa: String,
    },
    /// Decide the constant of the 0-dilative generator.
    Calibrate,
    /// Run the invariant suite.
    Selftest,
}

#[derive(Args, Debug)]
struct SpecArg {
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Subcommand, Debug)]
enum VdAction {
    /// Canonical basis of the degree-D space.
    Basis {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = Coords::Xy)]
        coords: Coords,
    },
    /// Computed against predicted dimensions for d <= max.
    Dims {
        #[arg(long)]
        max: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coords {
    Xy,
    St,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransformOp {
    Sharp,
    Dagger,
    Diamond,
    ToSt,
    FromSt,
}

fn echo(args: &[String]) -> String {
    args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ")
}

fn dispatch(cli: &Cli) -> Result<report::Outcome, report::Failure> {
    let n = cli.order;
    match &cli.command {
        Command::Vd { action: VdAction::Basis { degree, coords } } => commands::vd_basis(*degree, *coords, n),
        Command::Vd { action: VdAction::Dims { max } } => commands::vd_dims(*max, n),
        Command::CheckLaw { law, input } => commands::check_law(law, input, n),
        Command::Transform { op, input } => commands::transform(*op, input, n),
        Command::Construct(s) => commands::construct(&s.spec, n),
        Command::Evaluate { spec, polygon, seed } => commands::evaluate(&spec.spec, polygon, *seed, n),
        Command::Laplace { polygon } => commands::laplace(polygon, n),
        Command::Dilative { spec, delta, m, polygons } => commands::dilative(&spec.spec, *delta, m, polygons, n),
        Command::Decompose { spec, delta_max, kappa } => commands::decompose(&spec.spec, *delta_max, kappa, n),
        Command::Calibrate => commands::calibrate(n),
        Command::Selftest => commands::selftest(n),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut report = Report {
        command: echo(&args),
        verified_order: 0,
        status: Status::Error,
        first_violation: None,
        artifacts: Vec::new(),
        result: None,
        error: None,
    };
    let mut table = Vec::new();
    let mut kind = ErrorKind::Internal;
    match dispatch(&cli) {
        Ok(out) => {
            report.status = out.status;
            report.verified_order = out.verified_order.min(cli.order);
            report.first_violation = out.first_violation;
            table = out.table;
            match &cli.out {
                Some(path) => match std::fs::write(path, latval_core::wire::to_json(&out.result)) {
                    Ok(()) => report.artifacts.push(path.display().to_string()),
                    Err(e) => {
                        report.status = Status::Error;
                        report.error = Some(format!("cannot write {}: {e}", path.display()));
                    }
                },
                None => report.result = Some(out.result),
            }
        }
        Err(f) => {
            kind = f.kind;
            report.first_violation = f.violation;
            report.error = Some(f.message);
        }
    }
    match cli.format {
        Format::Json => print!("{}", latval_core::wire::to_json(&report)),
        Format::Table => {
            for line in &table {
                println!("{line}");
            }
            println!("status: {}", serde_json::to_value(report.status).unwrap().as_str().unwrap_or("?"));
            println!("verified_order: {}", report.verified_order);
            if let Some(v) = &report.first_violation {
                println!(
                    "first_violation: {} at x^{} y^{}: {} vs {}",
                    v.law.as_deref().unwrap_or("-"),
                    v.exponent[0],
                    v.exponent[1],
                    v.lhs,
                    v.rhs
                );
            }
            for a in &report.artifacts {
                println!("artifact: {a}");
            }
            if let Some(e) = &report.error {
                println!("error: {e}");
            }
        }
    }
    if let Some(e) = &report.error {
        eprintln!("latval: {e}");
    }
    ExitCode::from(report.status.exit_code(kind) as u8)
}
