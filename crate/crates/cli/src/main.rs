//! `delpezzo`: lattice computations for del Pezzo threefolds from the shell.

mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use delpezzo_core::catalog::verify_all;
use delpezzo_core::lattice::{p1xp1_lattice, standard_dp_lattice};
use delpezzo_core::{BaseKind, Error, ThreefoldModel};

#[derive(Parser)]
#[command(name = "delpezzo", version, about = "Root systems, planes and node counts of del Pezzo threefolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots of a del Pezzo surface lattice and their Dynkin type.
    Roots {
        /// Number of blown-up points (0..=8).
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=8), required_unless_present = "p1xp1")]
        points: Option<u8>,
        /// Use the quadric surface lattice instead.
        #[arg(long, conflicts_with = "points")]
        p1xp1: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Line classes of the plane blown up in `points` points.
    Lines {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=8))]
        points: u8,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Invariants of a model described by a JSON file (`-` for stdin).
    Model {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Recompute the classification table and compare with the printed values.
    Table {
        #[arg(long, required = true)]
        verify: bool,
        /// Row range such as `3..7`, `3..=7` or `12`.
        #[arg(long, value_parser = parse_rows)]
        rows: Option<RangeInclusive<usize>>,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Pencil classes of a primitive rank-3 model and their conjugacy graph.
    Pencils {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=8))]
        degree: i64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// The pairs of extremal contractions of rank-2 models.
    Rank2 {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Plane configuration of the tetrahedral quartic.
    Planes {
        #[arg(long, required = true)]
        tetrahedral: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

/// Wire form of a model.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSpec {
    base: String,
    base_degree: u8,
    blowups: usize,
    #[serde(default)]
    rho: Option<usize>,
}

const ROW_COUNT: usize = 40;

fn parse_rows(text: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("'{t}' is not a row number"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(text)?;
            (n, n)
        }
    };
    if lo == 0 || hi > ROW_COUNT || lo > hi {
        return Err(format!("row range must lie within 1..={ROW_COUNT} and be nonempty"));
    }
    Ok(lo..=hi)
}

/// Outcome of a subcommand: its output and whether a check failed.
struct Outcome {
    output: String,
    mismatch: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, mismatch: false }
    }
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) => Failure::Input(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn read_spec(path: &PathBuf) -> Result<ThreefoldModel, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    let spec: ModelSpec =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let base = BaseKind::new(&spec.base, spec.base_degree)
        .map_err(|e| Failure::Input(format!("{}: field base/base_degree: {e}", path.display())))?;
    ThreefoldModel::new(base, spec.blowups, spec.rho)
        .map_err(|e| Failure::Input(format!("{}: field blowups/rho: {e}", path.display())))
}

fn run(command: Command) -> Result<Outcome, Failure> {
    Ok(match command {
        Command::Roots { points, p1xp1, format } => {
            let lattice = match points {
                Some(n) if !p1xp1 => standard_dp_lattice(n as usize)?,
                _ => p1xp1_lattice(),
            };
            let name = points.filter(|_| !p1xp1).map_or("P1xP1".to_string(), |n| format!("dp({n})"));
            Outcome::ok(render::roots(&name, &lattice, matches!(format, Format::Json))?)
        }
        Command::Lines { points, format } => {
            let lattice = standard_dp_lattice(points as usize)?;
            Outcome::ok(render::lines(&format!("dp({points})"), &lattice, matches!(format, Format::Json))?)
        }
        Command::Model { spec, format } => {
            let model = read_spec(&spec)?;
            let (output, consistent) = render::model(&model, matches!(format, Format::Json))?;
            Outcome { output, mismatch: !consistent }
        }
        Command::Table { verify: _, rows, format } => {
            let summary = verify_all(rows);
            let output = match format {
                TableFormat::Text => render::table_text(&summary),
                TableFormat::Json => render::table_json(&summary),
                TableFormat::Csv => render::table_csv(&summary),
            };
            Outcome { output, mismatch: !summary.is_success() }
        }
        Command::Pencils { degree, format } => match format {
            GraphFormat::Dot => Outcome::ok(render::pencils_dot(degree)?),
            GraphFormat::Json => Outcome::ok(render::pencils_json(degree)?),
        },
        Command::Rank2 { format } => Outcome::ok(render::rank2(matches!(format, Format::Json))),
        Command::Planes { tetrahedral: _, format } => Outcome::ok(render::planes(matches!(format, Format::Json))),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let mut text = e.render().to_string();
            if !text.contains("Usage:") {
                text.push_str(&format!("\n{}\n", Cli::command().render_usage()));
            }
            eprint!("{text}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            let mut out = io::stdout().lock();
            if out.write_all(outcome.output.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(outcome.mismatch))
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
