mod report;
mod table;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use diskop::norms::{closed_form_norm, NormQuery, Target};
use diskop::operators::OperatorId;
use diskop::Exponent;

use report::{render, render_report, sig10, Format};
use table::TableKind;
use verify::{Settings, Suite};

/// Operator norms of integral transforms on the unit disk.
#[derive(Parser)]
#[command(name = "diskop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Look up a norm in the closed-form catalog.
    Norm {
        /// cauchy, bergman, j0, j0star or cdelta
        #[arg(long)]
        op: OperatorId,
        /// Source exponent, a real ≥ 1 or `inf`.
        #[arg(long)]
        p: Exponent,
        /// same or linf
        #[arg(long, default_value = "same")]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite; exits 1 if any row fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 128)]
        radial_nodes: usize,
        #[arg(long, default_value_t = 256)]
        angular_nodes: usize,
        /// Use annulus exclusion with this radius instead of Möbius recentering.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Override every row's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a data table.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        /// Comma-separated exponents, e.g. `1,2,inf`.
        #[arg(long)]
        grid: Option<String>,
        /// Operator for `lp_linf_curves`.
        #[arg(long, default_value = "cauchy")]
        op: OperatorId,
        /// Radii per exponent for `profiles`, evenly spaced on [0, 1].
        #[arg(long, default_value_t = 11)]
        rho_points: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn open(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Norm { op, p, target, common } => {
            let query = NormQuery::new(op, p, target)?;
            let r = closed_form_norm(&query).with_context(|| format!("no catalog entry for {op} L^{p} -> {target}"))?;
            let mut out = open(&common.out)?;
            let header = ["operator", "p", "target", "value", "kind", "provenance"];
            let row = vec![op.to_string(), p.to_string(), target.to_string(), sig10(r.value), r.kind.to_string(), r.provenance];
            render(&mut out, common.format, &header, &[row])?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, seed, radial_nodes, angular_nodes, epsilon, tol, common } => {
            let settings = Settings { seed, radial_nodes, angular_nodes, epsilon, tol };
            // reject bad node counts up front rather than failing every row
            diskop::quadrature::DiskRule::new(radial_nodes, angular_nodes, diskop::quadrature::Singularity::None)?;
            let rows = verify::run(suite, &settings);
            let mut out = open(&common.out)?;
            render_report(&mut out, common.format, &rows)?;
            out.flush()?;
            let failed = rows.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                eprintln!("{failed} of {} rows failed", rows.len());
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { kind, grid, op, rho_points, common } => {
            let grid = table::parse_grid(grid.as_deref().unwrap_or(table::default_grid(kind)))?;
            let t = table::build(kind, &grid, op, rho_points)?;
            let mut out = open(&common.out)?;
            render(&mut out, common.format, &t.header, &t.rows)?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
