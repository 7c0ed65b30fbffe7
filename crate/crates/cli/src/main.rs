use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use lobachevsky::{duality, svg, table};
use lobachevsky_core::figures::{self, Scene};
use lobachevsky_core::projection::Projection;
use lobachevsky_core::verify::{self, Config, Suite};
use lobachevsky_core::Curvature;

/// Figures, tables and verification reports for hyperbolic parallels.
#[derive(Debug, Parser)]
#[command(name = "lobachevsky", version)]
struct Cli {
    /// Curvature radius r of the model.
    #[arg(long, global = true, default_value_t = 1.0, value_parser = parse_radius)]
    curvature: f64,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Replace the pass/fail tolerance of every check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output path (stdout when omitted, except for figures).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Disk model figures are drawn in: poincare or klein.
    #[arg(long, global = true, default_value = "poincare", value_parser = parse_projection)]
    projection: Projection,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render a figure construction as SVG.
    Figure {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(figures::NAMES))]
        name: String,
        /// Also write the scene (primitives, provenance, checks) as JSON.
        #[arg(long)]
        scene: Option<PathBuf>,
    },
    /// Tabulate Π(d): closed form, bisection oracle and their difference.
    Table {
        #[arg(long, default_value_t = 0.01)]
        d_min: f64,
        #[arg(long, default_value_t = 5.0)]
        d_max: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Run a verification suite and emit a JSON report.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
    },
    /// Right-triangle identities, imaginary substitution and the flat limit.
    Duality {
        /// First leg, in units of r.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Second leg, in units of r.
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
}

fn parse_radius(s: &str) -> std::result::Result<f64, String> {
    let r: f64 = s.parse().map_err(|e| format!("{e}"))?;
    Curvature::new(r).map(|k| k.r()).map_err(|e| e.to_string())
}

fn parse_projection(s: &str) -> std::result::Result<Projection, String> {
    s.parse().map_err(|_| format!("unknown projection {s:?} (expected poincare or klein)"))
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(bytes).context("writing stdout"),
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn figure(cli: &Cli, k: Curvature, name: &str, scene_out: &Option<PathBuf>) -> Result<bool> {
    let scene: Scene = match figures::figure(name, k) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{name}: {e}");
            return Ok(false);
        }
    };
    let doc = svg::render(&scene, cli.projection)?;
    let path = cli.out.clone().unwrap_or_else(|| PathBuf::from(format!("{name}.svg")));
    fs::write(&path, doc).with_context(|| format!("writing {}", path.display()))?;
    if let Some(p) = scene_out {
        fs::write(p, json(&scene)?).with_context(|| format!("writing {}", p.display()))?;
    }
    for c in &scene.checks {
        eprintln!("check {:<36} residual={:.3e}", c.name, c.max_residual);
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    let k = Curvature::new(cli.curvature)?;
    match &cli.command {
        Command::Figure { name, scene } => figure(cli, k, name, scene),
        Command::Table { d_min, d_max, steps } => {
            let rows = table::rows(*d_min, *d_max, *steps, k)?;
            let mut bytes = Vec::new();
            table::write_csv(&rows, &mut bytes)?;
            emit(&cli.out, &bytes)?;
            let tol = cli.tol.unwrap_or(1e-7);
            Ok(rows.iter().all(|r| r.abs_diff < tol))
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let cfg = Config { seed: cli.seed, curvature: k, tolerance: cli.tol };
            let report = verify::run(suite, &cfg);
            for line in verify::summary_lines(&report) {
                eprintln!("{line}");
            }
            emit(&cli.out, &json(&report)?)?;
            Ok(report.passed())
        }
        Command::Duality { a, b, samples } => {
            let report = duality::run(*a, *b, *samples, k, cli.seed, cli.tol)?;
            emit(&cli.out, &json(&report)?)?;
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Table { d_min, d_max, steps } = cli.command {
        if !(d_min > 0.0 && d_min < d_max) || steps < 2 {
            eprintln!("error: bad range: need 0 < d_min < d_max and steps >= 2");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
