use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use matstab_cli::request::{parse_class, parse_op, parse_region, DEFAULT_SAMPLES};
use matstab_cli::{emit, parse_matrix, run, AnalysisRequest, Format, Modes};
use matstab_core::dstability::{BinOp, Convention, GClass};
use matstab_core::lyapunov::DEFAULT_BUDGET;
use matstab_core::Region;

/// Stability analysis of a square matrix under a class of perturbations.
///
/// Exit status: 0 when nothing was refuted, 2 when the summary is refuted,
/// 1 on usage or input errors.
#[derive(Parser, Debug)]
#[command(name = "matstab", version)]
struct Cli {
    /// Matrix file (JSON or CSV); `-` or absent reads stdin.
    input: Option<PathBuf>,

    /// Inline matrix text instead of a file.
    #[arg(long, conflicts_with = "input", allow_hyphen_values = true)]
    matrix: Option<String>,

    /// lhp, rhp, unit-disk, disk:C,R, sector:THETA, ... or JSON.
    #[arg(long, value_parser = parse_region)]
    region: Option<Region>,

    /// positive-diagonal, negative-diagonal, diagonal-norm-lt1, vertex-diagonal, spd, rank:K, or JSON.
    #[arg(long, value_parser = parse_class, default_value = "positive-diagonal")]
    class: GClass,

    /// multiply, add, hadamard, block-hadamard:K.
    #[arg(long, value_parser = parse_op, default_value = "multiply")]
    op: BinOp,

    /// Comma-separated checks: classify, necessary, structural, sufficient,
    /// certify, falsify, simulate, total-scan; or all, default, none.
    #[arg(long, default_value = "default")]
    mode: Modes,

    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,

    /// Iteration budget of each certificate search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    #[arg(long, env = "MATSTAB_SEED", default_value_t = 0)]
    seed: u64,

    /// hurwitz or positive.
    #[arg(long, value_parser = parse_convention, default_value = "hurwitz")]
    convention: Convention,

    /// json or text.
    #[arg(long, default_value = "text")]
    format: Format,

    /// Simulation horizon; derived from the spectrum when absent.
    #[arg(long)]
    simulate_horizon: Option<f64>,

    /// Record wall time per check (makes output non-reproducible).
    #[arg(long)]
    timings: bool,
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    match s {
        "hurwitz" => Ok(Convention::Hurwitz),
        "positive" => Ok(Convention::Positive),
        _ => Err(format!("unknown convention {s:?}; expected hurwitz or positive")),
    }
}

fn read_source(cli: &Cli) -> std::io::Result<String> {
    if let Some(m) = &cli.matrix {
        return Ok(m.clone());
    }
    match &cli.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let text = match read_source(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read matrix: {e}");
            return ExitCode::from(1);
        }
    };
    let matrix = match parse_matrix(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let req = AnalysisRequest {
        matrix,
        region: cli.region,
        class: cli.class,
        op: cli.op,
        modes: cli.mode,
        samples: cli.samples,
        budget: cli.budget,
        seed: cli.seed,
        convention: cli.convention,
        simulate_horizon: cli.simulate_horizon,
        timings: cli.timings,
    };
    if let Err(e) = req.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let report = run(&req);
    let out = emit(&report, cli.format);
    if std::io::stdout().write_all(&out).is_err() {
        return ExitCode::from(1);
    }
    if report.summary.is_refuted() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
