mod config;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{float_list, int_list, parse_algebra, Config};

/// Verification harness for the Duflo / Chern-Weil / distributional index toolkit.
#[derive(Parser, Debug)]
#[command(name = "duflo-cw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Harness configuration (key = value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Global series truncation order.
    #[arg(long, global = true)]
    order: Option<u32>,
    /// Largest 2j kept in the Peter-Weyl sum.
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Twist weights, e.g. `0` or `-2,-1,0` or `-2..2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    twist: Option<String>,
    /// Heat times, e.g. `0.4,0.2,0.1,0.05`.
    #[arg(long = "t-grid", global = true)]
    t_grid: Option<String>,
    /// Heat-trace tolerance on the extrapolated index
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Extra algebra to validate (`dim N`, then `i j k value` lines).
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Structure constants, representations and Clifford/spinor products
    VerifyAlgebra,
    /// Curvature, Weil homomorphism identities and corrupted fixtures
    VerifyWeil,
    /// Gaussian moment identity for random test functions
    VerifyGauss,
    /// Duflo round trips and the Casimir pattern
    VerifyDuflo,
    /// Print the character table of the index and its fitted pattern.
    Index,
    /// Both sides of the index formula for every twist and test function
    VerifyTheorem,
    /// Heat-trace extrapolation of the index per weight
    Heat,
    /// Every suite above
    All,
}

fn settings(cli: &Cli) -> Result<Config, String> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p).map_err(|e| e.to_string())?,
        None => Config::default(),
    };
    if let Some(o) = cli.order {
        cfg.order = o;
    }
    if let Some(c) = cli.cutoff {
        cfg.cutoff = c;
    }
    if let Some(t) = &cli.twist {
        cfg.twists = int_list(t)?;
        cfg.heat_twists = cfg.twists.clone();
    }
    if let Some(t) = &cli.t_grid {
        cfg.t_grid = float_list(t)?;
    }
    if let Some(t) = cli.tolerance {
        cfg.tolerance = t;
    }
    cfg.check().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match settings(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("duflo-cw: {e}");
            return ExitCode::from(2);
        }
    };
    let extra = match &cli.algebra {
        Some(p) => {
            let name = p.file_stem().map_or("user".into(), |s| s.to_string_lossy().into_owned());
            match std::fs::read_to_string(p).map_err(|e| e.to_string()).and_then(|t| parse_algebra(&name, &t).map_err(|e| e.to_string())) {
                Ok(g) => Some(g),
                Err(e) => {
                    eprintln!("duflo-cw: algebra {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
        }
        None => None,
    };
    let report = match cli.command {
        Command::VerifyAlgebra => suites::verify_algebra(&cfg, extra.as_ref()),
        Command::VerifyWeil => suites::verify_weil(&cfg),
        Command::VerifyGauss => suites::verify_gauss(&cfg),
        Command::VerifyDuflo => suites::verify_duflo(&cfg),
        Command::Index => suites::index(&cfg),
        Command::VerifyTheorem => suites::verify_theorem(&cfg),
        Command::Heat => suites::heat(&cfg),
        Command::All => suites::all(&cfg, extra.as_ref()),
    };
    print!("{}", report.render());
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("duflo-cw: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
