use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use kbh::checks::{self, Config};
use kbh::json::mma_to_value;
use kbh::tangle::{alexander, zeta_of_tangle, Tangle};

/// Tree-and-wheel invariants and Alexander polynomials of tangles.
#[derive(Parser)]
#[command(name = "kbh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute ζ of a tangle, truncated at the given degree.
    Zeta {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Print terms up to this degree only (defaults to --degree).
        #[arg(long)]
        show: Option<usize>,
        /// Print only the wheels part ω.
        #[arg(long)]
        wheels_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compute the normalized Alexander polynomial of a long knot.
    Alexander {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run every identity suite and report each one.
    Selftest {
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random cases per identity.
        #[arg(long, default_value_t = 10)]
        cases: usize,
    },
}

/// A failure with the exit code it maps to.
enum Failure {
    Input(String),
    Invariant(String),
}

fn read_tangle(path: &Path) -> Result<Tangle, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Tangle::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn zeta(file: &Path, degree: usize, show: Option<usize>, wheels_only: bool, as_json: bool) -> Result<(), Failure> {
    if degree == 0 {
        return Err(Failure::Input("--degree must be at least 1".into()));
    }
    let show = show.unwrap_or(degree);
    if show > degree {
        return Err(Failure::Input(format!("--show {show} exceeds --degree {degree}")));
    }
    let t = read_tangle(file)?;
    let z = zeta_of_tangle(&t, degree).map_err(|e| Failure::Invariant(e.to_string()))?.truncated(show);
    match (wheels_only, as_json) {
        (false, false) => println!("{z}"),
        (true, false) => println!("{}", z.omega()),
        (false, true) => println!("{}", serde_json::to_string_pretty(&mma_to_value(&z)).expect("plain data")),
        (true, true) => {
            let v = mma_to_value(&z);
            println!("{}", serde_json::to_string_pretty(&json!({"degree": v["degree"], "omega": v["omega"]})).expect("plain data"));
        }
    }
    Ok(())
}

fn alexander_cmd(file: &Path, as_json: bool) -> Result<(), Failure> {
    let t = read_tangle(file)?;
    let a = alexander(&t).map_err(|e| match e {
        kbh::error::TangleError::NotAKnot(_) => Failure::Input(e.to_string()),
        _ => Failure::Invariant(e.to_string()),
    })?;
    if as_json {
        let coeffs: serde_json::Map<String, serde_json::Value> =
            a.coeffs().iter().map(|(k, c)| (k.to_string(), json!(c.to_string()))).collect();
        println!("{}", serde_json::to_string_pretty(&json!({"alexander": a.to_string(), "coefficients": coeffs})).expect("plain data"));
    } else {
        println!("{a}");
    }
    Ok(())
}

fn selftest(degree: usize, seed: u64, cases: usize) -> Result<(), Failure> {
    if degree < 2 {
        return Err(Failure::Input("--degree must be at least 2".into()));
    }
    let outcomes = checks::all(Config { degree, seed, cases });
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    println!("{} of {} identities passed (degree {degree}, seed {seed})", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        return Err(Failure::Invariant(format!("{failed} identities failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Zeta { file, degree, show, wheels_only, json } => zeta(&file, degree, show, wheels_only, json),
        Command::Alexander { file, json } => alexander_cmd(&file, json),
        Command::Selftest { degree, seed, cases } => selftest(degree, seed, cases),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
