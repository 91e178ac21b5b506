//! `talex`: twisted Alexander polynomials and related knot invariants from
//! the command line.

mod commands;

use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(
    name = "talex",
    version,
    about = "Twisted Alexander polynomials of knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Coefficients below this (relative) are dropped.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_clean: f64,
    /// Radius for merging numerical roots.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_cluster: f64,
    /// Largest accepted relator residual of a representation.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_residual: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct KnotInput {
    /// Presentation file (`gens:` and `rel:` lines).
    #[arg(long, conflicts_with = "pd")]
    pub pres: Option<PathBuf>,
    /// Planar diagram code file.
    #[arg(long)]
    pub pd: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander polynomial of a knot.
    Alexander {
        #[command(flatten)]
        knot: KnotInput,
    },
    /// Twisted Alexander polynomial for a given, abelian or solved representation.
    Twisted {
        #[command(flatten)]
        knot: KnotInput,
        /// Representation JSON (`{"generators": [[a, b, c, d], ...]}`).
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Trace constraint file; every sample is solved.
        #[arg(long)]
        constraints: Option<PathBuf>,
        /// Eigenvalue of the diagonal abelian representation.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Sweep a constraint curve and report monic characters.
    MonicScan {
        #[command(flatten)]
        knot: KnotInput,
        #[arg(long)]
        constraints: PathBuf,
    },
    /// Compare twisted degrees along a constraint sweep with 4g - 2.
    Genus {
        #[command(flatten)]
        knot: KnotInput,
        #[arg(long)]
        constraints: PathBuf,
        #[arg(long)]
        genus: u32,
    },
    /// Levine-Tristram signatures of a Seifert matrix.
    Signature {
        #[arg(long)]
        seifert: PathBuf,
        /// Angle of omega = exp(i angle), in radians.
        #[arg(long, default_value_t = std::f64::consts::PI, allow_hyphen_values = true)]
        angle: f64,
    },
    /// Alexander polynomial of a satellite knot.
    Satellite {
        /// Pattern Alexander polynomial file.
        #[arg(long)]
        pattern: PathBuf,
        /// Companion Alexander polynomial file.
        #[arg(long)]
        companion: PathBuf,
        #[arg(long)]
        winding: u32,
    },
    /// The character-curve computation for 9_35 with all certifications.
    Pretzel935 {
        /// Certification points per curve.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("TALEX_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "TALEX_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let c = &cli.common;
    let tol = commands::tolerances(c)?;
    match &cli.command {
        Command::Alexander { knot } => commands::alexander(knot),
        Command::Twisted {
            knot,
            rep,
            constraints,
            lambda,
        } => commands::twisted(
            knot,
            rep.as_deref(),
            constraints.as_deref(),
            lambda.as_deref(),
            c,
            &tol,
        ),
        Command::MonicScan { knot, constraints } => {
            commands::monic_scan(knot, constraints, c, &tol)
        }
        Command::Genus {
            knot,
            constraints,
            genus,
        } => commands::genus(knot, constraints, *genus, c, &tol),
        Command::Signature { seifert, angle } => commands::signature(seifert, *angle),
        Command::Satellite {
            pattern,
            companion,
            winding,
        } => commands::satellite(pattern, companion, *winding),
        Command::Pretzel935 { samples } => commands::pretzel935(*samples, c, &tol),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    configure_threads()?;
    let out = dispatch(cli)?;
    let pretty = serde_json::to_string_pretty(&out.json).expect("JSON values serialize");
    if let Some(path) = &cli.common.report {
        std::fs::write(path, format!("{pretty}\n"))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let body = if cli.common.json {
        format!("{pretty}\n")
    } else {
        out.text
    };
    match std::io::stdout().lock().write_all(body.as_bytes()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(CliError::Io(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({"error": e.kind(), "reason": e.to_string()}));
            ExitCode::from(e.exit_code())
        }
    }
}
