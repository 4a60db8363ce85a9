use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gjms6::cli_report::{render_json, render_text, run_suite, RunConfig, Suite};
use gjms6::ModelKind;

#[derive(Parser)]
#[command(name = "gjms6", version, about = "Verification suites for the sixth-order GJMS operator and its boundary operators")]
struct Cli {
    #[command(subcommand)]
    suite: SuiteCmd,
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Exact conformal covariance of B0..B5 and the Einstein factorization.
    Covariance(Flags),
    /// Symmetry and the two routes to the energy on the flat ball.
    Symmetry(Flags),
    /// Dirichlet-to-Neumann identities and the P5 multiplier table.
    Dtn(Flags),
    /// Sharp Sobolev trace inequalities (n >= 6) and the energy lower bound.
    Trace(Flags),
    /// The logarithmic inequality and T-shift law in dimension five.
    Critical(Flags),
    /// Every suite in turn.
    All(Flags),
}

#[derive(Args, Clone)]
struct Flags {
    /// halfspace, ball, hemisphere or geodesic.
    #[arg(long, default_value = "halfspace")]
    geometry: String,
    /// Boundary dimension (default 7, or 5 for the critical suite).
    #[arg(long)]
    n: Option<i64>,
    /// Largest spherical-harmonic degree.
    #[arg(long, default_value_t = 32)]
    lmax: u32,
    /// Quadrature nodes.
    #[arg(long, default_value_t = 256)]
    grid: usize,
    /// Tolerance for numeric residuals other than inequality gaps.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for gap_vs_epsilon.csv and multiplier_table.csv.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Record runtime_ms per check (makes the report non-reproducible).
    #[arg(long)]
    timings: bool,
}

fn config(cmd: SuiteCmd) -> Result<RunConfig, String> {
    let (suite, f) = match cmd {
        SuiteCmd::Covariance(f) => (Suite::Covariance, f),
        SuiteCmd::Symmetry(f) => (Suite::Symmetry, f),
        SuiteCmd::Dtn(f) => (Suite::Dtn, f),
        SuiteCmd::Trace(f) => (Suite::Trace, f),
        SuiteCmd::Critical(f) => (Suite::Critical, f),
        SuiteCmd::All(f) => (Suite::All, f),
    };
    let mut c = RunConfig::new(suite);
    c.geometry = ModelKind::parse(&f.geometry).ok_or_else(|| format!("unknown geometry '{}'", f.geometry))?;
    if let Some(n) = f.n {
        c.n = n;
    }
    c.lmax = f.lmax;
    c.grid = f.grid;
    c.tol = f.tol;
    c.seed = f.seed;
    c.out = f.out;
    c.csv = f.csv;
    c.timings = f.timings;
    Ok(c)
}

fn main() -> ExitCode {
    // Usage errors exit with 1 like every other failure; --help and --version exit with 0.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let cfg = match config(cli.suite) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run_suite(&cfg) {
        Ok(report) => {
            if cfg.out.is_some() {
                eprint!("{}", render_text(&report));
            } else {
                print!("{}", render_json(&report));
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
