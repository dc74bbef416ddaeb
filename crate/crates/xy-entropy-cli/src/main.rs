//! `xy-entropy`: limiting block entropy of the XY spin chain.
//!
//! Subcommands: `entropy` (single point), `scan` (phase-diagram grid),
//! `figure1` (entropy-vs-field curve plus plot script), `verify` (the
//! pinned verification suite). Exit codes: 0 success, 1 verification
//! failure, 2 domain or usage error.

use std::f64::consts::LN_2;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use xy_entropy_cli::acceptance;
use xy_entropy_cli::figure1::{figure1_csv, figure1_rows, figure1_script};
use xy_entropy_cli::output::{fmt_float, scan_to_csv, scan_to_json};
use xy_entropy_cli::scan::{run_scan, GammaSpec, MethodSpec, ScanSpec};

use xy_entropy::{
    bdg_finite_chain_entropy, classify, elliptic_bundle, entropy_asymptotic_near_h2,
    entropy_closed_form, entropy_series_with, exact_diag_entropy, modulus_k,
    toeplitz_block_entropy, ClassifyTolerances, FiniteChain, XYPoint, XyError,
};

#[derive(Parser)]
#[command(
    name = "xy-entropy",
    version,
    about = "Limiting block entanglement entropy of the XY spin chain",
    after_help = "Entropies are reported in nats unless --bits is given."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the limiting entropy at one (gamma, h) point
    Entropy(EntropyArgs),
    /// Evaluate a (gamma, h) grid and emit a CSV or JSON table
    Scan(ScanArgs),
    /// Emit the entropy-vs-field curve at fixed anisotropy plus a gnuplot script
    Figure1(Figure1Args),
    /// Run the verification suite and report one line per criterion
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Spectral series with tail bound
    Series,
    /// Summed closed form
    Closed,
    /// Near-critical asymptote (|h - 2| within the guard band)
    Asymptotic,
    /// Toeplitz block of the infinite chain (size from --toeplitz-l)
    Toeplitz,
    /// Half-chain block of a finite open chain, quadratic-form solution
    Bdg,
    /// Half-chain block of a finite open chain, exact diagonalization
    Ed,
}

#[derive(Args)]
struct EntropyArgs {
    /// Anisotropy, 0 < gamma <= 1
    #[arg(long)]
    gamma: f64,
    /// Magnetic field, h >= 0
    #[arg(long)]
    field: f64,
    /// Method(s) to evaluate; repeatable. Default: series and closed
    #[arg(long = "method", value_enum)]
    methods: Vec<MethodArg>,
    /// Block size(s) for the toeplitz method; repeatable
    #[arg(long = "toeplitz-l", default_values_t = [20usize])]
    toeplitz_l: Vec<usize>,
    /// Chain length for the bdg/ed methods
    #[arg(long = "chain-n", default_value_t = 8)]
    chain_n: usize,
    /// Series truncation tolerance
    #[arg(long = "tol", default_value_t = 1e-12)]
    tol: f64,
    /// Band around h = 2 (and below gamma) treated as near-critical
    #[arg(long = "guard-band", default_value_t = 0.05)]
    guard_band: f64,
    /// Report entropies in bits instead of nats
    #[arg(long)]
    bits: bool,
}

#[derive(Args)]
struct ScanArgs {
    /// Fixed anisotropy (alternative to --gamma-min/--gamma-max)
    #[arg(long, conflicts_with_all = ["gamma_min", "gamma_max", "gamma_steps"])]
    gamma: Option<f64>,
    #[arg(long = "gamma-min", requires = "gamma_max")]
    gamma_min: Option<f64>,
    #[arg(long = "gamma-max", requires = "gamma_min")]
    gamma_max: Option<f64>,
    #[arg(long = "gamma-steps", default_value_t = 10)]
    gamma_steps: usize,
    #[arg(long = "h-min", default_value_t = 0.0)]
    h_min: f64,
    #[arg(long = "h-max", default_value_t = 3.0)]
    h_max: f64,
    /// Number of field samples
    #[arg(long, default_value_t = 61)]
    steps: usize,
    /// Method(s) to evaluate; repeatable. Default: series and closed
    #[arg(long = "method", value_enum)]
    methods: Vec<MethodArg>,
    /// Block size(s) for the toeplitz method; repeatable
    #[arg(long = "toeplitz-l", default_values_t = [20usize])]
    toeplitz_l: Vec<usize>,
    /// Chain length for the bdg/ed methods
    #[arg(long = "chain-n", default_value_t = 8)]
    chain_n: usize,
    #[arg(long = "guard-band", default_value_t = 0.05)]
    guard_band: f64,
    #[arg(long = "tol", default_value_t = 1e-12)]
    tol: f64,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    bits: bool,
    /// Worker threads for the grid evaluation
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct Figure1Args {
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    #[arg(long, default_value_t = 600)]
    points: usize,
    #[arg(long = "guard-band", default_value_t = 0.05)]
    guard_band: f64,
    /// CSV output path; the gnuplot script lands next to it with a .gp suffix
    #[arg(long, default_value = "figure1.csv")]
    out: PathBuf,
    #[arg(long)]
    bits: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Skip the longer-running oracle criteria (they report as SKIP)
    #[arg(long)]
    fast: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Entropy(args) => cmd_entropy(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Figure1(args) => cmd_figure1(args),
        Command::Verify(args) => Ok(cmd_verify(args)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn io_err(e: std::io::Error) -> XyError {
    XyError::Domain(format!("i/o failure: {e}"))
}

fn cmd_entropy(args: EntropyArgs) -> Result<ExitCode, XyError> {
    let point = XYPoint::new(args.gamma, args.field)?;
    let unit = if args.bits { LN_2 } else { 1.0 };
    let unit_name = if args.bits { "bits" } else { "nats" };
    let methods = if args.methods.is_empty() {
        vec![MethodArg::Series, MethodArg::Closed]
    } else {
        args.methods.clone()
    };

    let regime = classify(&point, &ClassifyTolerances::default());
    println!("gamma   = {}", fmt_float(args.gamma));
    println!("h       = {}", fmt_float(args.field));
    println!("case    = {}", regime.label.as_str());
    match regime.sigma {
        Some(s) => println!("sigma   = {s}"),
        None => println!("sigma   ="),
    }
    let k = modulus_k(&point, &regime)?;
    println!("k       = {}", fmt_float(k));
    println!("kprime  = {}", fmt_float(((1.0 - k) * (1.0 + k)).sqrt()));
    match elliptic_bundle(k) {
        Ok(b) => println!("tau0    = {}", fmt_float(b.tau0)),
        Err(_) => println!("tau0    = inf"),
    }

    for method in methods {
        match method {
            MethodArg::Series => {
                let r = entropy_series_with(&point, args.tol)?;
                println!(
                    "S_series = {} {unit_name}  (terms = {}, tail <= {})",
                    fmt_float(r.value / unit),
                    r.terms_used.unwrap_or(0),
                    fmt_float(r.tail_bound.unwrap_or(0.0) / unit),
                );
            }
            MethodArg::Closed => {
                let r = entropy_closed_form(&point)?;
                println!("S_closed = {} {unit_name}", fmt_float(r.value / unit));
            }
            MethodArg::Asymptotic => {
                let r = entropy_asymptotic_near_h2(&point, args.guard_band)?;
                println!("S_asymptotic = {} {unit_name}", fmt_float(r.value / unit));
            }
            MethodArg::Toeplitz => {
                for &l in &args.toeplitz_l {
                    let s = toeplitz_block_entropy(&point, l)?;
                    println!("S_toeplitz_{l} = {} {unit_name}", fmt_float(s / unit));
                }
            }
            MethodArg::Bdg => {
                let n = args.chain_n;
                let chain = FiniteChain::new(point, n)?;
                let s = bdg_finite_chain_entropy(&chain, 0..n.div_ceil(2))?;
                println!(
                    "S_bdg_{n} = {} {unit_name}  (block 0..{})",
                    fmt_float(s / unit),
                    n.div_ceil(2)
                );
            }
            MethodArg::Ed => {
                let n = args.chain_n;
                let chain = FiniteChain::new(point, n)?;
                let r = exact_diag_entropy(&chain, 0..n.div_ceil(2))?;
                let note = if r.degenerate {
                    "  [degenerate ground state]"
                } else {
                    ""
                };
                println!(
                    "S_ed_{n} = {} {unit_name}  (block 0..{}, gap = {}){note}",
                    fmt_float(r.value / unit),
                    n.div_ceil(2),
                    fmt_float(r.gap),
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn build_methods(methods: &[MethodArg], toeplitz_l: &[usize], chain_n: usize) -> Vec<MethodSpec> {
    let chosen = if methods.is_empty() {
        vec![MethodArg::Series, MethodArg::Closed]
    } else {
        methods.to_vec()
    };
    let mut out = Vec::new();
    for m in chosen {
        match m {
            MethodArg::Series => out.push(MethodSpec::Series),
            MethodArg::Closed | MethodArg::Asymptotic => out.push(MethodSpec::Closed),
            MethodArg::Toeplitz => {
                for &l in toeplitz_l {
                    out.push(MethodSpec::Toeplitz(l));
                }
            }
            MethodArg::Bdg => out.push(MethodSpec::Bdg(chain_n)),
            MethodArg::Ed => out.push(MethodSpec::Ed(chain_n)),
        }
    }
    out.dedup();
    out
}

fn cmd_scan(args: ScanArgs) -> Result<ExitCode, XyError> {
    let gamma = match (args.gamma, args.gamma_min, args.gamma_max) {
        (Some(g), _, _) => GammaSpec::Fixed(g),
        (None, Some(min), Some(max)) => GammaSpec::Range {
            min,
            max,
            steps: args.gamma_steps,
        },
        _ => GammaSpec::Fixed(0.5),
    };
    let spec = ScanSpec {
        gamma,
        h_min: args.h_min,
        h_max: args.h_max,
        steps: args.steps,
        methods: build_methods(&args.methods, &args.toeplitz_l, args.chain_n),
        guard_band: args.guard_band,
        truncation_tol: args.tol,
        threads: args.threads,
        bits: args.bits,
    };
    let rows = run_scan(&spec)?;
    let text = match args.format {
        FormatArg::Csv => scan_to_csv(&spec, &rows),
        FormatArg::Json => scan_to_json(&spec, &rows),
    };
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(io_err)?,
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(io_err)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn script_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("gp")
}

fn cmd_figure1(args: Figure1Args) -> Result<ExitCode, XyError> {
    let rows = figure1_rows(args.gamma, args.points, args.guard_band, args.bits)?;
    let csv = figure1_csv(&rows);
    std::fs::write(&args.out, csv).map_err(io_err)?;
    let csv_name = args
        .out
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "figure1.csv".to_string());
    let script = figure1_script(&csv_name, args.gamma, args.bits);
    let gp_path = script_path(&args.out);
    std::fs::write(&gp_path, script).map_err(io_err)?;
    eprintln!(
        "wrote {} ({} rows) and {}",
        args.out.display(),
        rows.len(),
        gp_path.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let results = acceptance::run_all(args.fast);
    let mut failures = 0usize;
    for r in &results {
        println!("{} [{:>2}] {} — {}", r.status(), r.id, r.name, r.detail);
        if !r.passed {
            failures += 1;
        }
    }
    let skipped = results.iter().filter(|r| r.skipped).count();
    println!(
        "RESULT: {} passed, {failures} failed, {skipped} skipped",
        results.len() - failures - skipped,
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
