//! Command-line frontend: transforms, phase-space distributions, Radon
//! tomograms, covariance reports, and the verification suites.
//!
//! Exit codes: 0 success, 1 verification-check failure, 2 parse error,
//! 3 precondition violation, 4 numeric failure.

mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lctkit::io::{self, IoError};
use lctkit::lct::{lct_fast, min_oversample, LctError};
use lctkit::phase_space::{
    radon_marginal, wigner, wtheta, MarginalAxis, PhaseSpaceError, RadonLine,
};
use lctkit::signal::{make_signal, Grid1d, SampledSignal, SignalError};
use lctkit::symplectic::SymplecticError;
use lctkit::uncertainty::{rs_check, upsilon_from_wtheta_moments, UncertaintyError};

#[derive(Parser)]
#[command(name = "lctkit", version, about = "Linear canonical transforms, phase-space distributions, and uncertainty diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Grid spec x0:dx:N used when the signal comes from a generator.
    #[arg(long, default_value = "-8:0.03125:512", global = true)]
    grid: String,
    /// Seed for randomized corpora and generators.
    #[arg(long, default_value_t = 42, global = true)]
    seed: u64,
    /// Output directory for generated files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance overrides `key=value` (repeatable).
    #[arg(long = "tol", value_name = "KEY=VAL", global = true)]
    tol: Vec<String>,
    /// Also print the JSON report/metadata to stdout.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an LCT to a signal, writing the transformed samples.
    Transform {
        #[command(flatten)]
        common: CommonOpts,
        /// Generator spec or a path to a signal CSV.
        #[arg(long)]
        signal: String,
        /// Matrix spec (J, I, frft:θ, fresnel:b, lorentz:φ, shear:…, squeeze:…, or file.json).
        #[arg(long)]
        matrix: String,
        /// FFT zero-padding factor; raised automatically when too small.
        #[arg(long, default_value_t = 2)]
        oversample: usize,
    },
    /// Wigner distribution of a signal: CSV, PGM heatmap, marginals.
    Wigner {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        signal: String,
    },
    /// ϑ-Wigner distribution for a pair of symplectic matrices.
    Wtheta {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        signal: String,
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
    },
    /// Radon line marginal of the Wigner distribution.
    Radon {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        signal: String,
        /// Line coefficients "a,b" of a·x + b·ξ = t.
        #[arg(long)]
        line: String,
    },
    /// Covariance matrices Σ and Υ with the matrix-inequality check.
    Covariance {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        signal: String,
        #[arg(long, default_value = "I")]
        s1: String,
        #[arg(long, default_value = "J")]
        s2: String,
    },
    /// Run a verification suite; exit 0 iff every check passes.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Suite: heisenberg | rs | hardy | paley-wiener | all.
        suite: String,
        /// Signal spec or CSV path (defaults to the built-in corpus).
        #[arg(long)]
        signal: Option<String>,
        /// Directory of signal CSVs to verify.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        s1: Option<String>,
        #[arg(long)]
        s2: Option<String>,
        /// Matrix for hardy/paley-wiener suites.
        #[arg(long)]
        matrix: Option<String>,
        /// Parameter-level Hardy decay rates.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Generate a signal CSV from a generator spec.
    Gen {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        signal: String,
        /// Output file (defaults to signal.csv in the output directory).
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

/// Process-level outcome mapped to the exit-code contract.
enum Outcome {
    Ok,
    CheckFailed,
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Precondition(String),
    Numeric(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Signal(se) => se.into(),
            IoError::Symplectic(se) => se.into(),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<SignalError> for CliError {
    fn from(e: SignalError) -> Self {
        match e {
            SignalError::NonFinite(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<SymplecticError> for CliError {
    fn from(e: SymplecticError) -> Self {
        match e {
            SymplecticError::NotSymplectic { .. } | SymplecticError::BadDeterminant(_) => {
                CliError::Numeric(e.to_string())
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<LctError> for CliError {
    fn from(e: LctError) -> Self {
        match e {
            LctError::Symplectic(se) => se.into(),
            LctError::Signal(se) => se.into(),
            LctError::AliasRisk { .. } | LctError::NotSeparable | LctError::BadParameter(_) => {
                CliError::Precondition(e.to_string())
            }
        }
    }
}

impl From<PhaseSpaceError> for CliError {
    fn from(e: PhaseSpaceError) -> Self {
        match e {
            PhaseSpaceError::Symplectic(se) => se.into(),
            PhaseSpaceError::Lct(le) => le.into(),
            PhaseSpaceError::Signal(se) => se.into(),
            PhaseSpaceError::ImaginaryResidual { .. } => CliError::Numeric(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<UncertaintyError> for CliError {
    fn from(e: UncertaintyError) -> Self {
        match e {
            UncertaintyError::Lct(le) => le.into(),
            UncertaintyError::Symplectic(se) => se.into(),
            UncertaintyError::PhaseSpace(pe) => pe.into(),
            UncertaintyError::Signal(se) => se.into(),
            UncertaintyError::InsufficientDecay { .. } => CliError::Numeric(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(format!("io: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(format!("json: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Parse(_) => ExitCode::from(2),
                CliError::Precondition(_) => ExitCode::from(3),
                CliError::Numeric(_) => ExitCode::from(4),
            }
        }
    }
}

fn load_signal(spec: &str, grid_spec: &str) -> Result<SampledSignal, CliError> {
    if spec.ends_with(".csv") {
        Ok(io::read_signal_csv_path(std::path::Path::new(spec))?)
    } else {
        let kind = io::parse_signal_spec(spec)?;
        let grid = io::parse_grid_spec(grid_spec)?;
        Ok(make_signal(&kind, grid)?)
    }
}

fn out_dir(common: &CommonOpts) -> Result<PathBuf, CliError> {
    let dir = common.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn write_distribution_bundle(
    w: &lctkit::phase_space::PhaseSpaceDistribution,
    dir: &std::path::Path,
    stem: &str,
    json_to_stdout: bool,
) -> Result<(), CliError> {
    let meta = io::DistributionMeta::of(w);
    io::write_distribution_csv(w, std::fs::File::create(dir.join(format!("{stem}.csv")))?)?;
    io::write_heatmap_pgm(w, std::fs::File::create(dir.join(format!("{stem}.pgm")))?)?;
    let (xg, mx) = w.marginal(MarginalAxis::X);
    let (xig, mxi) = w.marginal(MarginalAxis::Xi);
    write_function_csv(&dir.join(format!("{stem}_marginal_x.csv")), "x", &xg, &mx)?;
    write_function_csv(&dir.join(format!("{stem}_marginal_xi.csv")), "xi", &xig, &mxi)?;
    let json = serde_json::to_string_pretty(&meta)?;
    std::fs::write(dir.join(format!("{stem}.json")), &json)?;
    if json_to_stdout {
        println!("{json}");
    }
    Ok(())
}

fn write_function_csv(
    path: &std::path::Path,
    var: &str,
    grid: &Grid1d,
    values: &[f64],
) -> Result<(), CliError> {
    use std::io::Write;
    let mut f = std::fs::File::create(path)?;
    writeln!(f, "{var},value")?;
    for (x, v) in grid.points().zip(values.iter()) {
        writeln!(f, "{},{}", io::fmt_f64(x), io::fmt_f64(*v))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Transform {
            common,
            signal,
            matrix,
            oversample,
        } => {
            let f = load_signal(&signal, &common.grid)?;
            let s = io::parse_matrix_spec(&matrix)?;
            let free = s.as_free()?;
            let os = oversample.max(min_oversample(&f.grid, &free));
            let g = lct_fast(&f, &free, os)?;
            let dir = out_dir(&common)?;
            io::write_signal_csv_path(&g, &dir.join("transform.csv"))?;
            let meta = report::TransformMeta {
                matrix: io::MatrixJson::of(&s),
                branch: "principal sqrt(i^n det B)".into(),
                oversample: os,
                input: signal.clone(),
                output_grid: g.grid,
            };
            let json = serde_json::to_string_pretty(&meta)?;
            std::fs::write(dir.join("transform.json"), &json)?;
            if common.json {
                println!("{json}");
            }
            Ok(Outcome::Ok)
        }
        Command::Wigner { common, signal } => {
            let f = load_signal(&signal, &common.grid)?;
            let w = wigner(&f)?;
            let dir = out_dir(&common)?;
            write_distribution_bundle(&w, &dir, "wigner", common.json)?;
            Ok(Outcome::Ok)
        }
        Command::Wtheta {
            common,
            signal,
            s1,
            s2,
        } => {
            let f = load_signal(&signal, &common.grid)?;
            let m1 = io::parse_matrix_spec(&s1)?;
            let m2 = io::parse_matrix_spec(&s2)?;
            let w = wtheta(&f, &m1, &m2)?;
            let dir = out_dir(&common)?;
            write_distribution_bundle(&w, &dir, "wtheta", common.json)?;
            Ok(Outcome::Ok)
        }
        Command::Radon {
            common,
            signal,
            line,
        } => {
            let f = load_signal(&signal, &common.grid)?;
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 2 {
                return Err(CliError::Parse(format!(
                    "bad line spec '{line}'; expected a,b"
                )));
            }
            let a: f64 = parts[0]
                .trim()
                .parse()
                .map_err(|e| CliError::Parse(format!("bad a: {e}")))?;
            let b: f64 = parts[1]
                .trim()
                .parse()
                .map_err(|e| CliError::Parse(format!("bad b: {e}")))?;
            let (grid, values) = radon_marginal(&f, RadonLine { a, b })?;
            let dir = out_dir(&common)?;
            write_function_csv(&dir.join("radon.csv"), "t", &grid, &values)?;
            if common.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report::RadonMeta {
                        a,
                        b,
                        offsets: grid
                    })?
                );
            }
            Ok(Outcome::Ok)
        }
        Command::Covariance {
            common,
            signal,
            s1,
            s2,
        } => {
            let f = load_signal(&signal, &common.grid)?;
            let m1 = io::parse_matrix_spec(&s1)?;
            let m2 = io::parse_matrix_spec(&s2)?;
            let rep = rs_check(&f, &m1, &m2)?;
            let direct = upsilon_from_wtheta_moments(&f, &m1, &m2)?;
            let cov = report::CovarianceJson::build(&rep, &direct);
            let dir = out_dir(&common)?;
            let json = serde_json::to_string_pretty(&cov)?;
            std::fs::write(dir.join("covariance.json"), &json)?;
            if common.json {
                println!("{json}");
            }
            Ok(Outcome::Ok)
        }
        Command::Verify {
            common,
            suite,
            signal,
            corpus,
            s1,
            s2,
            matrix,
            alpha,
            beta,
        } => {
            let tols =
                verify::Tolerances::with_overrides(&common.tol).map_err(CliError::Parse)?;
            let opts = verify::VerifyOptions {
                suite: suite.clone(),
                signal,
                corpus,
                s1,
                s2,
                matrix,
                alpha,
                beta,
                seed: common.seed,
                grid_spec: common.grid.clone(),
                tols,
            };
            let rep = verify::run_suite(&opts)?;
            let json = serde_json::to_string_pretty(&rep)?;
            if let Some(dir) = &common.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("verify_report.json"), &json)?;
            }
            println!("{json}");
            if rep.pass {
                Ok(Outcome::Ok)
            } else {
                Ok(Outcome::CheckFailed)
            }
        }
        Command::Gen {
            common,
            signal,
            file,
        } => {
            let f = load_signal(&signal, &common.grid)?;
            let dir = out_dir(&common)?;
            let path = file.unwrap_or_else(|| dir.join("signal.csv"));
            io::write_signal_csv_path(&f, &path)?;
            if common.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report::GenMeta {
                        spec: signal,
                        grid: f.grid
                    })?
                );
            }
            Ok(Outcome::Ok)
        }
    }
}
