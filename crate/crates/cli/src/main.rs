//! `nilcurv`: curvature reports, family constructions and verification runs
//! as deterministic JSON.
//!
//! Exit codes: 0 pass, 1 semantic failure (invalid algebra, violated
//! constraint, tolerance breach), 2 unreadable or malformed input.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nilcurv::corpus::corpus_check;
use nilcurv::families::LorentzFamilyParams;
use nilcurv::group::theorem_main_deviations;
use nilcurv::io::{build_family, params_from_value, read_algebra, split_mode, AnyAlgebra, Report, FAMILY_NAMES};
use nilcurv::pe_linalg::{make_space, sym_minus_signature, SymMinusReport};
use nilcurv::scalar::TOLERANCE_ENV;
use nilcurv::{Error, Execution, Mode, Rational, Scalar, Tolerance};

#[derive(Parser)]
#[command(name = "nilcurv", version, about = "Curvature of pseudo-Euclidean 2-step nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Float tolerance; exact mode ignores it.
    #[arg(long, global = true, env = TOLERANCE_ENV)]
    tol: Option<f64>,
    /// Exact rational arithmetic.
    #[arg(long, global = true, conflicts_with = "float")]
    exact: bool,
    /// 64-bit floating point.
    #[arg(long, global = true)]
    float: bool,
    /// JSON output (the only format).
    #[arg(long, global = true)]
    json: bool,
}

impl Common {
    fn tolerance(&self) -> Tolerance {
        self.tol.filter(|t| t.is_finite()).map(Tolerance::new).unwrap_or_default()
    }

    fn forced(&self) -> Option<Mode> {
        if self.exact {
            Some(Mode::Exact)
        } else if self.float {
            Some(Mode::Float)
        } else {
            None
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file and report its curvature.
    Verify {
        /// Algebra file, `-` for stdin.
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build an algebra from a named family.
    Family {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FAMILY_NAMES))]
        name: String,
        /// Parameter file or inline JSON object.
        #[arg(long)]
        params: Option<String>,
        /// Write the algebra file here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Signature of the skew maps under `(A, B) ↦ −tr(AB)`.
    Signature {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the group law and coordinate metric of a Ricci-flat Lorentzian
    /// family with exponential coordinates.
    GroupMetric {
        /// Lorentzian family parameters: file or inline JSON object.
        params: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Fast against brute-force Ricci on seeded random algebras.
    Corpus {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        common: Common,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Json(_) | Error::Format(_) | Error::DimensionMismatch { .. } => 2,
            _ => 1,
        };
        let message = match &e {
            Error::InvalidAlgebra(violations) => {
                let lines: Vec<String> = violations.iter().map(|v| format!("  - {v}")).collect();
                format!("invalid algebra:\n{}", lines.join("\n"))
            }
            other => other.to_string(),
        };
        Failure { code, message }
    }
}

fn io_failure(what: &str, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("{what}: {e}") }
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| io_failure("stdin", e))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| io_failure(&path.display().to_string(), e))
}

/// Inline JSON when it looks like an object, otherwise a path.
fn read_params(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        read_source(Path::new(arg))
    }
}

fn json<S: Serialize>(value: &S) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    text.push('\n');
    Ok(text)
}

/// What a subcommand prints and whether it passed.
struct Outcome {
    stdout: String,
    passed: bool,
    note: Option<String>,
}

fn verify(file: &Path, common: &Common) -> Result<Outcome, Failure> {
    let tol = common.tolerance();
    let text = read_source(file)?;
    let report = match read_algebra(&text, common.forced(), tol)? {
        AnyAlgebra::Exact(a) => Report::new(&a, tol)?,
        AnyAlgebra::Float(a) => Report::new(&a, tol)?,
    };
    Ok(Outcome { stdout: json(&report)?, passed: true, note: None })
}

fn family(name: &str, params: Option<&str>, output: Option<&Path>, common: &Common) -> Result<Outcome, Failure> {
    let text = params.map(read_params).transpose()?;
    let alg = build_family(name, text.as_deref(), common.forced(), common.tolerance())?;
    let file = alg.to_json()?;
    match output {
        Some(path) => {
            fs::write(path, &file).map_err(|e| io_failure(&path.display().to_string(), e))?;
            Ok(Outcome { stdout: String::new(), passed: true, note: None })
        }
        None => Ok(Outcome { stdout: file, passed: true, note: None }),
    }
}

#[derive(Serialize)]
struct SignatureOutput {
    q: usize,
    n: usize,
    dim: usize,
    /// `[negative, positive]`.
    sig: [usize; 2],
    predicted: [usize; 2],
    matches: bool,
}

fn signature(q: usize, n: usize, common: &Common) -> Result<Outcome, Failure> {
    let tol = common.tolerance();
    let counted = match common.forced() {
        Some(Mode::Exact) => sym_minus_signature(&make_space::<Rational>(q, n)?, tol)?,
        _ => sym_minus_signature(&make_space::<f64>(q, n)?, tol)?,
    };
    let predicted = SymMinusReport::predicted(q, n);
    let out = SignatureOutput {
        q,
        n,
        dim: counted.dim,
        sig: [counted.sig_minus, counted.sig_plus],
        predicted: [predicted.sig_minus, predicted.sig_plus],
        matches: counted == predicted,
    };
    let note = (!out.matches).then(|| "counted signature differs from the closed form".to_string());
    Ok(Outcome { stdout: json(&out)?, passed: out.matches, note })
}

fn group_metric_as<T: Scalar + nilcurv::io::JsonScalar>(
    value: serde_json::Value,
    samples: usize,
    seed: u64,
    tol: Tolerance,
    exec: Execution,
) -> Result<Outcome, Failure> {
    let params: LorentzFamilyParams<T> = params_from_value(value)?;
    let report = theorem_main_deviations(&params, samples, seed, tol, exec)?;
    let note = (!report.passed).then(|| {
        format!(
            "deviation beyond {:e}: group law {:e}, metric {:e}, signature preserved {}",
            report.tolerance, report.law_deviation, report.metric_deviation, report.signature_preserved
        )
    });
    Ok(Outcome { stdout: json(&report)?, passed: report.passed, note })
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn group_metric(params: &str, samples: usize, seed: u64, sequential: bool, common: &Common) -> Result<Outcome, Failure> {
    let text = read_params(params)?;
    let (mode, value) = split_mode(&text, common.forced())?;
    let (tol, exec) = (common.tolerance(), execution(sequential));
    match mode {
        Mode::Exact => group_metric_as::<Rational>(value, samples, seed, tol, exec),
        Mode::Float => group_metric_as::<f64>(value, samples, seed, tol, exec),
    }
}

fn corpus(count: usize, seed: u64, sequential: bool, common: &Common) -> Result<Outcome, Failure> {
    let (tol, exec) = (common.tolerance(), execution(sequential));
    let summary = match common.forced() {
        Some(Mode::Exact) => corpus_check::<Rational>(count, seed, tol, exec)?,
        _ => corpus_check::<f64>(count, seed, tol, exec)?,
    };
    let note = (!summary.passed).then(|| format!("corpus deviations exceed {:e}", summary.tolerance));
    Ok(Outcome { stdout: json(&summary)?, passed: summary.passed, note })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Verify { file, common } => verify(file, common),
        Command::Family { name, params, output, common } => family(name, params.as_deref(), output.as_deref(), common),
        Command::Signature { q, n, common } => signature(*q, *n, common),
        Command::GroupMetric { params, samples, seed, sequential, common } => {
            group_metric(params, *samples, *seed, *sequential, common)
        }
        Command::Corpus { count, seed, sequential, common } => corpus(*count, *seed, *sequential, common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if let Some(note) = outcome.note {
                eprintln!("nilcurv: {note}");
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("nilcurv: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
