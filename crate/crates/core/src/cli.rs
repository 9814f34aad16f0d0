//! The `rankin` command-line tool.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (for `verify`: the bound holds) |
//! | 1 | I/O failure reading or writing a file |
//! | 2 | malformed input document or invalid flags |
//! | 3 | undefined bound (fewer than 2 atoms) or impossible construction |
//! | 4 | `verify` found the bound violated |
//! | 5 | `verify` preconditions fail (normalization, or a functional-family hypothesis) |

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::banach::FunctionalFamily;
use crate::bounds::rankin_bound;
use crate::error::Error;
use crate::family::{Shape, VectorFamily, NORM_TOLERANCE};
use crate::format::{Body, Document};
use crate::optimizer::{minimize_coherence, simplex_family, OptimizerConfig};
use crate::report::{digest, MakeSummary, OptimizeSummary, Payload, RunReport, TOOL_VERSION};
use crate::verify::{
    check_rankin_with_tolerance, implied_coherence_floor, proof_decomposition, SLACK_TOLERANCE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDEFINED: i32 = 3;
pub const EXIT_VIOLATED: i32 = 4;
pub const EXIT_PRECONDITION: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "rankin",
    version,
    about = "Continuous Rankin bounds for weighted unit-vector families"
)]
struct Cli {
    /// Print machine-readable JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the coherence and distance bounds of a measure space.
    Bound {
        /// Space, family or functional-family document.
        file: PathBuf,
    },
    /// Check a family against the bound and replay the proof decomposition.
    Verify {
        file: PathBuf,
        /// Check the functional (Banach) bound instead.
        #[arg(long)]
        functional: bool,
        /// Pass/fail tolerance on the slack.
        #[arg(long, default_value_t = SLACK_TOLERANCE)]
        tolerance: f64,
    },
    /// Search for a family of minimal coherence.
    Optimize(OptimizeArgs),
    /// Generate a family document.
    Make(MakeArgs),
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    /// Space document (any document kind; only its atoms are used).
    file: PathBuf,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = OptimizerConfig::default().restarts)]
    restarts: usize,
    #[arg(long, default_value_t = OptimizerConfig::default().max_iters)]
    iters: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Convergence tolerance on the smoothed objective.
    #[arg(long, default_value_t = OptimizerConfig::default().tolerance)]
    tolerance: f64,
    /// Where to write the best family.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MakeArgs {
    #[command(flatten)]
    construction: Construction,
    /// Write the document here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Construction {
    /// Regular simplex of N vectors in dimension D.
    #[arg(long, num_args = 2, value_names = ["N", "D"])]
    simplex: Option<Vec<usize>>,
    /// N equally spaced points on the unit circle.
    #[arg(long, value_name = "N")]
    circle: Option<usize>,
    /// N Fibonacci-lattice points on the unit sphere.
    #[arg(long, value_name = "N")]
    sphere: Option<usize>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UndefinedSupremum(_) => EXIT_UNDEFINED,
        Error::NotNormalized { .. } | Error::ZeroVector { .. } | Error::Precondition(_) => {
            EXIT_PRECONDITION
        }
        _ => EXIT_USAGE,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(exit_code(&e), e.to_string())
    }
}

struct Output {
    text: String,
    code: i32,
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let command = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    match dispatch(&cli, command) {
        Ok(out) => {
            let _ = stdout.write_all(out.text.as_bytes());
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn read_input(path: &Path) -> Result<(Vec<u8>, Document), Failure> {
    let bytes = fs::read(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: not UTF-8: {e}", path.display())))?;
    let doc = Document::parse(text)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    Ok((bytes, doc))
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn format_error(e: Error) -> Failure {
    Failure::new(EXIT_USAGE, e.to_string())
}

fn dispatch(cli: &Cli, command: String) -> Result<Output, Failure> {
    let started = Instant::now();
    let (input_digest, payload, code) = match &cli.command {
        Command::Bound { file } => {
            let (bytes, doc) = read_input(file)?;
            let space = doc.space().map_err(format_error)?;
            (
                digest(&bytes),
                Payload::Bound(rankin_bound(&space)?),
                EXIT_OK,
            )
        }
        Command::Verify {
            file,
            functional,
            tolerance,
        } => {
            if tolerance.is_nan() || *tolerance < 0.0 {
                return Err(Failure::new(EXIT_USAGE, "--tolerance must be >= 0"));
            }
            let (bytes, doc) = read_input(file)?;
            let (payload, code) = if *functional {
                verify_functional(&doc)?
            } else {
                verify_hilbert(&doc, *tolerance)?
            };
            (digest(&bytes), payload, code)
        }
        Command::Optimize(args) => {
            let (bytes, doc) = read_input(&args.file)?;
            let space = doc.space().map_err(format_error)?;
            let cfg = OptimizerConfig {
                restarts: args.restarts,
                max_iters: args.iters,
                tolerance: args.tolerance,
                seed: args.seed,
                threads: args.threads,
                ..OptimizerConfig::default()
            };
            let result = minimize_coherence(&space, args.dim, &cfg)?;
            if let Some(out) = &args.out {
                write_output(out, &Document::from_family(&result.best_family).to_text())?;
            }
            let output = args.out.as_ref().map(|p| p.display().to_string());
            (
                digest(&bytes),
                Payload::Optimize(OptimizeSummary::new(&result, output)),
                EXIT_OK,
            )
        }
        Command::Make(args) => {
            let (construction, fam) = make_family(&args.construction)?;
            let text = Document::from_family(&fam).to_text();
            let Some(out) = &args.out else {
                return Ok(Output {
                    text,
                    code: EXIT_OK,
                });
            };
            write_output(out, &text)?;
            let summary = MakeSummary {
                construction,
                atoms: fam.len(),
                dim: fam.dim(),
                output: out.display().to_string(),
            };
            (digest(&[]), Payload::Make(summary), EXIT_OK)
        }
    };
    let report = RunReport {
        command,
        input_digest,
        payload,
        wall_time_seconds: started.elapsed().as_secs_f64(),
        version: TOOL_VERSION.into(),
    };
    let text = if cli.json {
        report.to_json()
    } else {
        report.to_text()
    };
    Ok(Output { text, code })
}

fn verify_hilbert(doc: &Document, tolerance: f64) -> Result<(Payload, i32), Failure> {
    let fam = doc.family().map_err(format_error)?;
    rankin_bound(fam.space())?;
    fam.ensure_normalized(NORM_TOLERANCE)?;
    let coherence = check_rankin_with_tolerance(&fam, tolerance)?;
    let decomposition = proof_decomposition(&fam)?;
    let floor = implied_coherence_floor(&fam)?;
    let code = if coherence.satisfied {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    };
    Ok((
        Payload::Verify {
            coherence,
            decomposition,
            implied_coherence_floor: floor,
        },
        code,
    ))
}

fn verify_functional(doc: &Document) -> Result<(Payload, i32), Failure> {
    let fam = match doc.body {
        Body::FunctionalFamily { .. } => doc.functional_family().map_err(format_error)?,
        Body::Family { .. } => {
            let fam = doc.family().map_err(format_error)?;
            fam.ensure_normalized(NORM_TOLERANCE)?;
            FunctionalFamily::from_hilbert(&fam)?
        }
        Body::Space { .. } => {
            return Err(Failure::new(EXIT_USAGE, "verify needs a family document"));
        }
    };
    match fam.check_functional_rankin() {
        Ok(report) => {
            let code = if report.satisfied {
                EXIT_OK
            } else {
                EXIT_VIOLATED
            };
            Ok((Payload::FunctionalVerify(report), code))
        }
        Err(Error::Precondition(failures)) => Ok((
            Payload::PreconditionViolation { failures },
            EXIT_PRECONDITION,
        )),
        Err(e) => Err(e.into()),
    }
}

fn make_family(args: &Construction) -> Result<(String, VectorFamily), Failure> {
    let undefined = |e: Error| Failure::new(EXIT_UNDEFINED, e.to_string());
    if let Some(nd) = &args.simplex {
        let (n, d) = (nd[0], nd[1]);
        let fam = simplex_family(n, d).map_err(undefined)?;
        Ok((format!("simplex {n} {d}"), fam))
    } else if let Some(n) = args.circle {
        let fam = VectorFamily::discretize(Shape::Circle, n).map_err(undefined)?;
        Ok((format!("circle {n}"), fam))
    } else if let Some(n) = args.sphere {
        let fam = VectorFamily::discretize(Shape::Sphere, n).map_err(undefined)?;
        Ok((format!("sphere {n}"), fam))
    } else {
        Err(Failure::new(
            EXIT_USAGE,
            "one of --simplex, --circle, --sphere is required",
        ))
    }
}
