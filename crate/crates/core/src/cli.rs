//! Command-line front end. Every subcommand prints one JSON report on
//! standard output; diagnostics go to standard error.
//!
//! Exit codes: 0 ok or warning, 1 mathematical failure, 2 usage or format error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::augment::{append_check, erase_check};
use crate::diag::diagonalize;
use crate::error::FrameError;
use crate::frame::{Frame, FrameReport};
use crate::io::{read_frame, write_frame, FrameFormat, FrameIoError};
use crate::perturbation::{
    blend, improve_step, pw_check, stability_radius, tighten, DEFAULT_SAFETY,
};
use crate::sample::gaussian_frame;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "tightframe",
    version,
    about = "Analyze and repair finite frames in R^n"
)]
pub struct Cli {
    /// Input format override (default: from file extension, JSON unless .csv)
    #[arg(long, global = true, value_enum)]
    pub input_format: Option<InputFormat>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InputFormat {
    Json,
    Csv,
}

impl From<InputFormat> for FrameFormat {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Json => FrameFormat::Json,
            InputFormat::Csv => FrameFormat::Csv,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Optimal frame bounds and condition number
    Analyze { frame: PathBuf },
    /// One condition-number-reducing perturbation
    Improve {
        frame: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_SAFETY)]
        safety: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Perturb into a tight frame in at most n-1 steps
    Tighten {
        frame: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the per-step trace as JSON
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Per-vector perturbation radius that preserves the frame property
    Stability { frame: PathBuf },
    /// Certify a perturbed family against a base frame
    PwCheck { base: PathBuf, perturbed: PathBuf },
    /// Tightness after appending vectors to a tight frame
    Append { base: PathBuf, added: PathBuf },
    /// Tightness after erasing vectors from a tight frame
    Erase {
        base: PathBuf,
        /// 1-based positions, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
    },
    /// Make the frame operator of an R^2 frame diagonal
    Diag2 {
        frame: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Blend two frames: (1 - t_j) f_j + t_j g_j
    Blend {
        base: PathBuf,
        other: PathBuf,
        #[arg(
            long = "t",
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        ts: Vec<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random frame with standard normal entries
    Generate {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Improve { .. } => "improve",
            Command::Tighten { .. } => "tighten",
            Command::Stability { .. } => "stability",
            Command::PwCheck { .. } => "pw-check",
            Command::Append { .. } => "append",
            Command::Erase { .. } => "erase",
            Command::Diag2 { .. } => "diag2",
            Command::Blend { .. } => "blend",
            Command::Generate { .. } => "generate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Warning,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InputSummary {
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Option<InputSummary>,
    pub status: Status,
    pub messages: Vec<String>,
    pub result: Value,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] FrameIoError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Frame(e) if e.is_mathematical() => EXIT_MATH,
            CliError::Io(FrameIoError::Frame(e)) if e.is_mathematical() => EXIT_MATH,
            _ => EXIT_USAGE,
        }
    }
}

struct Outcome {
    result: Value,
    warnings: Vec<String>,
}

impl Outcome {
    fn ok(result: impl Serialize) -> Self {
        Outcome {
            result: to_value(result),
            warnings: Vec::new(),
        }
    }

    fn warn_if(mut self, cond: bool, message: &str) -> Self {
        if cond {
            self.warnings.push(message.to_string());
        }
        self
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report payloads serialize")
}

#[derive(Serialize)]
struct AnalyzeOutput {
    #[serde(flatten)]
    report: FrameReport,
    /// (1/n) Σ‖v_j‖²
    mean_squared_norm: f64,
}

#[derive(Serialize)]
struct TightenOutput {
    step_count: usize,
    r_values: Vec<f64>,
    final_report: FrameReport,
    #[serde(rename = "final")]
    final_frame: Frame,
}

#[derive(Serialize)]
struct StabilityOutput {
    radius: f64,
    lower_bound: f64,
    vector_count: usize,
}

/// Positions in CLI reports are 1-based.
#[derive(Serialize)]
struct DiagOutput {
    chosen_vector: usize,
    chosen_entry_row: usize,
    perturb_axis: usize,
    epsilon: f64,
    operator_diagonal: [f64; 2],
    off_diagonal: f64,
    still_frame: bool,
    perturbed: Frame,
}

struct Context {
    input_format: Option<FrameFormat>,
    summary: Option<InputSummary>,
}

impl Context {
    fn load(&mut self, path: &Path) -> Result<Frame, CliError> {
        let frame = read_frame(path, self.input_format)?;
        self.summary.get_or_insert(InputSummary {
            n: frame.dim(),
            k: frame.len(),
        });
        Ok(frame)
    }
}

fn execute(command: &Command, ctx: &mut Context) -> Result<Outcome, CliError> {
    match command {
        Command::Analyze { frame } => {
            let f = ctx.load(frame)?;
            let report = f.analyze()?;
            Ok(Outcome::ok(AnalyzeOutput {
                report,
                mean_squared_norm: f.tight_bound_identity(),
            }))
        }
        Command::Improve {
            frame,
            epsilon,
            safety,
            output,
        } => {
            let f = ctx.load(frame)?;
            let result = improve_step(&f, *epsilon, *safety)?;
            if let Some(out) = output {
                write_frame(out, &result.perturbed)?;
            }
            Ok(Outcome::ok(result))
        }
        Command::Tighten {
            frame,
            output,
            trace,
        } => {
            let f = ctx.load(frame)?;
            let t = tighten(&f)?;
            if let Some(out) = output {
                write_frame(out, &t.final_frame)?;
            }
            if let Some(path) = trace {
                let mut text = serde_json::to_string_pretty(&t).expect("trace serializes");
                text.push('\n');
                std::fs::write(path, text).map_err(|source| FrameIoError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            Ok(Outcome::ok(TightenOutput {
                step_count: t.step_count(),
                r_values: t.steps.iter().map(|s| s.r).collect(),
                final_report: t.final_frame.analyze()?,
                final_frame: t.final_frame,
            }))
        }
        Command::Stability { frame } => {
            let f = ctx.load(frame)?;
            let radius = stability_radius(&f)?;
            Ok(Outcome::ok(StabilityOutput {
                radius,
                lower_bound: f.analyze()?.lower_bound,
                vector_count: f.len(),
            }))
        }
        Command::PwCheck { base, perturbed } => {
            let f = ctx.load(base)?;
            let g = ctx.load(perturbed)?;
            let cert = pw_check(&f, &g)?;
            let admissible = cert.admissible;
            Ok(Outcome::ok(cert).warn_if(
                !admissible,
                "perturbation not admissible: mu_sharp >= sqrt(A), no lower bound certified",
            ))
        }
        Command::Append { base, added } => {
            let f = ctx.load(base)?;
            let extra = ctx.load(added)?;
            Ok(Outcome::ok(append_check(&f, &extra)?))
        }
        Command::Erase { base, indices } => {
            let f = ctx.load(base)?;
            let zero_based = indices
                .iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or_else(|| CliError::Usage("indices are 1-based".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome::ok(erase_check(&f, &zero_based)?))
        }
        Command::Diag2 { frame, output } => {
            let f = ctx.load(frame)?;
            let d = diagonalize(&f)?;
            if let Some(out) = output {
                write_frame(out, &d.perturbed)?;
            }
            let still_frame = d.still_frame;
            Ok(Outcome::ok(DiagOutput {
                chosen_vector: d.chosen_vector + 1,
                chosen_entry_row: d.chosen_entry_row + 1,
                perturb_axis: d.perturb_axis + 1,
                epsilon: d.epsilon,
                operator_diagonal: d.operator_diagonal,
                off_diagonal: d.off_diagonal,
                still_frame,
                perturbed: d.perturbed,
            })
            .warn_if(!still_frame, "perturbed family is no longer a frame"))
        }
        Command::Blend {
            base,
            other,
            ts,
            output,
        } => {
            let f = ctx.load(base)?;
            let g = ctx.load(other)?;
            let result = blend(&f, &g, ts)?;
            if let Some(out) = output {
                write_frame(out, &result.blended)?;
            }
            let too_large = result.tau_too_large();
            Ok(Outcome::ok(result).warn_if(
                too_large,
                "TauTooLarge: max |t_j| is not below sqrt(A)/mu, blend is uncertified",
            ))
        }
        Command::Generate {
            dim,
            count,
            seed,
            output,
        } => {
            if *dim == 0 || count < dim {
                return Err(CliError::Usage(format!(
                    "need count >= dim > 0, got dim {dim}, count {count}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let f = gaussian_frame(&mut rng, *dim, *count);
            ctx.summary = Some(InputSummary { n: *dim, k: *count });
            if let Some(out) = output {
                write_frame(out, &f)?;
            }
            Ok(Outcome::ok(f))
        }
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let mut ctx = Context {
        input_format: cli.input_format.map(FrameFormat::from),
        summary: None,
    };
    let (report, code) = match execute(&cli.command, &mut ctx) {
        Ok(outcome) => {
            let status = if outcome.warnings.is_empty() {
                Status::Ok
            } else {
                Status::Warning
            };
            for w in &outcome.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let report = Report {
                command: cli.command.name().to_string(),
                input: ctx.summary,
                status,
                messages: outcome.warnings,
                result: outcome.result,
            };
            (report, EXIT_OK)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            let report = Report {
                command: cli.command.name().to_string(),
                input: ctx.summary,
                status: Status::Error,
                messages: vec![e.to_string()],
                result: Value::Null,
            };
            (report, e.exit_code())
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    let _ = writeln!(stdout, "{text}");
    code
}
