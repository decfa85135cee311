//! Command-line front end.
//!
//! [`run`] does all the work and returns the exit code with the text that
//! would go to stdout and stderr, so the binary and the tests share one path.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bialg::{verify_bialgebra, BialgError, Mode, VerifyOptions, MIN_DEGREE_BOUND};
use crate::ncalg::IdealEngine;
use crate::presents::{square_iso_witness, IsoWitness, Preset};
use crate::rmat::{
    invert, is_biinvertible, load_rmatrix, second_inverse, ybe_check, RMatrix, RMatrixDocument, INDEX_CONVENTION,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "braidmat",
    version,
    about = "Braided matrices, braided tensor squares and braided chains over Q(q)"
)]
pub struct Cli {
    /// Write the output document here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Yang-Baxter equation.
    Ybe { r: String },
    /// Inverse and second inverse.
    Biinv { r: String },
    /// Print the presentation of a preset.
    Present(PresetArgs),
    /// Normal form of a polynomial in a preset.
    Nf {
        #[command(flatten)]
        preset: PresetArgs,
        poly: String,
    },
    /// Graded dimensions of a preset up to a degree bound.
    Hilbert {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(short = 'D', long = "degree", default_value_t = 3)]
        degree: usize,
    },
    /// Check the bialgebra axioms of a preset.
    Verify {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(short = 'D', long = "degree", default_value_t = MIN_DEGREE_BOUND)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Seed for the evaluation points of probabilistic mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of evaluation points in probabilistic mode.
        #[arg(long, default_value_t = 3)]
        points: usize,
        /// Include every certificate term in the report.
        #[arg(long)]
        emit_certificates: bool,
        /// Record wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Compare graded dimensions of the braided tensor square and the two-copy chain.
    SquareIso {
        r: String,
        #[arg(short = 'D', long = "degree", default_value_t = 3)]
        degree: usize,
    },
}

#[derive(Args, Debug)]
pub struct PresetArgs {
    #[arg(value_enum)]
    pub preset: PresetName,
    /// R-matrix: a document path, `glq2`, `identity:N` or `flip:N`.
    pub r: String,
    /// Number of copies (chain only).
    #[arg(short = 'n', long = "copies")]
    pub copies: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetName {
    Frt,
    Bm,
    Chain,
    Square,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Exact,
    Probabilistic,
}

/// Exit code plus captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn output(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }

    fn failure(kind: &str, msg: impl std::fmt::Display) -> Self {
        let doc = json!({ "error": { "kind": kind, "message": msg.to_string() } });
        Outcome {
            code: EXIT_FAIL,
            stdout: String::new(),
            stderr: format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()),
        }
    }
}

/// Parses a builtin name or reads a document.
pub fn load_r_source(source: &str) -> Result<RMatrix, Outcome> {
    let sized = |text: &str| -> Result<usize, Outcome> {
        match text.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Outcome::usage(format!("`{source}`: size must be a positive integer"))),
        }
    };
    if source == "glq2" {
        let r = RMatrix::glq2();
        if !ybe_check(&r).holds || !is_biinvertible(&r) {
            return Err(Outcome::failure(
                "builtin",
                "shipped GL_q(2) document fails its validation",
            ));
        }
        return Ok(r);
    }
    if let Some(n) = source.strip_prefix("identity:") {
        return Ok(RMatrix::identity(sized(n)?));
    }
    if let Some(n) = source.strip_prefix("flip:") {
        return Ok(RMatrix::flip(sized(n)?));
    }
    let text =
        std::fs::read_to_string(source).map_err(|e| Outcome::usage(format!("cannot read R-matrix `{source}`: {e}")))?;
    load_rmatrix(&text).map_err(|e| Outcome::usage(format!("R-matrix `{source}`: {e}")))
}

fn resolve_preset(args: &PresetArgs) -> Result<Preset, Outcome> {
    match (args.preset, args.copies) {
        (PresetName::Chain, None) => Ok(Preset::Chain(2)),
        (PresetName::Chain, Some(0)) => Err(Outcome::usage("-n must be at least 1")),
        (PresetName::Chain, Some(n)) => Ok(Preset::Chain(n)),
        (_, Some(_)) => Err(Outcome::usage("-n only applies to the chain preset")),
        (PresetName::Frt, None) => Ok(Preset::Frt),
        (PresetName::Bm, None) => Ok(Preset::Bm),
        (PresetName::Square, None) => Ok(Preset::Square),
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("document serializes")
    )
}

#[derive(Serialize)]
struct BiinvDocument {
    convention: &'static str,
    dim: usize,
    invertible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    inverse: Option<RMatrixDocument>,
    partial_transpose_rank: usize,
    second_inverse_present: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    second_inverse: Option<RMatrixDocument>,
    biinvertible: bool,
}

#[derive(Serialize)]
struct HilbertDocument {
    convention: &'static str,
    preset: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    copies: Option<usize>,
    degree_bound: usize,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct SquareIsoDocument {
    convention: &'static str,
    #[serde(flatten)]
    witness: IsoWitness,
}

fn copies_of(p: Preset) -> Option<usize> {
    match p {
        Preset::Chain(n) => Some(n),
        _ => None,
    }
}

fn execute(command: Command) -> Result<Outcome, Outcome> {
    match command {
        Command::Ybe { r } => {
            let r = load_r_source(&r)?;
            let out = ybe_check(&r);
            Ok(match out.witness {
                None => Outcome::output(EXIT_PASS, "YBE: PASS\n".into()),
                Some(w) => Outcome::output(
                    EXIT_FAIL,
                    format!(
                        "YBE: FAIL\nwitness: row {:?} col {:?}: R12R13R23 = {}, R23R13R12 = {}\n",
                        w.row, w.col, w.lhs, w.rhs
                    ),
                ),
            })
        }
        Command::Biinv { r } => {
            let r = load_r_source(&r)?;
            let inverse = invert(&r).ok();
            let second = second_inverse(&r);
            let doc = BiinvDocument {
                convention: INDEX_CONVENTION,
                dim: r.dim(),
                invertible: inverse.is_some(),
                inverse: inverse.as_ref().map(RMatrix::to_document),
                partial_transpose_rank: r.partial_transpose_second().to_matrix().rank(),
                second_inverse_present: second.is_some(),
                second_inverse: second.as_ref().map(RMatrix::to_document),
                biinvertible: inverse.is_some() && second.is_some(),
            };
            let code = if doc.biinvertible { EXIT_PASS } else { EXIT_FAIL };
            Ok(Outcome::output(code, pretty(&doc)))
        }
        Command::Present(args) => {
            let preset = resolve_preset(&args)?;
            let r = load_r_source(&args.r)?;
            let p = preset.build(&r).map_err(|e| Outcome::failure("present", e))?;
            Ok(Outcome::output(EXIT_PASS, format!("{}\n", p.save())))
        }
        Command::Nf { preset, poly } => {
            let kind = resolve_preset(&preset)?;
            let r = load_r_source(&preset.r)?;
            let p = kind.build(&r).map_err(|e| Outcome::failure("present", e))?;
            let f = p
                .parse_poly(&poly)
                .map_err(|e| Outcome::usage(format!("polynomial: {e}")))?;
            let bound = f.degree().unwrap_or(0).max(2);
            let engine = IdealEngine::new(&p, bound).map_err(|e| Outcome::failure("orientation", e))?;
            let nf = engine.normal_form(&f).map_err(|e| Outcome::failure("normal-form", e))?;
            Ok(Outcome::output(EXIT_PASS, format!("{}\n", p.format_poly(&nf))))
        }
        Command::Hilbert { preset, degree } => {
            let kind = resolve_preset(&preset)?;
            let r = load_r_source(&preset.r)?;
            let p = kind.build(&r).map_err(|e| Outcome::failure("present", e))?;
            let engine = IdealEngine::new_unchecked(&p, degree).map_err(|e| Outcome::failure("orientation", e))?;
            let doc = HilbertDocument {
                convention: INDEX_CONVENTION,
                preset: kind.name(),
                copies: copies_of(kind),
                degree_bound: degree,
                dims: engine.hilbert_dims(),
            };
            Ok(Outcome::output(EXIT_PASS, pretty(&doc)))
        }
        Command::Verify {
            preset,
            degree,
            mode,
            seed,
            points,
            emit_certificates,
            timing,
        } => {
            let kind = resolve_preset(&preset)?;
            if degree < MIN_DEGREE_BOUND {
                return Err(Outcome::usage(format!("-D must be at least {MIN_DEGREE_BOUND}")));
            }
            if kind == Preset::Square {
                return Err(Outcome::usage(BialgError::Unsupported));
            }
            if points == 0 {
                return Err(Outcome::usage("--points must be at least 1"));
            }
            let r = load_r_source(&preset.r)?;
            let opts = VerifyOptions {
                bound: degree,
                mode: match mode {
                    ModeArg::Exact => Mode::Exact,
                    ModeArg::Probabilistic => Mode::Probabilistic { points, seed },
                },
                emit_certificates,
                timing,
            };
            let report = verify_bialgebra(kind, &r, &opts).map_err(|e| Outcome::failure("verify", e))?;
            let code = if report.pass { EXIT_PASS } else { EXIT_FAIL };
            Ok(Outcome::output(code, format!("{}\n", report.to_json())))
        }
        Command::SquareIso { r, degree } => {
            let r = load_r_source(&r)?;
            let witness = square_iso_witness(&r, degree).map_err(|e| Outcome::failure("square-iso", e))?;
            let code = if witness.equal { EXIT_PASS } else { EXIT_FAIL };
            let doc = SquareIsoDocument {
                convention: INDEX_CONVENTION,
                witness,
            };
            Ok(Outcome::output(code, pretty(&doc)))
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::output(code, text)
            };
        }
    };
    let mut out = execute(cli.command).unwrap_or_else(|e| e);
    if let Some(path) = cli.output {
        if !out.stdout.is_empty() {
            if let Err(e) = std::fs::write(&path, &out.stdout) {
                return Outcome::failure("output", format!("{}: {e}", path.display()));
            }
            out.stdout.clear();
        }
    }
    out
}
