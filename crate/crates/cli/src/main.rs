//! `bjlevel`: command-line front end for the bjlevel library.
//!
//! Every command prints one JSON report (or a text rendering of it) with keys
//! `command`, `inputs`, `result`, `arithmetic_mode`, `tolerance` (float path
//! only), `tool_version`, `seed`. Exit codes: 0 on success, 1 when `selftest`
//! finds a regression, 2 on input errors, 3 on internal consistency failures.

mod report;
mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bjlevel::faces::{census, minimal_face};
use bjlevel::io::{
    self, parse_candidates, parse_operator, parse_space, parse_vector_json, vector_json,
};
use bjlevel::isometry::{
    adjoint_level_transfer, certify_scalar_isometry_polyhedral, probe_scalar_isometry_grid,
    scalar_identity_test,
};
use bjlevel::levelvec::{enumerate_level_numbers, is_level_vector, preserves_bj_at};
use bjlevel::oracle::{minimize_norm_1d, preservation_sample_check};
use bjlevel::orthogonality::{bj_orthogonal, bj_orthogonal_oracle};
use bjlevel::space::DEFAULT_FLOAT_TOLERANCE;
use bjlevel::support::support_set;
use bjlevel::{Mode, Operator, Space, Vector};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value as Json};

use report::{Failure, Report};

/// Environment variable overriding the relative tolerance of ℓp float paths.
const TOLERANCE_VAR: &str = "BJLEVEL_FLOAT_TOL";

#[derive(Parser)]
#[command(
    name = "bjlevel",
    version,
    about = "Birkhoff-James orthogonality and level vectors on finite-dimensional normed spaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct SpaceArg {
    /// Space file (JSON).
    #[arg(long)]
    space: PathBuf,
}

#[derive(Args)]
struct OpArgs {
    #[command(flatten)]
    space: SpaceArg,
    /// Operator file (JSON).
    #[arg(long)]
    op: PathBuf,
}

#[derive(Args)]
struct XArg {
    /// Comma-separated rationals, e.g. "1,1/2,0".
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// JSON array file; wins over --x.
    #[arg(long)]
    x_file: Option<PathBuf>,
}

#[derive(Args)]
struct YArg {
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long)]
    y_file: Option<PathBuf>,
}

#[derive(Args)]
struct Sampling {
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide x ⊥_B y by dual certificates.
    Bj {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        x: XArg,
        #[command(flatten)]
        y: YArg,
    },
    /// Supporting functionals J(x).
    Support {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        x: XArg,
    },
    /// Face lattice of a polyhedral unit ball.
    #[command(subcommand)]
    Faces(FacesCommand),
    /// Level vectors and level numbers.
    #[command(subcommand)]
    Level(LevelCommand),
    /// Local preservation of orthogonality.
    #[command(subcommand)]
    Preserve(PreserveCommand),
    /// Scalar-multiple-of-isometry checks.
    #[command(subcommand)]
    Isometry(IsometryCommand),
    /// Scalar-identity test on candidate triples.
    #[command(subcommand)]
    Identity(IdentityCommand),
    /// Level vectors of the adjoint.
    #[command(subcommand)]
    Adjoint(AdjointCommand),
    /// Direct-search oracles by 1-D norm minimization.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run the bundled worked-example battery.
    Selftest,
}

#[derive(Subcommand)]
enum FacesCommand {
    /// Number of k-faces of the unit ball.
    Census {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Face containing a unit vector in its relative interior.
    Minimal {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        x: XArg,
    },
}

#[derive(Subcommand)]
enum LevelCommand {
    /// Decide whether x is a level vector.
    Test {
        #[command(flatten)]
        op: OpArgs,
        #[command(flatten)]
        x: XArg,
    },
    /// Sample faces for level numbers (under-approximation).
    Enumerate {
        #[command(flatten)]
        op: OpArgs,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Subcommand)]
enum PreserveCommand {
    /// Decide local preservation of orthogonality at x.
    Check {
        #[command(flatten)]
        op: OpArgs,
        #[command(flatten)]
        x: XArg,
    },
}

#[derive(Subcommand)]
enum IsometryCommand {
    /// Exact extreme-point certification (polyhedral domains).
    Certify {
        #[command(flatten)]
        op: OpArgs,
    },
    /// Sampling probe; refutes or stays inconclusive.
    Probe {
        #[command(flatten)]
        op: OpArgs,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Subcommand)]
enum IdentityCommand {
    /// Scalar-multiple-of-identity test from eigenvector candidates.
    Test {
        #[command(flatten)]
        op: OpArgs,
        /// JSON file with n candidate vectors.
        #[arg(long)]
        candidates: PathBuf,
    },
}

#[derive(Subcommand)]
enum AdjointCommand {
    /// Transfer a level vector to the adjoint.
    Transfer {
        #[command(flatten)]
        op: OpArgs,
        #[command(flatten)]
        x: XArg,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Orthogonality by direct norm minimization.
    Bj {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        x: XArg,
        #[command(flatten)]
        y: YArg,
    },
    /// Sampling search for preservation violations.
    Preserve {
        #[command(flatten)]
        op: OpArgs,
        #[command(flatten)]
        x: XArg,
        #[command(flatten)]
        sampling: Sampling,
    },
}

fn tolerance() -> Result<f64, Failure> {
    match std::env::var(TOLERANCE_VAR) {
        Err(_) => Ok(DEFAULT_FLOAT_TOLERANCE),
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(Failure::input(
                "invalid_argument",
                format!("{TOLERANCE_VAR} must be a positive number, got {text:?}"),
            )),
        },
    }
}

fn read_json(path: &Path) -> Result<Json, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input("io_error", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::input("parse_error", format!("{}: {e}", path.display())))
}

/// Parsed inputs plus the echo that goes into the report.
struct Context {
    tolerance: f64,
    inputs: Map<String, Json>,
    mode: Option<Mode>,
}

impl Context {
    fn new() -> Result<Self, Failure> {
        Ok(Context {
            tolerance: tolerance()?,
            inputs: Map::new(),
            mode: None,
        })
    }

    fn space(&mut self, arg: &SpaceArg) -> Result<Space, Failure> {
        let space = parse_space(&read_json(&arg.space)?, self.tolerance)?;
        self.inputs
            .insert("space".into(), io::space_to_json(&space));
        self.mode = Some(space.mode());
        Ok(space)
    }

    fn operator(&mut self, arg: &OpArgs) -> Result<Operator, Failure> {
        let space = self.space(&arg.space)?;
        let t = parse_operator(&read_json(&arg.op)?, &space, self.tolerance)?;
        self.inputs
            .insert("operator".into(), io::operator_to_json(&t));
        self.mode = Some(t.mode()?);
        Ok(t)
    }

    fn vector(
        &mut self,
        name: &str,
        text: Option<&str>,
        file: Option<&Path>,
    ) -> Result<Vector, Failure> {
        let v = match (file, text) {
            (Some(path), flag) => {
                if flag.is_some() {
                    eprintln!("warning: --{name}-file overrides --{name}");
                }
                parse_vector_json(&read_json(path)?)?
            }
            (None, Some(text)) => Vector::parse(text)?,
            (None, None) => {
                return Err(Failure::input(
                    "missing_argument",
                    format!("--{name} or --{name}-file is required"),
                ))
            }
        };
        self.inputs.insert(name.into(), vector_json(&v));
        Ok(v)
    }

    fn x(&mut self, arg: &XArg) -> Result<Vector, Failure> {
        self.vector("x", arg.x.as_deref(), arg.x_file.as_deref())
    }

    fn y(&mut self, arg: &YArg) -> Result<Vector, Failure> {
        self.vector("y", arg.y.as_deref(), arg.y_file.as_deref())
    }

    fn samples(&mut self, s: &Sampling, default: usize) -> usize {
        let n = s.samples.unwrap_or(default);
        self.inputs.insert("samples".into(), json!(n));
        n
    }

    fn finish(self, command: &str, result: Json, seed: Option<u64>) -> Report {
        Report {
            command: command.into(),
            inputs: Json::Object(self.inputs),
            result,
            mode: self.mode.unwrap_or(Mode::Exact),
            tolerance: self.tolerance,
            seed,
        }
    }
}

fn run(command: &Command) -> Result<Report, Failure> {
    let mut cx = Context::new()?;
    Ok(match command {
        Command::Bj { space, x, y } => {
            let s = cx.space(space)?;
            let (x, y) = (cx.x(x)?, cx.y(y)?);
            let v = bj_orthogonal(&s, &x, &y)?;
            cx.finish("bj", io::orthogonality_json(&v), None)
        }
        Command::Support { space, x } => {
            let s = cx.space(space)?;
            let x = cx.x(x)?;
            let set = support_set(&s, &x)?;
            cx.finish("support", io::support_json(&set), None)
        }
        Command::Faces(FacesCommand::Census { space }) => {
            let s = cx.space(space)?;
            let c = census(&s)?;
            cx.finish("faces census", io::census_json(&c), None)
        }
        Command::Faces(FacesCommand::Minimal { space, x }) => {
            let s = cx.space(space)?;
            let x = cx.x(x)?;
            let face = minimal_face(&s, &x)?;
            cx.finish("faces minimal", io::face_json(&face, &s), None)
        }
        Command::Level(LevelCommand::Test { op, x }) => {
            let t = cx.operator(op)?;
            let x = cx.x(x)?;
            let cert = is_level_vector(&t, &x)?;
            cx.finish("level test", io::level_test_json(cert.as_ref()), None)
        }
        Command::Level(LevelCommand::Enumerate { op, sampling }) => {
            let t = cx.operator(op)?;
            let n = cx.samples(sampling, 5);
            let r = enumerate_level_numbers(&t, n, sampling.seed)?;
            cx.finish(
                "level enumerate",
                io::level_numbers_json(&r),
                Some(sampling.seed),
            )
        }
        Command::Preserve(PreserveCommand::Check { op, x }) => {
            let t = cx.operator(op)?;
            let x = cx.x(x)?;
            let r = preserves_bj_at(&t, &x)?;
            cx.finish("preserve check", io::preservation_json(&r), None)
        }
        Command::Isometry(IsometryCommand::Certify { op }) => {
            let t = cx.operator(op)?;
            let r = certify_scalar_isometry_polyhedral(&t)?;
            cx.finish("isometry certify", io::isometry_json(&r), None)
        }
        Command::Isometry(IsometryCommand::Probe { op, sampling }) => {
            let t = cx.operator(op)?;
            let n = cx.samples(sampling, 200);
            let r = probe_scalar_isometry_grid(&t, n, sampling.seed)?;
            cx.finish("isometry probe", io::isometry_json(&r), Some(sampling.seed))
        }
        Command::Identity(IdentityCommand::Test { op, candidates }) => {
            let t = cx.operator(op)?;
            let c = parse_candidates(&read_json(candidates)?)?;
            cx.inputs.insert(
                "candidates".into(),
                Json::Array(c.iter().map(vector_json).collect()),
            );
            let r = scalar_identity_test(&t, &c)?;
            cx.finish("identity test", io::scalar_identity_json(&r), None)
        }
        Command::Adjoint(AdjointCommand::Transfer { op, x }) => {
            let t = cx.operator(op)?;
            let x = cx.x(x)?;
            let r = adjoint_level_transfer(&t, &x)?;
            cx.finish("adjoint transfer", io::adjoint_transfer_json(&r), None)
        }
        Command::Oracle(OracleCommand::Bj { space, x, y }) => {
            let s = cx.space(space)?;
            let (x, y) = (cx.x(x)?, cx.y(y)?);
            let v = bj_orthogonal_oracle(&s, &x, &y)?;
            let mut result = io::orthogonality_json(&v);
            if !x.is_zero() && !y.is_zero() {
                result["line_minimum"] = io::line_minimum_json(&minimize_norm_1d(&s, &x, &y)?);
            }
            cx.finish("oracle bj", result, None)
        }
        Command::Oracle(OracleCommand::Preserve { op, x, sampling }) => {
            let t = cx.operator(op)?;
            let x = cx.x(x)?;
            let n = cx.samples(sampling, 100);
            let r = preservation_sample_check(&t, &x, n, sampling.seed)?;
            cx.finish(
                "oracle preserve",
                io::sample_check_json(&r),
                Some(sampling.seed),
            )
        }
        Command::Selftest => {
            let outcome = selftest::run();
            let failed = outcome.iter().filter(|c| !c.passed).count();
            let result = json!({
                "passed": outcome.len() - failed,
                "failed": failed,
                "checks": outcome.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
            });
            let report = cx.finish("selftest", result, None);
            if failed > 0 {
                return Err(Failure::regression(report));
            }
            report
        }
    })
}

/// Argument errors still produce a machine-readable code.
fn usage_error(e: &clap::Error) -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let text = args
        .windows(2)
        .any(|w| w[0] == "--format" && w[1] == "text")
        || args.iter().any(|a| a == "--format=text");
    let code = match e.kind() {
        clap::error::ErrorKind::InvalidSubcommand => "unknown_subcommand",
        _ => "usage",
    };
    let rendered = e.render().to_string();
    let head = rendered.split("\n\nUsage:").next().unwrap_or_default();
    let message = head
        .trim_start_matches("error: ")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ");
    if !text {
        eprint!("{rendered}");
    }
    Failure::input(code, message).emit(text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return usage_error(&e),
    };
    let text = cli.format == Format::Text;
    match run(&cli.command) {
        Ok(report) => {
            report.print(text);
            ExitCode::SUCCESS
        }
        Err(failure) => failure.emit(text),
    }
}
