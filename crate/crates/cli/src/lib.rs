//! The `kdl` command line, callable in-process through [`run`].

pub mod selftest;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kdl_core::boundary::BoundaryGraph;
use kdl_core::classifier::{classify, SurfaceDatum, TypeRegistry};
use kdl_core::fan::{FamilyRegistry, IndexRange};
use kdl_core::graphs::{
    betti1, enumerate_gluings, gluing_record, pullback_rank, BicolouredGraph, GraphMorphism,
    PolygonGluing,
};
use kdl_core::json::{from_tagged_value, to_tagged_string};
use kdl_core::smoothing::{
    build_family, family_invariants, verify_family, FamilyInvariants, SmoothingFamily,
    VerificationReport,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "kdl",
    version,
    about = "Degenerations of primary Kodaira surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a surface datum.
    Classify {
        /// Normalization type; may instead be given as a "type" field.
        #[arg(long = "type")]
        kind: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Print a smoothing family: fan window, generators and invariants.
    Fan(FamilyArgs),
    /// Run the verification battery on a smoothing family.
    Verify(FamilyArgs),
    /// Dual graph computations.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
    /// Boundary components and their adjacencies for one degree.
    Boundary {
        #[arg(long)]
        degree: u64,
        #[arg(long = "max-warp")]
        max_warp: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run every acceptance check.
    Selftest {
        /// Emit a JSON report instead of one line per check.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GraphOp {
    /// Classify a hexagon gluing {"components":[..6],"nodes":[..6]}.
    Gluing(Input),
    /// First Betti number of a bicoloured graph.
    Betti(Input),
    /// Rank of the pullback on H¹ along a graph morphism.
    Pullback(Input),
    /// Every valid hexagon gluing, one JSON line each, then a summary.
    Enumerate,
}

#[derive(Args, Debug)]
struct Input {
    /// Inline JSON.
    #[arg(long, conflicts_with = "input")]
    data: Option<String>,
    /// JSON file; stdin when neither is given.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    /// Degree; defaults to 1 for hopf and rational, 0 otherwise.
    #[arg(long)]
    e: Option<u64>,
    #[arg(long, default_value_t = 1)]
    w: u64,
    /// Index radius of the window on every axis.
    #[arg(long, default_value_t = 16)]
    window: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
    Dot,
}

/// A failure to act on the input, reported as exit code 2.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        to_tagged_string(&json!({ "error": { "kind": self.kind, "message": self.message } }))
    }
}

impl From<kdl_core::Error> for CliError {
    fn from(e: kdl_core::Error) -> Self {
        CliError::new(e.kind(), e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        let kind = match e.kind() {
            std::io::ErrorKind::BrokenPipe => BROKEN_PIPE,
            _ => "Io",
        };
        CliError::new(kind, e.to_string())
    }
}

/// A closed stdout (e.g. piping into `head`) is not an input error.
const BROKEN_PIPE: &str = "BrokenPipe";

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let err = CliError::new("Usage", e.to_string().trim_end());
            let _ = writeln!(stderr, "{}", err.to_json());
            return EXIT_BAD_INPUT;
        }
    };
    match dispatch(cli.command, stdin, stdout) {
        Ok(code) => code,
        Err(err) if err.kind == BROKEN_PIPE => EXIT_OK,
        Err(err) => {
            let _ = writeln!(stderr, "{}", err.to_json());
            EXIT_BAD_INPUT
        }
    }
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Classify { kind, input } => {
            let datum = parse_datum(kind.as_deref(), read_json(&input, stdin)?)?;
            writeln!(out, "{}", classify(&datum)?.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Fan(args) => {
            let f = family(&args)?;
            writeln!(out, "{}", f.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let f = family(&args)?;
            let report = verify_family(&f);
            let invariants = if report.all_pass {
                Some(family_invariants(&f)?)
            } else {
                None
            };
            #[derive(serde::Serialize)]
            struct Body<'a> {
                #[serde(flatten)]
                report: &'a VerificationReport,
                invariants: Option<FamilyInvariants>,
            }
            let body = Body {
                report: &report,
                invariants,
            };
            writeln!(out, "{}", to_tagged_string(&body))?;
            Ok(if report.all_pass {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Graph { op } => graph(op, stdin, out),
        Command::Boundary {
            degree,
            max_warp,
            format,
        } => {
            let g = BoundaryGraph::build(degree, max_warp)?;
            match format {
                Format::Json => writeln!(out, "{}", g.to_json())?,
                Format::Dot => write!(out, "{}", g.to_dot())?,
            }
            Ok(EXIT_OK)
        }
        Command::Selftest { json } => {
            let results = selftest::run_all();
            if json {
                writeln!(out, "{}", selftest::to_json(&results))?;
            } else {
                for r in &results {
                    writeln!(out, "{r}")?;
                }
                writeln!(out, "{}", selftest::summary(&results))?;
            }
            Ok(if results.iter().all(|r| r.passed) {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

fn read_json(input: &Input, stdin: &mut dyn Read) -> CliResult<Value> {
    let text = match (&input.data, &input.input) {
        (Some(d), _) => d.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))?,
        (None, None) => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::new("InvalidJson", e.to_string()))
}

/// With `--type`, the datum may omit the `type` field but must not
/// contradict the flag.
fn parse_datum(kind: Option<&str>, mut value: Value) -> CliResult<SurfaceDatum> {
    let Some(kind) = kind else {
        return Ok(from_tagged_value(value)?);
    };
    let strategy = TypeRegistry::default().get(kind)?.stratum();
    if let Some(obj) = value.as_object_mut() {
        if let Some(tag) = obj.remove("type") {
            if tag.as_str() != Some(strategy.name()) {
                return Err(CliError::new(
                    "InconsistentData",
                    format!("--type {kind} contradicts \"type\": {tag}"),
                ));
            }
        }
    }
    Ok(TypeRegistry::default().get(kind)?.parse_datum(value)?)
}

fn family(args: &FamilyArgs) -> CliResult<SmoothingFamily> {
    let default_e = match args.family.as_str() {
        "hopf" | "rational" => 1,
        _ => 0,
    };
    let e = args.e.unwrap_or(default_e);
    let kind = FamilyRegistry::default().kind(&args.family, e)?;
    let radius = i64::from(args.window);
    let arity = kind.family().arity();
    Ok(build_family(
        kind,
        e,
        args.w,
        vec![IndexRange::symmetric(radius); arity],
    )?)
}

fn graph(op: GraphOp, stdin: &mut dyn Read, out: &mut dyn Write) -> CliResult<i32> {
    match op {
        GraphOp::Gluing(input) => {
            let g: PolygonGluing = from_tagged_value(read_json(&input, stdin)?)?;
            writeln!(out, "{}", to_tagged_string(&gluing_record(&g)?))?;
        }
        GraphOp::Betti(input) => {
            let g: BicolouredGraph = from_tagged_value(read_json(&input, stdin)?)?;
            writeln!(
                out,
                "{}",
                to_tagged_string(
                    &json!({ "betti1": betti1(&g), "components": g.component_count() })
                )
            )?;
        }
        GraphOp::Pullback(input) => {
            let m: GraphMorphism = from_tagged_value(read_json(&input, stdin)?)?;
            let rank = pullback_rank(&m)?;
            writeln!(
                out,
                "{}",
                to_tagged_string(&json!({
                    "pullback_rank": rank,
                    "betti1_source": betti1(&m.source),
                    "betti1_target": betti1(&m.target),
                }))
            )?;
        }
        GraphOp::Enumerate => {
            let e = enumerate_gluings()?;
            for r in &e.records {
                writeln!(out, "{}", to_tagged_string(r))?;
            }
            writeln!(out, "{}", to_tagged_string(&json!({ "summary": e })))?;
        }
    }
    Ok(EXIT_OK)
}
