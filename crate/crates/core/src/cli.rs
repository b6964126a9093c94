//! The `torfact` command line.
//!
//! Exit codes: 0 for success and true verdicts, 1 for negative verdicts (not
//! complete, not semisimple), 2 for input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::decompose::factorize;
use crate::demazure::{classify, demazure_roots, Verdict};
use crate::error::Error;
use crate::fan::{hirzebruch_fan, product_fan, projective_space_fan, Fan};
use crate::fanfile::{read_fan, write_fan};
use crate::linalg::{DualVector, LatticeVector};

#[derive(Parser, Debug)]
#[command(name = "torfact", version, about = "Validate, decompose and classify rational polyhedral fans")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fan axioms.
    Validate { file: String },
    /// Decide whether the cones cover the whole space.
    Complete { file: String },
    /// List the primitive ray generators.
    Skeleton { file: String },
    /// List the Demazure roots with their distinguished rays.
    Roots { file: String },
    /// Split a complete fan along the finest partition of its rays.
    Decompose { file: String },
    /// Recognize products of projective spaces.
    Classify { file: String },
    /// Print a builtin fan as a fan file.
    Make {
        #[command(subcommand)]
        which: Builtin,
    },
}

#[derive(Subcommand, Debug)]
enum Builtin {
    /// Projective space of dimension N.
    Pn { n: usize },
    /// Product of projective spaces, dimensions comma-separated.
    Product {
        #[arg(value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
    /// Hirzebruch surface with parameter A.
    Hirzebruch {
        #[arg(allow_negative_numbers = true)]
        a: i64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Complete { .. } => "complete",
            Command::Skeleton { .. } => "skeleton",
            Command::Roots { .. } => "roots",
            Command::Decompose { .. } => "decompose",
            Command::Classify { .. } => "classify",
            Command::Make { .. } => "make",
        }
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// A command's verdict in both renderings.
struct Report {
    text: String,
    fields: Value,
    code: i32,
}

impl Report {
    fn new(code: i32, text: String, fields: Value) -> Report {
        Report { text, fields, code }
    }
}

/// Runs one command line. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code: 2,
                }
            } else {
                Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    let command = cli.command.name();
    match execute(&cli.command, stdin) {
        Ok(report) => render(cli.format, command, report),
        Err(e) => {
            let (code, text) = match e {
                Error::NotComplete => (1, "complete: false\n".to_string()),
                _ => (2, String::new()),
            };
            let mut fields = json!({ "error": e.to_string() });
            if code == 1 {
                fields["complete"] = json!(false);
            }
            let mut out = render(cli.format, command, Report::new(code, text, fields));
            out.stderr = format!("torfact: {e}\n");
            out
        }
    }
}

fn render(format: Format, command: &str, report: Report) -> Outcome {
    let stdout = match format {
        Format::Text => report.text,
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("command".into(), json!(command));
            if let Value::Object(fields) = report.fields {
                obj.extend(fields);
            }
            obj.insert("exit_code".into(), json!(report.code));
            let mut s = serde_json::to_string(&Value::Object(obj)).expect("json");
            s.push('\n');
            s
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: report.code,
    }
}

fn load(path: &str, stdin: &mut dyn Read) -> Result<(Fan, Option<String>), Error> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::Parse(format!("standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    read_fan(&text)
}

fn int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn lattice(v: &LatticeVector) -> Value {
    Value::Array(v.coords().iter().map(int).collect())
}

fn dual(v: &DualVector) -> Value {
    Value::Array(v.coords().iter().map(int).collect())
}

fn dims_text(dims: &[usize]) -> String {
    let parts: Vec<String> = dims.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn execute(command: &Command, stdin: &mut dyn Read) -> Result<Report, Error> {
    match command {
        Command::Make { which } => {
            let (fan, name) = match which {
                Builtin::Pn { n } => (projective_space_fan(*n)?, format!("P^{n}")),
                Builtin::Product { dims } => {
                    let parts: Vec<String> = dims.iter().map(|d| format!("P^{d}")).collect();
                    (product_fan(dims)?, parts.join(" x "))
                }
                Builtin::Hirzebruch { a } => (hirzebruch_fan(*a)?, format!("F_{a}")),
            };
            let file = write_fan(&fan, Some(&name));
            let fields: Value = serde_json::from_str(&file).expect("fan files are json");
            Ok(Report::new(0, file, json!({ "fan": fields })))
        }
        Command::Validate { file } => {
            let (fan, _) = load(file, stdin)?;
            let text = format!(
                "valid: true\nrank: {}\nrays: {}\nmaximal cones: {}\n",
                fan.rank(),
                fan.skeleton().len(),
                fan.maximal_cones().len()
            );
            Ok(Report::new(
                0,
                text,
                json!({
                    "valid": true,
                    "rank": fan.rank(),
                    "ray_count": fan.skeleton().len(),
                    "maximal_cone_count": fan.maximal_cones().len(),
                }),
            ))
        }
        Command::Complete { file } => {
            let (fan, _) = load(file, stdin)?;
            let complete = fan.is_complete();
            Ok(Report::new(
                if complete { 0 } else { 1 },
                format!("complete: {complete}\n"),
                json!({ "complete": complete }),
            ))
        }
        Command::Skeleton { file } => {
            let (fan, _) = load(file, stdin)?;
            let mut text = format!("rays: {}\n", fan.skeleton().len());
            for r in fan.skeleton() {
                let _ = writeln!(text, "{r}");
            }
            Ok(Report::new(
                0,
                text,
                json!({
                    "rank": fan.rank(),
                    "rays": fan.skeleton().iter().map(lattice).collect::<Vec<_>>(),
                }),
            ))
        }
        Command::Roots { file } => {
            let (fan, _) = load(file, stdin)?;
            let rs = demazure_roots(&fan)?;
            let mut text = format!("roots: {}\n", rs.len());
            for r in rs.roots() {
                let _ = writeln!(text, "{} ray {}", r.alpha, r.distinguished_ray);
            }
            let roots: Vec<Value> = rs
                .roots()
                .iter()
                .map(|r| json!({ "alpha": dual(&r.alpha), "ray": lattice(&r.distinguished_ray) }))
                .collect();
            Ok(Report::new(0, text, json!({ "count": rs.len(), "roots": roots })))
        }
        Command::Decompose { file } => {
            let (fan, _) = load(file, stdin)?;
            let fact = factorize(&fan)?;
            let dims = fact.dims();
            let mut text = format!(
                "factors: {}\ndims: {}\nlattice index: {}\n",
                dims.len(),
                dims_text(&dims),
                fact.lattice_index
            );
            if fact.is_real_split_only() {
                text.push_str("split: real only\n");
            }
            let mut blocks = Vec::new();
            for (i, (rays, (span, factor))) in fact
                .partition
                .blocks()
                .iter()
                .zip(fact.partition.spans().iter().zip(&fact.factors))
                .enumerate()
            {
                let ray_list: Vec<String> = rays.iter().map(|r| r.to_string()).collect();
                let basis = span.basis().row_vectors();
                let basis_list: Vec<String> = basis.iter().map(|r| r.to_string()).collect();
                let _ = writeln!(
                    text,
                    "factor {}: rank {}, rays {}, basis {}",
                    i + 1,
                    factor.rank(),
                    ray_list.join(" "),
                    basis_list.join(" ")
                );
                let factor_file: Value =
                    serde_json::from_str(&write_fan(factor, None)).expect("fan files are json");
                blocks.push(json!({
                    "rays": rays.iter().map(lattice).collect::<Vec<_>>(),
                    "basis": basis.iter().map(lattice).collect::<Vec<_>>(),
                    "fan": factor_file,
                }));
            }
            Ok(Report::new(
                0,
                text,
                json!({
                    "dims": dims,
                    "lattice_index": int(&fact.lattice_index),
                    "lattice_split": !fact.is_real_split_only(),
                    "factors": blocks,
                }),
            ))
        }
        Command::Classify { file } => {
            let (fan, _) = load(file, stdin)?;
            let c = classify(&fan)?;
            let ev = &c.evidence;
            let (code, label, dims) = match &c.verdict {
                Verdict::ProductOfProjectiveSpaces(d) => (0, "product-of-projective-spaces", Some(d)),
                Verdict::NotSemisimple => (1, "not-semisimple", None),
                Verdict::SemisimpleButUnrecognized => (1, "semisimple-but-unrecognized", None),
            };
            let mut text = match dims {
                Some(d) => format!("{label}: {}\n", dims_text(d)),
                None => format!("{label}\n"),
            };
            let _ = writeln!(text, "roots: {}", ev.root_count);
            if !ev.asymmetric_roots.is_empty() {
                let list: Vec<String> = ev.asymmetric_roots.iter().map(|a| a.to_string()).collect();
                let _ = writeln!(text, "roots without negative: {}", list.join(" "));
            }
            for f in &ev.failures {
                let _ = writeln!(text, "failed: {f}");
            }
            Ok(Report::new(
                code,
                text,
                json!({
                    "verdict": label,
                    "dims": dims,
                    "root_count": ev.root_count,
                    "evidence": {
                        "root_span_rank": ev.root_span_rank,
                        "asymmetric_roots": ev.asymmetric_roots.iter().map(dual).collect::<Vec<_>>(),
                        "blocks": ev.blocks.iter()
                            .map(|b| b.iter().map(lattice).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "lattice_index": ev.lattice_index.as_ref().map(int),
                        "expected_root_count": ev.expected_root_count,
                        "failures": ev.failures,
                    },
                }),
            ))
        }
    }
}
