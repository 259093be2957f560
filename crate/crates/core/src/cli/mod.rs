//! Command-line front end.
//!
//! Every verb produces a [`Report`]; text mode prints its human-readable
//! lines, JSON mode prints one object `{verb, verdict, data, checks}`.
//! Exit status: 0 on success, 1 on domain errors, 2 on usage and parse
//! errors.

mod verbs;

use std::fmt;
use std::io::Write;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::ScalarField;
use crate::degeneration::Variant;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Compose,
    Inverse,
    Factor,
    Classify,
    ConjTest,
    Degseq,
    Regular,
    Degenerate,
    Xalpha,
    PoleCheck,
    DecomposeVp,
}

impl Verb {
    /// Number of inputs, or `None` for "two or more".
    fn arity(self) -> Option<usize> {
        match self {
            Verb::Compose => None,
            Verb::ConjTest | Verb::PoleCheck => Some(2),
            _ => Some(1),
        }
    }
}

impl fmt::Display for Verb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "polyaut",
    version,
    about = "Exact computations with polynomial automorphisms of the plane"
)]
pub struct Cli {
    /// Operation to run.
    #[arg(value_enum)]
    pub verb: Verb,
    /// Maps such as "(-x2, x1 + x2^2)". Families may use `t`; verbs that
    /// expect a map over the field take the value of a family at `t = 0`.
    pub inputs: Vec<String>,
    /// `Q` or `Fp:<prime>`.
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Number of iterates for `degseq`.
    #[arg(long, default_value_t = 5)]
    pub n: u32,
    /// `F1` or `F2` for translation families.
    #[arg(long, default_value = "F1")]
    pub variant: String,
    /// Read further inputs from a file, one per line; `#` starts a comment.
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,
}

/// A named check in a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub verb: Verb,
    pub verdict: String,
    pub data: Value,
    pub checks: Vec<ReportCheck>,
    pub lines: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "verb": self.verb.to_string(),
            "verdict": self.verdict,
            "data": self.data,
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed})).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for c in &self.checks {
            out.push_str(&format!(
                "check {}: {}\n",
                c.name,
                if c.passed { "ok" } else { "FAILED" }
            ));
        }
        out
    }
}

/// Failure of a command together with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub(crate) fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse(_) => (2, "parse"),
            Error::InvalidField(_) => (2, "field"),
            Error::InvalidArgument(_) | Error::ArityMismatch { .. } => (2, "usage"),
            Error::Pole(_) => (1, "pole"),
            Error::NoPole(_) => (1, "no-pole"),
            Error::NotInvertible(_) => (1, "not-invertible"),
            Error::NotAlgebraic => (1, "not-algebraic"),
            Error::NotSpecial(_) => (1, "not-special"),
            Error::FieldExtension(_) => (1, "field-extension"),
            Error::DegreeOne => (1, "degree-one"),
            Error::RingMismatch | Error::Unsupported(_) => (1, "unsupported"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

/// Parsed command ready to run.
pub struct Command {
    pub verb: Verb,
    pub field: ScalarField,
    pub inputs: Vec<String>,
    pub n: u32,
    pub variant: Variant,
}

impl Command {
    pub fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let field: ScalarField = cli.field.parse().map_err(Failure::from)?;
        let variant: Variant = cli.variant.parse().map_err(Failure::from)?;
        let mut inputs = cli.inputs.clone();
        if let Some(path) = &cli.file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            inputs.extend(
                text.lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .filter(|l| !l.is_empty())
                    .map(String::from),
            );
        }
        match cli.verb.arity() {
            Some(k) if inputs.len() != k => {
                return Err(Failure::usage(format!(
                    "`{}` takes {k} input(s), got {}",
                    cli.verb,
                    inputs.len()
                )))
            }
            None if inputs.len() < 2 => {
                return Err(Failure::usage(format!(
                    "`{}` takes at least 2 inputs, got {}",
                    cli.verb,
                    inputs.len()
                )))
            }
            _ => {}
        }
        Ok(Command {
            verb: cli.verb,
            field,
            inputs,
            n: cli.n,
            variant,
        })
    }

    pub fn run(&self) -> Result<Report, Failure> {
        verbs::run(self)
    }
}

/// Run with the given arguments (including the program name), writing to
/// the given streams; returns the exit status.
pub fn main_with_args<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = Command::from_cli(&cli).and_then(|c| c.run());
    match (result, cli.format) {
        (Ok(r), Format::Text) => {
            let _ = out.write_all(r.to_text().as_bytes());
            0
        }
        (Ok(r), Format::Json) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&r.to_json()).expect("json"));
            0
        }
        (Err(f), Format::Text) => {
            let _ = writeln!(err, "error ({}): {}", f.kind, f.message);
            f.code
        }
        (Err(f), Format::Json) => {
            let v = json!({
                "verb": cli.verb.to_string(),
                "verdict": "error",
                "data": {"error": {"kind": f.kind, "message": f.message}},
                "checks": [],
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            f.code
        }
    }
}
