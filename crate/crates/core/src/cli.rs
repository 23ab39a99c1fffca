//! Command-line front-end: `eval`, `height`, `factor` and `idempotents`.
//!
//! Results go to stdout, one-line diagnostics to stderr. Exit status is 0 on
//! success, 1 on user error and 2 when an internal verification fails.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{idempotents, verify_system, AlgebraSpec, VerificationReport};
use crate::binomial::{expand_product, factorize, Poly};
use crate::error::Error;
use crate::expr::{parse_element_with, render_element, render_list};
use crate::membership::{height, HeightResult};
use crate::tower::{CycloElem, FieldSpec, Tower, DEFAULT_MAX_LEVEL};

#[derive(Debug, Parser)]
#[command(
    name = "cyclotwist",
    version,
    about = "Exact binomial factorization and minimal idempotents over 2-power cyclotomic towers"
)]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Evaluate an element expression and print its canonical form
    Eval(CommonArgs),
    /// Compute the 2-height H_n(a), the kind of a and a witness
    Height(CommonArgs),
    /// Factor x^(2^n) - a into irreducible factors
    Factor(CommonArgs),
    /// Minimal idempotents of K[g]/(g^(2^n) - a)
    Idempotents(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Real,
    Full,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Base field: the real cyclotomic tower or the full one
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    #[arg(long)]
    n: Option<u32>,
    /// Element expression, e.g. "-4", "2*c(3)", "zeta(3)^-1"
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Height,
    Factor,
    Idempotents,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Height => "height",
            Command::Factor => "factor",
            Command::Idempotents => "idempotents",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub field: FieldSpec,
    pub n: Option<u32>,
    pub a: String,
    pub json: bool,
    pub verify: bool,
    pub max_level: u32,
}

impl Request {
    pub fn new(command: Command, field: FieldSpec, n: Option<u32>, a: &str) -> Self {
        Request {
            command,
            field,
            n,
            a: a.to_string(),
            json: false,
            verify: false,
            max_level: DEFAULT_MAX_LEVEL,
        }
    }

    /// Builds a request from command-line arguments (including the program name).
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        let (command, args) = match cli.command {
            CliCommand::Eval(a) => (Command::Eval, a),
            CliCommand::Height(a) => (Command::Height, a),
            CliCommand::Factor(a) => (Command::Factor, a),
            CliCommand::Idempotents(a) => (Command::Idempotents, a),
        };
        let field = match args.field {
            Some(FieldArg::Real) => FieldSpec::RealTower,
            Some(FieldArg::Full) => FieldSpec::FullTower,
            None if command == Command::Eval => FieldSpec::FullTower,
            None => {
                return Err(clap::Error::raw(
                    clap::error::ErrorKind::MissingRequiredArgument,
                    format!("{} requires --field real|full\n", command.name()),
                ))
            }
        };
        Ok(Request {
            command,
            field,
            n: args.n,
            a: args.a,
            json: args.json,
            verify: args.verify,
            max_level: args.max_level,
        })
    }
}

/// Everything a run produces; the binary copies it to the process streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(err: &Error) -> Self {
        let status = match err {
            Error::InternalVerificationFailure(_) => 2,
            _ => 1,
        };
        Outcome {
            status,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

#[derive(Debug, Serialize)]
struct JsonIdempotent {
    label: String,
    coeffs: Vec<String>,
}

#[derive(Debug, Serialize)]
struct JsonChecks {
    idempotent: bool,
    orthogonal: bool,
    complete: bool,
    count: bool,
    annihilated: bool,
    dimensions: Vec<Option<usize>>,
    factor_degrees: Vec<usize>,
}

impl From<&VerificationReport> for JsonChecks {
    fn from(r: &VerificationReport) -> Self {
        JsonChecks {
            idempotent: r.idempotent.iter().all(|b| *b),
            orthogonal: r.orthogonal(),
            complete: r.complete,
            count: r.count_matches,
            annihilated: r.annihilated.iter().all(|b| *b),
            dimensions: r.dimensions.clone(),
            factor_degrees: r.factor_degrees.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
struct JsonOutput {
    command: &'static str,
    field: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    a: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    idempotents: Option<Vec<JsonIdempotent>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<JsonChecks>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

impl JsonOutput {
    fn new(req: &Request, a: &CycloElem) -> Self {
        JsonOutput {
            command: req.command.name(),
            field: req.field.name(),
            n: req.n.filter(|_| req.command != Command::Eval),
            a: render_element(a),
            case: None,
            s: None,
            kind: None,
            witness: None,
            factors: None,
            idempotents: None,
            checks: None,
            verified: None,
        }
    }

    fn set_height(&mut self, h: &HeightResult) {
        self.s = Some(h.s);
        self.kind = Some(h.kind.name());
        self.witness = Some(render_element(&h.witness));
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        if self.command == "eval" {
            let _ = writeln!(out, "{}", self.a);
            return out;
        }
        if let Some(case) = self.case {
            let _ = writeln!(out, "case: {case}");
        }
        if let Some(s) = self.s {
            let _ = writeln!(out, "s: {s}");
        }
        if let Some(kind) = self.kind {
            let _ = writeln!(out, "kind: {kind}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {w}");
        }
        if let Some(factors) = &self.factors {
            let _ = writeln!(out, "factors:");
            for f in factors {
                let _ = writeln!(out, "  [{}]", f.join(", "));
            }
        }
        if let Some(members) = &self.idempotents {
            let _ = writeln!(out, "idempotents:");
            for m in members {
                let _ = writeln!(out, "  {}: [{}]", m.label, m.coeffs.join(", "));
            }
        }
        if let Some(c) = &self.checks {
            let dims: Vec<String> = c
                .dimensions
                .iter()
                .map(|d| d.map_or_else(|| "-".to_string(), |d| d.to_string()))
                .collect();
            let _ = writeln!(out, "checks:");
            let _ = writeln!(out, "  idempotent: {}", c.idempotent);
            let _ = writeln!(out, "  orthogonal: {}", c.orthogonal);
            let _ = writeln!(out, "  complete: {}", c.complete);
            let _ = writeln!(out, "  count: {}", c.count);
            let _ = writeln!(out, "  annihilated: {}", c.annihilated);
            let _ = writeln!(out, "  dimensions: [{}]", dims.join(", "));
        }
        if let Some(v) = self.verified {
            let _ = writeln!(out, "verified: {v}");
        }
        out
    }
}

fn factor_lists(factors: &[Poly]) -> Vec<Vec<String>> {
    factors.iter().map(|f| render_list(f.coeffs())).collect()
}

fn compute(req: &Request) -> Result<JsonOutput, Error> {
    let tower = Tower::new(req.field).with_max_level(req.max_level);
    let a = parse_element_with(&req.a, tower.max_level)?;
    if !tower.is_member(&a) {
        return Err(Error::NotAMember(render_element(&a)));
    }
    let mut out = JsonOutput::new(req, &a);
    if req.command == Command::Eval {
        if req.verify {
            out.verified = Some(parse_element_with(&out.a, tower.max_level).as_ref() == Ok(&a));
        }
        return Ok(out);
    }
    let n = req
        .n
        .ok_or_else(|| Error::InvalidArgument(format!("{} requires --n", req.command.name())))?;
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    match req.command {
        Command::Eval => unreachable!(),
        Command::Height => {
            crate::binomial::check_n(n)?;
            let h = height(&a, n, &tower)?;
            out.set_height(&h);
            if req.verify {
                let target = match h.kind {
                    crate::membership::Kind::First => a.clone(),
                    crate::membership::Kind::Second => -&a,
                };
                out.verified = Some(h.witness.pow2k(h.s) == target);
            }
        }
        Command::Factor => {
            let f = factorize(n, &a, &tower)?;
            out.case = Some(f.case.number());
            out.set_height(&f.height);
            out.factors = Some(factor_lists(&f.factors));
            if req.verify {
                out.verified = Some(expand_product(&f.factors) == Poly::binomial(1 << n, &a));
            }
        }
        Command::Idempotents => {
            let spec = AlgebraSpec::new(n, a, tower)?;
            let set = idempotents(&spec)?;
            out.case = Some(set.case.number());
            out.set_height(&set.height);
            out.idempotents = Some(
                set.members
                    .iter()
                    .map(|(label, e)| JsonIdempotent {
                        label: label.to_string(),
                        coeffs: render_list(e.coeffs()),
                    })
                    .collect(),
            );
            if req.verify {
                let report = verify_system(&set);
                out.verified = Some(report.all_passed());
                out.checks = Some(JsonChecks::from(&report));
            }
        }
    }
    Ok(out)
}

/// Executes one request. Output is built completely before anything is returned,
/// so failures never leave partial results on stdout.
pub fn run(req: &Request) -> Outcome {
    let out = match compute(req) {
        Ok(out) => out,
        Err(err) => return Outcome::failure(&err),
    };
    let stdout = if req.json {
        let mut s = serde_json::to_string_pretty(&out).expect("serializable output");
        s.push('\n');
        s
    } else {
        out.to_text()
    };
    if out.verified == Some(false) {
        return Outcome {
            status: 2,
            stdout,
            stderr: "error: verification failed\n".to_string(),
        };
    }
    Outcome {
        status: 0,
        stdout,
        stderr: String::new(),
    }
}

/// Parses arguments and runs; usage errors map to exit status 1.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Request::from_args(args) {
        Ok(req) => run(&req),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                Outcome {
                    status: 0,
                    stdout: e.render().to_string(),
                    stderr: String::new(),
                }
            }
            _ => {
                let rendered = e.render().to_string();
                let line = rendered
                    .lines()
                    .next()
                    .unwrap_or("error: invalid arguments");
                Outcome {
                    status: 1,
                    stdout: String::new(),
                    stderr: format!("{line}\n"),
                }
            }
        },
    }
}
