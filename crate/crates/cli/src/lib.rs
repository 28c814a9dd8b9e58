//! The `gpa` command-line front end, as a library so it can be driven
//! in-process by tests.
//!
//! Exit codes: 0 definite result, 1 input error, 2 verdict unknown,
//! 3 internal bound exceeded. Diagnostics go to stderr only; stdout is
//! empty whenever the exit code is 1 or 3.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use graphprod::certify::{build_certificate_for, certificate_to_json, export_certificate_dot, CertifyError};
use graphprod::classify::{ClassifyError, EndsClass, Session};
use graphprod::graph::{
    full_subgraph, separators_within, GraphError, ProductGraph, VertexSet, MAX_GRAPH_VERTICES,
};
use graphprod::oracle::{EndsEstimate, EstimateParams, Oracle, OracleError, DEFAULT_BALL_CAP};
use graphprod::presentation::{format_word, standard_presentation, Presentation, PresentationError};
use graphprod::report::{analyze, ends_json, envelope, oracle_ends_json, separators_json, to_pretty};
use graphprod::serial::parse_input;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

/// Environment variable overriding the separator / vertex bound.
pub const MAX_VERTICES_ENV: &str = "GPA_MAX_VERTICES";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Analyze,
    Ends,
    Certify,
    Present,
    OracleEnds,
    Separators,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Ends => "ends",
            Command::Certify => "certify",
            Command::Present => "present",
            Command::OracleEnds => "oracle-ends",
            Command::Separators => "separators",
        }
    }

    fn default_format(self) -> Format {
        match self {
            Command::Present => Format::Text,
            _ => Format::Json,
        }
    }

    fn accepts(self, f: Format) -> bool {
        match self {
            Command::Certify => matches!(f, Format::Json | Format::Dot),
            Command::Present => matches!(f, Format::Json | Format::Text),
            _ => f == Format::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleOptions {
    pub inner: Option<usize>,
    pub outer: Option<usize>,
    pub stability: Option<usize>,
    pub cap: Option<usize>,
}

impl OracleOptions {
    fn is_empty(&self) -> bool {
        *self == OracleOptions::default()
    }

    fn params(&self) -> EstimateParams {
        let d = EstimateParams::default();
        EstimateParams {
            inner: self.inner.unwrap_or(d.inner),
            outer: self.outer.unwrap_or(d.outer),
            stability: self.stability.unwrap_or(d.stability),
            cap: self.cap.unwrap_or(DEFAULT_BALL_CAP),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub input: PathBuf,
    pub command: Command,
    pub format: Option<Format>,
    pub oracle: OracleOptions,
    pub subgraph: Option<Vec<String>>,
    /// Separator / vertex bound; `None` uses the library default.
    pub max_vertices: Option<usize>,
}

impl AnalysisRequest {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        AnalysisRequest {
            input: input.into(),
            command,
            format: None,
            oracle: OracleOptions::default(),
            subgraph: None,
            max_vertices: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout: stdout.into_bytes(), stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: Vec::new(), stderr: format!("gpa: {msg}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gpa", version, about = "Ends and semistability of graph products of groups")]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(clap::Args, Debug)]
struct CommonArgs {
    /// Graph description file (JSON)
    input: PathBuf,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Restrict to the full subgraph on these vertices (comma separated)
    #[arg(long, value_delimiter = ',')]
    subgraph: Option<Vec<String>>,
}

#[derive(clap::Args, Debug)]
struct OracleArgs {
    /// Inner ball radius removed before counting components
    #[arg(long)]
    inner: Option<usize>,
    /// Largest outer radius examined
    #[arg(long)]
    outer: Option<usize>,
    /// Number of equal consecutive counts required
    #[arg(long)]
    stability: Option<usize>,
    /// Maximum number of ball elements
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Ends, semistability, bad vertices and a certificate
    Analyze(CommonArgs),
    /// Number of ends with its witness
    Ends(CommonArgs),
    /// Semistability certificate (json or dot)
    Certify(CommonArgs),
    /// Standard presentation (text or json)
    Present(CommonArgs),
    /// Estimate ends from Cayley graph balls
    OracleEnds {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Finite complete separators
    Separators(CommonArgs),
}

impl Cli {
    pub fn into_request(self, max_vertices: Option<usize>) -> AnalysisRequest {
        let (command, common, oracle) = match self.command {
            CliCommand::Analyze(c) => (Command::Analyze, c, None),
            CliCommand::Ends(c) => (Command::Ends, c, None),
            CliCommand::Certify(c) => (Command::Certify, c, None),
            CliCommand::Present(c) => (Command::Present, c, None),
            CliCommand::Separators(c) => (Command::Separators, c, None),
            CliCommand::OracleEnds { common, oracle } => (Command::OracleEnds, common, Some(oracle)),
        };
        let oracle = oracle
            .map(|o| OracleOptions { inner: o.inner, outer: o.outer, stability: o.stability, cap: o.cap })
            .unwrap_or_default();
        AnalysisRequest {
            input: common.input,
            command,
            format: common.format,
            oracle,
            subgraph: common.subgraph,
            max_vertices,
        }
    }
}

/// Reads `GPA_MAX_VERTICES`; `Err` carries the diagnostic for a bad value.
pub fn max_vertices_from_env() -> Result<Option<usize>, String> {
    match std::env::var(MAX_VERTICES_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if (1..=MAX_GRAPH_VERTICES).contains(&n) => Ok(Some(n)),
            _ => Err(format!("{MAX_VERTICES_ENV} must be an integer in 1..={MAX_GRAPH_VERTICES}, got '{s}'")),
        },
    }
}

fn graph_code(e: &GraphError) -> i32 {
    match e {
        GraphError::BoundExceeded { .. } => EXIT_BOUND,
        _ => EXIT_INPUT,
    }
}

fn classify_code(e: &ClassifyError) -> i32 {
    match e {
        ClassifyError::Graph(g) => graph_code(g),
        ClassifyError::NotFinitelyPresented(_) => EXIT_INPUT,
    }
}

fn certify_code(e: &CertifyError) -> i32 {
    match e {
        CertifyError::UnknownVerdict => EXIT_UNKNOWN,
        CertifyError::SearchExhausted => EXIT_BOUND,
        CertifyError::Classify(c) => classify_code(c),
        CertifyError::EmptySubject | CertifyError::Malformed(_) => EXIT_INPUT,
    }
}

fn presentation_json(p: &Presentation) -> String {
    let p = p.canonical();
    to_pretty(&json!({
        "format": "presentation-v1",
        "generators": p.generators.iter().map(|g| json!({ "vertex": g.vertex, "symbol": g.symbol })).collect::<Vec<_>>(),
        "relators": p.relators.iter().map(|r| format_word(r)).collect::<Vec<_>>(),
    }))
}

pub fn run(req: &AnalysisRequest) -> Outcome {
    let format = req.format.unwrap_or(req.command.default_format());
    if !req.command.accepts(format) {
        return Outcome::fail(
            EXIT_INPUT,
            format!("format {format:?} is not available for '{}'", req.command.name()),
        );
    }
    if req.command != Command::OracleEnds && !req.oracle.is_empty() {
        return Outcome::fail(EXIT_INPUT, "oracle parameters are only valid with 'oracle-ends'");
    }
    let bytes = match std::fs::read(&req.input) {
        Ok(b) => b,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("{}: {e}", req.input.display())),
    };
    let g = match parse_input(&bytes) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("{}: {e}", req.input.display())),
    };
    let subject = match &req.subgraph {
        None => g.all(),
        Some(names) => match g.set_of(names) {
            Ok(s) => s,
            Err(e) => return Outcome::fail(EXIT_INPUT, e),
        },
    };
    run_on(req, format, &g, subject)
}

fn run_on(req: &AnalysisRequest, format: Format, g: &ProductGraph, subject: VertexSet) -> Outcome {
    let session = match req.max_vertices {
        Some(b) => Session::with_bound(g, b),
        None => Session::new(g),
    };
    match req.command {
        Command::Analyze => match analyze(&session, subject) {
            Err(e) => Outcome::fail(classify_code(&e), e),
            Ok(a) => match &a.certificate {
                Err(e @ CertifyError::SearchExhausted) => Outcome::fail(EXIT_BOUND, e),
                _ => {
                    let code = if a.is_definite() { EXIT_OK } else { EXIT_UNKNOWN };
                    Outcome::ok(code, to_pretty(&a.to_value(g)))
                }
            },
        },
        Command::Ends => match session.ends(subject) {
            Err(e) => Outcome::fail(classify_code(&e), e),
            Ok(v) => {
                let code = if v.class == EndsClass::Unknown { EXIT_UNKNOWN } else { EXIT_OK };
                Outcome::ok(code, to_pretty(&envelope("ends", g, subject, vec![("ends", ends_json(g, &v))])))
            }
        },
        Command::Separators => match separators_within(g, subject, session.bound()) {
            Err(e) => Outcome::fail(graph_code(&e), e),
            Ok(seps) => {
                let body = separators_json(g, &seps)["separators"].take();
                Outcome::ok(
                    EXIT_OK,
                    to_pretty(&envelope("separators", g, subject, vec![("separators", body)])),
                )
            }
        },
        Command::Certify => match build_certificate_for(&session, subject) {
            Err(e) => Outcome::fail(certify_code(&e), e),
            Ok(c) => {
                let text = match format {
                    Format::Dot => export_certificate_dot(g, &c),
                    _ => certificate_to_json(g, &c) + "\n",
                };
                Outcome::ok(EXIT_OK, text)
            }
        },
        Command::Present => {
            let sub = match full_subgraph(g, subject) {
                Ok(s) => s,
                Err(e) => return Outcome::fail(graph_code(&e), e),
            };
            match standard_presentation(&sub) {
                Err(PresentationError::Graph(e)) => Outcome::fail(graph_code(&e), e),
                Err(e) => Outcome::fail(EXIT_INPUT, e),
                Ok(p) => Outcome::ok(
                    EXIT_OK,
                    if format == Format::Json { presentation_json(&p) } else { p.to_text() },
                ),
            }
        }
        Command::OracleEnds => {
            let sub = match full_subgraph(g, subject) {
                Ok(s) => s,
                Err(e) => return Outcome::fail(graph_code(&e), e),
            };
            let params = req.oracle.params();
            let report = Oracle::new(&sub).and_then(|o| o.estimate_ends(&params));
            match report {
                Err(e @ OracleError::CapExceeded(_)) => Outcome::fail(EXIT_BOUND, e),
                Err(e) => Outcome::fail(EXIT_INPUT, e),
                Ok(r) => {
                    let code = if r.estimate == EndsEstimate::Inconclusive { EXIT_UNKNOWN } else { EXIT_OK };
                    let body = oracle_ends_json(&r, &params);
                    Outcome::ok(code, to_pretty(&envelope("oracle-ends", g, subject, vec![("oracle", body)])))
                }
            }
        }
    }
}
