//! The `kpt` command line: load a graph, validate it, analyze its Kumjian-Pask algebra,
//! evaluate elements and export DOT.

pub mod expr;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kpgraph::algebra::{canonical, equals, in_socle, normal_form, Element};
use kpgraph::analysis::{AnalysisOptions, DEFAULT_DEPTH_BOUND};
use kpgraph::graph::{KGraph, KGraphPresentation};
use kpgraph::io::{load, to_dot};
use kpgraph::report::{analyze, render, verify_matrix_units, Format};
use kpgraph::{Degree, DegreeDelta, Error};
use serde_json::json;

pub const DEPTH_ENV: &str = "KPT_DEPTH_BOUND";

pub mod exit {
    pub const OK: i32 = 0;
    pub const NEGATIVE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const UNKNOWN: i32 = 3;
}

#[derive(Debug, Parser)]
#[command(name = "kpt", version, about = "Row-finite k-graphs and their Kumjian-Pask algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the k-graph axioms; exit 1 when a violation is found.
    Validate {
        /// Graph file (JSON or TOML) or builtin URI such as builtin:comb:2
        graph: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Line points, socle, semisimplicity and the matrix decomposition.
    Analyze {
        graph: String,
        /// Search depth for infinite-path questions (default: $KPT_DEPTH_BOUND or 64)
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Also check the matrix-unit identities for indices up to this bound
        #[arg(long)]
        verify_units: Option<u32>,
    },
    /// Evaluate an algebra expression such as "adj(s(e))*s(e)".
    Element(ElementArgs),
    /// Export the colored skeleton as DOT.
    Dot {
        graph: String,
        /// Levels (or lattice box size) kept for infinite graphs
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Debug, Args)]
pub struct ElementArgs {
    pub graph: String,
    pub expr: String,
    /// Print whether the two expressions are equal
    #[arg(long, group = "query")]
    pub equals: Option<String>,
    /// Normal form with every right leg of this degree, e.g. 1 or 1,2
    #[arg(long, group = "query", allow_hyphen_values = true)]
    pub nf: Option<String>,
    /// Graded component of this degree, e.g. 1,-1
    #[arg(long, group = "query", allow_hyphen_values = true)]
    pub grade: Option<String>,
    /// Print whether the element lies in the socle
    #[arg(long, group = "query")]
    pub in_socle: bool,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

/// What a command printed and how it exits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn error(e: &Error) -> Self {
        let code = if matches!(e, Error::Undecided(_)) {
            exit::UNKNOWN
        } else {
            exit::INPUT
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code,
        }
    }
}

/// `--depth`, else `$KPT_DEPTH_BOUND`, else the library default.
pub fn depth_bound(flag: Option<usize>) -> Result<usize, Error> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DEPTH_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{DEPTH_ENV}={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_DEPTH_BOUND),
    }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Validate { graph, format } => validate(&graph, format),
        Command::Analyze {
            graph,
            depth,
            format,
            verify_units,
        } => cmd_analyze(&graph, depth, format, verify_units),
        Command::Element(args) => element(&args),
        Command::Dot { graph, depth } => dot(&graph, depth),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn validate(graph: &str, format: OutputFormat) -> Result<Outcome, Error> {
    let g = load(graph)?;
    let report = g.validate();
    let stdout = match format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report).expect("serializes")),
        OutputFormat::Text => {
            let mut s = if report.ok {
                "ok\n".to_string()
            } else {
                format!("invalid: {} violation(s)\n", report.violations.len())
            };
            for v in &report.violations {
                let _ = writeln!(
                    s,
                    "  {}: {}",
                    serde_json::to_value(v.kind).expect("serializes").as_str().unwrap_or(""),
                    v.detail
                );
            }
            s
        }
    };
    Ok(Outcome::ok(stdout, if report.ok { exit::OK } else { exit::NEGATIVE }))
}

fn cmd_analyze(graph: &str, depth: Option<usize>, format: OutputFormat, units: Option<u32>) -> Result<Outcome, Error> {
    let g = load(graph)?;
    let opts = AnalysisOptions {
        depth_bound: depth_bound(depth)?,
    };
    let report = analyze(&g, opts)?;
    let mut stdout = render(&report, format.into());
    let mut failed_units = false;
    if let Some(bound) = units {
        let checks = verify_matrix_units(&g, &report, bound);
        failed_units = checks.iter().any(|c| !c.passed);
        match format {
            OutputFormat::Json => {
                let combined = json!({ "report": report, "matrix_units": checks });
                stdout = format!("{}\n", serde_json::to_string_pretty(&combined).expect("serializes"));
            }
            OutputFormat::Text => {
                for c in &checks {
                    let _ = writeln!(
                        stdout,
                        "matrix units at {} up to {}: {} ({} identities){}",
                        c.representative,
                        c.bound,
                        if c.passed { "pass" } else { "fail" },
                        c.identities_checked,
                        c.counterexample
                            .as_deref()
                            .map(|x| format!("; {x}"))
                            .unwrap_or_default()
                    );
                }
            }
        }
    }
    let code = if !report.validation.ok || failed_units {
        exit::NEGATIVE
    } else if report.has_unknown() {
        exit::UNKNOWN
    } else {
        exit::OK
    };
    Ok(Outcome::ok(stdout, code))
}

fn require_valid(g: &KGraphPresentation) -> Result<(), Error> {
    let report = g.validate();
    if report.ok {
        Ok(())
    } else {
        let first = &report.violations[0];
        Err(Error::Invalid(format!(
            "{} violation(s), first: {}",
            report.violations.len(),
            first.detail
        )))
    }
}

fn element_output(format: OutputFormat, key: &str, a: &Element) -> String {
    match format {
        OutputFormat::Text => format!("{a}\n"),
        OutputFormat::Json => {
            format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({ key: a, "text": a.to_string() })).expect("serializes")
            )
        }
    }
}

fn boolean_output(format: OutputFormat, key: &str, b: bool) -> Outcome {
    let stdout = match format {
        OutputFormat::Text => format!("{b}\n"),
        OutputFormat::Json => format!("{}\n", json!({ key: b })),
    };
    Outcome::ok(stdout, if b { exit::OK } else { exit::NEGATIVE })
}

fn element(args: &ElementArgs) -> Result<Outcome, Error> {
    let g = load(&args.graph)?;
    if let Err(e) = require_valid(&g) {
        return Ok(Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit::NEGATIVE,
        });
    }
    let a = expr::eval(&g, &expr::parse(&args.expr)?)?;
    if let Some(other) = &args.equals {
        let b = expr::eval(&g, &expr::parse(other)?)?;
        return Ok(boolean_output(args.format, "equals", equals(&g, &a, &b)?));
    }
    if args.in_socle {
        let opts = AnalysisOptions {
            depth_bound: depth_bound(args.depth)?,
        };
        return Ok(boolean_output(args.format, "in_socle", in_socle(&g, &a, opts)?));
    }
    if let Some(m) = &args.nf {
        let m: Degree = m.parse()?;
        return Ok(Outcome::ok(
            element_output(args.format, "normal_form", &normal_form(&g, &a, &m)?),
            exit::OK,
        ));
    }
    if let Some(n) = &args.grade {
        let n: DegreeDelta = n.parse()?;
        if n.rank() != g.rank() {
            return Err(Error::RankMismatch {
                expected: g.rank(),
                got: n.rank(),
            });
        }
        let part = canonical(&g, &canonical(&g, &a)?.graded_component(&n))?;
        return Ok(Outcome::ok(element_output(args.format, "component", &part), exit::OK));
    }
    Ok(Outcome::ok(
        element_output(args.format, "element", &canonical(&g, &a)?),
        exit::OK,
    ))
}

fn dot(graph: &str, depth: usize) -> Result<Outcome, Error> {
    let g = load(graph)?;
    if let Err(e) = require_valid(&g) {
        return Ok(Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit::NEGATIVE,
        });
    }
    Ok(Outcome::ok(to_dot(&g, depth), exit::OK))
}
