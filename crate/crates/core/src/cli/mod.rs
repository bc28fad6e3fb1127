//! The `wflineage` command line.
//!
//! Commands run in-process through [`run`], which returns everything the
//! process would print along with its exit code.

mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dsl::{emit_asp_program, emit_dot, parse_spec_with_warnings, parse_trace, SpecDocument};
use crate::reasoner::{check_consistency, infer, solve, Consistency, ReasonError, DEFAULT_MAX_MODELS};
use crate::trace::{check_trace, warn_sameas_candidates};

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Inconsistent annotations or trace violations.
    pub const FAILED: i32 = 1;
    /// Unreadable input, parse or structural errors, unsupported export.
    pub const INPUT_ERROR: i32 = 2;
    pub const USAGE: i32 = 3;
}

#[derive(Debug, Parser)]
#[command(
    name = "wflineage",
    version,
    about = "Check and infer dependency-type annotations on workflow specifications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report structural problems and whether the annotations are consistent.
    Validate { spec: PathBuf },
    /// Entailed type or remaining options for every up-stream pair.
    Infer {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate answer sets.
    Solve {
        spec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_MODELS as u64, value_parser = clap::value_parser!(u64).range(1..))]
        max_models: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write a Graphviz graph and/or an answer-set program.
    #[command(group = clap::ArgGroup::new("target").required(true).multiple(true))]
    Export {
        spec: PathBuf,
        #[arg(long, group = "target")]
        dot: Option<PathBuf>,
        #[arg(long, group = "target")]
        asp: Option<PathBuf>,
    },
    /// Check a recorded trace against the SameAs and ValueOf annotations.
    CheckTrace { spec: PathBuf, trace: PathBuf },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn finish(mut self, code: i32) -> Output {
        self.code = code;
        self
    }

    fn fail(mut self, code: i32, message: impl std::fmt::Display) -> Output {
        let _ = writeln!(self.stderr, "error: {message}");
        self.finish(code)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    stderr: text,
                    code: exit::USAGE,
                    ..Output::default()
                }
            } else {
                Output {
                    stdout: text,
                    code: exit::OK,
                    ..Output::default()
                }
            };
        }
    };
    let out = Output::default();
    match cli.command {
        Command::Validate { spec } => validate(out, &spec),
        Command::Infer { spec, format } => infer_cmd(out, &spec, format),
        Command::Solve {
            spec,
            max_models,
            format,
        } => solve_cmd(out, &spec, usize::try_from(max_models).unwrap_or(usize::MAX), format),
        Command::Export { spec, dot, asp } => export(out, &spec, dot.as_deref(), asp.as_deref()),
        Command::CheckTrace { spec, trace } => check_trace_cmd(out, &spec, &trace),
    }
}

/// Entry point for the binary: runs on the process arguments, prints, and
/// returns the exit code.
pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

/// Reads and parses a spec, sending warnings and errors to stderr.
fn load(out: &mut Output, path: &Path) -> Option<SpecDocument> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => {
            let _ = writeln!(out.stderr, "error: cannot read {}: {e}", path.display());
            return None;
        }
    };
    let (doc, diagnostics) = parse_spec_with_warnings(&text);
    for d in &diagnostics {
        out.stderr.push_str(&d.render(&text, &path.display().to_string()));
    }
    doc
}

fn reason_failure(mut out: Output, err: ReasonError) -> Output {
    match err {
        ReasonError::Inconsistent(conflicts) => {
            out.stdout.push_str(&report::conflicts(&conflicts));
            out.finish(exit::FAILED)
        }
        other => out.fail(exit::INPUT_ERROR, other),
    }
}

fn validate(mut out: Output, path: &Path) -> Output {
    let Some(doc) = load(&mut out, path) else {
        return out.finish(exit::INPUT_ERROR);
    };
    match check_consistency(&doc.spec, &doc.annotations) {
        Ok(Consistency::Consistent) => {
            out.stdout.push_str("consistent\n");
            out.finish(exit::OK)
        }
        Ok(Consistency::Inconsistent(conflicts)) => {
            out.stdout.push_str(&report::conflicts(&conflicts));
            out.finish(exit::FAILED)
        }
        Err(e) => out.fail(exit::INPUT_ERROR, e),
    }
}

fn infer_cmd(mut out: Output, path: &Path, format: Format) -> Output {
    let Some(doc) = load(&mut out, path) else {
        return out.finish(exit::INPUT_ERROR);
    };
    match infer(&doc.spec, &doc.annotations) {
        Ok(inferred) => {
            out.stdout.push_str(&match format {
                Format::Text => report::inference_text(&inferred),
                Format::Json => report::inference_json(&inferred),
            });
            out.finish(exit::OK)
        }
        Err(e) => reason_failure(out, e),
    }
}

fn solve_cmd(mut out: Output, path: &Path, max_models: usize, format: Format) -> Output {
    let Some(doc) = load(&mut out, path) else {
        return out.finish(exit::INPUT_ERROR);
    };
    let result = match solve(&doc.spec, &doc.annotations, max_models) {
        Ok(result) => result,
        Err(e) => return reason_failure(out, e),
    };
    let conflicts = if result.is_consistent() {
        Vec::new()
    } else {
        match check_consistency(&doc.spec, &doc.annotations) {
            Ok(Consistency::Inconsistent(c)) => c,
            Ok(Consistency::Consistent) => Vec::new(),
            Err(e) => return out.fail(exit::INPUT_ERROR, e),
        }
    };
    out.stdout.push_str(&match format {
        Format::Text => report::solve_text(&result, max_models, &conflicts),
        Format::Json => report::solve_json(&result),
    });
    if result.is_consistent() {
        out.finish(exit::OK)
    } else {
        out.finish(exit::FAILED)
    }
}

fn export(mut out: Output, path: &Path, dot: Option<&Path>, asp: Option<&Path>) -> Output {
    let Some(doc) = load(&mut out, path) else {
        return out.finish(exit::INPUT_ERROR);
    };
    if let Some(target) = asp {
        let program = match emit_asp_program(&doc.spec, &doc.annotations) {
            Ok(p) => p,
            Err(e) => return out.fail(exit::INPUT_ERROR, e),
        };
        if let Err(e) = fs::write(target, program) {
            return out.fail(
                exit::INPUT_ERROR,
                format_args!("cannot write {}: {e}", target.display()),
            );
        }
        let _ = writeln!(out.stdout, "wrote {}", target.display());
    }
    if let Some(target) = dot {
        // Inferred edges are drawn only when every answer set was seen.
        let mut annotations = doc.annotations.clone();
        match infer(&doc.spec, &doc.annotations) {
            Ok(inferred) if !inferred.approximate => annotations.extend(inferred.inferred_annotations()),
            Ok(_) => out
                .stderr
                .push_str("warning: answer sets truncated; inferred edges omitted\n"),
            Err(ReasonError::Inconsistent(_)) => out
                .stderr
                .push_str("warning: annotations are inconsistent; inferred edges omitted\n"),
            Err(e) => return out.fail(exit::INPUT_ERROR, e),
        }
        if let Err(e) = fs::write(target, emit_dot(&doc.spec, &annotations)) {
            return out.fail(
                exit::INPUT_ERROR,
                format_args!("cannot write {}: {e}", target.display()),
            );
        }
        let _ = writeln!(out.stdout, "wrote {}", target.display());
    }
    out.finish(exit::OK)
}

fn check_trace_cmd(mut out: Output, spec_path: &Path, trace_path: &Path) -> Output {
    let Some(doc) = load(&mut out, spec_path) else {
        return out.finish(exit::INPUT_ERROR);
    };
    let text = match fs::read_to_string(trace_path) {
        Ok(text) => text,
        Err(e) => {
            return out.fail(
                exit::INPUT_ERROR,
                format_args!("cannot read {}: {e}", trace_path.display()),
            )
        }
    };
    let trace = match parse_trace(&text, &doc.spec) {
        Ok(trace) => trace,
        Err(e) => return out.fail(exit::INPUT_ERROR, format_args!("{}: {e}", trace_path.display())),
    };
    let violations = match check_trace(&doc.spec, &doc.annotations, &trace) {
        Ok(v) => v,
        Err(e) => return out.fail(exit::INPUT_ERROR, e),
    };
    let warnings = warn_sameas_candidates(&doc.spec, &doc.annotations, &trace);
    out.stdout
        .push_str(&report::trace_text(&violations, &warnings, trace.invocations.len()));
    if violations.is_empty() {
        out.finish(exit::OK)
    } else {
        out.finish(exit::FAILED)
    }
}
