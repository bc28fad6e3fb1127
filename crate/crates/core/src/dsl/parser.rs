//! Recursive-descent parser for `.wf` workflow files.
//!
//! ```text
//! spec    := "workflow" IDENT program* dep*
//! program := "program" IDENT port*
//! port    := "in" IDENT "from" IDENT | "out" IDENT "to" IDENT
//! dep     := "dep" IDENT "->" IDENT ":" TYPE
//! ```
//!
//! Keywords are contextual: any word may name a block or edge, since every
//! identifier position is fixed by the keyword before it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::diagnostic::{Diagnostics, ParseDiagnostic, SourceSpan};
use super::lexer::{tokenize, Token, TokenKind};
use super::SpecDocument;
use crate::model::{validate_structure, Annotation, AssertionType, Edge, StructuralError, WorkflowSpec};

/// Parses DSL text into a structurally valid spec and its user annotations.
pub fn parse_spec(text: &str) -> Result<SpecDocument, Diagnostics> {
    match parse_spec_with_warnings(text) {
        (Some(doc), _) => Ok(doc),
        (None, diagnostics) => Err(Diagnostics(diagnostics)),
    }
}

/// Like [`parse_spec`], but also returns warnings on success. The document is
/// `None` iff at least one error diagnostic was produced.
pub fn parse_spec_with_warnings(text: &str) -> (Option<SpecDocument>, Vec<ParseDiagnostic>) {
    let (tokens, mut diagnostics) = tokenize(text);
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        diagnostics: Vec::new(),
    };
    let raw = parser.parse();
    diagnostics.append(&mut parser.diagnostics);
    let doc = raw.and_then(|raw| raw.resolve(&mut diagnostics));
    diagnostics.sort();
    if diagnostics.iter().any(ParseDiagnostic::is_error) {
        (None, diagnostics)
    } else {
        (doc, diagnostics)
    }
}

struct Ident {
    name: String,
    span: SourceSpan,
}

struct RawPort {
    edge: Edge,
    label_span: SourceSpan,
}

struct RawProgram {
    name: Ident,
    ports: Vec<RawPort>,
}

struct RawDep {
    input: Ident,
    output: Ident,
    assertion: AssertionType,
    span: SourceSpan,
}

struct RawSpec {
    name: Ident,
    programs: Vec<RawProgram>,
    deps: Vec<RawDep>,
}

/// Marker for a syntax error that has already been recorded.
struct Reported;

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    diagnostics: Vec<ParseDiagnostic>,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_word(&self) -> Option<&'t str> {
        self.peek().and_then(Token::word)
    }

    /// Span for errors at the current position; end of input points at the
    /// last token.
    fn here(&self) -> SourceSpan {
        self.peek()
            .or_else(|| self.tokens.last())
            .map_or(SourceSpan::START, |t| t.span)
    }

    fn error(&mut self, span: SourceSpan, message: impl Into<String>) -> Reported {
        self.diagnostics.push(ParseDiagnostic::error(span, message));
        Reported
    }

    fn unexpected(&mut self, expected: &str) -> Reported {
        let found = self.peek().map_or_else(|| "end of input".to_string(), Token::describe);
        let span = self.here();
        self.error(span, format!("expected {expected}, found {found}"))
    }

    fn keyword(&mut self, kw: &str) -> Result<SourceSpan, Reported> {
        match self.peek() {
            Some(t) if t.word() == Some(kw) => {
                self.pos += 1;
                Ok(t.span)
            }
            _ => Err(self.unexpected(&format!("'{kw}'"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<Ident, Reported> {
        match self.peek() {
            Some(
                t @ Token {
                    kind: TokenKind::Word(w),
                    ..
                },
            ) => {
                self.pos += 1;
                Ok(Ident {
                    name: w.clone(),
                    span: t.span,
                })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn punct(&mut self, kind: TokenKind, text: &str) -> Result<SourceSpan, Reported> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(t.span)
            }
            _ => Err(self.unexpected(&format!("'{text}'"))),
        }
    }

    /// Skips to the next `program` or `dep` that starts a line.
    fn recover(&mut self) {
        self.pos += 1;
        while let Some(t) = self.peek() {
            if t.line_start && matches!(t.word(), Some("program" | "dep")) {
                return;
            }
            self.pos += 1;
        }
    }

    fn parse(&mut self) -> Option<RawSpec> {
        if self.peek_word() != Some("workflow") {
            let span = self.here();
            self.error(span, "expected 'workflow' header");
            return None;
        }
        self.pos += 1;
        let name = self.ident("workflow name").ok()?;

        let mut programs = Vec::new();
        let mut deps = Vec::new();
        while let Some(token) = self.peek() {
            let result = match token.word() {
                Some("program") if deps.is_empty() => self.program().map(|p| programs.push(p)),
                Some("program") => Err(self.error(token.span, "program blocks must be declared before any 'dep' line")),
                Some("dep") => self.dep().map(|d| deps.push(d)),
                _ => Err(self.unexpected("'program' or 'dep'")),
            };
            if result.is_err() {
                self.recover();
            }
        }
        Some(RawSpec { name, programs, deps })
    }

    fn program(&mut self) -> Result<RawProgram, Reported> {
        self.keyword("program")?;
        let name = self.ident("program name")?;
        let mut ports = Vec::new();
        loop {
            let (direction_kw, joiner) = match self.peek_word() {
                Some("in") => ("in", "from"),
                Some("out") => ("out", "to"),
                _ => break,
            };
            self.pos += 1;
            let label = self.ident("edge label")?;
            self.keyword(joiner)?;
            let data = self.ident("data block name")?;
            let edge = if direction_kw == "in" {
                Edge::input(label.name, name.name.clone(), data.name)
            } else {
                Edge::output(label.name, name.name.clone(), data.name)
            };
            ports.push(RawPort {
                edge,
                label_span: label.span,
            });
        }
        Ok(RawProgram { name, ports })
    }

    fn dep(&mut self) -> Result<RawDep, Reported> {
        let start = self.keyword("dep")?;
        let input = self.ident("input edge label")?;
        self.punct(TokenKind::Arrow, "->")?;
        let output = self.ident("output edge label")?;
        self.punct(TokenKind::Colon, ":")?;
        let ty = self.ident("dependency type")?;
        let assertion = ty.name.parse::<AssertionType>().map_err(|_| {
            self.error(
                ty.span,
                format!(
                    "unknown dependency type '{}'; expected one of {}",
                    ty.name,
                    AssertionType::NAMES.join(", ")
                ),
            )
        })?;
        let span = SourceSpan::new(
            start.line,
            start.column,
            if ty.span.line == start.line {
                ty.span.column + ty.span.length - start.column
            } else {
                start.length
            },
        );
        Ok(RawDep {
            input,
            output,
            assertion,
            span,
        })
    }
}

impl RawSpec {
    /// Semantic checks: duplicate declarations, unresolved references, and
    /// the structural rules, each mapped back to a source span.
    fn resolve(self, diagnostics: &mut Vec<ParseDiagnostic>) -> Option<SpecDocument> {
        let before = diagnostics.len();

        let mut program_names: BTreeSet<String> = BTreeSet::new();
        let mut data_blocks = BTreeSet::new();
        let mut edges = Vec::new();
        let mut label_spans: HashMap<String, SourceSpan> = HashMap::new();
        for program in &self.programs {
            if !program_names.insert(program.name.name.clone()) {
                diagnostics.push(ParseDiagnostic::error(
                    program.name.span,
                    format!("program '{}' is declared more than once", program.name.name),
                ));
            }
            if program.ports.is_empty() {
                diagnostics.push(ParseDiagnostic::warning(
                    program.name.span,
                    format!("program '{}' has no ports", program.name.name),
                ));
            }
            for port in &program.ports {
                if let Some(first) = label_spans.get(&port.edge.label) {
                    diagnostics.push(ParseDiagnostic::error(
                        port.label_span,
                        format!(
                            "duplicate edge label '{}' (first declared at {})",
                            port.edge.label, first
                        ),
                    ));
                } else {
                    label_spans.insert(port.edge.label.clone(), port.label_span);
                }
                data_blocks.insert(port.edge.data.clone());
                edges.push(port.edge.clone());
            }
        }
        let spec = WorkflowSpec::new(self.name.name, program_names, data_blocks, edges);

        for error in validate_structure(&spec, &[]) {
            if let StructuralError::MultipleWriters { data, writers } = &error {
                let span = writers
                    .iter()
                    .filter_map(|w| label_spans.get(w))
                    .max()
                    .copied()
                    .unwrap_or(self.name.span);
                diagnostics.push(ParseDiagnostic::error(
                    span,
                    format!("data block '{data}' has multiple writers: {}", writers.join(", ")),
                ));
            }
        }

        let mut annotations = Vec::new();
        let mut seen_pairs = BTreeMap::new();
        for dep in &self.deps {
            let ann = Annotation::user(dep.input.name.clone(), dep.output.name.clone(), dep.assertion);
            let mut resolved = true;
            for ident in [&dep.input, &dep.output] {
                if !label_spans.contains_key(&ident.name) {
                    diagnostics.push(ParseDiagnostic::error(
                        ident.span,
                        format!("unresolved edge label '{}'", ident.name),
                    ));
                    resolved = false;
                }
            }
            if let Some(first) = seen_pairs.insert(ann.pair(), dep.span) {
                diagnostics.push(ParseDiagnostic::error(
                    dep.span,
                    format!("duplicate annotation on {} (first at {first})", ann.pair()),
                ));
            }
            if resolved {
                for error in validate_structure(&spec, std::slice::from_ref(&ann)) {
                    let span = match &error {
                        StructuralError::WrongDirection { label, .. } if *label == dep.input.name => dep.input.span,
                        StructuralError::WrongDirection { .. } => dep.output.span,
                        StructuralError::NotUpstream { .. } => dep.span,
                        // Graph-level errors were reported above.
                        _ => continue,
                    };
                    diagnostics.push(ParseDiagnostic::error(span, error.to_string()));
                }
            }
            annotations.push(ann);
        }

        let failed = diagnostics[before..].iter().any(ParseDiagnostic::is_error);
        (!failed).then(|| SpecDocument::new(spec, annotations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DependencyType;

    const NORMALIZE_FILTER: &str = include_str!("../../fixtures/normalize_filter.wf");

    fn errors_of(text: &str) -> Vec<ParseDiagnostic> {
        parse_spec(text).unwrap_err().errors().cloned().collect()
    }

    #[test]
    fn normalize_filter_parses() {
        let doc = parse_spec(NORMALIZE_FILTER).unwrap();
        assert_eq!(doc.spec.programs().len(), 2);
        assert_eq!(doc.spec.data_blocks().len(), 5);
        assert_eq!(doc.spec.edges().len(), 6);
        assert_eq!(doc.annotations.len(), 4);
        assert!(doc
            .annotations
            .contains(&Annotation::user("x3", "x4", DependencyType::SameAs)));
    }

    #[test]
    fn empty_input_needs_header() {
        let errors = errors_of("");
        assert_eq!(errors.len(), 1);
        assert_eq!(errors[0].message, "expected 'workflow' header");
        assert_eq!(errors[0].span, SourceSpan::START);
        assert_eq!(errors_of("# only a comment\n")[0].message, "expected 'workflow' header");
    }

    #[test]
    fn unknown_type_lists_legal_names() {
        let text = "workflow w\nprogram p\n  in x1 from a\n  out x2 to b\ndep x1 -> x2 : Derived\n";
        let errors = errors_of(text);
        assert_eq!(errors.len(), 1);
        assert!(errors[0].message.starts_with("unknown dependency type 'Derived'"));
        for name in AssertionType::NAMES {
            assert!(errors[0].message.contains(name), "{name}");
        }
        assert_eq!(errors[0].span, SourceSpan::new(5, 16, 7));
    }

    #[test]
    fn duplicate_label_and_unresolved_reference() {
        let text = "workflow w\nprogram p\n in x from a\n out x to b\ndep x -> y : SameAs\n";
        let errors = errors_of(text);
        assert!(errors
            .iter()
            .any(|d| d.message.starts_with("duplicate edge label 'x'") && d.span == SourceSpan::new(4, 6, 1)));
        assert!(errors
            .iter()
            .any(|d| d.message == "unresolved edge label 'y'" && d.span == SourceSpan::new(5, 10, 1)));
    }

    #[test]
    fn structural_errors_carry_spans() {
        let text =
            "workflow w\nprogram a\n out xa to d\nprogram b\n out xb to d\n in xi from d\ndep xb -> xa : SameAs\n";
        let errors = errors_of(text);
        let messages: Vec<_> = errors.iter().map(|d| d.message.as_str()).collect();
        assert!(
            messages.contains(&"data block 'd' has multiple writers: xa, xb"),
            "{messages:?}"
        );
        assert!(
            messages.contains(&"annotation endpoint 'xb' must be an in edge"),
            "{messages:?}"
        );
    }

    #[test]
    fn recovers_after_syntax_error() {
        let text = "workflow w\nprogram p in x from\nprogram q\n  in a from\ndep a b\n";
        let errors = errors_of(text);
        assert!(errors.len() >= 2, "{errors:?}");
    }

    #[test]
    fn keywords_are_contextual() {
        let doc = parse_spec("workflow in\nprogram program\n in in from from\n out out to to\ndep in -> out : SameAs")
            .unwrap();
        assert_eq!(doc.spec.name(), "in");
        assert_eq!(doc.spec.edges().len(), 2);
    }

    #[test]
    fn portless_program_warns() {
        let (doc, diagnostics) = parse_spec_with_warnings("workflow w\nprogram idle\n");
        assert!(doc.is_some());
        assert_eq!(diagnostics.len(), 1);
        assert!(!diagnostics[0].is_error());
    }

    #[test]
    fn programs_after_deps_rejected() {
        let text = "workflow w\nprogram p\n in a from d\n out b to e\ndep a -> b : SameAs\nprogram q\n";
        assert!(errors_of(text)[0].message.contains("before any 'dep'"));
    }
}
