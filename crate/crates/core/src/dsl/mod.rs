//! File formats: the `.wf` workflow DSL, trace JSON, and the Graphviz and
//! answer-set-program exports.

mod asp;
mod diagnostic;
mod dot;
mod emit;
mod lexer;
mod parser;
mod trace_json;

pub use asp::{emit_asp_program, read_atom_mapping, type_atom, AspExportError, CHOICE_RULE};
pub use diagnostic::{Diagnostics, ParseDiagnostic, Severity, SourceSpan};
pub use dot::emit_dot;
pub use emit::emit_spec;
pub use lexer::is_identifier;
pub use parser::{parse_spec, parse_spec_with_warnings};
pub use trace_json::{parse_trace, TraceError};

use crate::model::{Annotation, WorkflowSpec};

/// A workflow together with its user annotations, as read from a `.wf` file.
///
/// Annotations are kept sorted so documents compare by content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecDocument {
    pub spec: WorkflowSpec,
    pub annotations: Vec<Annotation>,
}

impl SpecDocument {
    pub fn new(spec: WorkflowSpec, mut annotations: Vec<Annotation>) -> Self {
        annotations.sort();
        SpecDocument { spec, annotations }
    }
}
