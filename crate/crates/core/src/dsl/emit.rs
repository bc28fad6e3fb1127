use std::fmt::Write;

use crate::model::{Annotation, Direction, WorkflowSpec};

/// Canonical DSL text: programs sorted by name, inputs before outputs and
/// each sorted by label, deps by (input, output, type). Every annotation is
/// written as a `dep` line regardless of origin, so inferred annotations
/// re-parse as user ones.
pub fn emit_spec(spec: &WorkflowSpec, annotations: &[Annotation]) -> String {
    let mut out = String::new();
    writeln!(out, "workflow {}", spec.name()).unwrap();
    for program in spec.programs() {
        writeln!(out, "\nprogram {program}").unwrap();
        let mut ports: Vec<_> = spec.edges_of(program).collect();
        ports.sort_by_key(|e| e.direction == Direction::Out);
        for edge in ports {
            match edge.direction {
                Direction::In => writeln!(out, "  in {} from {}", edge.label, edge.data),
                Direction::Out => writeln!(out, "  out {} to {}", edge.label, edge.data),
            }
            .unwrap();
        }
    }
    let mut deps: Vec<&Annotation> = annotations.iter().collect();
    deps.sort_by(|a, b| {
        (&a.input_edge, &a.output_edge, a.assertion).cmp(&(&b.input_edge, &b.output_edge, b.assertion))
    });
    if !deps.is_empty() {
        out.push('\n');
    }
    for dep in deps {
        writeln!(out, "dep {} -> {} : {}", dep.input_edge, dep.output_edge, dep.assertion).unwrap();
    }
    out
}
