use std::fmt::Write;

use crate::model::{Annotation, Direction, Origin, WorkflowSpec};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn program_node(name: &str) -> String {
    quote(&format!("program:{name}"))
}

fn data_node(name: &str) -> String {
    quote(&format!("data:{name}"))
}

/// Graphviz rendering of a workflow and its annotations.
///
/// Program blocks are boxes, data blocks ellipses, dataflow edges solid and
/// labeled with the edge label. Each annotation is drawn from the data block
/// of its output edge back to the data block of its input edge, labeled with
/// its type: user annotations dashed red, inferred ones dotted blue.
pub fn emit_dot(spec: &WorkflowSpec, annotations: &[Annotation]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(spec.name())).unwrap();
    out.push_str("  rankdir=LR;\n");
    for program in spec.programs() {
        writeln!(
            out,
            "  {} [label={}, shape=box];",
            program_node(program),
            quote(program)
        )
        .unwrap();
    }
    for data in spec.data_blocks() {
        writeln!(out, "  {} [label={}, shape=ellipse];", data_node(data), quote(data)).unwrap();
    }
    for edge in spec.edges() {
        let (from, to) = match edge.direction {
            Direction::In => (data_node(&edge.data), program_node(&edge.program)),
            Direction::Out => (program_node(&edge.program), data_node(&edge.data)),
        };
        writeln!(out, "  {from} -> {to} [label={}, style=solid];", quote(&edge.label)).unwrap();
    }

    let mut sorted: Vec<&Annotation> = annotations.iter().collect();
    sorted.sort();
    for ann in sorted {
        let (Some(input), Some(output)) = (spec.edge(&ann.input_edge), spec.edge(&ann.output_edge)) else {
            continue;
        };
        let style = match ann.origin {
            Origin::User => "style=dashed, color=red, fontcolor=red",
            Origin::Inferred => "style=dotted, color=blue, fontcolor=blue",
        };
        writeln!(
            out,
            "  {} -> {} [label={}, tooltip={}, {style}, constraint=false];",
            data_node(&output.data),
            data_node(&input.data),
            quote(ann.assertion.name()),
            quote(&format!("{} -> {}", ann.input_edge, ann.output_edge)),
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::DependencyType;

    #[test]
    fn user_and_inferred_styles() {
        let doc = fixtures::normalize_filter();
        let mut anns = doc.annotations.clone();
        anns.push(Annotation::inferred("x1", "x4", DependencyType::DerivedFrom));
        let dot = emit_dot(&doc.spec, &anns);
        assert_eq!(dot.matches("style=dashed, color=red").count(), 4);
        assert_eq!(dot.matches("style=dotted, color=blue").count(), 1);
        assert!(dot.contains("\"program:normalize\" [label=\"normalize\", shape=box];"));
        assert!(dot.contains("\"data:d1\" [label=\"d1\", shape=ellipse];"));
        assert!(dot.contains("\"data:d5\" -> \"data:d1\" [label=\"DerivedFrom\", tooltip=\"x1 -> x4\""));
    }

    #[test]
    fn no_annotations_only_solid() {
        let dot = emit_dot(&fixtures::multipath().spec, &[]);
        assert!(!dot.contains("dashed"));
        assert!(!dot.contains("dotted"));
        assert_eq!(dot.matches("style=solid").count(), 9);
    }

    #[test]
    fn deterministic() {
        let doc = fixtures::multipath();
        let mut reversed = doc.annotations.clone();
        reversed.reverse();
        assert_eq!(emit_dot(&doc.spec, &doc.annotations), emit_dot(&doc.spec, &reversed));
    }

    #[test]
    fn names_are_escaped() {
        let spec = WorkflowSpec::builder("a \"quoted\" flow")
            .program("p")
            .input("x", "d")
            .build();
        assert!(emit_dot(&spec, &[]).starts_with("digraph \"a \\\"quoted\\\" flow\" {"));
    }
}
