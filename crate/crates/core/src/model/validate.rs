use std::collections::{BTreeMap, BTreeSet};

use super::lattice::AssertionType;
use super::topology::Topology;
use super::workflow::{Annotation, Direction, PairKey, WorkflowSpec};

/// A structural defect in a workflow or its annotations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, thiserror::Error)]
pub enum StructuralError {
    #[error("empty {kind} identifier")]
    EmptyIdentifier { kind: &'static str },
    #[error("edge label '{label}' is used {count} times")]
    DuplicateLabel { label: String, count: usize },
    #[error("edge '{edge}' references undeclared program block '{program}'")]
    UnknownProgram { edge: String, program: String },
    #[error("edge '{edge}' references undeclared data block '{data}'")]
    UnknownDataBlock { edge: String, data: String },
    #[error("data block '{data}' has multiple writers: {}", writers.join(", "))]
    MultipleWriters { data: String, writers: Vec<String> },
    #[error("annotation references unknown edge '{label}'")]
    UnknownAnnotationEdge { label: String },
    #[error("annotation endpoint '{label}' must be an {expected} edge")]
    WrongDirection { label: String, expected: Direction },
    #[error("annotation {pair} : {assertion} is not on an up-stream pair")]
    NotUpstream { pair: PairKey, assertion: AssertionType },
    #[error("more than one annotation on {pair}")]
    DuplicateAnnotation { pair: PairKey },
}

/// Checks label uniqueness, reference resolution, the single-writer rule,
/// and that every annotation joins an in-edge to an out-edge.
///
/// Dependency-type annotations must sit on up-stream pairs; `NotFlowsFrom`
/// is exempt because it asserts the opposite, which the reasoner checks.
pub fn validate_structure(spec: &WorkflowSpec, annotations: &[Annotation]) -> Vec<StructuralError> {
    let mut errors = Vec::new();

    if spec.name().is_empty() {
        errors.push(StructuralError::EmptyIdentifier { kind: "workflow" });
    }
    if spec.programs().iter().any(String::is_empty) {
        errors.push(StructuralError::EmptyIdentifier { kind: "program" });
    }
    if spec.data_blocks().iter().any(String::is_empty) {
        errors.push(StructuralError::EmptyIdentifier { kind: "data block" });
    }

    let mut label_counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut writers: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for edge in spec.edges() {
        if edge.label.is_empty() {
            errors.push(StructuralError::EmptyIdentifier { kind: "edge" });
        }
        *label_counts.entry(&edge.label).or_default() += 1;
        if !spec.programs().contains(&edge.program) {
            errors.push(StructuralError::UnknownProgram {
                edge: edge.label.clone(),
                program: edge.program.clone(),
            });
        }
        if !spec.data_blocks().contains(&edge.data) {
            errors.push(StructuralError::UnknownDataBlock {
                edge: edge.label.clone(),
                data: edge.data.clone(),
            });
        }
        if edge.direction == Direction::Out {
            writers.entry(&edge.data).or_default().push(edge.label.clone());
        }
    }
    for (label, count) in label_counts.into_iter().filter(|(_, c)| *c > 1) {
        errors.push(StructuralError::DuplicateLabel {
            label: label.to_string(),
            count,
        });
    }
    for (data, writers) in writers.into_iter().filter(|(_, w)| w.len() > 1) {
        errors.push(StructuralError::MultipleWriters {
            data: data.to_string(),
            writers,
        });
    }

    // Up-stream membership is only meaningful on an unambiguous graph.
    let graph_ok = errors
        .iter()
        .all(|e| matches!(e, StructuralError::MultipleWriters { .. }));
    let topology = Topology::new(spec);
    let up_stream = graph_ok.then(|| topology.up_stream_pairs());

    let mut seen_pairs = BTreeSet::new();
    for ann in annotations {
        let mut endpoints_ok = true;
        for (label, expected) in [(&ann.input_edge, Direction::In), (&ann.output_edge, Direction::Out)] {
            match spec.edge(label) {
                None => {
                    errors.push(StructuralError::UnknownAnnotationEdge { label: label.clone() });
                    endpoints_ok = false;
                }
                Some(edge) if edge.direction != expected => {
                    errors.push(StructuralError::WrongDirection {
                        label: label.clone(),
                        expected,
                    });
                    endpoints_ok = false;
                }
                Some(_) => {}
            }
        }
        let pair = ann.pair();
        if !seen_pairs.insert(pair.clone()) {
            errors.push(StructuralError::DuplicateAnnotation { pair: pair.clone() });
        }
        if let (true, Some(up_stream), AssertionType::Dependency(_)) = (endpoints_ok, &up_stream, ann.assertion) {
            if !up_stream.contains(&pair) {
                errors.push(StructuralError::NotUpstream {
                    pair,
                    assertion: ann.assertion,
                });
            }
        }
    }

    errors
}
