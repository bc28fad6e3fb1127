use crate::model::{Direction, WorkflowSpec};
use crate::trace::Trace;

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error("malformed trace JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("trace is for workflow '{found}', expected '{expected}'")]
    WorkflowMismatch { expected: String, found: String },
    #[error("invocation {invocation}: unknown program block '{block}'")]
    UnknownBlock { invocation: usize, block: String },
    #[error("invocation {invocation}: unknown edge label '{label}'")]
    UnknownEdge { invocation: usize, label: String },
    #[error("invocation {invocation}: edge '{label}' does not belong to block '{block}'")]
    ForeignEdge {
        invocation: usize,
        label: String,
        block: String,
    },
    #[error("invocation {invocation}: edge '{label}' is not an {expected} edge")]
    WrongDirection {
        invocation: usize,
        label: String,
        expected: Direction,
    },
    #[error("invocation {invocation}: data item on '{label}' has an empty id")]
    EmptyId { invocation: usize, label: String },
}

/// Reads a trace and checks it against the workflow: the workflow name, every
/// invocation's block, and that reads use the block's in-edges and writes its
/// out-edges.
pub fn parse_trace(text: &str, spec: &WorkflowSpec) -> Result<Trace, TraceError> {
    let trace = Trace::from_json(text)?;
    trace.resolve(spec)?;
    Ok(trace)
}

impl Trace {
    /// Deserializes without checking against a workflow.
    pub fn from_json(text: &str) -> Result<Trace, TraceError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    /// Checks every invocation against the workflow.
    pub fn resolve(&self, spec: &WorkflowSpec) -> Result<(), TraceError> {
        if self.workflow != spec.name() {
            return Err(TraceError::WorkflowMismatch {
                expected: spec.name().to_string(),
                found: self.workflow.clone(),
            });
        }
        for (invocation, inv) in self.invocations.iter().enumerate() {
            if !spec.programs().contains(&inv.block) {
                return Err(TraceError::UnknownBlock {
                    invocation,
                    block: inv.block.clone(),
                });
            }
            for (items, expected) in [(&inv.reads, Direction::In), (&inv.writes, Direction::Out)] {
                for (label, list) in items {
                    let edge = spec.edge(label).ok_or_else(|| TraceError::UnknownEdge {
                        invocation,
                        label: label.clone(),
                    })?;
                    if edge.program != inv.block {
                        return Err(TraceError::ForeignEdge {
                            invocation,
                            label: label.clone(),
                            block: inv.block.clone(),
                        });
                    }
                    if edge.direction != expected {
                        return Err(TraceError::WrongDirection {
                            invocation,
                            label: label.clone(),
                            expected,
                        });
                    }
                    if list.iter().any(|item| item.id.is_empty()) {
                        return Err(TraceError::EmptyId {
                            invocation,
                            label: label.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}
