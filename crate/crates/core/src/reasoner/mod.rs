//! Path-type semantics and the answer-set solver over partial annotations.
//!
//! An answer set gives every up-stream (input, output) pair exactly one type
//! such that user annotations are kept and each pair's type is the type of
//! its strongest dataflow path, a path's type being its weakest single-block
//! link.

mod consistency;
mod infer;
mod oracle;
mod paths;
mod solver;

pub use consistency::{check_consistency, Conflict, ConflictReason, Consistency, WitnessPath};
pub use infer::{infer, infer_with_limit, Inference, InferenceReport};
pub use oracle::{brute_force_solve, DEFAULT_ORACLE_PAIR_CAP};
pub use paths::{hops, path_min, path_type, simple_paths, widest_path_type};
pub use solver::{solve, Assignment, SolveResult, DEFAULT_MAX_MODELS};

use crate::model::{LookupError, PairKey, StructuralError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReasonError {
    #[error("workflow has structural errors:\n{}", .0.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n"))]
    Structural(Vec<StructuralError>),
    #[error(transparent)]
    Lookup(#[from] LookupError),
    #[error("no direct type given for single-block pair {0}")]
    MissingDirectType(PairKey),
    #[error("{pairs} up-stream pairs exceed the brute-force cap of {cap}")]
    OracleCapExceeded { pairs: usize, cap: usize },
    #[error("annotations are inconsistent:\n{}", .0.iter().map(|c| format!("  {c}")).collect::<Vec<_>>().join("\n"))]
    Inconsistent(Vec<consistency::Conflict>),
}
