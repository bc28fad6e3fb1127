//! Dependency-type annotations on scientific workflow specifications.
//!
//! A workflow is a set of program blocks connected through data blocks by
//! labeled in/out edges. Annotations relate an input edge to an output edge
//! with one of five dependency types (`FlowsFrom < DependsOn < DerivedFrom <
//! ValueOf < SameAs`) or `NotFlowsFrom`. From a partial set of annotations the
//! crate enumerates every consistent completion, reports entailed types,
//! explains inconsistencies, exports Graphviz and answer-set programs, and
//! checks recorded traces against the annotations.

pub mod cli;
pub mod dsl;
pub mod fixtures;
pub mod model;
pub mod reasoner;
pub mod trace;

pub use dsl::{parse_spec, SpecDocument};
pub use model::{Annotation, AssertionType, DependencyType, PairKey, WorkflowSpec};
pub use reasoner::{check_consistency, infer, solve, Consistency, ReasonError};
pub use trace::{check_trace, Trace};
