//! Workflow graph, dependency-type lattice, and structural validation.

mod lattice;
mod topology;
mod validate;
mod workflow;

pub use lattice::{compose, weaker, AssertionType, DependencyType, UnknownTypeName};
pub use topology::{connected, up_stream_pairs, LookupError, Topology};
pub use validate::{validate_structure, StructuralError};
pub use workflow::{Annotation, Direction, Edge, Origin, PairKey, WorkflowBuilder, WorkflowSpec};
