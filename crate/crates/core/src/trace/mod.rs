//! Recorded executions and their conformance to annotations.
//!
//! A finite trace can only falsify the per-invocation necessary conditions of
//! the two identity/value types:
//!
//! - `SameAs`: every item written on the output is one of the items read on
//!   the input (by id).
//! - `ValueOf`: every value written on the output is among the values read on
//!   the input.
//!
//! The remaining conditions quantify over every possible invocation or over
//! unobservable control and data dependences, and are not checked.

mod check;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use check::{check_trace, warn_sameas_candidates, SameAsCandidate, TraceViolation, ViolationKind};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DataItem {
    pub id: String,
    pub value: String,
}

impl DataItem {
    pub fn new(id: impl Into<String>, value: impl Into<String>) -> Self {
        DataItem {
            id: id.into(),
            value: value.into(),
        }
    }
}

/// One execution of a program block: the item sequences it read per input
/// edge and wrote per output edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invocation {
    pub block: String,
    pub reads: BTreeMap<String, Vec<DataItem>>,
    pub writes: BTreeMap<String, Vec<DataItem>>,
}

impl Invocation {
    pub fn new(block: impl Into<String>) -> Self {
        Invocation {
            block: block.into(),
            reads: BTreeMap::new(),
            writes: BTreeMap::new(),
        }
    }

    pub fn read(mut self, label: impl Into<String>, items: Vec<DataItem>) -> Self {
        self.reads.insert(label.into(), items);
        self
    }

    pub fn write(mut self, label: impl Into<String>, items: Vec<DataItem>) -> Self {
        self.writes.insert(label.into(), items);
        self
    }

    pub(crate) fn reads_on(&self, label: &str) -> &[DataItem] {
        self.reads.get(label).map_or(&[], Vec::as_slice)
    }

    pub(crate) fn writes_on(&self, label: &str) -> &[DataItem] {
        self.writes.get(label).map_or(&[], Vec::as_slice)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub workflow: String,
    pub invocations: Vec<Invocation>,
}
