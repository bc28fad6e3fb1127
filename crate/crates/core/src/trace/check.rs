use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use super::{DataItem, Invocation, Trace};
use crate::dsl::TraceError;
use crate::model::{Annotation, DependencyType, PairKey, WorkflowSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    /// A `SameAs` output item whose id was never read on the input.
    IdentityViolation,
    /// A `ValueOf` output value that was never read on the input.
    ValueViolation,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::IdentityViolation => "identity-violation",
            ViolationKind::ValueViolation => "value-violation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TraceViolation {
    pub invocation: usize,
    pub pair: PairKey,
    pub annotation: DependencyType,
    pub kind: ViolationKind,
    pub offending: Vec<DataItem>,
}

impl fmt::Display for TraceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .offending
            .iter()
            .map(|i| format!("{}={:?}", i.id, i.value))
            .collect();
        write!(
            f,
            "invocation {}: {} on {} {}: {}",
            self.invocation,
            self.kind,
            self.pair,
            self.annotation,
            items.join(", ")
        )
    }
}

/// Annotated pairs whose ends sit on one block, grouped by that block.
fn single_block_pairs<'a>(
    spec: &WorkflowSpec,
    annotations: &'a [Annotation],
) -> BTreeMap<String, Vec<(&'a Annotation, DependencyType)>> {
    let mut by_block: BTreeMap<String, Vec<_>> = BTreeMap::new();
    for ann in annotations {
        let Some(ty) = ann.assertion.dependency() else {
            continue;
        };
        if let (Some(i), Some(o)) = (spec.edge(&ann.input_edge), spec.edge(&ann.output_edge)) {
            if i.program == o.program {
                by_block.entry(i.program.clone()).or_default().push((ann, ty));
            }
        }
    }
    by_block
}

fn check_invocation(index: usize, inv: &Invocation, pairs: &[(&Annotation, DependencyType)]) -> Vec<TraceViolation> {
    let mut out = Vec::new();
    for (ann, ty) in pairs {
        let reads = inv.reads_on(&ann.input_edge);
        let writes = inv.writes_on(&ann.output_edge);
        let (kind, offending): (_, Vec<DataItem>) = match ty {
            DependencyType::SameAs => {
                let ids: BTreeSet<&str> = reads.iter().map(|i| i.id.as_str()).collect();
                (
                    ViolationKind::IdentityViolation,
                    writes
                        .iter()
                        .filter(|w| !ids.contains(w.id.as_str()))
                        .cloned()
                        .collect(),
                )
            }
            DependencyType::ValueOf => {
                let values: BTreeSet<&str> = reads.iter().map(|i| i.value.as_str()).collect();
                (
                    ViolationKind::ValueViolation,
                    writes
                        .iter()
                        .filter(|w| !values.contains(w.value.as_str()))
                        .cloned()
                        .collect(),
                )
            }
            _ => continue,
        };
        if !offending.is_empty() {
            out.push(TraceViolation {
                invocation: index,
                pair: ann.pair(),
                annotation: *ty,
                kind,
                offending,
            });
        }
    }
    out
}

/// Checks each invocation against the single-block `SameAs` and `ValueOf`
/// annotations of its block. For a pair `(i, o)` only the reads on `i` are
/// consulted. Violations are ordered by invocation index, then pair.
pub fn check_trace(
    spec: &WorkflowSpec,
    annotations: &[Annotation],
    trace: &Trace,
) -> Result<Vec<TraceViolation>, TraceError> {
    trace.resolve(spec)?;
    let by_block = single_block_pairs(spec, annotations);
    let mut violations: Vec<TraceViolation> = trace
        .invocations
        .par_iter()
        .enumerate()
        .flat_map_iter(|(index, inv)| {
            by_block
                .get(&inv.block)
                .map(|pairs| check_invocation(index, inv, pairs))
                .unwrap_or_default()
        })
        .collect();
    violations.sort();
    Ok(violations)
}

/// A `ValueOf` pair whose observed behavior never minted a fresh id, so the
/// trace is equally consistent with `SameAs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SameAsCandidate {
    pub pair: PairKey,
    /// Invocations that wrote at least one item on the output edge.
    pub observed_invocations: usize,
}

impl fmt::Display for SameAsCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} is annotated ValueOf, but all {} observed invocation(s) only passed input items through; the trace is also consistent with SameAs",
            self.pair, self.observed_invocations
        )
    }
}

/// Advisory only: flags `ValueOf` pairs for which no invocation ever wrote an
/// item with an id absent from its reads. Pairs with no observed writes are
/// not flagged.
pub fn warn_sameas_candidates(spec: &WorkflowSpec, annotations: &[Annotation], trace: &Trace) -> Vec<SameAsCandidate> {
    let by_block = single_block_pairs(spec, annotations);
    let mut warnings = Vec::new();
    for (block, pairs) in &by_block {
        for (ann, ty) in pairs {
            if *ty != DependencyType::ValueOf {
                continue;
            }
            let mut observed = 0;
            let mut fresh_seen = false;
            for inv in trace.invocations.iter().filter(|inv| &inv.block == block) {
                let writes = inv.writes_on(&ann.output_edge);
                if writes.is_empty() {
                    continue;
                }
                observed += 1;
                let ids: BTreeSet<&str> = inv.reads_on(&ann.input_edge).iter().map(|i| i.id.as_str()).collect();
                fresh_seen |= writes.iter().any(|w| !ids.contains(w.id.as_str()));
            }
            if observed > 0 && !fresh_seen {
                warnings.push(SameAsCandidate {
                    pair: ann.pair(),
                    observed_invocations: observed,
                });
            }
        }
    }
    warnings.sort();
    warnings
}
