//! Label-indexed view of a workflow: which edges share data blocks, which
//! edges hang off each program, and the up-stream relation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::workflow::{Direction, Edge, PairKey, WorkflowSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LookupError {
    #[error("unknown edge label '{0}'")]
    UnknownLabel(String),
    #[error("edge '{label}' is not an {expected} edge")]
    WrongDirection { label: String, expected: super::Direction },
}

/// Adjacency built once from a spec whose labels are unique.
///
/// Edges are referred to by their index into [`WorkflowSpec::edges`].
#[derive(Debug, Clone)]
pub struct Topology<'a> {
    spec: &'a WorkflowSpec,
    by_label: HashMap<&'a str, usize>,
    /// In-edges reading each data block.
    readers: HashMap<&'a str, Vec<usize>>,
    /// Out-edges of each program, in label order.
    outputs_of: HashMap<&'a str, Vec<usize>>,
}

impl<'a> Topology<'a> {
    /// Indexes the spec. With duplicate labels the first edge wins, so
    /// callers are expected to have validated the spec.
    pub fn new(spec: &'a WorkflowSpec) -> Self {
        let mut by_label = HashMap::new();
        let mut readers: HashMap<&str, Vec<usize>> = HashMap::new();
        let mut outputs_of: HashMap<&str, Vec<usize>> = HashMap::new();
        for (idx, edge) in spec.edges().iter().enumerate() {
            by_label.entry(edge.label.as_str()).or_insert(idx);
            match edge.direction {
                Direction::In => readers.entry(edge.data.as_str()).or_default().push(idx),
                Direction::Out => outputs_of.entry(edge.program.as_str()).or_default().push(idx),
            }
        }
        Topology {
            spec,
            by_label,
            readers,
            outputs_of,
        }
    }

    pub fn spec(&self) -> &'a WorkflowSpec {
        self.spec
    }

    pub fn edge(&self, idx: usize) -> &'a Edge {
        &self.spec.edges()[idx]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, LookupError> {
        self.by_label
            .get(label)
            .copied()
            .ok_or_else(|| LookupError::UnknownLabel(label.to_string()))
    }

    /// Index of `label`, which must be an edge of the given direction.
    pub fn index_with_direction(&self, label: &str, expected: Direction) -> Result<usize, LookupError> {
        let idx = self.index_of(label)?;
        if self.edge(idx).direction != expected {
            return Err(LookupError::WrongDirection {
                label: label.to_string(),
                expected,
            });
        }
        Ok(idx)
    }

    /// In-edges that read the data block written by out-edge `out`.
    pub fn successors(&self, out: usize) -> &[usize] {
        self.readers
            .get(self.edge(out).data.as_str())
            .map_or(&[], Vec::as_slice)
    }

    /// Out-edges on the same program as in-edge `input`.
    pub fn outputs_beside(&self, input: usize) -> &[usize] {
        self.outputs_of
            .get(self.edge(input).program.as_str())
            .map_or(&[], Vec::as_slice)
    }

    /// `connected(O, I)`: the output and input edge share a data block.
    pub fn connected(&self, output: &str, input: &str) -> Result<bool, LookupError> {
        let o = self.index_with_direction(output, Direction::Out)?;
        let i = self.index_with_direction(input, Direction::In)?;
        Ok(self.edge(o).data == self.edge(i).data)
    }

    /// True iff the in-edge and out-edge sit on the same program block.
    pub fn same_block(&self, input: usize, output: usize) -> bool {
        self.edge(input).program == self.edge(output).program
    }

    /// Out-edges reachable from in-edge `input`: those on its own block, plus
    /// everything reachable through the data blocks those write.
    pub fn reachable_outputs(&self, input: usize) -> BTreeSet<usize> {
        let mut seen_inputs = BTreeSet::from([input]);
        let mut stack = vec![input];
        let mut outs = BTreeSet::new();
        while let Some(i) = stack.pop() {
            for &o in self.outputs_beside(i) {
                if outs.insert(o) {
                    for &next in self.successors(o) {
                        if seen_inputs.insert(next) {
                            stack.push(next);
                        }
                    }
                }
            }
        }
        outs
    }

    /// All up-stream pairs as edge indices, keyed by input then output label.
    pub fn up_stream_indices(&self) -> BTreeMap<PairKey, (usize, usize)> {
        let mut pairs = BTreeMap::new();
        for (i, edge) in self.spec.edges().iter().enumerate() {
            if edge.direction != Direction::In {
                continue;
            }
            for o in self.reachable_outputs(i) {
                pairs.insert(PairKey::new(edge.label.clone(), self.edge(o).label.clone()), (i, o));
            }
        }
        pairs
    }

    pub fn up_stream_pairs(&self) -> BTreeSet<PairKey> {
        self.up_stream_indices().into_keys().collect()
    }
}

/// `connected(O, I)` over a spec.
pub fn connected(output: &str, input: &str, spec: &WorkflowSpec) -> Result<bool, LookupError> {
    Topology::new(spec).connected(output, input)
}

/// Every (input, output) pair derivable by the two up-stream rules: pairs on
/// one block, closed transitively through shared data blocks. Terminates on
/// cyclic workflows.
pub fn up_stream_pairs(spec: &WorkflowSpec) -> BTreeSet<PairKey> {
    Topology::new(spec).up_stream_pairs()
}
