use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::lattice::{AssertionType, DependencyType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::In => "in",
            Direction::Out => "out",
        })
    }
}

/// A labeled input or output connection between a program block and a data
/// block. `In` edges are the `in(p, x, d)` relation, `Out` edges `out(p, x, d)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub label: String,
    pub program: String,
    pub data: String,
    pub direction: Direction,
}

impl Edge {
    pub fn input(label: impl Into<String>, program: impl Into<String>, data: impl Into<String>) -> Self {
        Edge {
            label: label.into(),
            program: program.into(),
            data: data.into(),
            direction: Direction::In,
        }
    }

    pub fn output(label: impl Into<String>, program: impl Into<String>, data: impl Into<String>) -> Self {
        Edge {
            label: label.into(),
            program: program.into(),
            data: data.into(),
            direction: Direction::Out,
        }
    }

    fn sort_key(&self) -> (&str, &str, &str, Direction) {
        (&self.label, &self.program, &self.data, self.direction)
    }
}

/// A workflow `W = (P, D, E)`.
///
/// Immutable once built. Edges are kept sorted by label so two specs with the
/// same content compare equal regardless of construction order. Nothing here
/// is checked; see [`validate_structure`](super::validate_structure).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkflowSpec {
    name: String,
    programs: BTreeSet<String>,
    data_blocks: BTreeSet<String>,
    edges: Vec<Edge>,
}

impl WorkflowSpec {
    pub fn new(
        name: impl Into<String>,
        programs: impl IntoIterator<Item = String>,
        data_blocks: impl IntoIterator<Item = String>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        WorkflowSpec {
            name: name.into(),
            programs: programs.into_iter().collect(),
            data_blocks: data_blocks.into_iter().collect(),
            edges,
        }
    }

    pub fn builder(name: impl Into<String>) -> WorkflowBuilder {
        WorkflowBuilder::new(name)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn programs(&self) -> &BTreeSet<String> {
        &self.programs
    }

    pub fn data_blocks(&self) -> &BTreeSet<String> {
        &self.data_blocks
    }

    /// All edges, sorted by label.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// First edge with the given label.
    pub fn edge(&self, label: &str) -> Option<&Edge> {
        let at = self.edges.partition_point(|e| e.label.as_str() < label);
        self.edges.get(at).filter(|e| e.label == label)
    }

    pub fn edges_of<'a>(&'a self, program: &'a str) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| e.program == program)
    }
}

/// Fluent construction of a [`WorkflowSpec`]. Data blocks are collected from
/// the ports as they are declared.
#[derive(Debug, Clone)]
pub struct WorkflowBuilder {
    name: String,
    programs: BTreeSet<String>,
    data_blocks: BTreeSet<String>,
    edges: Vec<Edge>,
    current: Option<String>,
}

impl WorkflowBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        WorkflowBuilder {
            name: name.into(),
            programs: BTreeSet::new(),
            data_blocks: BTreeSet::new(),
            edges: Vec::new(),
            current: None,
        }
    }

    /// Starts a program block; subsequent ports attach to it.
    pub fn program(mut self, name: impl Into<String>) -> Self {
        let name = name.into();
        self.programs.insert(name.clone());
        self.current = Some(name);
        self
    }

    /// `in <label> from <data>` on the current program.
    ///
    /// # Panics
    /// If no program has been started.
    pub fn input(self, label: impl Into<String>, data: impl Into<String>) -> Self {
        self.port(label.into(), data.into(), Direction::In)
    }

    /// `out <label> to <data>` on the current program.
    pub fn output(self, label: impl Into<String>, data: impl Into<String>) -> Self {
        self.port(label.into(), data.into(), Direction::Out)
    }

    fn port(mut self, label: String, data: String, direction: Direction) -> Self {
        let program = self.current.clone().expect("port declared before any program");
        self.data_blocks.insert(data.clone());
        self.edges.push(Edge {
            label,
            program,
            data,
            direction,
        });
        self
    }

    pub fn build(self) -> WorkflowSpec {
        WorkflowSpec::new(self.name, self.programs, self.data_blocks, self.edges)
    }
}

/// Where an annotation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    User,
    Inferred,
}

/// An (input edge, output edge) pair, ordered by input label then output label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairKey {
    pub input: String,
    pub output: String,
}

impl PairKey {
    pub fn new(input: impl Into<String>, output: impl Into<String>) -> Self {
        PairKey {
            input: input.into(),
            output: output.into(),
        }
    }
}

impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.input, self.output)
    }
}

/// `dep_rule(input_edge, output_edge, assertion)` plus where it came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Annotation {
    pub input_edge: String,
    pub output_edge: String,
    pub assertion: AssertionType,
    pub origin: Origin,
}

impl Annotation {
    pub fn user(
        input_edge: impl Into<String>,
        output_edge: impl Into<String>,
        assertion: impl Into<AssertionType>,
    ) -> Self {
        Annotation {
            input_edge: input_edge.into(),
            output_edge: output_edge.into(),
            assertion: assertion.into(),
            origin: Origin::User,
        }
    }

    pub fn inferred(input_edge: impl Into<String>, output_edge: impl Into<String>, ty: DependencyType) -> Self {
        Annotation {
            input_edge: input_edge.into(),
            output_edge: output_edge.into(),
            assertion: AssertionType::Dependency(ty),
            origin: Origin::Inferred,
        }
    }

    pub fn pair(&self) -> PairKey {
        PairKey::new(self.input_edge.clone(), self.output_edge.clone())
    }
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {}", self.input_edge, self.output_edge, self.assertion)
    }
}
