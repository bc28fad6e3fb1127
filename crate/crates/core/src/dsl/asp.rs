//! Export of a workflow and its annotations as a Potassco-style answer-set
//! program, for cross-checking against an external solver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::model::{weaker, Annotation, AssertionType, DependencyType, PairKey, WorkflowSpec};

/// The generate step: one type per up-stream pair.
pub const CHOICE_RULE: &str = "{dep_rule(I,O,R) : dep_type(R)} = 1 :- up_stream(I,O).";

const RULES: &str = "\
{dep_rule(I,O,R) : dep_type(R)} = 1 :- up_stream(I,O).

up_stream(I,O) :- in(I,P,_), out(O,P,_).
up_stream(I,O) :- in(I,P1,_), out(O1,P1,D1), in(I2,P2,D1), up_stream(I2,O).

:- dep_rule(I,O,R), not valid_dep_path(I,O,R).

valid_dep_path(I,O,R) :- in(I,P,_), out(O,P,_), dep_rule(I,O,R).
valid_dep_path(I,O,R) :- in(I,P,_), out(O1,P,_), O != O1,
                         dep_rule(I,O1,R1), connected(O1,I1), I != I1,
                         valid_dep_path(I1,O,R2), compose(R1,R2,R).

connected(O,I) :- out(O,_,D), in(I,_,D).

compose(R1,R2,R1) :- weaker(R1,R2).
compose(R1,R2,R2) :- weaker(R2,R1).

:- dep_rule(I,O,R), valid_dep_path(I,O,R1), R != R1, weaker(R,R1).
";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AspExportError {
    #[error("NotFlowsFrom annotations cannot be expressed in the exported program: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))]
    NotFlowsFrom(Vec<PairKey>),
}

/// Lowercase constant atom for a type, e.g. `derivedfrom`.
pub fn type_atom(t: DependencyType) -> String {
    t.name().to_ascii_lowercase()
}

fn is_plain_atom(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "not"
}

/// Assigns every identifier a distinct valid atom. Identifiers that already
/// are atoms map to themselves; others get a prefixed, cleaned form with a
/// numeric suffix on collision.
struct AtomTable {
    atoms: BTreeMap<(&'static str, String), String>,
    used: BTreeSet<String>,
}

impl AtomTable {
    fn new(spec: &WorkflowSpec) -> Self {
        let mut table = AtomTable {
            atoms: BTreeMap::new(),
            used: BTreeSet::new(),
        };
        let names = |kind: &'static str, it: Vec<String>| it.into_iter().map(move |n| (kind, n));
        let all: Vec<_> = names("edge", spec.edges().iter().map(|e| e.label.clone()).collect())
            .chain(names("program", spec.programs().iter().cloned().collect()))
            .chain(names("data", spec.data_blocks().iter().cloned().collect()))
            .collect();
        // Plain names first so they keep their spelling.
        for (kind, name) in all.iter().filter(|(_, n)| is_plain_atom(n)) {
            if table.used.insert(name.clone()) {
                table.atoms.insert((kind, name.clone()), name.clone());
            }
        }
        for (kind, name) in all {
            if table.atoms.contains_key(&(kind, name.clone())) {
                continue;
            }
            let cleaned: String = name
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
                .collect();
            let base = format!("{}_{}", &kind[..1], cleaned);
            let mut atom = base.clone();
            let mut n = 2;
            while !table.used.insert(atom.clone()) {
                atom = format!("{base}_{n}");
                n += 1;
            }
            table.atoms.insert((kind, name), atom);
        }
        table
    }

    fn get(&self, kind: &'static str, name: &str) -> &str {
        &self.atoms[&(kind, name.to_string())]
    }
}

/// The full reasoning program: the fixed rules verbatim, followed by facts
/// for the type order, the workflow edges (`in(Label, Program, Data)` and
/// `out(...)`), and each annotation as a `dep_rule/3` fact.
pub fn emit_asp_program(spec: &WorkflowSpec, annotations: &[Annotation]) -> Result<String, AspExportError> {
    let unsupported: Vec<PairKey> = annotations
        .iter()
        .filter(|a| a.assertion == AssertionType::NotFlowsFrom)
        .map(Annotation::pair)
        .collect();
    if !unsupported.is_empty() {
        return Err(AspExportError::NotFlowsFrom(unsupported));
    }

    let table = AtomTable::new(spec);
    let mut out = String::new();
    writeln!(out, "% Dependency annotation program for workflow {:?}.", spec.name()).unwrap();
    out.push_str("% Enumerate all answer sets with: clingo 0 <file>\n");
    out.push_str("%\n% Identifier mapping (atom <- original):\n");
    for ((kind, name), atom) in &table.atoms {
        let original = serde_json::to_string(name).expect("strings always serialize");
        writeln!(out, "%   {kind} {atom} <- {original}").unwrap();
    }

    out.push('\n');
    out.push_str(RULES);

    out.push('\n');
    for t in DependencyType::ALL {
        writeln!(out, "dep_type({}).", type_atom(t)).unwrap();
    }
    for a in DependencyType::ALL {
        for b in DependencyType::ALL.into_iter().filter(|b| weaker(a, *b)) {
            writeln!(out, "weaker({},{}).", type_atom(a), type_atom(b)).unwrap();
        }
    }

    out.push('\n');
    for edge in spec.edges() {
        let relation = match edge.direction {
            crate::model::Direction::In => "in",
            crate::model::Direction::Out => "out",
        };
        writeln!(
            out,
            "{relation}({},{},{}).",
            table.get("edge", &edge.label),
            table.get("program", &edge.program),
            table.get("data", &edge.data)
        )
        .unwrap();
    }

    let mut sorted: Vec<&Annotation> = annotations.iter().collect();
    sorted.sort();
    if !sorted.is_empty() {
        out.push('\n');
    }
    for ann in sorted {
        let t = ann.assertion.dependency().expect("NotFlowsFrom filtered above");
        writeln!(
            out,
            "dep_rule({},{},{}).",
            table.get("edge", &ann.input_edge),
            table.get("edge", &ann.output_edge),
            type_atom(t)
        )
        .unwrap();
    }

    out.push_str("\n#show dep_rule/3.\n");
    Ok(out)
}

/// Reverses the identifier mapping written in the header of an exported
/// program: atom to original identifier.
pub fn read_atom_mapping(program: &str) -> BTreeMap<String, String> {
    program
        .lines()
        .filter_map(|l| l.strip_prefix("%   "))
        .filter_map(|l| {
            let (lhs, original) = l.split_once(" <- ")?;
            let (_, atom) = lhs.split_once(' ')?;
            let original: String = serde_json::from_str(original).ok()?;
            Some((atom.to_string(), original))
        })
        .collect()
}
