use std::collections::BTreeSet;
use std::fmt;

use super::solver::{Problem, DEFAULT_MAX_MODELS};
use super::ReasonError;
use crate::model::{compose, Annotation, AssertionType, DependencyType, PairKey, WorkflowSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConflictReason {
    /// The asserted type is stronger than anything a path can deliver.
    NotAValidPathType,
    /// Some path is forced to be strictly stronger than the asserted type.
    StrongerPathExists,
    /// `NotFlowsFrom` was asserted but a dataflow path exists.
    ReachableButNotFlowsFrom,
}

impl fmt::Display for ConflictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConflictReason::NotAValidPathType => "not-a-valid-path-type",
            ConflictReason::StrongerPathExists => "stronger-path-exists",
            ConflictReason::ReachableButNotFlowsFrom => "reachable-but-notflowsfrom",
        })
    }
}

/// A dataflow path with the range its type can take given the user's
/// single-block annotations (unannotated links range over all five types).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WitnessPath {
    pub edges: Vec<String>,
    pub weakest: DependencyType,
    pub strongest: DependencyType,
}

impl fmt::Display for WitnessPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ", self.edges.join(", "))?;
        if self.weakest == self.strongest {
            write!(f, "has type {}", self.weakest)
        } else {
            write!(f, "has type between {} and {}", self.weakest, self.strongest)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Conflict {
    pub pair: PairKey,
    pub asserted: AssertionType,
    pub witness_paths: Vec<WitnessPath>,
    pub reason: ConflictReason,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} asserted {} ({})", self.pair, self.asserted, self.reason)?;
        for w in &self.witness_paths {
            write!(f, "\n    path {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consistency {
    Consistent,
    Inconsistent(Vec<Conflict>),
}

impl Consistency {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Consistency::Consistent)
    }
}

impl Problem<'_> {
    /// Type range of one path when only user-annotated links are known.
    fn path_range(&self, pair: usize, path: usize) -> WitnessPath {
        let hops = &self.paths[pair][path];
        let bound = |default: DependencyType| {
            hops.iter()
                .map(|&h| self.user[h].unwrap_or(default))
                .fold(DependencyType::STRONGEST, compose)
        };
        WitnessPath {
            edges: self.edge_labels(&self.edge_paths[pair][path]),
            weakest: bound(DependencyType::WEAKEST),
            strongest: bound(DependencyType::STRONGEST),
        }
    }

    fn witnesses(&self, pair: usize) -> Vec<WitnessPath> {
        (0..self.paths[pair].len()).map(|p| self.path_range(pair, p)).collect()
    }

    fn position(&self, pair: &PairKey) -> usize {
        self.pairs.binary_search(pair).expect("annotation pairs are up-stream")
    }
}

/// Local explanations: each annotated pair checked against the ranges its
/// paths can reach.
fn local_conflicts(problem: &Problem<'_>, user: &[Annotation]) -> Vec<Conflict> {
    let mut conflicts = Vec::new();
    for pair in &problem.reachable_not_flows {
        let p = problem.position(pair);
        conflicts.push(Conflict {
            pair: pair.clone(),
            asserted: AssertionType::NotFlowsFrom,
            witness_paths: problem.witnesses(p),
            reason: ConflictReason::ReachableButNotFlowsFrom,
        });
    }
    for ann in user {
        let AssertionType::Dependency(asserted) = ann.assertion else {
            continue;
        };
        let p = problem.position(&ann.pair());
        let witnesses = problem.witnesses(p);
        let best_upper = witnesses.iter().map(|w| w.strongest).max().expect("nonempty");
        let best_lower = witnesses.iter().map(|w| w.weakest).max().expect("nonempty");
        let (reason, witness_paths) = if asserted > best_upper {
            (ConflictReason::NotAValidPathType, witnesses)
        } else if asserted < best_lower {
            let stronger = witnesses.into_iter().filter(|w| w.weakest > asserted).collect();
            (ConflictReason::StrongerPathExists, stronger)
        } else {
            continue;
        };
        conflicts.push(Conflict {
            pair: ann.pair(),
            asserted: ann.assertion,
            witness_paths,
            reason,
        });
    }
    conflicts
}

fn satisfiable(spec: &WorkflowSpec, user: &[Annotation]) -> Result<bool, ReasonError> {
    Ok(!Problem::new(spec, user)?.enumerate(1).is_empty())
}

/// When no annotation is contradicted on its own, the conflict comes from
/// how several interact. Shrink the annotation set to one where every member
/// is needed for the contradiction, then explain each member by the types its
/// pair takes once that member is dropped.
fn interaction_conflicts(
    spec: &WorkflowSpec,
    problem: &Problem<'_>,
    user: &[Annotation],
) -> Result<Vec<Conflict>, ReasonError> {
    let mut core: Vec<Annotation> = user.to_vec();
    let mut i = 0;
    while i < core.len() {
        let mut without = core.clone();
        without.remove(i);
        if satisfiable(spec, &without)? {
            i += 1;
        } else {
            core = without;
        }
    }

    let mut conflicts = Vec::new();
    for (n, ann) in core.iter().enumerate() {
        let AssertionType::Dependency(asserted) = ann.assertion else {
            continue;
        };
        let mut rest = core.clone();
        rest.remove(n);
        let relaxed = Problem::new(spec, &rest)?.solve(DEFAULT_MAX_MODELS);
        let pair = ann.pair();
        let options: BTreeSet<DependencyType> = relaxed.options.get(&pair).cloned().unwrap_or_default();
        let reason = if options.iter().all(|t| *t < asserted) {
            ConflictReason::NotAValidPathType
        } else {
            ConflictReason::StrongerPathExists
        };
        conflicts.push(Conflict {
            witness_paths: problem.witnesses(problem.position(&pair)),
            pair,
            asserted: ann.assertion,
            reason,
        });
    }
    Ok(conflicts)
}

/// `Consistent` iff at least one answer set exists. Otherwise every conflict
/// found is reported with witness paths: first annotations contradicted by
/// path ranges on their own, and failing that, a group of annotations that
/// contradict each other and from which none can be dropped.
pub fn check_consistency(spec: &WorkflowSpec, user: &[Annotation]) -> Result<Consistency, ReasonError> {
    let problem = Problem::new(spec, user)?;
    if !problem.enumerate(1).is_empty() {
        return Ok(Consistency::Consistent);
    }
    let mut conflicts = local_conflicts(&problem, user);
    if conflicts.is_empty() {
        conflicts = interaction_conflicts(spec, &problem, user)?;
    }
    conflicts.sort();
    debug_assert!(!conflicts.is_empty());
    Ok(Consistency::Inconsistent(conflicts))
}
