//! Generate-and-test reference solver.
//!
//! Guesses a type for every up-stream pair, direct and indirect alike, and
//! keeps the guesses that pass both integrity checks. It computes its own
//! paths straight from the edge list so it shares no code with the search in
//! [`solve`](super::solve).

use std::collections::{BTreeMap, BTreeSet};

use super::solver::{Assignment, SolveResult};
use super::ReasonError;
use crate::model::{validate_structure, Annotation, AssertionType, DependencyType, Direction, PairKey, WorkflowSpec};

pub const DEFAULT_ORACLE_PAIR_CAP: usize = 10;

/// Every simple in/out alternating path between every input and output,
/// grouped by (input, output). A pair is up-stream iff it has a path.
fn all_paths(spec: &WorkflowSpec) -> BTreeMap<PairKey, Vec<Vec<PairKey>>> {
    let edges = spec.edges();
    let mut by_pair: BTreeMap<PairKey, Vec<Vec<PairKey>>> = BTreeMap::new();

    fn extend(
        edges: &[crate::model::Edge],
        start: &str,
        current_in: usize,
        visited: &mut Vec<String>,
        hops: &mut Vec<PairKey>,
        by_pair: &mut BTreeMap<PairKey, Vec<Vec<PairKey>>>,
    ) {
        let here = &edges[current_in];
        for out in edges
            .iter()
            .filter(|e| e.direction == Direction::Out && e.program == here.program)
        {
            if visited.contains(&out.label) {
                continue;
            }
            hops.push(PairKey::new(here.label.clone(), out.label.clone()));
            by_pair
                .entry(PairKey::new(start, out.label.clone()))
                .or_default()
                .push(hops.clone());
            visited.push(out.label.clone());
            for (n, next) in edges.iter().enumerate() {
                if next.direction == Direction::In && next.data == out.data && !visited.contains(&next.label) {
                    visited.push(next.label.clone());
                    extend(edges, start, n, visited, hops, by_pair);
                    visited.pop();
                }
            }
            visited.pop();
            hops.pop();
        }
    }

    for (n, e) in edges.iter().enumerate() {
        if e.direction == Direction::In {
            let mut visited = vec![e.label.clone()];
            extend(edges, &e.label, n, &mut visited, &mut Vec::new(), &mut by_pair);
        }
    }
    by_pair
}

/// Exhaustive reference solver over all `5^k` assignments to the `k`
/// up-stream pairs. A user-annotated pair only ever takes its annotated
/// type. Fails when `k` exceeds `pair_cap`.
pub fn brute_force_solve(
    spec: &WorkflowSpec,
    user: &[Annotation],
    pair_cap: usize,
) -> Result<SolveResult, ReasonError> {
    let errors = validate_structure(spec, user);
    if !errors.is_empty() {
        return Err(ReasonError::Structural(errors));
    }

    let paths = all_paths(spec);
    let pairs: Vec<PairKey> = paths.keys().cloned().collect();
    if pairs.len() > pair_cap {
        return Err(ReasonError::OracleCapExceeded {
            pairs: pairs.len(),
            cap: pair_cap,
        });
    }
    let up_stream: BTreeSet<&PairKey> = pairs.iter().collect();
    if user
        .iter()
        .any(|a| a.assertion == AssertionType::NotFlowsFrom && up_stream.contains(&a.pair()))
    {
        return Ok(SolveResult::from_models(Vec::new(), false));
    }

    let pinned: BTreeMap<PairKey, DependencyType> = user
        .iter()
        .filter_map(|a| a.assertion.dependency().map(|t| (a.pair(), t)))
        .collect();
    let domains: Vec<Vec<DependencyType>> = pairs
        .iter()
        .map(|p| match pinned.get(p) {
            Some(t) => vec![*t],
            None => DependencyType::ALL.to_vec(),
        })
        .collect();
    let index: BTreeMap<&PairKey, usize> = pairs.iter().enumerate().map(|(n, p)| (p, n)).collect();
    let hop_paths: Vec<Vec<Vec<usize>>> = pairs
        .iter()
        .map(|p| {
            paths[p]
                .iter()
                .map(|path| path.iter().map(|hop| index[hop]).collect())
                .collect()
        })
        .collect();

    let satisfied = |values: &[DependencyType]| {
        (0..pairs.len()).all(|p| {
            // Some path justifies the type, and no path is strictly stronger.
            let mut justified = false;
            for path in &hop_paths[p] {
                let min = path.iter().map(|&h| values[h]).min().expect("paths are nonempty");
                if min > values[p] {
                    return false;
                }
                justified |= min == values[p];
            }
            justified
        })
    };

    let mut models = Vec::new();
    let mut digits = vec![0usize; pairs.len()];
    loop {
        let values: Vec<DependencyType> = digits.iter().zip(&domains).map(|(&d, dom)| dom[d]).collect();
        if satisfied(&values) {
            models.push(Assignment::new(pairs.iter().cloned().zip(values).collect()));
        }
        // Odometer increment.
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(SolveResult::from_models(models, false));
            }
            digits[pos] += 1;
            if digits[pos] < domains[pos].len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::reasoner::{solve, DEFAULT_MAX_MODELS};
    use DependencyType::*;

    #[test]
    fn spanning_derived_matches_solver() {
        let doc = fixtures::spanning_derived();
        let oracle = brute_force_solve(&doc.spec, &doc.annotations, DEFAULT_ORACLE_PAIR_CAP).unwrap();
        assert_eq!(oracle.answer_sets.len(), 5);
        assert_eq!(oracle, solve(&doc.spec, &doc.annotations, DEFAULT_MAX_MODELS).unwrap());
    }

    #[test]
    fn multipath_fully_annotated() {
        let doc = fixtures::multipath();
        let oracle = brute_force_solve(&doc.spec, &doc.annotations, DEFAULT_ORACLE_PAIR_CAP).unwrap();
        assert_eq!(oracle.answer_sets.len(), 1);
        assert_eq!(oracle.entailed[&PairKey::new("x1", "x9")], DerivedFrom);
    }

    #[test]
    fn fully_annotated_chain() {
        let doc = fixtures::spanning_derived();
        let anns = vec![
            Annotation::user("x1", "x2", ValueOf),
            Annotation::user("x3", "x4", SameAs),
        ];
        let oracle = brute_force_solve(&doc.spec, &anns, DEFAULT_ORACLE_PAIR_CAP).unwrap();
        assert_eq!(oracle.answer_sets.len(), 1);
        assert_eq!(oracle.entailed[&PairKey::new("x1", "x4")], ValueOf);
    }

    #[test]
    fn cap_is_enforced() {
        let doc = fixtures::multipath();
        assert_eq!(
            brute_force_solve(&doc.spec, &doc.annotations, 9),
            Err(ReasonError::OracleCapExceeded { pairs: 10, cap: 9 })
        );
    }

    #[test]
    fn feedback_loop_matches_solver() {
        let spec = WorkflowSpec::builder("feedback")
            .program("a")
            .input("i", "src")
            .input("j", "back")
            .output("o", "sink")
            .output("p", "fwd")
            .program("b")
            .input("k", "fwd")
            .output("m", "back")
            .build();
        let oracle = brute_force_solve(&spec, &[], DEFAULT_ORACLE_PAIR_CAP).unwrap();
        assert_eq!(oracle, solve(&spec, &[], 5usize.pow(9)).unwrap());
    }
}
