use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use super::paths::simple_path_indices;
use super::ReasonError;
use crate::model::{
    compose, validate_structure, Annotation, AssertionType, DependencyType, PairKey, Topology, WorkflowSpec,
};

pub const DEFAULT_MAX_MODELS: usize = 1024;

/// One type for every up-stream pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(BTreeMap<PairKey, DependencyType>);

impl Assignment {
    pub fn new(map: BTreeMap<PairKey, DependencyType>) -> Self {
        Assignment(map)
    }

    pub fn get(&self, pair: &PairKey) -> Option<DependencyType> {
        self.0.get(pair).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PairKey, DependencyType)> {
        self.0.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_map(&self) -> &BTreeMap<PairKey, DependencyType> {
        &self.0
    }
}

/// All answer sets found, with the per-pair summary across them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// Canonically ordered: by the pair-ordered sequence of type ranks.
    pub answer_sets: Vec<Assignment>,
    /// Pairs with the same type in every answer set.
    pub entailed: BTreeMap<PairKey, DependencyType>,
    /// Union of each pair's types across answer sets.
    pub options: BTreeMap<PairKey, BTreeSet<DependencyType>>,
    /// The model cap was hit; `entailed` and `options` are then approximate.
    pub truncated: bool,
}

impl SolveResult {
    pub fn from_models(mut answer_sets: Vec<Assignment>, truncated: bool) -> Self {
        answer_sets.sort();
        answer_sets.dedup();
        let mut options: BTreeMap<PairKey, BTreeSet<DependencyType>> = BTreeMap::new();
        for model in &answer_sets {
            for (pair, t) in model.iter() {
                options.entry(pair.clone()).or_default().insert(t);
            }
        }
        let entailed = options
            .iter()
            .filter(|(_, set)| set.len() == 1)
            .map(|(pair, set)| (pair.clone(), *set.first().unwrap()))
            .collect();
        SolveResult {
            answer_sets,
            entailed,
            options,
            truncated,
        }
    }

    pub fn is_consistent(&self) -> bool {
        !self.answer_sets.is_empty()
    }
}

/// A validated workflow indexed for search: up-stream pairs in canonical
/// order, which of them are single-block, and every simple path of each pair
/// as a sequence of single-block pair indices.
pub(crate) struct Problem<'a> {
    pub topo: Topology<'a>,
    pub pairs: Vec<PairKey>,
    pub direct: Vec<bool>,
    /// Per pair, its simple paths as edge indices.
    pub edge_paths: Vec<Vec<Vec<usize>>>,
    /// Per pair, its simple paths as hop pair indices.
    pub paths: Vec<Vec<Vec<usize>>>,
    pub user: Vec<Option<DependencyType>>,
    /// `NotFlowsFrom` assertions whose pair is up-stream after all.
    pub reachable_not_flows: Vec<PairKey>,
}

impl<'a> Problem<'a> {
    pub fn new(spec: &'a WorkflowSpec, user: &[Annotation]) -> Result<Self, ReasonError> {
        let errors = validate_structure(spec, user);
        if !errors.is_empty() {
            return Err(ReasonError::Structural(errors));
        }
        let topo = Topology::new(spec);
        let indexed = topo.up_stream_indices();
        let pair_of: HashMap<(usize, usize), usize> = indexed.values().enumerate().map(|(n, &e)| (e, n)).collect();

        let mut pairs = Vec::with_capacity(indexed.len());
        let mut direct = Vec::with_capacity(indexed.len());
        let mut edge_paths = Vec::with_capacity(indexed.len());
        let mut paths = Vec::with_capacity(indexed.len());
        for (pair, &(i, o)) in &indexed {
            let found = simple_path_indices(&topo, i, o);
            paths.push(
                found
                    .iter()
                    .map(|p| p.chunks(2).map(|hop| pair_of[&(hop[0], hop[1])]).collect())
                    .collect(),
            );
            edge_paths.push(found);
            pairs.push(pair.clone());
            direct.push(topo.same_block(i, o));
        }

        let position: HashMap<&PairKey, usize> = pairs.iter().enumerate().map(|(n, p)| (p, n)).collect();
        let mut fixed = vec![None; pairs.len()];
        let mut reachable_not_flows = Vec::new();
        for ann in user {
            let pair = ann.pair();
            match ann.assertion {
                AssertionType::Dependency(t) => fixed[position[&pair]] = Some(t),
                AssertionType::NotFlowsFrom if position.contains_key(&pair) => reachable_not_flows.push(pair),
                AssertionType::NotFlowsFrom => {}
            }
        }

        Ok(Problem {
            topo,
            pairs,
            direct,
            edge_paths,
            paths,
            user: fixed,
            reachable_not_flows,
        })
    }

    /// Max over paths of the min hop type.
    pub fn evaluate(&self, pair: usize, values: &[DependencyType]) -> DependencyType {
        self.paths[pair]
            .iter()
            .map(|path| {
                path.iter()
                    .fold(DependencyType::STRONGEST, |acc, &h| compose(acc, values[h]))
            })
            .max()
            .expect("every up-stream pair has a path")
    }

    pub fn edge_labels(&self, path: &[usize]) -> Vec<String> {
        path.iter().map(|&e| self.topo.edge(e).label.clone()).collect()
    }

    /// Enumerates answer sets, keeping at most `limit + 1` so callers can tell
    /// whether the cap was reached.
    pub fn enumerate(&self, limit: usize) -> Vec<Vec<DependencyType>> {
        if !self.reachable_not_flows.is_empty() {
            return Vec::new();
        }
        Search::new(self, limit.saturating_add(1)).run()
    }

    pub fn solve(&self, max_models: usize) -> SolveResult {
        let max_models = max_models.max(1);
        let mut models = self.enumerate(max_models);
        let truncated = models.len() > max_models;
        models.truncate(max_models);
        let answer_sets = models
            .into_iter()
            .map(|values| Assignment(self.pairs.iter().cloned().zip(values).collect()))
            .collect();
        SolveResult::from_models(answer_sets, truncated)
    }
}

/// Backtracking over the single-block pairs without a user annotation. Each
/// constrained pair is checked as soon as every free pair on its paths has a
/// value.
struct Search<'p, 'a> {
    problem: &'p Problem<'a>,
    free: Vec<usize>,
    /// Pairs to check once free variable `k` is assigned.
    checks_at: Vec<Vec<usize>>,
    /// Pairs whose paths involve no free variable.
    root_checks: Vec<usize>,
    cap: usize,
}

impl<'p, 'a> Search<'p, 'a> {
    fn new(problem: &'p Problem<'a>, cap: usize) -> Self {
        let free: Vec<usize> = (0..problem.pairs.len())
            .filter(|&p| problem.direct[p] && problem.user[p].is_none())
            .collect();
        let level_of: HashMap<usize, usize> = free.iter().enumerate().map(|(lvl, &p)| (p, lvl)).collect();
        let mut checks_at = vec![Vec::new(); free.len()];
        let mut root_checks = Vec::new();
        for p in 0..problem.pairs.len() {
            // Free direct pairs must equal their own path type (it can differ
            // on cycles); indirect pairs only when the user pinned them.
            if !problem.direct[p] && problem.user[p].is_none() {
                continue;
            }
            let deepest = problem.paths[p]
                .iter()
                .flatten()
                .chain(std::iter::once(&p))
                .filter_map(|h| level_of.get(h))
                .max();
            match deepest {
                Some(&lvl) => checks_at[lvl].push(p),
                None => root_checks.push(p),
            }
        }
        Search {
            problem,
            free,
            checks_at,
            root_checks,
            cap,
        }
    }

    fn holds(&self, pair: usize, values: &[DependencyType]) -> bool {
        let expected = if self.problem.direct[pair] {
            values[pair]
        } else {
            self.problem.user[pair].expect("only pinned indirect pairs are checked")
        };
        self.problem.evaluate(pair, values) == expected
    }

    fn initial_values(&self) -> Vec<DependencyType> {
        self.problem
            .user
            .iter()
            .map(|u| u.unwrap_or(DependencyType::WEAKEST))
            .collect()
    }

    fn run(&self) -> Vec<Vec<DependencyType>> {
        let values = self.initial_values();
        if !self.root_checks.iter().all(|&p| self.holds(p, &values)) {
            return Vec::new();
        }
        if self.free.is_empty() {
            return vec![self.complete(values)];
        }
        // Branches on the first free pair run in parallel; concatenating them
        // in value order keeps the output independent of scheduling.
        let branches: Vec<Vec<Vec<DependencyType>>> = DependencyType::ALL
            .par_iter()
            .map(|&t| {
                let mut values = values.clone();
                let mut out = Vec::new();
                self.assign(0, t, &mut values, &mut out);
                out
            })
            .collect();
        let mut models: Vec<_> = branches.into_iter().flatten().collect();
        models.truncate(self.cap);
        models
    }

    fn assign(
        &self,
        level: usize,
        t: DependencyType,
        values: &mut Vec<DependencyType>,
        out: &mut Vec<Vec<DependencyType>>,
    ) {
        values[self.free[level]] = t;
        if !self.checks_at[level].iter().all(|&p| self.holds(p, values)) {
            return;
        }
        if level + 1 == self.free.len() {
            out.push(self.complete(values.clone()));
            return;
        }
        for next in DependencyType::ALL {
            if out.len() >= self.cap {
                return;
            }
            self.assign(level + 1, next, values, out);
        }
    }

    /// Fills indirect pairs with their path type.
    fn complete(&self, mut values: Vec<DependencyType>) -> Vec<DependencyType> {
        for p in 0..values.len() {
            if !self.problem.direct[p] {
                values[p] = self.problem.evaluate(p, &values);
            }
        }
        values
    }
}

/// Enumerates every assignment of types to up-stream pairs that extends the
/// user annotations and gives each pair exactly the type of its strongest
/// path, where a path's type is its weakest single-block link.
///
/// Only single-block pairs are searched; the rest follow from them. At most
/// `max_models` answer sets are returned (the first ones in search order,
/// then sorted canonically) and `truncated` is set when more exist.
pub fn solve(spec: &WorkflowSpec, user: &[Annotation], max_models: usize) -> Result<SolveResult, ReasonError> {
    Ok(Problem::new(spec, user)?.solve(max_models))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use DependencyType::*;

    fn pk(i: &str, o: &str) -> PairKey {
        PairKey::new(i, o)
    }

    #[test]
    fn normalize_filter_unique_model() {
        let doc = fixtures::normalize_filter();
        let result = solve(&doc.spec, &doc.annotations, DEFAULT_MAX_MODELS).unwrap();
        assert_eq!(result.answer_sets.len(), 1);
        assert!(!result.truncated);
        assert_eq!(result.entailed[&pk("x1", "x4")], DerivedFrom);
        assert_eq!(result.entailed[&pk("x_range", "x4")], DerivedFrom);
        assert_eq!(result.entailed[&pk("x_cutoff", "x4")], DependsOn);
        assert_eq!(result.entailed.len(), 6);
    }

    #[test]
    fn spanning_derived_five_models() {
        let doc = fixtures::spanning_derived();
        let result = solve(&doc.spec, &doc.annotations, DEFAULT_MAX_MODELS).unwrap();
        let blocks: BTreeSet<(DependencyType, DependencyType)> = result
            .answer_sets
            .iter()
            .map(|m| (m.get(&pk("x1", "x2")).unwrap(), m.get(&pk("x3", "x4")).unwrap()))
            .collect();
        assert_eq!(
            blocks,
            BTreeSet::from([
                (DerivedFrom, DerivedFrom),
                (DerivedFrom, ValueOf),
                (DerivedFrom, SameAs),
                (ValueOf, DerivedFrom),
                (SameAs, DerivedFrom),
            ])
        );
        assert_eq!(result.answer_sets.len(), 5);
        let expected = BTreeSet::from([DerivedFrom, ValueOf, SameAs]);
        assert_eq!(result.options[&pk("x1", "x2")], expected);
        assert_eq!(result.options[&pk("x3", "x4")], expected);
        assert_eq!(result.entailed.keys().collect::<Vec<_>>(), vec![&pk("x1", "x4")]);
    }

    #[test]
    fn generate_sample_no_models() {
        let doc = fixtures::generate_sample();
        assert!(!solve(&doc.spec, &doc.annotations, DEFAULT_MAX_MODELS)
            .unwrap()
            .is_consistent());
    }

    #[test]
    fn multipath_strongest_path() {
        let doc = fixtures::multipath();
        let result = solve(&doc.spec, &doc.annotations, DEFAULT_MAX_MODELS).unwrap();
        assert_eq!(result.answer_sets.len(), 1);
        assert_eq!(result.entailed[&pk("x1", "x9")], DerivedFrom);
        assert_eq!(result.entailed[&pk("x3", "x9")], FlowsFrom);
    }

    #[test]
    fn truncation() {
        let doc = fixtures::spanning_derived();
        let result = solve(&doc.spec, &doc.annotations, 2).unwrap();
        assert_eq!(result.answer_sets.len(), 2);
        assert!(result.truncated);
        let exact = solve(&doc.spec, &doc.annotations, 5).unwrap();
        assert_eq!(exact.answer_sets.len(), 5);
        assert!(!exact.truncated);
    }

    #[test]
    fn unannotated_single_block_allows_everything() {
        let spec = WorkflowSpec::builder("w")
            .program("p")
            .input("i", "a")
            .output("o", "b")
            .build();
        let result = solve(&spec, &[], 5usize.pow(5)).unwrap();
        assert_eq!(result.answer_sets.len(), 5);
        assert_eq!(result.options[&pk("i", "o")].len(), 5);
    }

    #[test]
    fn not_flows_from() {
        let doc = fixtures::normalize_filter();
        let mut anns = doc.annotations.clone();
        anns.push(Annotation::user("x_cutoff", "x2", AssertionType::NotFlowsFrom));
        assert_eq!(solve(&doc.spec, &anns, 10).unwrap().answer_sets.len(), 1);
        let mut anns = doc.annotations.clone();
        anns.push(Annotation::user("x1", "x4", AssertionType::NotFlowsFrom));
        assert!(!solve(&doc.spec, &anns, 10).unwrap().is_consistent());
    }

    #[test]
    fn non_upstream_annotation_is_an_error() {
        let doc = fixtures::normalize_filter();
        let err = solve(&doc.spec, &[Annotation::user("x_cutoff", "x2", SameAs)], 10).unwrap_err();
        assert!(matches!(err, ReasonError::Structural(_)));
    }

    #[test]
    fn feedback_loop_constrains_direct_pairs() {
        // a's second output loops back through b into a's second input, so
        // (i, o) has the direct path and the path i, p, k, m, j, o.
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
        let result = solve(&spec, &[], 5usize.pow(5)).unwrap();
        assert!(!result.truncated);
        assert!(result.answer_sets.len() < 5usize.pow(5));
        for model in &result.answer_sets {
            let get = |i: &str, o: &str| model.get(&pk(i, o)).unwrap();
            let around = get("i", "p").compose(get("k", "m")).compose(get("j", "o"));
            assert!(around <= get("i", "o"));
        }
    }
}
