use std::collections::{BTreeMap, BTreeSet};

use super::consistency::{check_consistency, Consistency};
use super::solver::{Problem, DEFAULT_MAX_MODELS};
use super::ReasonError;
use crate::model::{Annotation, DependencyType, Origin, PairKey, WorkflowSpec};

/// What is known about one up-stream pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inference {
    /// The same type in every answer set.
    Entailed { ty: DependencyType, origin: Origin },
    /// Two or more types remain possible.
    Options(BTreeSet<DependencyType>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferenceReport {
    pub pairs: BTreeMap<PairKey, Inference>,
    /// Computed from a truncated set of answer sets.
    pub approximate: bool,
}

impl InferenceReport {
    /// Entailed pairs that the user did not annotate.
    pub fn inferred_annotations(&self) -> Vec<Annotation> {
        self.pairs
            .iter()
            .filter_map(|(pair, inf)| match inf {
                Inference::Entailed {
                    ty,
                    origin: Origin::Inferred,
                } => Some(Annotation::inferred(pair.input.clone(), pair.output.clone(), *ty)),
                _ => None,
            })
            .collect()
    }
}

/// Every up-stream pair, reported as entailed or with its option set.
/// User-annotated pairs are always entailed with origin `User`.
pub fn infer(spec: &WorkflowSpec, user: &[Annotation]) -> Result<InferenceReport, ReasonError> {
    infer_with_limit(spec, user, DEFAULT_MAX_MODELS)
}

pub fn infer_with_limit(
    spec: &WorkflowSpec,
    user: &[Annotation],
    max_models: usize,
) -> Result<InferenceReport, ReasonError> {
    let result = Problem::new(spec, user)?.solve(max_models);
    if !result.is_consistent() {
        return match check_consistency(spec, user)? {
            Consistency::Inconsistent(conflicts) => Err(ReasonError::Inconsistent(conflicts)),
            Consistency::Consistent => unreachable!("solve and check_consistency disagree"),
        };
    }
    let user_pairs: BTreeSet<PairKey> = user.iter().map(Annotation::pair).collect();
    let pairs = result
        .options
        .into_iter()
        .map(|(pair, options)| {
            let inference = if options.len() == 1 {
                Inference::Entailed {
                    ty: *options.first().unwrap(),
                    origin: if user_pairs.contains(&pair) {
                        Origin::User
                    } else {
                        Origin::Inferred
                    },
                }
            } else {
                Inference::Options(options)
            };
            (pair, inference)
        })
        .collect();
    Ok(InferenceReport {
        pairs,
        approximate: result.truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use DependencyType::*;

    #[test]
    fn normalize_filter_everything_entailed() {
        let doc = fixtures::normalize_filter();
        let report = infer(&doc.spec, &doc.annotations).unwrap();
        assert!(report.pairs.values().all(|i| matches!(i, Inference::Entailed { .. })));
        assert_eq!(
            report.pairs[&PairKey::new("x1", "x4")],
            Inference::Entailed {
                ty: DerivedFrom,
                origin: Origin::Inferred
            }
        );
        assert_eq!(
            report.pairs[&PairKey::new("x1", "x2")],
            Inference::Entailed {
                ty: DerivedFrom,
                origin: Origin::User
            }
        );
        assert_eq!(report.inferred_annotations().len(), 2);
    }

    #[test]
    fn spanning_derived_options() {
        let doc = fixtures::spanning_derived();
        let report = infer(&doc.spec, &doc.annotations).unwrap();
        let opts = Inference::Options(BTreeSet::from([DerivedFrom, ValueOf, SameAs]));
        assert_eq!(report.pairs[&PairKey::new("x1", "x2")], opts);
        assert_eq!(report.pairs[&PairKey::new("x3", "x4")], opts);
        assert!(matches!(
            report.pairs[&PairKey::new("x1", "x4")],
            Inference::Entailed {
                ty: DerivedFrom,
                origin: Origin::User
            }
        ));
    }

    #[test]
    fn unconstrained_single_block() {
        let spec = WorkflowSpec::builder("w")
            .program("p")
            .input("i", "a")
            .output("o", "b")
            .build();
        let report = infer(&spec, &[]).unwrap();
        assert_eq!(
            report.pairs[&PairKey::new("i", "o")],
            Inference::Options(DependencyType::ALL.into_iter().collect())
        );
    }

    #[test]
    fn inconsistent_input() {
        let doc = fixtures::generate_sample();
        assert!(matches!(
            infer(&doc.spec, &doc.annotations),
            Err(ReasonError::Inconsistent(c)) if !c.is_empty()
        ));
    }
}
