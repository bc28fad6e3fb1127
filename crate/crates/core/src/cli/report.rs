use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::model::{Origin, PairKey};
use crate::reasoner::{Conflict, Inference, InferenceReport, SolveResult};
use crate::trace::{SameAsCandidate, TraceViolation};

pub(super) fn pair_key(pair: &PairKey) -> String {
    format!("{} -> {}", pair.input, pair.output)
}

fn json_text(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json serializes");
    s.push('\n');
    s
}

pub(super) fn conflicts(conflicts: &[Conflict]) -> String {
    let mut s = format!("inconsistent: {} conflict(s)\n", conflicts.len());
    for c in conflicts {
        let _ = writeln!(s, "  {}", c.to_string().replace('\n', "\n  "));
    }
    s
}

pub(super) fn inference_text(report: &InferenceReport) -> String {
    let width = report.pairs.keys().map(|p| p.to_string().len()).max().unwrap_or(0);
    let mut s = String::new();
    for (pair, inference) in &report.pairs {
        let pair = pair.to_string();
        match inference {
            Inference::Entailed { ty, origin } => {
                let tag = match origin {
                    Origin::User => "user",
                    Origin::Inferred => "inferred",
                };
                let _ = writeln!(s, "{pair:width$}  {ty} ({tag})");
            }
            Inference::Options(options) => {
                let names: Vec<&str> = options.iter().map(|t| t.name()).collect();
                let _ = writeln!(s, "{pair:width$}  one of {{{}}}", names.join(", "));
            }
        }
    }
    if report.approximate {
        s.push_str("note: answer sets were truncated; results are approximate\n");
    }
    s
}

fn summary(entries: impl Iterator<Item = (String, Value)>) -> Value {
    Value::Object(entries.collect::<Map<_, _>>())
}

pub(super) fn inference_json(report: &InferenceReport) -> String {
    let pairs = summary(report.pairs.iter().map(|(pair, inference)| {
        let value = match inference {
            Inference::Entailed { ty, .. } => json!({ "entailed": ty.name() }),
            Inference::Options(options) => json!({ "options": options.iter().map(|t| t.name()).collect::<Vec<_>>() }),
        };
        (pair_key(pair), value)
    }));
    if report.approximate {
        json_text(json!({ "approximate": true, "pairs": pairs }))
    } else {
        json_text(pairs)
    }
}

pub(super) fn solve_text(result: &SolveResult, max_models: usize, conflicts: &[Conflict]) -> String {
    let mut s = String::new();
    if !result.is_consistent() {
        s.push_str("0 answer sets (inconsistent)\n");
        s.push_str(&self::conflicts(conflicts));
        return s;
    }
    let _ = writeln!(s, "{} answer set(s)", result.answer_sets.len());
    if result.truncated {
        let _ = writeln!(
            s,
            "note: stopped after {max_models} answer set(s) (--max-models); more exist"
        );
    }
    for (n, model) in result.answer_sets.iter().enumerate() {
        let _ = writeln!(s, "\nanswer set {}", n + 1);
        for (pair, ty) in model.iter() {
            let _ = writeln!(s, "  {pair} = {ty}");
        }
    }
    s.push_str(if result.truncated {
        "\nsummary (approximate, over the answer sets shown)\n"
    } else {
        "\nsummary\n"
    });
    for (pair, options) in &result.options {
        if let Some(ty) = result.entailed.get(pair) {
            let _ = writeln!(s, "  {pair} entailed {ty}");
        } else {
            let names: Vec<&str> = options.iter().map(|t| t.name()).collect();
            let _ = writeln!(s, "  {pair} one of {{{}}}", names.join(", "));
        }
    }
    s
}

pub(super) fn solve_json(result: &SolveResult) -> String {
    let sets: Vec<Value> = result
        .answer_sets
        .iter()
        .map(|m| summary(m.iter().map(|(p, t)| (pair_key(p), json!(t.name())))))
        .collect();
    let pairs = summary(result.options.iter().map(|(pair, options)| {
        let value = match result.entailed.get(pair) {
            Some(ty) => json!({ "entailed": ty.name() }),
            None => json!({ "options": options.iter().map(|t| t.name()).collect::<Vec<_>>() }),
        };
        (pair_key(pair), value)
    }));
    json_text(json!({
        "answer_sets": sets,
        "count": result.answer_sets.len(),
        "pairs": pairs,
        "truncated": result.truncated,
    }))
}

pub(super) fn trace_text(violations: &[TraceViolation], warnings: &[SameAsCandidate], invocations: usize) -> String {
    let mut s = String::new();
    for v in violations {
        let _ = writeln!(s, "{v}");
    }
    for w in warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = writeln!(s, "{} violation(s) in {invocations} invocation(s)", violations.len());
    s
}
