//! Check recorded invocations against SameAs and ValueOf annotations.
//!
//!     cargo run --example check_trace

use wflineage::dsl::parse_trace;
use wflineage::trace::{check_trace, warn_sameas_candidates, DataItem, Invocation, Trace};
use wflineage::{fixtures, Annotation, DependencyType};

fn main() {
    let doc = fixtures::normalize_filter();
    for (name, text) in [
        ("conforming", fixtures::NORMALIZE_FILTER_TRACE),
        ("violating", fixtures::NORMALIZE_FILTER_TRACE_VIOLATING),
    ] {
        let trace = parse_trace(text, &doc.spec).unwrap();
        let violations = check_trace(&doc.spec, &doc.annotations, &trace).unwrap();
        println!("{name}: {} violation(s)", violations.len());
        for v in violations {
            println!("  {v}");
        }
    }

    // A ValueOf filter that only ever passes items through could be SameAs.
    let anns = [Annotation::user("x3", "x4", DependencyType::ValueOf)];
    let trace = Trace {
        workflow: doc.spec.name().into(),
        invocations: vec![Invocation::new("filter")
            .read("x3", vec![DataItem::new("n1", "0.2"), DataItem::new("n2", "0.9")])
            .write("x4", vec![DataItem::new("n2", "0.9")])],
    };
    for w in warn_sameas_candidates(&doc.spec, &anns, &trace) {
        println!("warning: {w}");
    }
}
