//! Build a workflow without the DSL, including a feedback loop.
//!
//!     cargo run --example build_in_code

use wflineage::dsl::emit_spec;
use wflineage::model::up_stream_pairs;
use wflineage::{infer, Annotation, DependencyType, WorkflowSpec};

fn main() {
    // refine reads its own previous estimate back through check.
    let spec = WorkflowSpec::builder("refine_loop")
        .program("refine")
        .input("obs", "observations")
        .input("prev", "estimate_in")
        .output("est", "estimate")
        .program("check")
        .input("cand", "estimate")
        .output("accepted", "estimate_in")
        .build();
    let anns = vec![
        Annotation::user("obs", "est", DependencyType::DerivedFrom),
        Annotation::user("cand", "accepted", DependencyType::SameAs),
    ];
    print!("{}", emit_spec(&spec, &anns));
    println!("\n{} up-stream pairs", up_stream_pairs(&spec).len());
    let report = infer(&spec, &anns).unwrap();
    for (pair, inference) in &report.pairs {
        println!("  {pair}: {inference:?}");
    }
}
