//! Explain why a set of annotations has no answer set.
//!
//!     cargo run --example validate_consistency

use wflineage::reasoner::{check_consistency, Consistency};
use wflineage::{fixtures, Annotation, AssertionType};

fn report(title: &str, doc: &wflineage::SpecDocument, annotations: &[Annotation]) {
    println!("{title}:");
    match check_consistency(&doc.spec, annotations).unwrap() {
        Consistency::Consistent => println!("  consistent"),
        Consistency::Inconsistent(conflicts) => {
            for c in conflicts {
                println!("  {}", c.to_string().replace('\n', "\n  "));
            }
        }
    }
}

fn main() {
    // Simulation output only decides which samples get selected, so the
    // end-to-end pair cannot be DerivedFrom.
    let generate_sample = fixtures::generate_sample();
    report("generate/sample", &generate_sample, &generate_sample.annotations);

    let normalize_filter = fixtures::normalize_filter();
    report("normalize/filter", &normalize_filter, &normalize_filter.annotations);

    let mut anns = normalize_filter.annotations.clone();
    anns.push(Annotation::user("x1", "x4", AssertionType::NotFlowsFrom));
    report(
        "normalize/filter with x1 -> x4 : NotFlowsFrom",
        &normalize_filter,
        &anns,
    );
}
