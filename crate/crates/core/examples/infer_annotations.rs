//! Infer cross-block annotations from per-block ones.
//!
//!     cargo run --example infer_annotations

use wflineage::reasoner::{infer, Inference};
use wflineage::{fixtures, Annotation, DependencyType};

fn main() {
    let doc = fixtures::normalize_filter();
    print!("{}", wflineage::dsl::emit_spec(&doc.spec, &doc.annotations));

    let report = infer(&doc.spec, &doc.annotations).expect("fixture is consistent");
    println!("\ninferred:");
    for ann in report.inferred_annotations() {
        println!("  {ann}");
    }

    // normalize -> filter composes DerivedFrom with SameAs.
    let x1_x4 = &report.pairs[&wflineage::PairKey::new("x1", "x4")];
    assert!(matches!(
        x1_x4,
        Inference::Entailed {
            ty: DependencyType::DerivedFrom,
            ..
        }
    ));

    // Drop the filter annotation and the composite is no longer pinned down.
    let partial: Vec<Annotation> = doc
        .annotations
        .iter()
        .filter(|a| a.input_edge != "x3")
        .cloned()
        .collect();
    let report = infer(&doc.spec, &partial).unwrap();
    println!("\nwithout x3 -> x4:");
    for (pair, inference) in &report.pairs {
        println!("  {pair}: {inference:?}");
    }
}
