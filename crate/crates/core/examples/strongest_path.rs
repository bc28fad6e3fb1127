//! With two routes between the same pair, the stronger one decides.
//!
//!     cargo run --example strongest_path

use std::collections::BTreeMap;

use wflineage::reasoner::{infer, path_min, path_type, simple_paths, widest_path_type};
use wflineage::{fixtures, DependencyType, PairKey};

fn main() {
    let doc = fixtures::multipath();
    let direct: BTreeMap<PairKey, DependencyType> = doc
        .annotations
        .iter()
        .map(|a| (a.pair(), a.assertion.dependency().unwrap()))
        .collect();

    for path in simple_paths("x1", "x9", &doc.spec).unwrap() {
        println!("{:<28} {}", path.join(" "), path_min(&path, &direct).unwrap());
    }
    let by_paths = path_type("x1", "x9", &direct, &doc.spec).unwrap();
    let by_search = widest_path_type("x1", "x9", &direct, &doc.spec).unwrap();
    println!("max-min over paths: {by_paths:?}, widest-path search: {by_search:?}");

    let report = infer(&doc.spec, &doc.annotations).unwrap();
    println!("(x1, x9): {:?}", report.pairs[&PairKey::new("x1", "x9")]);
}
