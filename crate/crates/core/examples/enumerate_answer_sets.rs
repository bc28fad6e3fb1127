//! Enumerate every completion of a partial annotation.
//!
//! Only the spanning pair is annotated, so at least one of the two blocks has
//! to be DerivedFrom and neither can be weaker.
//!
//!     cargo run --example enumerate_answer_sets

use wflineage::reasoner::{brute_force_solve, solve, DEFAULT_MAX_MODELS, DEFAULT_ORACLE_PAIR_CAP};
use wflineage::{fixtures, PairKey};

fn main() {
    let doc = fixtures::spanning_derived();
    let result = solve(&doc.spec, &doc.annotations, DEFAULT_MAX_MODELS).unwrap();
    println!("{} answer sets", result.answer_sets.len());
    for model in &result.answer_sets {
        println!(
            "  p1 = {:<11}  p2 = {}",
            model.get(&PairKey::new("x1", "x2")).unwrap(),
            model.get(&PairKey::new("x3", "x4")).unwrap()
        );
    }

    let oracle = brute_force_solve(&doc.spec, &doc.annotations, DEFAULT_ORACLE_PAIR_CAP).unwrap();
    assert_eq!(oracle, result);
    println!("brute force agrees");

    let capped = solve(&doc.spec, &doc.annotations, 2).unwrap();
    println!(
        "with a cap of 2: {} sets, truncated = {}",
        capped.answer_sets.len(),
        capped.truncated
    );
}
