//! Write the Graphviz view and the answer-set program for a workflow.
//!
//!     cargo run --example export_graphs -- /tmp/out
//!     dot -Tsvg /tmp/out/normalize_filter.dot > normalize_filter.svg

use std::path::PathBuf;

use wflineage::dsl::{emit_asp_program, emit_dot};
use wflineage::{fixtures, infer};

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;
    for doc in fixtures::all() {
        let name = doc.spec.name();
        let mut annotations = doc.annotations.clone();
        if let Ok(report) = infer(&doc.spec, &doc.annotations) {
            annotations.extend(report.inferred_annotations());
        }
        let dot = dir.join(format!("{name}.dot"));
        std::fs::write(&dot, emit_dot(&doc.spec, &annotations))?;
        let lp = dir.join(format!("{name}.lp"));
        std::fs::write(
            &lp,
            emit_asp_program(&doc.spec, &doc.annotations).expect("no NotFlowsFrom"),
        )?;
        println!("{}  {}", dot.display(), lp.display());
    }
    Ok(())
}
