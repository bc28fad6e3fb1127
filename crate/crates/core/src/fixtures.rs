//! The four example workflows shipped with the crate.

use crate::dsl::{parse_spec, SpecDocument};

pub const NORMALIZE_FILTER: &str = include_str!("../fixtures/normalize_filter.wf");
pub const SPANNING_DERIVED: &str = include_str!("../fixtures/spanning_derived.wf");
pub const GENERATE_SAMPLE: &str = include_str!("../fixtures/generate_sample.wf");
pub const MULTIPATH: &str = include_str!("../fixtures/multipath.wf");

pub const NORMALIZE_FILTER_TRACE: &str = include_str!("../fixtures/normalize_filter_trace.json");
pub const NORMALIZE_FILTER_TRACE_VIOLATING: &str = include_str!("../fixtures/normalize_filter_trace_violating.json");

fn load(text: &str) -> SpecDocument {
    parse_spec(text).expect("bundled fixture parses")
}

/// normalize then filter; fully annotated and consistent.
pub fn normalize_filter() -> SpecDocument {
    load(NORMALIZE_FILTER)
}

/// Two-block chain with only the spanning pair annotated.
pub fn spanning_derived() -> SpecDocument {
    load(SPANNING_DERIVED)
}

/// Generate then sample; the spanning annotation is too strong.
pub fn generate_sample() -> SpecDocument {
    load(GENERATE_SAMPLE)
}

/// Diamond where two routes reach the same output.
pub fn multipath() -> SpecDocument {
    load(MULTIPATH)
}

pub fn all() -> Vec<SpecDocument> {
    named().into_iter().map(|(_, doc)| doc).collect()
}

pub fn named() -> Vec<(&'static str, SpecDocument)> {
    vec![
        ("normalize_filter", normalize_filter()),
        ("spanning_derived", spanning_derived()),
        ("generate_sample", generate_sample()),
        ("multipath", multipath()),
    ]
}
