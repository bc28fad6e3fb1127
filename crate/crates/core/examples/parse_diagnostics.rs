//! Parse errors point at the offending token.
//!
//!     cargo run --example parse_diagnostics

use wflineage::dsl::parse_spec;

const BROKEN: &str = "\
workflow broken

program clean
  in raw from samples
  out cleaned to table

program plot
  in rows from table
  out figure to png

dep raw -> cleaned : DerivedFrum
dep rows -> figure : DependsOn
dep raw -> missing : SameAs
";

fn main() {
    match parse_spec(BROKEN) {
        Ok(_) => unreachable!(),
        Err(diagnostics) => print!("{}", diagnostics.render(BROKEN, "broken.wf")),
    }
}
