//! Pairwise similarity factors between relative partitions, plus the
//! per-stage similarity sets that lead to the reduct.
//!
//! `cargo run --example similarity_matrix`

use rredux::datasets::sample;
use rredux::report::trace_text;
use rredux::run_pipeline;

fn main() -> rredux::Result<()> {
    let result = run_pipeline(&sample())?;
    print!("{}", trace_text(&result.trace));
    println!("reduct: {}", result.reduct.join(", "));
    Ok(())
}
