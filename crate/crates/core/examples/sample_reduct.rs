//! Run the single-reduct pipeline on the bundled eight-applicant table.
//!
//! `cargo run --example sample_reduct`

use rredux::datasets::sample;
use rredux::{consistency, run_pipeline};

fn main() -> rredux::Result<()> {
    let table = sample();
    let result = run_pipeline(&table)?;
    println!(
        "condition attributes: {}",
        table.condition_attrs().join(", ")
    );
    println!("reduct:               {}", result.reduct.join(", "));
    println!("isolated:             {}", result.isolated.join(", "));
    println!(
        "consistency: full {:.6}, reduct {:.6}",
        consistency(&table, table.condition_attrs())?,
        consistency(&table, &result.reduct)?
    );
    Ok(())
}
