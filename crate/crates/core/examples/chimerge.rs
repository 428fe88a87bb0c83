//! Discretize numeric columns with ChiMerge, then reduce.
//!
//! `cargo run --example chimerge`

use rredux::datasets::WINE_CSV;
use rredux::discretize::{chimerge, discretize_table, ChiMergeParams};
use rredux::run_pipeline;
use rredux::table::{read_raw, CsvOptions, NumericColumns};

fn main() -> rredux::Result<()> {
    // A toy column: two well-separated clusters with different classes.
    let map = chimerge("x", &[1.0, 2.0, 7.0, 8.0], &[0, 0, 1, 1], 0.0, 2)?;
    println!("toy cuts: {:?} -> {:?}", map.cut_points, map.labels);

    let opts = CsvOptions {
        numeric: NumericColumns::Auto,
        ..CsvOptions::default()
    };
    let raw = read_raw(WINE_CSV.as_bytes(), &opts)?;
    let (table, maps) = discretize_table(&raw, &ChiMergeParams::default())?;
    for m in &maps {
        println!(
            "{:<30} {} intervals, cuts {:?}",
            m.attr,
            m.n_intervals(),
            m.cut_points
        );
    }
    let result = run_pipeline(&table)?;
    println!(
        "reduct ({} of {}): {}",
        result.reduct.len(),
        table.n_conditions(),
        result.reduct.join(", ")
    );
    Ok(())
}
