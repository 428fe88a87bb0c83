//! Compare classifier accuracy on all attributes versus the reduct.
//!
//! `cargo run --example cross_validation`

use rredux::datasets::WINE_CSV;
use rredux::discretize::{discretize_table, ChiMergeParams};
use rredux::report::comparison_text;
use rredux::table::{read_raw, CsvOptions, NumericColumns};
use rredux::{compare, run_pipeline, Classifier};

fn main() -> rredux::Result<()> {
    let opts = CsvOptions {
        numeric: NumericColumns::Auto,
        ..CsvOptions::default()
    };
    let raw = read_raw(WINE_CSV.as_bytes(), &opts)?;
    let (table, _) = discretize_table(&raw, &ChiMergeParams::default())?;
    let result = run_pipeline(&table)?;
    for clf in Classifier::ALL {
        let cmp = compare(&table, &result.reduct, 10, 1, clf)?;
        println!("{}", comparison_text(&result.reduct, &cmp));
    }
    Ok(())
}
