//! Byte-stable JSON trace of every pipeline stage for a CSV file.
//!
//! `cargo run --example trace_json -- path/to/table.csv`
//! (defaults to the bundled sample table)

use std::fs::File;

use rredux::datasets::sample;
use rredux::report::to_json;
use rredux::table::{parse_csv, CsvOptions};
use rredux::{run_pipeline, Parsed};

fn main() -> rredux::Result<()> {
    let table = match std::env::args().nth(1) {
        Some(path) => match parse_csv(File::open(path)?, &CsvOptions::default())? {
            Parsed::Table(t) => t,
            Parsed::Raw(_) => unreachable!("numeric columns are opt-in"),
        },
        None => sample(),
    };
    print!("{}", to_json(&run_pipeline(&table)?.trace));
    Ok(())
}
