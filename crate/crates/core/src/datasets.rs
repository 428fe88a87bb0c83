//! Small bundled tables for examples and tests.

use crate::table::{parse_csv, CsvOptions, DecisionTable, Parsed};

/// Eight job applicants described by diploma (`i`), experience (`e`),
/// French (`f`) and reference (`r`), with an Accept/Reject decision.
pub const SAMPLE_CSV: &str = include_str!("../data/table1.csv");

/// UCI Wine recognition data: 178 wines, 13 numeric measurements, 3 cultivars.
pub const WINE_CSV: &str = include_str!("../data/wine.csv");

/// [`SAMPLE_CSV`] parsed into a table.
pub fn sample() -> DecisionTable {
    match parse_csv(SAMPLE_CSV.as_bytes(), &CsvOptions::default()) {
        Ok(Parsed::Table(t)) => t,
        _ => unreachable!("bundled sample is categorical and well formed"),
    }
}
