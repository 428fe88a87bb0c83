//! Single-reduct feature selection for categorical decision tables.
//!
//! Condition attributes are compared through their relative indiscernibility
//! partitions (objects grouped by attribute value within each decision class).
//! An asymmetric similarity factor between every pair of attributes drives a
//! three-stage selection that yields one reduct, together with a trace of
//! every intermediate stage.
//!
//! ```
//! let table = rredux::datasets::sample();
//! let result = rredux::run_pipeline(&table).unwrap();
//! assert_eq!(result.reduct.len(), result.trace.reduct.len());
//! ```
//!
//! Numeric columns can be discretized with ChiMerge ([`discretize`]) and the
//! effect of a reduct on accuracy measured by stratified cross-validation
//! ([`evaluate`]).

pub mod cli;
pub mod datasets;
pub mod discretize;
pub mod error;
pub mod evaluate;
pub mod partition;
pub mod reduct;
pub mod report;
pub mod similarity;
pub mod table;

pub use discretize::{chi_square, chimerge, ChiMergeParams, IntervalMap};
pub use error::{Error, Result};
pub use evaluate::{compare, stratified_folds, Classifier, Comparison, EvalReport, FoldPlan};
pub use partition::{consistency, ind_partition, refines, relative_partition, Partition};
pub use reduct::{ass_gen, comp_sim, run_pipeline, sin_red_gen, ReductResult, Trace};
pub use similarity::{sim_fac, similarity_matrix, SimilarityMatrix};
pub use table::{parse_csv, CsvOptions, DecisionTable, Parsed};
