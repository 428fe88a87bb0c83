//! Command-line front end: `discretize`, `reduct` and `evaluate`.
//!
//! Exit codes: 0 on success, 1 for input or processing errors, 2 for bad
//! flags or references to columns that do not exist.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::discretize::{discretize_raw, ChiMergeParams, IntervalMap, DEFAULT_MAX_INTERVALS};
use crate::error::Error;
use crate::evaluate::{compare, Classifier};
use crate::partition::consistency_columns;
use crate::reduct::{run_pipeline, Trace};
use crate::report::{comparison_text, to_json, trace_text};
use crate::table::{read_raw, CsvOptions, DecisionTable, MissingPolicy, NumericColumns, RawTable};

#[derive(Debug, Parser)]
#[command(
    name = "rredux",
    version,
    about = "Single-reduct feature selection for decision tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Replace numeric columns with ChiMerge interval labels and print CSV.
    Discretize {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        chi: ChiArgs,
        /// Write the learned cut points as JSON to this path.
        #[arg(long, value_name = "PATH")]
        emit_cuts: Option<PathBuf>,
    },
    /// Compute a single reduct.
    Reduct {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        chi: ChiArgs,
    },
    /// Compute a reduct, then compare cross-validated accuracy on the full
    /// and reduced attribute sets.
    Evaluate {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        chi: ChiArgs,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, env = "RREDUX_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ClassifierArg::Nb)]
        classifier: ClassifierArg,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    /// Decision column (defaults to the last column).
    #[arg(long, value_name = "NAME")]
    pub decision_col: Option<String>,
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Include every intermediate stage in the output.
    #[arg(long)]
    pub trace: bool,
    /// Drop rows holding missing values instead of failing.
    #[arg(long)]
    pub drop_missing: bool,
    /// Comma-separated numeric columns, or `auto` to detect them.
    #[arg(long, value_name = "COLS")]
    pub numeric_cols: Option<String>,
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    /// χ² merge threshold (default: 95% critical value for the class count).
    #[arg(long, value_name = "REAL")]
    pub chi_threshold: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_MAX_INTERVALS)]
    pub max_intervals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifierArg {
    Nb,
    #[value(name = "1nn")]
    OneNn,
}

impl From<ClassifierArg> for Classifier {
    fn from(c: ClassifierArg) -> Self {
        match c {
            ClassifierArg::Nb => Classifier::NaiveBayes,
            ClassifierArg::OneNn => Classifier::OneNn,
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownColumn(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

impl CommonArgs {
    fn csv_options(&self) -> CliResult<CsvOptions> {
        if !self.delimiter.is_ascii() {
            return Err(Failure::Usage(
                "delimiter must be a single ASCII character".into(),
            ));
        }
        let numeric = match self.numeric_cols.as_deref() {
            None => NumericColumns::None,
            Some("auto") => NumericColumns::Auto,
            Some(list) => NumericColumns::Listed(
                list.split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect(),
            ),
        };
        Ok(CsvOptions {
            decision_col: self.decision_col.clone(),
            numeric,
            delimiter: self.delimiter as u8,
            missing: if self.drop_missing {
                MissingPolicy::DropRows
            } else {
                MissingPolicy::Reject
            },
        })
    }
}

impl ChiArgs {
    fn params(&self) -> CliResult<ChiMergeParams> {
        if self.max_intervals == 0 {
            return Err(Failure::Usage("max-intervals must be ≥ 1".into()));
        }
        if let Some(t) = self.chi_threshold {
            if t.is_nan() || t < 0.0 || !t.is_finite() {
                return Err(Failure::Usage(
                    "chi-threshold must be a finite value ≥ 0".into(),
                ));
            }
        }
        Ok(ChiMergeParams {
            threshold: self.chi_threshold,
            max_intervals: self.max_intervals,
        })
    }
}

fn read_input(path: &Path, opts: &CsvOptions) -> CliResult<RawTable> {
    let bytes = fs::read(path)
        .map_err(|e| Failure::Runtime(format!("cannot read '{}': {e}", path.display())))?;
    Ok(read_raw(bytes.as_slice(), opts)?)
}

/// Reads, discretizes when needed and encodes the input table.
fn load(common: &CommonArgs, chi: &ChiArgs) -> CliResult<(DecisionTable, Vec<IntervalMap>)> {
    let opts = common.csv_options()?;
    let params = chi.params()?;
    let raw = read_input(&common.input, &opts)?;
    let (raw, maps) = if raw.has_numeric() {
        discretize_raw(&raw, &params)?
    } else {
        (raw, Vec::new())
    };
    Ok((raw.encode_as_text()?, maps))
}

#[derive(Serialize)]
struct ConsistencyReport {
    full: f64,
    reduct: f64,
}

#[derive(Serialize)]
struct ReductOutput<'a> {
    reduct: &'a [String],
    isolated: &'a [String],
    consistency: ConsistencyReport,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    intervals: &'a [IntervalMap],
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a Trace>,
}

fn cmd_reduct(common: &CommonArgs, chi: &ChiArgs, out: &mut dyn Write) -> CliResult<()> {
    let (table, maps) = load(common, chi)?;
    let result = run_pipeline(&table)?;
    let all: Vec<usize> = (0..table.n_conditions()).collect();
    let consistency = ConsistencyReport {
        full: consistency_columns(&table, &all)?,
        reduct: consistency_columns(&table, &result.columns(&table))?,
    };
    let text = match common.output {
        OutputFormat::Json => to_json(&ReductOutput {
            reduct: &result.reduct,
            isolated: &result.isolated,
            consistency,
            intervals: &maps,
            trace: common.trace.then_some(&result.trace),
        }),
        OutputFormat::Text => {
            let mut s = String::new();
            if common.trace {
                s.push_str(&trace_text(&result.trace));
            }
            s.push_str(&format!("reduct: {}\n", result.reduct.join(", ")));
            if !result.isolated.is_empty() {
                s.push_str(&format!("isolated: {}\n", result.isolated.join(", ")));
            }
            s.push_str(&format!(
                "consistency: full {:.6}, reduct {:.6}\n",
                consistency.full, consistency.reduct
            ));
            s
        }
    };
    write_out(out, &text)
}

fn cmd_discretize(
    common: &CommonArgs,
    chi: &ChiArgs,
    emit_cuts: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let opts = common.csv_options()?;
    let params = chi.params()?;
    let raw = read_input(&common.input, &opts)?;
    let (raw, maps) = discretize_raw(&raw, &params)?;

    let mut writer = csv::WriterBuilder::new()
        .delimiter(opts.delimiter)
        .from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Runtime(format!("cannot write CSV: {e}"));
    writer
        .write_record(raw.columns.iter().map(|c| c.name.as_str()))
        .map_err(io)?;
    for r in 0..raw.n_rows() {
        writer
            .write_record(raw.columns.iter().map(|c| c.cells[r].text()))
            .map_err(io)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::Runtime(format!("cannot write CSV: {e}")))?;
    out.write_all(&bytes)
        .map_err(|e| Failure::Runtime(format!("cannot write output: {e}")))?;

    if let Some(path) = emit_cuts {
        fs::write(path, to_json(&maps))
            .map_err(|e| Failure::Runtime(format!("cannot write '{}': {e}", path.display())))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct EvaluateOutput<'a> {
    reduct: &'a [String],
    isolated: &'a [String],
    #[serde(flatten)]
    comparison: &'a crate::evaluate::Comparison,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a Trace>,
}

fn cmd_evaluate(
    common: &CommonArgs,
    chi: &ChiArgs,
    folds: usize,
    seed: u64,
    classifier: Classifier,
    out: &mut dyn Write,
) -> CliResult<()> {
    if folds < 2 {
        return Err(Failure::Usage("folds must be ≥ 2".into()));
    }
    let (table, _) = load(common, chi)?;
    if folds > table.n_objects() {
        return Err(Failure::Usage(format!(
            "folds ({folds}) cannot exceed the number of objects ({})",
            table.n_objects()
        )));
    }
    let result = run_pipeline(&table)?;
    let cmp = compare(&table, &result.reduct, folds, seed, classifier)?;
    let text = match common.output {
        OutputFormat::Json => to_json(&EvaluateOutput {
            reduct: &result.reduct,
            isolated: &result.isolated,
            comparison: &cmp,
            trace: common.trace.then_some(&result.trace),
        }),
        OutputFormat::Text => {
            let mut s = String::new();
            if common.trace {
                s.push_str(&trace_text(&result.trace));
            }
            s.push_str(&comparison_text(&result.reduct, &cmp));
            s
        }
    };
    write_out(out, &text)
}

fn write_out(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Runtime(format!("cannot write output: {e}")))
}

/// Parses `args` (including the program name) and runs the chosen command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    2
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Discretize {
            common,
            chi,
            emit_cuts,
        } => cmd_discretize(common, chi, emit_cuts.as_deref(), out),
        Command::Reduct { common, chi } => cmd_reduct(common, chi, out),
        Command::Evaluate {
            common,
            chi,
            folds,
            seed,
            classifier,
        } => cmd_evaluate(common, chi, *folds, *seed, (*classifier).into(), out),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
