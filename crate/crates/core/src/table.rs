//! Decision tables: ingestion from CSV, categorical encoding and projection.
//!
//! A [`DecisionTable`] stores every cell as a dense category code. Codes are
//! assigned per column in order of first appearance, so two parses of the same
//! file always agree and partitions built on top are reproducible.

use std::collections::{HashMap, HashSet};
use std::io::Read;

use crate::error::{Error, Result};

/// Objects described by condition attributes plus one decision attribute.
///
/// Column `j < n_conditions()` is the `j`-th condition attribute; column
/// `n_conditions()` is the decision. The table is immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTable {
    object_ids: Vec<String>,
    condition_attrs: Vec<String>,
    decision_attr: String,
    rows: Vec<Vec<u32>>,
    domains: Vec<Vec<String>>,
}

impl DecisionTable {
    /// Encodes textual records. Each record holds the condition values followed
    /// by the decision value. Object ids default to `x1..xm`.
    pub fn from_records<S: AsRef<str>>(
        condition_attrs: &[&str],
        decision_attr: &str,
        records: &[Vec<S>],
    ) -> Result<Self> {
        let ids = (1..=records.len()).map(|i| format!("x{i}")).collect();
        Self::from_records_with_ids(ids, condition_attrs, decision_attr, records)
    }

    pub fn from_records_with_ids<S: AsRef<str>>(
        object_ids: Vec<String>,
        condition_attrs: &[&str],
        decision_attr: &str,
        records: &[Vec<S>],
    ) -> Result<Self> {
        let width = condition_attrs.len() + 1;
        let mut encoders: Vec<Encoder> = (0..width).map(|_| Encoder::default()).collect();
        let mut rows = Vec::with_capacity(records.len());
        for (r, rec) in records.iter().enumerate() {
            if rec.len() != width {
                return Err(Error::Parse {
                    row: r + 1,
                    message: format!("expected {width} values, found {}", rec.len()),
                });
            }
            rows.push(
                rec.iter()
                    .zip(encoders.iter_mut())
                    .map(|(v, enc)| enc.encode(v.as_ref()))
                    .collect(),
            );
        }
        let domains = encoders.into_iter().map(|e| e.labels).collect();
        Self::from_parts(
            object_ids,
            condition_attrs.iter().map(|s| s.to_string()).collect(),
            decision_attr.to_string(),
            rows,
            domains,
        )
    }

    /// Builds a table from already encoded parts, checking every invariant.
    pub fn from_parts(
        object_ids: Vec<String>,
        condition_attrs: Vec<String>,
        decision_attr: String,
        rows: Vec<Vec<u32>>,
        domains: Vec<Vec<String>>,
    ) -> Result<Self> {
        if condition_attrs.is_empty() {
            return Err(Error::schema(
                "at least one condition attribute is required",
            ));
        }
        if rows.is_empty() {
            return Err(Error::schema("table has no objects"));
        }
        if object_ids.len() != rows.len() {
            return Err(Error::schema(format!(
                "{} object ids for {} rows",
                object_ids.len(),
                rows.len()
            )));
        }
        let mut names = HashSet::new();
        for name in condition_attrs
            .iter()
            .chain(std::iter::once(&decision_attr))
        {
            if !names.insert(name.as_str()) {
                return Err(Error::schema(format!("duplicate attribute name '{name}'")));
            }
        }
        let mut ids = HashSet::new();
        for id in &object_ids {
            if !ids.insert(id.as_str()) {
                return Err(Error::schema(format!("duplicate object id '{id}'")));
            }
        }
        let width = condition_attrs.len() + 1;
        if domains.len() != width {
            return Err(Error::schema(format!(
                "expected {width} domains, found {}",
                domains.len()
            )));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::Parse {
                    row: r + 1,
                    message: format!("expected {width} values, found {}", row.len()),
                });
            }
            for (c, &code) in row.iter().enumerate() {
                if code as usize >= domains[c].len() {
                    return Err(Error::schema(format!(
                        "code {code} out of range for attribute column {c} at row {}",
                        r + 1
                    )));
                }
            }
        }
        Ok(DecisionTable {
            object_ids,
            condition_attrs,
            decision_attr,
            rows,
            domains,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.rows.len()
    }

    pub fn n_conditions(&self) -> usize {
        self.condition_attrs.len()
    }

    /// Column index of the decision attribute.
    pub fn decision_column(&self) -> usize {
        self.condition_attrs.len()
    }

    pub fn object_ids(&self) -> &[String] {
        &self.object_ids
    }

    pub fn condition_attrs(&self) -> &[String] {
        &self.condition_attrs
    }

    pub fn decision_attr(&self) -> &str {
        &self.decision_attr
    }

    /// Name of column `col` (condition or decision).
    pub fn attr_name(&self, col: usize) -> &str {
        if col == self.decision_column() {
            &self.decision_attr
        } else {
            &self.condition_attrs[col]
        }
    }

    /// Resolves a condition or decision attribute name to its column index.
    pub fn column_of(&self, name: &str) -> Option<usize> {
        if name == self.decision_attr {
            return Some(self.decision_column());
        }
        self.condition_attrs.iter().position(|a| a == name)
    }

    /// Resolves a condition attribute name; the decision attribute is rejected.
    pub fn condition_column(&self, name: &str) -> Result<usize> {
        self.condition_attrs
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::argument(format!("unknown condition attribute '{name}'")))
    }

    pub fn code(&self, object: usize, col: usize) -> u32 {
        self.rows[object][col]
    }

    pub fn decision(&self, object: usize) -> u32 {
        self.rows[object][self.decision_column()]
    }

    /// Condition codes of one object, in attribute order.
    pub fn condition_codes(&self, object: usize) -> &[u32] {
        &self.rows[object][..self.decision_column()]
    }

    /// Full encoded row (conditions then decision).
    pub fn row(&self, object: usize) -> &[u32] {
        &self.rows[object]
    }

    pub fn domain(&self, col: usize) -> &[String] {
        &self.domains[col]
    }

    /// Decodes a cell back to its text label.
    pub fn label(&self, object: usize, col: usize) -> &str {
        &self.domains[col][self.rows[object][col] as usize]
    }

    /// Number of distinct decision classes in the domain.
    pub fn n_classes(&self) -> usize {
        self.domains[self.decision_column()].len()
    }

    /// Keeps only `attrs` (in table order) plus the decision column.
    pub fn project<S: AsRef<str>>(&self, attrs: &[S]) -> Result<DecisionTable> {
        if attrs.is_empty() {
            return Err(Error::argument("projection needs at least one attribute"));
        }
        let mut keep = vec![false; self.n_conditions()];
        for a in attrs {
            keep[self.condition_column(a.as_ref())?] = true;
        }
        let cols: Vec<usize> = (0..self.n_conditions()).filter(|&c| keep[c]).collect();
        self.project_columns(&cols)
    }

    /// Index-based projection; `cols` must be valid condition columns.
    pub fn project_columns(&self, cols: &[usize]) -> Result<DecisionTable> {
        if cols.is_empty() {
            return Err(Error::argument("projection needs at least one attribute"));
        }
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.n_conditions()) {
            return Err(Error::argument(format!(
                "condition column {bad} out of range"
            )));
        }
        let dcol = self.decision_column();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                cols.iter()
                    .map(|&c| row[c])
                    .chain(std::iter::once(row[dcol]))
                    .collect()
            })
            .collect();
        let mut domains: Vec<Vec<String>> = cols.iter().map(|&c| self.domains[c].clone()).collect();
        domains.push(self.domains[dcol].clone());
        Ok(DecisionTable {
            object_ids: self.object_ids.clone(),
            condition_attrs: cols
                .iter()
                .map(|&c| self.condition_attrs[c].clone())
                .collect(),
            decision_attr: self.decision_attr.clone(),
            rows,
            domains,
        })
    }

    /// Sub-table of the given objects, in the given order. Domains are kept
    /// whole so codes stay comparable with the source table.
    pub fn select_rows(&self, objects: &[usize]) -> Result<DecisionTable> {
        if objects.is_empty() {
            return Err(Error::argument("row selection is empty"));
        }
        if let Some(&bad) = objects.iter().find(|&&o| o >= self.n_objects()) {
            return Err(Error::argument(format!("object index {bad} out of range")));
        }
        Ok(DecisionTable {
            object_ids: objects
                .iter()
                .map(|&o| self.object_ids[o].clone())
                .collect(),
            condition_attrs: self.condition_attrs.clone(),
            decision_attr: self.decision_attr.clone(),
            rows: objects.iter().map(|&o| self.rows[o].clone()).collect(),
            domains: self.domains.clone(),
        })
    }
}

#[derive(Default)]
struct Encoder {
    labels: Vec<String>,
    index: HashMap<String, u32>,
}

impl Encoder {
    fn encode(&mut self, label: &str) -> u32 {
        if let Some(&code) = self.index.get(label) {
            return code;
        }
        let code = self.labels.len() as u32;
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), code);
        code
    }
}

/// What to do with cells holding the missing-value token (`?` or empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    #[default]
    Reject,
    DropRows,
}

/// Which columns are read as numbers (and therefore need discretization).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum NumericColumns {
    /// Every column is categorical.
    #[default]
    None,
    /// Exactly these columns are numeric.
    Listed(Vec<String>),
    /// A condition column is numeric when every cell parses as a finite number.
    Auto,
}

#[derive(Debug, Clone)]
pub struct CsvOptions {
    /// Decision column name; the last column when `None`.
    pub decision_col: Option<String>,
    pub numeric: NumericColumns,
    pub delimiter: u8,
    pub missing: MissingPolicy,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            decision_col: None,
            numeric: NumericColumns::None,
            delimiter: b',',
            missing: MissingPolicy::Reject,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Categorical,
    Numeric,
}

/// A numeric cell keeps its source text so untouched output can be echoed back.
#[derive(Debug, Clone, PartialEq)]
pub enum RawCell {
    Text(String),
    Number { text: String, value: f64 },
}

impl RawCell {
    pub fn text(&self) -> &str {
        match self {
            RawCell::Text(t) => t,
            RawCell::Number { text, .. } => text,
        }
    }
}

/// One input column before encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct RawColumn {
    pub name: String,
    pub kind: ColumnKind,
    pub cells: Vec<RawCell>,
}

impl RawColumn {
    /// Numeric values of the column; `None` for categorical columns.
    pub fn numbers(&self) -> Option<Vec<f64>> {
        if self.kind != ColumnKind::Numeric {
            return None;
        }
        self.cells
            .iter()
            .map(|c| match c {
                RawCell::Number { value, .. } => Some(*value),
                RawCell::Text(_) => None,
            })
            .collect()
    }
}

/// Columns read from CSV, in header order, with the decision column marked.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    pub columns: Vec<RawColumn>,
    pub decision: usize,
    /// 1-based data row numbers of rows removed under [`MissingPolicy::DropRows`].
    pub dropped_rows: Vec<usize>,
}

impl RawTable {
    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.cells.len())
    }

    pub fn has_numeric(&self) -> bool {
        self.columns.iter().any(|c| c.kind == ColumnKind::Numeric)
    }

    /// Encodes every column as categorical, numeric ones by their text.
    pub fn encode_as_text(&self) -> Result<DecisionTable> {
        let conds: Vec<&str> = self
            .columns
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.decision)
            .map(|(_, c)| c.name.as_str())
            .collect();
        let records: Vec<Vec<&str>> = (0..self.n_rows())
            .map(|r| {
                self.columns
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != self.decision)
                    .map(|(_, c)| c.cells[r].text())
                    .chain(std::iter::once(self.columns[self.decision].cells[r].text()))
                    .collect()
            })
            .collect();
        DecisionTable::from_records(&conds, &self.columns[self.decision].name, &records)
    }
}

/// Result of [`parse_csv`]: an encoded table, or raw columns when any column
/// is numeric and must be discretized first.
#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Table(DecisionTable),
    Raw(RawTable),
}

fn is_missing(cell: &str) -> bool {
    cell.is_empty() || cell == "?"
}

fn parse_finite(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Reads a CSV with a header row into raw columns, applying the missing-value
/// policy and numeric column selection.
pub fn read_raw<R: Read>(source: R, opts: &CsvOptions) -> Result<RawTable> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter)
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut records = reader.records();
    let header = match records.next() {
        None => return Err(Error::schema("input is empty")),
        Some(rec) => rec.map_err(|e| csv_error(e, 0))?,
    };
    let names: Vec<String> = header.iter().map(str::to_string).collect();
    let mut seen = HashSet::new();
    for n in &names {
        if !seen.insert(n.as_str()) {
            return Err(Error::schema(format!("duplicate column name '{n}'")));
        }
    }
    if names.len() < 2 {
        return Err(Error::schema(
            "need at least one condition column and one decision column",
        ));
    }
    let decision = match &opts.decision_col {
        None => names.len() - 1,
        Some(d) => names
            .iter()
            .position(|n| n == d)
            .ok_or_else(|| Error::UnknownColumn(d.clone()))?,
    };
    let mut numeric = vec![false; names.len()];
    if let NumericColumns::Listed(list) = &opts.numeric {
        for col in list {
            let idx = names
                .iter()
                .position(|n| n == col)
                .ok_or_else(|| Error::UnknownColumn(col.clone()))?;
            if idx == decision {
                return Err(Error::schema(format!(
                    "decision column '{col}' cannot be numeric"
                )));
            }
            numeric[idx] = true;
        }
    }

    let mut cells: Vec<Vec<String>> = vec![Vec::new(); names.len()];
    let mut dropped_rows = Vec::new();
    let mut n_data = 0usize;
    'rows: for (r, rec) in records.enumerate() {
        let row_no = r + 1;
        let rec = rec.map_err(|e| csv_error(e, row_no))?;
        n_data += 1;
        if rec.len() != names.len() {
            return Err(Error::Parse {
                row: row_no,
                message: format!("expected {} fields, found {}", names.len(), rec.len()),
            });
        }
        for (c, cell) in rec.iter().enumerate() {
            if is_missing(cell) {
                match opts.missing {
                    MissingPolicy::Reject => {
                        return Err(Error::Validation {
                            row: row_no,
                            column: names[c].clone(),
                            message: "missing value".into(),
                        })
                    }
                    MissingPolicy::DropRows => {
                        dropped_rows.push(row_no);
                        continue 'rows;
                    }
                }
            }
        }
        for (c, cell) in rec.iter().enumerate() {
            if numeric[c] && parse_finite(cell).is_none() {
                return Err(Error::Validation {
                    row: row_no,
                    column: names[c].clone(),
                    message: format!("'{cell}' is not a finite number"),
                });
            }
            cells[c].push(cell.to_string());
        }
    }
    if n_data == 0 {
        return Err(Error::schema("input has a header but no data rows"));
    }
    if cells[0].is_empty() {
        return Err(Error::schema(
            "no rows remain after dropping missing values",
        ));
    }
    if opts.numeric == NumericColumns::Auto {
        for c in (0..names.len()).filter(|&c| c != decision) {
            numeric[c] = cells[c].iter().all(|v| parse_finite(v).is_some());
        }
    }

    let columns = names
        .into_iter()
        .zip(cells)
        .enumerate()
        .map(|(c, (name, col))| {
            if numeric[c] {
                RawColumn {
                    name,
                    kind: ColumnKind::Numeric,
                    cells: col
                        .into_iter()
                        .map(|text| {
                            let value = parse_finite(&text).expect("checked above");
                            RawCell::Number { text, value }
                        })
                        .collect(),
                }
            } else {
                RawColumn {
                    name,
                    kind: ColumnKind::Categorical,
                    cells: col.into_iter().map(RawCell::Text).collect(),
                }
            }
        })
        .collect();
    Ok(RawTable {
        columns,
        decision,
        dropped_rows,
    })
}

/// Parses a CSV decision table. Returns [`Parsed::Raw`] when any column is
/// numeric; the caller is expected to discretize it.
pub fn parse_csv<R: Read>(source: R, opts: &CsvOptions) -> Result<Parsed> {
    let raw = read_raw(source, opts)?;
    if raw.has_numeric() {
        Ok(Parsed::Raw(raw))
    } else {
        raw.encode_as_text().map(Parsed::Table)
    }
}

fn csv_error(err: csv::Error, row: usize) -> Error {
    match err.kind() {
        csv::ErrorKind::Utf8 { .. } => Error::Parse {
            row,
            message: "invalid UTF-8".into(),
        },
        _ => Error::Parse {
            row,
            message: err.to_string(),
        },
    }
}
