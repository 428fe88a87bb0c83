//! ChiMerge discretization of numeric columns.
//!
//! Every distinct value starts as its own interval. Adjacent intervals whose
//! class distributions are statistically indistinguishable (lowest χ²) are
//! merged until all adjacent χ² reach the threshold and the interval count is
//! within the cap. Cut points sit midway between neighbouring intervals and
//! intervals are half-open, `[lo, hi)`.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::table::{ColumnKind, DecisionTable, RawCell, RawTable};

/// Substitute for a zero expected count.
const MIN_EXPECTED: f64 = 0.1;

/// χ² statistic of the 2×k contingency table formed by two intervals.
///
/// Classes absent from both intervals are left out of the table. A zero
/// expected count (possible only for an empty interval) is replaced by 0.1.
pub fn chi_square(left: &[u64], right: &[u64]) -> Result<f64> {
    if left.len() != right.len() {
        return Err(Error::argument(format!(
            "class arity differs ({} vs {})",
            left.len(),
            right.len()
        )));
    }
    if left.is_empty() {
        return Err(Error::argument("class arity must be at least 1"));
    }
    let row_totals = [left.iter().sum::<u64>(), right.iter().sum::<u64>()];
    let n = (row_totals[0] + row_totals[1]) as f64;
    if n == 0.0 {
        return Err(Error::argument("both intervals are empty"));
    }
    let mut chi = 0.0;
    for class in 0..left.len() {
        let class_total = (left[class] + right[class]) as f64;
        if class_total == 0.0 {
            continue;
        }
        for (row, observed) in [left[class], right[class]].into_iter().enumerate() {
            let mut expected = row_totals[row] as f64 * class_total / n;
            if expected == 0.0 {
                expected = MIN_EXPECTED;
            }
            let diff = observed as f64 - expected;
            chi += diff * diff / expected;
        }
    }
    Ok(chi)
}

/// χ² critical value at 0.95 confidence with `n_classes - 1` degrees of
/// freedom (at least one).
pub fn default_threshold(n_classes: usize) -> f64 {
    let df = n_classes.saturating_sub(1).max(1) as f64;
    ChiSquared::new(df)
        .expect("positive degrees of freedom")
        .inverse_cdf(0.95)
}

pub const DEFAULT_MAX_INTERVALS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiMergeParams {
    /// Merging continues while the smallest adjacent χ² is below this.
    /// `None` picks [`default_threshold`] for the class count at hand.
    pub threshold: Option<f64>,
    /// Merging continues while there are more intervals than this.
    pub max_intervals: usize,
}

impl Default for ChiMergeParams {
    fn default() -> Self {
        ChiMergeParams {
            threshold: None,
            max_intervals: DEFAULT_MAX_INTERVALS,
        }
    }
}

/// Cut points learned for one attribute.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalMap {
    pub attr: String,
    pub cut_points: Vec<f64>,
    pub labels: Vec<String>,
}

fn fmt_bound(v: f64) -> String {
    format!("{v}")
}

impl IntervalMap {
    pub fn new(attr: impl Into<String>, cut_points: Vec<f64>) -> Self {
        let mut bounds = vec!["-inf".to_string()];
        bounds.extend(cut_points.iter().map(|&c| fmt_bound(c)));
        bounds.push("+inf".to_string());
        let labels = bounds
            .windows(2)
            .map(|w| format!("[{},{})", w[0], w[1]))
            .collect();
        IntervalMap {
            attr: attr.into(),
            cut_points,
            labels,
        }
    }

    pub fn n_intervals(&self) -> usize {
        self.labels.len()
    }

    /// Index of the interval holding `value`: the number of cuts `<= value`.
    pub fn interval_of(&self, value: f64) -> usize {
        self.cut_points.partition_point(|&c| c <= value)
    }

    pub fn label_of(&self, value: f64) -> &str {
        &self.labels[self.interval_of(value)]
    }
}

struct Interval {
    lo: f64,
    hi: f64,
    counts: Vec<u64>,
}

/// ChiMerge over one numeric column. `labels` are class codes; ties in χ²
/// merge the leftmost pair.
pub fn chimerge(
    attr: &str,
    values: &[f64],
    labels: &[u32],
    threshold: f64,
    max_intervals: usize,
) -> Result<IntervalMap> {
    if values.is_empty() {
        return Err(Error::argument("chimerge needs at least one value"));
    }
    if values.len() != labels.len() {
        return Err(Error::argument(format!(
            "{} values but {} labels",
            values.len(),
            labels.len()
        )));
    }
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::argument("threshold must be non-negative"));
    }
    if max_intervals == 0 {
        return Err(Error::argument("max_intervals must be at least 1"));
    }
    if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Validation {
            row: pos + 1,
            column: attr.to_string(),
            message: format!("non-finite value {}", values[pos]),
        });
    }
    let n_classes = labels.iter().max().map_or(0, |&m| m as usize + 1);
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));

    let mut intervals: Vec<Interval> = Vec::new();
    for &i in &order {
        let v = values[i];
        match intervals.last_mut() {
            Some(last) if last.hi == v => last.counts[labels[i] as usize] += 1,
            _ => {
                let mut counts = vec![0; n_classes];
                counts[labels[i] as usize] += 1;
                intervals.push(Interval {
                    lo: v,
                    hi: v,
                    counts,
                });
            }
        }
    }

    let mut chis: Vec<f64> = intervals
        .windows(2)
        .map(|w| chi_square(&w[0].counts, &w[1].counts))
        .collect::<Result<_>>()?;
    while intervals.len() > 1 {
        let (best, min_chi) =
            chis.iter().enumerate().fold(
                (0, f64::INFINITY),
                |acc, (k, &c)| if c < acc.1 { (k, c) } else { acc },
            );
        if min_chi >= threshold && intervals.len() <= max_intervals {
            break;
        }
        let right = intervals.remove(best + 1);
        let merged = &mut intervals[best];
        merged.hi = right.hi;
        for (c, r) in merged.counts.iter_mut().zip(&right.counts) {
            *c += r;
        }
        chis.remove(best);
        if best > 0 {
            chis[best - 1] = chi_square(&intervals[best - 1].counts, &intervals[best].counts)?;
        }
        if best < chis.len() {
            chis[best] = chi_square(&intervals[best].counts, &intervals[best + 1].counts)?;
        }
    }

    let cut_points = intervals
        .windows(2)
        .map(|w| {
            let mid = w[0].hi + (w[1].lo - w[0].hi) / 2.0;
            if mid > w[0].hi && mid < w[1].lo {
                mid
            } else {
                // adjacent floats: no representable midpoint
                w[1].lo
            }
        })
        .collect();
    Ok(IntervalMap::new(attr, cut_points))
}

/// Discretizes every numeric column of `raw` against its decision column and
/// encodes the result. Returns the table and one map per numeric column.
pub fn discretize_table(
    raw: &RawTable,
    params: &ChiMergeParams,
) -> Result<(DecisionTable, Vec<IntervalMap>)> {
    let (relabelled, maps) = discretize_raw(raw, params)?;
    Ok((relabelled.encode_as_text()?, maps))
}

/// Like [`discretize_table`] but returns the raw table with numeric cells
/// replaced by interval labels, which is what gets written back out as CSV.
pub fn discretize_raw(
    raw: &RawTable,
    params: &ChiMergeParams,
) -> Result<(RawTable, Vec<IntervalMap>)> {
    if params.max_intervals == 0 {
        return Err(Error::argument("max_intervals must be at least 1"));
    }
    let decision = &raw.columns[raw.decision];
    let mut classes: Vec<&str> = Vec::new();
    let class_codes: Vec<u32> = decision
        .cells
        .iter()
        .map(|c| {
            let t = c.text();
            match classes.iter().position(|&k| k == t) {
                Some(p) => p as u32,
                None => {
                    classes.push(t);
                    (classes.len() - 1) as u32
                }
            }
        })
        .collect();
    let threshold = params
        .threshold
        .unwrap_or_else(|| default_threshold(classes.len()));

    let mut out = raw.clone();
    let mut maps = Vec::new();
    for col in out.columns.iter_mut() {
        if let Some(values) = col.numbers() {
            let map = chimerge(
                &col.name,
                &values,
                &class_codes,
                threshold,
                params.max_intervals,
            )?;
            col.cells = values
                .iter()
                .map(|&v| RawCell::Text(map.label_of(v).to_string()))
                .collect();
            col.kind = ColumnKind::Categorical;
            maps.push(map);
        }
    }
    Ok((out, maps))
}
