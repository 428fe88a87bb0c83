//! Single-reduct generation from attribute similarities.
//!
//! The pipeline runs in three stages:
//!
//! 1. [`select_directions`] keeps one direction per unordered attribute pair
//!    (the one with the larger factor) and [`ass_gen`] then drops every
//!    element whose factor does not strictly exceed the mean of the kept ones.
//! 2. [`comp_sim`] merges elements sharing a source attribute into one
//!    compound element `a -> {b, c, ...}`.
//! 3. [`sin_red_gen`] repeatedly picks the compound element with the widest
//!    right side, adds its source to the reduct and deletes every element
//!    whose source is covered by that right side. Attributes that never
//!    occur in the compound set are added at the end.
//!
//! [`run_pipeline`] chains all stages and records a [`Trace`] of each one.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{ind_partition_columns, relative_partition_column, Partition};
use crate::similarity::SimilarityMatrix;
use crate::table::DecisionTable;

/// Slack used when comparing factors, which are sums of ratios in floating point.
pub const FACTOR_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Selected,
    Filtered,
    Compound,
}

/// `left -> right`, with attributes given as condition column indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityElement {
    pub left: usize,
    /// Ascending, never contains `left`.
    pub right: Vec<usize>,
    /// Present for simple elements, dropped once elements are compounded.
    pub factor: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilaritySet {
    pub attrs: Vec<String>,
    pub elements: Vec<SimilarityElement>,
    pub stage: Stage,
    pub avg_factor: Option<f64>,
}

impl SimilaritySet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(left, right)` pairs by name, for display and assertions.
    pub fn named(&self) -> Vec<(&str, Vec<&str>)> {
        self.elements
            .iter()
            .map(|e| {
                (
                    self.attrs[e.left].as_str(),
                    e.right.iter().map(|&r| self.attrs[r].as_str()).collect(),
                )
            })
            .collect()
    }

    fn to_trace(&self) -> Vec<TraceElement> {
        self.elements
            .iter()
            .map(|e| TraceElement {
                left: self.attrs[e.left].clone(),
                right: e.right.iter().map(|&r| self.attrs[r].clone()).collect(),
                factor: e.factor,
            })
            .collect()
    }
}

/// Stage 1a: for each pair `i < j`, keep `i -> j` when `delta(i,j) >= delta(j,i)`
/// and `j -> i` otherwise. Elements are ordered by (left, right).
pub fn select_directions(matrix: &SimilarityMatrix) -> SimilaritySet {
    let n = matrix.len();
    let mut elements = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let (fwd, back) = (matrix.get(i, j), matrix.get(j, i));
            let (left, right, factor) = if fwd >= back - FACTOR_EPS {
                (i, j, fwd)
            } else {
                (j, i, back)
            };
            elements.push(SimilarityElement {
                left,
                right: vec![right],
                factor: Some(factor),
            });
        }
    }
    elements.sort_by_key(|e| (e.left, e.right[0]));
    let avg_factor = if elements.is_empty() {
        None
    } else {
        let sum: f64 = elements.iter().filter_map(|e| e.factor).sum();
        Some(2.0 * sum / (n * (n - 1)) as f64)
    };
    SimilaritySet {
        attrs: matrix.attrs.clone(),
        elements,
        stage: Stage::Selected,
        avg_factor,
    }
}

/// Stage 1b: keeps selected elements whose factor is strictly above the average.
pub fn filter_above_average(selected: &SimilaritySet) -> Result<SimilaritySet> {
    if selected.stage != Stage::Selected {
        return Err(Error::argument("average filter expects the selected set"));
    }
    let elements = match selected.avg_factor {
        None => Vec::new(),
        Some(avg) => selected
            .elements
            .iter()
            .filter(|e| e.factor.is_some_and(|f| f > avg + FACTOR_EPS))
            .cloned()
            .collect(),
    };
    Ok(SimilaritySet {
        attrs: selected.attrs.clone(),
        elements,
        stage: Stage::Filtered,
        avg_factor: selected.avg_factor,
    })
}

/// Attribute similarity set: direction selection followed by the average filter.
/// With fewer than two attributes the result is empty.
pub fn ass_gen(matrix: &SimilarityMatrix) -> SimilaritySet {
    filter_above_average(&select_directions(matrix)).expect("selected stage")
}

/// Stage 2: one compound element per distinct left, in first-seen order.
pub fn comp_sim(filtered: &SimilaritySet) -> Result<SimilaritySet> {
    if filtered.stage != Stage::Filtered {
        return Err(Error::argument("compounding expects the filtered set"));
    }
    let mut elements: Vec<SimilarityElement> = Vec::new();
    for e in &filtered.elements {
        match elements.iter_mut().find(|c| c.left == e.left) {
            Some(c) => c.right.extend_from_slice(&e.right),
            None => elements.push(SimilarityElement {
                left: e.left,
                right: e.right.clone(),
                factor: None,
            }),
        }
    }
    for c in &mut elements {
        c.right.sort_unstable();
        c.right.dedup();
    }
    Ok(SimilaritySet {
        attrs: filtered.attrs.clone(),
        elements,
        stage: Stage::Compound,
        avg_factor: filtered.avg_factor,
    })
}

/// One pass of the selection loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iteration {
    pub selected: usize,
    pub covered: Vec<usize>,
    /// Lefts of the elements removed because `covered` contains them.
    pub deleted: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    /// Ascending attribute indices.
    pub reduct: Vec<usize>,
    /// Attributes absent from the compound set, also contained in `reduct`.
    pub isolated: Vec<usize>,
    pub iterations: Vec<Iteration>,
}

/// Stage 3: greedy cover over the compound set. Ties on `|right|` go to the
/// element listed first.
pub fn sin_red_gen(compound: &SimilaritySet) -> Result<Selection> {
    if compound.stage != Stage::Compound {
        return Err(Error::argument(
            "reduct generation expects the compound set",
        ));
    }
    let n = compound.attrs.len();
    let mut remaining: Vec<&SimilarityElement> = compound.elements.iter().collect();
    let mut in_reduct = vec![false; n];
    let mut iterations = Vec::new();
    while !remaining.is_empty() {
        let mut best = 0;
        for (k, e) in remaining.iter().enumerate() {
            if e.right.len() > remaining[best].right.len() {
                best = k;
            }
        }
        let chosen = remaining.remove(best);
        in_reduct[chosen.left] = true;
        let mut deleted = Vec::new();
        remaining.retain(|z| {
            let covered = chosen.right.contains(&z.left);
            if covered {
                deleted.push(z.left);
            }
            !covered
        });
        iterations.push(Iteration {
            selected: chosen.left,
            covered: chosen.right.clone(),
            deleted,
        });
    }
    let mut mentioned = vec![false; n];
    for e in &compound.elements {
        mentioned[e.left] = true;
        for &r in &e.right {
            mentioned[r] = true;
        }
    }
    let isolated: Vec<usize> = (0..n).filter(|&a| !mentioned[a]).collect();
    for &a in &isolated {
        in_reduct[a] = true;
    }
    Ok(Selection {
        reduct: (0..n).filter(|&a| in_reduct[a]).collect(),
        isolated,
        iterations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceElement {
    pub left: String,
    pub right: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceIteration {
    pub selected: String,
    pub covered: Vec<String>,
    pub deleted: Vec<String>,
}

/// Every intermediate stage of a pipeline run, keyed by attribute names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    /// `U/D`, `U/<attr>` and `UD/<attr>` blocks as object ids.
    pub partitions: BTreeMap<String, Vec<Vec<String>>>,
    pub attrs: Vec<String>,
    /// Row-major, `delta[i][j]` for `attrs[i] -> attrs[j]`.
    pub delta: Vec<Vec<f64>>,
    pub ass_selected: Vec<TraceElement>,
    pub avg_factor: Option<f64>,
    pub ass_filtered: Vec<TraceElement>,
    pub ass_compound: Vec<TraceElement>,
    pub iterations: Vec<TraceIteration>,
    pub reduct: Vec<String>,
    pub isolated: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductResult {
    pub reduct: Vec<String>,
    pub isolated: Vec<String>,
    pub trace: Trace,
}

impl ReductResult {
    /// Reduct as condition column indices of `table`.
    pub fn columns(&self, table: &DecisionTable) -> Vec<usize> {
        self.reduct
            .iter()
            .filter_map(|a| table.condition_column(a).ok())
            .collect()
    }
}

/// Stages 1 to 3 on a precomputed matrix, without the partition section of
/// the trace.
pub fn reduce_matrix(matrix: &SimilarityMatrix) -> Result<ReductResult> {
    let selected = select_directions(matrix);
    let filtered = filter_above_average(&selected)?;
    let compound = comp_sim(&filtered)?;
    let selection = sin_red_gen(&compound)?;
    let names =
        |ids: &[usize]| -> Vec<String> { ids.iter().map(|&a| matrix.attrs[a].clone()).collect() };
    let reduct = names(&selection.reduct);
    let isolated = names(&selection.isolated);
    let trace = Trace {
        partitions: BTreeMap::new(),
        attrs: matrix.attrs.clone(),
        delta: matrix.delta.clone(),
        ass_selected: selected.to_trace(),
        avg_factor: selected.avg_factor,
        ass_filtered: filtered.to_trace(),
        ass_compound: compound.to_trace(),
        iterations: selection
            .iterations
            .iter()
            .map(|it| TraceIteration {
                selected: matrix.attrs[it.selected].clone(),
                covered: names(&it.covered),
                deleted: names(&it.deleted),
            })
            .collect(),
        reduct: reduct.clone(),
        isolated: isolated.clone(),
    };
    Ok(ReductResult {
        reduct,
        isolated,
        trace,
    })
}

/// Full pipeline: relative partitions, similarity matrix, the three stages.
pub fn run_pipeline(table: &DecisionTable) -> Result<ReductResult> {
    let n = table.n_conditions();
    let relative: Vec<Partition> = (0..n)
        .map(|c| relative_partition_column(table, c))
        .collect::<Result<_>>()?;
    let matrix = SimilarityMatrix::from_partitions(table.condition_attrs().to_vec(), &relative)?;
    let mut result = reduce_matrix(&matrix)?;

    let ids = table.object_ids();
    let render = |p: &Partition| -> Vec<Vec<String>> {
        p.labelled(ids)
            .into_iter()
            .map(|b| b.into_iter().map(str::to_string).collect())
            .collect()
    };
    let parts = &mut result.trace.partitions;
    let d = table.decision_column();
    parts.insert(
        format!("U/{}", table.decision_attr()),
        render(&ind_partition_columns(table, &[d])?),
    );
    for (c, rel) in relative.iter().enumerate() {
        let name = table.attr_name(c);
        parts.insert(
            format!("U/{name}"),
            render(&ind_partition_columns(table, &[c])?),
        );
        parts.insert(format!("UD/{name}"), render(rel));
    }
    Ok(result)
}
