//! Indiscernibility partitions `U/P` and relative partitions `U_D/A`.
//!
//! Partitions are built in one pass by grouping objects on a composite key of
//! their codes. Scanning objects in ascending order yields blocks that are
//! already sorted and ordered by their smallest member, which is the
//! canonical form used throughout.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::table::DecisionTable;

/// Disjoint, non-empty blocks of object indices covering `0..universe_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    universe_size: usize,
}

impl Partition {
    /// Validates and canonicalizes arbitrary blocks.
    pub fn new(mut blocks: Vec<Vec<usize>>, universe_size: usize) -> Result<Self> {
        let mut seen = vec![false; universe_size];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::argument("partition contains an empty block"));
            }
            block.sort_unstable();
            for &o in block.iter() {
                if o >= universe_size {
                    return Err(Error::argument(format!(
                        "object {o} outside universe of size {universe_size}"
                    )));
                }
                if seen[o] {
                    return Err(Error::argument(format!("object {o} appears twice")));
                }
                seen[o] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::argument(format!("object {missing} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition {
            blocks,
            universe_size,
        })
    }

    /// Groups objects `0..n` by `key(object)`; equal keys share a block.
    pub fn group_by<K, F>(n: usize, mut key: F) -> Self
    where
        K: Eq + std::hash::Hash,
        F: FnMut(usize) -> K,
    {
        let mut slot: HashMap<K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for o in 0..n {
            let next = blocks.len();
            let b = *slot.entry(key(o)).or_insert(next);
            if b == next {
                blocks.push(Vec::new());
            }
            blocks[b].push(o);
        }
        Partition {
            blocks,
            universe_size: n,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    /// Block index of every object.
    pub fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.universe_size];
        for (b, block) in self.blocks.iter().enumerate() {
            for &o in block {
                owner[o] = b;
            }
        }
        owner
    }

    /// Blocks rendered with object labels instead of indices.
    pub fn labelled<'a>(&self, ids: &'a [String]) -> Vec<Vec<&'a str>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&o| ids[o].as_str()).collect())
            .collect()
    }
}

/// `U/P` by column indices (conditions and/or the decision column).
pub fn ind_partition_columns(table: &DecisionTable, cols: &[usize]) -> Result<Partition> {
    if cols.is_empty() {
        return Err(Error::argument("attribute set is empty"));
    }
    if let Some(&bad) = cols.iter().find(|&&c| c > table.decision_column()) {
        return Err(Error::argument(format!("column {bad} out of range")));
    }
    Ok(Partition::group_by(table.n_objects(), |o| {
        cols.iter().map(|&c| table.code(o, c)).collect::<Vec<u32>>()
    }))
}

/// `U/P`: objects share a block iff they agree on every attribute in `attrs`.
/// The decision attribute may be named.
pub fn ind_partition<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<Partition> {
    let cols = attrs
        .iter()
        .map(|a| {
            table
                .column_of(a.as_ref())
                .ok_or_else(|| Error::argument(format!("unknown attribute '{}'", a.as_ref())))
        })
        .collect::<Result<Vec<_>>>()?;
    ind_partition_columns(table, &cols)
}

/// `U_D/A` for a condition column: equal on the attribute and on the decision.
pub fn relative_partition_column(table: &DecisionTable, col: usize) -> Result<Partition> {
    if col >= table.n_conditions() {
        return Err(Error::argument(format!(
            "condition column {col} out of range"
        )));
    }
    let d = table.decision_column();
    Ok(Partition::group_by(table.n_objects(), |o| {
        (table.code(o, col), table.code(o, d))
    }))
}

/// Relative indiscernibility partition of a condition attribute: the relation
/// only holds between objects of the same decision class that share the
/// attribute's value.
pub fn relative_partition(table: &DecisionTable, attr: &str) -> Result<Partition> {
    relative_partition_column(table, table.condition_column(attr)?)
}

/// True iff every block of `p` lies inside a single block of `q`.
pub fn refines(p: &Partition, q: &Partition) -> Result<bool> {
    if p.universe_size != q.universe_size {
        return Err(Error::argument(format!(
            "universe sizes differ ({} vs {})",
            p.universe_size, q.universe_size
        )));
    }
    let owner = q.block_of();
    Ok(p.blocks
        .iter()
        .all(|b| b.iter().all(|&o| owner[o] == owner[b[0]])))
}

/// Positive-region ratio: share of objects whose `U/attrs` block is pure in
/// the decision.
pub fn consistency<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<f64> {
    let cols = attrs
        .iter()
        .map(|a| table.condition_column(a.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    consistency_columns(table, &cols)
}

pub fn consistency_columns(table: &DecisionTable, cols: &[usize]) -> Result<f64> {
    if cols.iter().any(|&c| c >= table.n_conditions()) {
        return Err(Error::argument(
            "consistency is defined over condition attributes",
        ));
    }
    let p = ind_partition_columns(table, cols)?;
    let pure: usize = p
        .blocks()
        .iter()
        .filter(|b| b.iter().all(|&o| table.decision(o) == table.decision(b[0])))
        .map(Vec::len)
        .sum();
    Ok(pure as f64 / table.n_objects() as f64)
}
