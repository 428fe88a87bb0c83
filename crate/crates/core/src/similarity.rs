//! Asymmetric similarity factor between condition attributes.
//!
//! For relative partitions `P_i` and `P_j`, the factor of `A_i -> A_j` is the
//! mean, over blocks `B` of `P_i`, of the largest share of `B` captured by a
//! single block of `P_j`. It equals 1 exactly when `P_i` refines `P_j`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{relative_partition_column, Partition};
use crate::table::DecisionTable;

/// Size of the intersection of two ascending index lists.
fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Similarity factor of the attribute behind `from` to the one behind `to`.
pub fn sim_fac(from: &Partition, to: &Partition) -> Result<f64> {
    if from.universe_size() != to.universe_size() {
        return Err(Error::argument(format!(
            "universe sizes differ ({} vs {})",
            from.universe_size(),
            to.universe_size()
        )));
    }
    if from.is_empty() {
        return Err(Error::argument("partition has no blocks"));
    }
    let total: f64 = from
        .blocks()
        .iter()
        .map(|block| {
            let max_overlap = to
                .blocks()
                .iter()
                .map(|other| intersection_len(block, other))
                .max()
                .unwrap_or(0);
            max_overlap as f64 / block.len() as f64
        })
        .sum();
    Ok(total / from.len() as f64)
}

/// Pairwise factors for every ordered pair of condition attributes.
/// `delta[i][j]` is the factor of `attrs[i] -> attrs[j]`; the diagonal is 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityMatrix {
    pub attrs: Vec<String>,
    pub delta: Vec<Vec<f64>>,
}

impl SimilarityMatrix {
    pub fn len(&self) -> usize {
        self.attrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attrs.is_empty()
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.delta[from][to]
    }

    /// Factor between two attributes by name.
    pub fn by_name(&self, from: &str, to: &str) -> Option<f64> {
        let i = self.attrs.iter().position(|a| a == from)?;
        let j = self.attrs.iter().position(|a| a == to)?;
        Some(self.delta[i][j])
    }

    /// Builds the matrix from precomputed relative partitions, one per attribute.
    pub fn from_partitions(attrs: Vec<String>, partitions: &[Partition]) -> Result<Self> {
        if attrs.len() != partitions.len() {
            return Err(Error::argument(format!(
                "{} attributes but {} partitions",
                attrs.len(),
                partitions.len()
            )));
        }
        let n = attrs.len();
        let mut delta = vec![vec![1.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    delta[i][j] = sim_fac(&partitions[i], &partitions[j])?;
                }
            }
        }
        Ok(SimilarityMatrix { attrs, delta })
    }
}

/// Relative partition of every condition attribute, in attribute order.
pub fn relative_partitions(table: &DecisionTable) -> Vec<Partition> {
    (0..table.n_conditions())
        .map(|c| relative_partition_column(table, c).expect("column in range"))
        .collect()
}

pub fn similarity_matrix(table: &DecisionTable) -> SimilarityMatrix {
    let parts = relative_partitions(table);
    SimilarityMatrix::from_partitions(table.condition_attrs().to_vec(), &parts)
        .expect("one partition per attribute over a shared universe")
}
