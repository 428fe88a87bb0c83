#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rredux::{DecisionTable, Partition};

/// Random categorical table: up to `max_m` objects, `max_attrs` condition
/// attributes, `max_vals` values per attribute and `max_classes` classes.
pub fn random_table(
    rng: &mut impl Rng,
    max_m: usize,
    max_attrs: usize,
    max_vals: usize,
    max_classes: usize,
) -> DecisionTable {
    let m = rng.random_range(1..=max_m);
    let n = rng.random_range(1..=max_attrs);
    let vals: Vec<usize> = (0..n).map(|_| rng.random_range(1..=max_vals)).collect();
    let classes = rng.random_range(1..=max_classes);
    let names: Vec<String> = (0..n).map(|a| format!("a{a}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut records: Vec<Vec<String>> = Vec::with_capacity(m);
    for _ in 0..m {
        let mut rec: Vec<String> = vals
            .iter()
            .map(|&v| format!("v{}", rng.random_range(0..v)))
            .collect();
        rec.push(format!("c{}", rng.random_range(0..classes)));
        records.push(rec);
    }
    DecisionTable::from_records(&name_refs, "d", &records).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pairwise construction: x and y are related iff they agree on `col` and on
/// the decision. Blocks are collected by scanning objects in order.
pub fn naive_relative_partition(t: &DecisionTable, col: usize) -> Vec<Vec<usize>> {
    let m = t.n_objects();
    let related =
        |x: usize, y: usize| t.code(x, col) == t.code(y, col) && t.decision(x) == t.decision(y);
    let mut assigned = vec![false; m];
    let mut blocks = Vec::new();
    for x in 0..m {
        if assigned[x] {
            continue;
        }
        let block: Vec<usize> = (0..m).filter(|&y| related(x, y)).collect();
        for &y in &block {
            assigned[y] = true;
        }
        blocks.push(block);
    }
    blocks
}

/// Double loop over block pairs with intersections by membership testing.
pub fn brute_sim_fac(p: &Partition, q: &Partition) -> f64 {
    let mut total = 0.0;
    for b in p.blocks() {
        let mut best = 0usize;
        for c in q.blocks() {
            let overlap = b.iter().filter(|o| c.contains(o)).count();
            if overlap > best {
                best = overlap;
            }
        }
        total += best as f64 / b.len() as f64;
    }
    total / p.len() as f64
}

/// Checks disjointness, cover, non-emptiness and canonical order.
pub fn partition_laws_hold(p: &Partition) -> bool {
    let mut seen = vec![false; p.universe_size()];
    for b in p.blocks() {
        if b.is_empty() || b.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for &o in b {
            if o >= seen.len() || seen[o] {
                return false;
            }
            seen[o] = true;
        }
    }
    seen.iter().all(|&s| s) && p.blocks().windows(2).all(|w| w[0][0] < w[1][0])
}

/// Random partition of `0..n`.
pub fn random_partition(rng: &mut impl Rng, n: usize) -> Partition {
    let k = rng.random_range(1..=n);
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    Partition::group_by(n, |o| labels[o])
}
