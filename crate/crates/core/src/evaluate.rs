//! Stratified k-fold cross-validation with two baseline classifiers, used to
//! compare accuracy on the full attribute set against a reduct.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::DecisionTable;

/// Fold index of every object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    pub assignments: Vec<usize>,
}

impl FoldPlan {
    /// Objects whose fold is `fold`, ascending.
    pub fn test_objects(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len())
            .filter(|&o| self.assignments[o] == fold)
            .collect()
    }

    pub fn train_objects(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len())
            .filter(|&o| self.assignments[o] != fold)
            .collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignments {
            sizes[f] += 1;
        }
        sizes
    }
}

/// Shuffles each decision class with a seeded ChaCha8 stream, then deals the
/// classes one after another round-robin over the folds. The deal position
/// carries over between classes so fold sizes stay within one of each other.
pub fn stratified_folds(table: &DecisionTable, k: usize, seed: u64) -> Result<FoldPlan> {
    let m = table.n_objects();
    if k < 2 {
        return Err(Error::argument("folds must be ≥ 2"));
    }
    if k > m {
        return Err(Error::argument(format!(
            "folds ({k}) cannot exceed the number of objects ({m})"
        )));
    }
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); table.n_classes()];
    for o in 0..m {
        by_class[table.decision(o) as usize].push(o);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignments = vec![0; m];
    let mut next = 0;
    for members in &mut by_class {
        members.shuffle(&mut rng);
        for &o in members.iter() {
            assignments[o] = next % k;
            next += 1;
        }
    }
    Ok(FoldPlan {
        k,
        seed,
        assignments,
    })
}

/// Categorical naive Bayes with Laplace smoothing (α = 1) on the likelihoods.
///
/// Only classes seen in training are scored; their priors are relative
/// frequencies. Domain sizes come from the table's domains, so values never
/// seen in training still get a positive likelihood.
#[derive(Debug, Clone)]
pub struct NaiveBayes {
    classes: Vec<u32>,
    class_counts: Vec<u64>,
    n_train: u64,
    /// `value_counts[attr][class_slot][value]`
    value_counts: Vec<Vec<Vec<u64>>>,
    domain_sizes: Vec<usize>,
}

pub const LAPLACE_ALPHA: f64 = 1.0;

pub fn nb_train(train: &DecisionTable) -> NaiveBayes {
    let n_attrs = train.n_conditions();
    let mut classes: Vec<u32> = (0..train.n_objects()).map(|o| train.decision(o)).collect();
    classes.sort_unstable();
    classes.dedup();
    let slot = |c: u32| classes.binary_search(&c).expect("class seen");
    let domain_sizes: Vec<usize> = (0..n_attrs).map(|a| train.domain(a).len()).collect();
    let mut class_counts = vec![0; classes.len()];
    let mut value_counts: Vec<Vec<Vec<u64>>> = domain_sizes
        .iter()
        .map(|&d| vec![vec![0; d]; classes.len()])
        .collect();
    for o in 0..train.n_objects() {
        let s = slot(train.decision(o));
        class_counts[s] += 1;
        for (a, &v) in train.condition_codes(o).iter().enumerate() {
            value_counts[a][s][v as usize] += 1;
        }
    }
    NaiveBayes {
        n_train: train.n_objects() as u64,
        classes,
        class_counts,
        value_counts,
        domain_sizes,
    }
}

impl NaiveBayes {
    /// Log posterior (up to a shared constant) of each trained class.
    pub fn log_scores(&self, values: &[u32]) -> Vec<(u32, f64)> {
        self.classes
            .iter()
            .enumerate()
            .map(|(s, &class)| {
                let n_c = self.class_counts[s] as f64;
                let mut score = (n_c / self.n_train as f64).ln();
                for (a, &v) in values.iter().enumerate() {
                    let count = self.value_counts[a][s]
                        .get(v as usize)
                        .copied()
                        .unwrap_or(0) as f64;
                    let d = self.domain_sizes[a].max(v as usize + 1) as f64;
                    score += ((count + LAPLACE_ALPHA) / (n_c + LAPLACE_ALPHA * d)).ln();
                }
                (class, score)
            })
            .collect()
    }

    /// Normalized posterior of each trained class.
    pub fn posteriors(&self, values: &[u32]) -> Vec<(u32, f64)> {
        let scores = self.log_scores(values);
        let top = scores.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
        let z: f64 = scores.iter().map(|s| (s.1 - top).exp()).sum();
        scores
            .into_iter()
            .map(|(c, s)| (c, (s - top).exp() / z))
            .collect()
    }
}

/// Most probable class; ties go to the lowest class code.
pub fn nb_predict(model: &NaiveBayes, values: &[u32]) -> u32 {
    let mut best = (u32::MAX, f64::NEG_INFINITY);
    for (class, score) in model.log_scores(values) {
        if score > best.1 {
            best = (class, score);
        }
    }
    best.0
}

/// Decision of the nearest training object under Hamming distance over the
/// condition attributes; the earliest object wins ties.
pub fn onenn_predict(train: &DecisionTable, values: &[u32]) -> u32 {
    let mut best = (usize::MAX, 0u32);
    for o in 0..train.n_objects() {
        let dist = train
            .condition_codes(o)
            .iter()
            .zip(values)
            .filter(|(a, b)| a != b)
            .count();
        if dist < best.0 {
            best = (dist, train.decision(o));
        }
    }
    best.1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classifier {
    #[serde(rename = "nb")]
    NaiveBayes,
    #[serde(rename = "1nn")]
    OneNn,
}

impl Classifier {
    pub const ALL: [Classifier; 2] = [Classifier::NaiveBayes, Classifier::OneNn];

    pub fn id(self) -> &'static str {
        match self {
            Classifier::NaiveBayes => "nb",
            Classifier::OneNn => "1nn",
        }
    }

    /// Trains on `train` and predicts every object of `test`.
    pub fn fit_predict(self, train: &DecisionTable, test: &DecisionTable) -> Vec<u32> {
        match self {
            Classifier::NaiveBayes => {
                let model = nb_train(train);
                (0..test.n_objects())
                    .map(|o| nb_predict(&model, test.condition_codes(o)))
                    .collect()
            }
            Classifier::OneNn => (0..test.n_objects())
                .map(|o| onenn_predict(train, test.condition_codes(o)))
                .collect(),
        }
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Classifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nb" => Ok(Classifier::NaiveBayes),
            "1nn" => Ok(Classifier::OneNn),
            other => Err(Error::argument(format!("unsupported classifier '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub classifier: Classifier,
    pub attributes: Vec<String>,
    pub fold_accuracies: Vec<f64>,
    pub mean_accuracy: f64,
}

/// Runs `classifier` over every fold of `plan`.
pub fn cross_validate(
    table: &DecisionTable,
    plan: &FoldPlan,
    classifier: Classifier,
) -> Result<EvalReport> {
    if plan.assignments.len() != table.n_objects() {
        return Err(Error::argument("fold plan does not match the table"));
    }
    let mut fold_accuracies = Vec::with_capacity(plan.k);
    for fold in 0..plan.k {
        let test_idx = plan.test_objects(fold);
        let train = table.select_rows(&plan.train_objects(fold))?;
        let test = table.select_rows(&test_idx)?;
        let predicted = classifier.fit_predict(&train, &test);
        let correct = predicted
            .iter()
            .enumerate()
            .filter(|&(o, &p)| p == test.decision(o))
            .count();
        fold_accuracies.push(correct as f64 / test_idx.len() as f64);
    }
    let mean_accuracy = fold_accuracies.iter().sum::<f64>() / fold_accuracies.len() as f64;
    Ok(EvalReport {
        classifier,
        attributes: table.condition_attrs().to_vec(),
        fold_accuracies,
        mean_accuracy,
    })
}

/// Full-vs-reduced comparison on one shared fold plan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub k: usize,
    pub seed: u64,
    pub full: EvalReport,
    pub reduced: EvalReport,
    /// `reduced.mean_accuracy - full.mean_accuracy`
    pub delta: f64,
}

pub fn compare<S: AsRef<str>>(
    table: &DecisionTable,
    reduct: &[S],
    k: usize,
    seed: u64,
    classifier: Classifier,
) -> Result<Comparison> {
    let reduced_table = table.project(reduct)?;
    let plan = stratified_folds(table, k, seed)?;
    let full = cross_validate(table, &plan, classifier)?;
    let reduced = cross_validate(&reduced_table, &plan, classifier)?;
    Ok(Comparison {
        k,
        seed,
        delta: reduced.mean_accuracy - full.mean_accuracy,
        full,
        reduced,
    })
}
