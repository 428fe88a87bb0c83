//! Rendering of results as byte-stable JSON and aligned text.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Number, Value};

use crate::evaluate::Comparison;
use crate::reduct::{Trace, TraceElement};

/// Decimal places for every float written to JSON.
pub const FLOAT_DECIMALS: usize = 6;

fn fix_floats(value: Value) -> Value {
    match value {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            let f = n.as_f64().expect("finite float");
            let text = format!("{:.*}", FLOAT_DECIMALS, f);
            Value::Number(Number::from_str(&text).expect("formatted float parses"))
        }
        Value::Array(items) => Value::Array(items.into_iter().map(fix_floats).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, fix_floats(v))).collect())
        }
        other => other,
    }
}

/// Pretty JSON with every float printed at [`FLOAT_DECIMALS`] places.
/// Object keys come out sorted, so equal inputs give identical bytes.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&fix_floats(v)).expect("value serializes");
    s.push('\n');
    s
}

fn element(e: &TraceElement) -> String {
    let right = if e.right.len() == 1 {
        e.right[0].clone()
    } else {
        format!("{{{}}}", e.right.join(", "))
    };
    match e.factor {
        Some(f) => format!("{} -> {}  ({:.6})", e.left, right, f),
        None => format!("{} -> {}", e.left, right),
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "-".to_string()
    } else {
        items.join(", ")
    }
}

/// Human-readable rendering of a pipeline trace.
pub fn trace_text(trace: &Trace) -> String {
    let mut out = String::new();
    out.push_str("partitions:\n");
    let width = trace.partitions.keys().map(String::len).max().unwrap_or(0);
    for (name, blocks) in &trace.partitions {
        let rendered: Vec<String> = blocks
            .iter()
            .map(|b| format!("{{{}}}", b.join(",")))
            .collect();
        let _ = writeln!(out, "  {:<width$}  {}", name, rendered.join(" "));
    }

    out.push_str("similarity factors (row -> column):\n");
    let cell = trace
        .attrs
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(8);
    let _ = write!(out, "  {:<cell$}", "");
    for a in &trace.attrs {
        let _ = write!(out, " {a:>cell$}");
    }
    out.push('\n');
    for (a, row) in trace.attrs.iter().zip(&trace.delta) {
        let _ = write!(out, "  {a:<cell$}");
        for v in row {
            let _ = write!(out, " {v:>cell$.6}");
        }
        out.push('\n');
    }

    out.push_str("selected:\n");
    for e in &trace.ass_selected {
        let _ = writeln!(out, "  {}", element(e));
    }
    match trace.avg_factor {
        Some(avg) => {
            let _ = writeln!(out, "average factor: {avg:.6}");
        }
        None => out.push_str("average factor: -\n"),
    }
    out.push_str("above average:\n");
    for e in &trace.ass_filtered {
        let _ = writeln!(out, "  {}", element(e));
    }
    out.push_str("compound:\n");
    for e in &trace.ass_compound {
        let _ = writeln!(out, "  {}", element(e));
    }
    out.push_str("iterations:\n");
    for (n, it) in trace.iterations.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {}. select {} (covers {}), delete {}",
            n + 1,
            it.selected,
            list(&it.covered),
            list(&it.deleted)
        );
    }
    let _ = writeln!(out, "isolated: {}", list(&trace.isolated));
    out
}

/// Aligned comparison table for a cross-validation run.
pub fn comparison_text(reduct: &[String], cmp: &Comparison) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "reduct: {}", list(reduct));
    let _ = writeln!(
        out,
        "classifier: {}  folds: {}  seed: {}",
        cmp.full.classifier, cmp.k, cmp.seed
    );
    let _ = writeln!(out, "{:<8} {:>6} {:>10}  folds", "set", "attrs", "accuracy");
    for (name, r) in [("full", &cmp.full), ("reduced", &cmp.reduced)] {
        let folds: Vec<String> = r
            .fold_accuracies
            .iter()
            .map(|a| format!("{a:.6}"))
            .collect();
        let _ = writeln!(
            out,
            "{:<8} {:>6} {:>10.6}  {}",
            name,
            r.attributes.len(),
            r.mean_accuracy,
            folds.join(" ")
        );
    }
    let _ = writeln!(out, "{:<8} {:>6} {:>+10.6}", "delta", "", cmp.delta);
    out
}
