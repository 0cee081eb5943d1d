//! The JSON report written by every command except `gen`.

use std::fmt::Write as _;

use hhkit::Metric;
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Map, Value};

/// One named result. `pass` is absent for purely informational values.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub name: String,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    pub exact: bool,
}

impl Entry {
    pub fn check(name: impl Into<String>, value: Value, pass: bool) -> Self {
        Entry {
            name: name.into(),
            value,
            pass: Some(pass),
            exact: true,
        }
    }

    pub fn info(name: impl Into<String>, value: Value) -> Self {
        Entry {
            name: name.into(),
            value,
            pass: None,
            exact: true,
        }
    }

    /// A check that could not be finished within the budget.
    pub fn inexact(name: impl Into<String>, value: Value) -> Self {
        Entry {
            name: name.into(),
            value,
            pass: None,
            exact: false,
        }
    }

    /// Reports an error from the library as a failed check.
    pub fn error(name: impl Into<String>, err: &hhkit::Error) -> Self {
        Entry::check(name, json!({ "error": err.to_string() }), false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub results: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Value>,
    pub elapsed_ms: u64,
    pub exact: bool,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, params: Map<String, Value>, results: Vec<Entry>, witnesses: Option<Value>, elapsed_ms: u64) -> Self {
        let exact = results.iter().all(|e| e.exact);
        let passed = results.iter().all(|e| e.pass != Some(false));
        Report {
            command: command.to_string(),
            params,
            results,
            witnesses,
            elapsed_ms,
            exact,
            passed,
        }
    }

    /// Passed and exact: the condition for a zero exit status.
    pub fn success(&self) -> bool {
        self.passed && self.exact
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self.results.iter().map(|e| e.name.len()).max().unwrap_or(0);
        for e in &self.results {
            let status = match (e.pass, e.exact) {
                (_, false) => "INEXACT",
                (Some(true), _) => "PASS",
                (Some(false), _) => "FAIL",
                (None, _) => "",
            };
            let _ = writeln!(out, "{:<width$}  {:<7}  {}", e.name, status, compact(&e.value));
        }
        let verdict = if self.success() {
            "ok"
        } else if !self.passed {
            "FAILED"
        } else {
            "INEXACT"
        };
        let _ = writeln!(out, "{}: {} ({} ms)", self.command, verdict, self.elapsed_ms);
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `"p/q"` in lowest terms, also for integers.
pub fn ratio(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn metric(m: Metric) -> Value {
    match m {
        Metric::Finite(v) => json!(v),
        Metric::Infinite => json!("INFINITE"),
    }
}

/// A `{formula, computed, match}` triple.
pub fn triple(formula: Value, computed: Value) -> (Value, bool) {
    let ok = formula == computed;
    (json!({ "formula": formula, "computed": computed, "match": ok }), ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_keep_denominator() {
        assert_eq!(ratio(Ratio::new(6, 2)), "3/1");
        assert_eq!(ratio(Ratio::new(60, 22)), "30/11");
    }

    #[test]
    fn inexact_entries_block_success() {
        let ok = Entry::check("a", json!(1), true);
        let r = Report::new("t", Map::new(), vec![ok.clone(), Entry::inexact("b", json!(null))], None, 0);
        assert!(r.passed && !r.exact && !r.success());
        let r = Report::new("t", Map::new(), vec![ok, Entry::check("c", json!(0), false)], None, 0);
        assert!(!r.passed && !r.success());
        assert!(r.to_text().ends_with("t: FAILED (0 ms)\n"));
    }

    #[test]
    fn infinite_metric_is_a_string() {
        assert_eq!(metric(Metric::Infinite), json!("INFINITE"));
        assert!(triple(json!(3), json!(3)).1);
    }
}
