//! Verification reports.

use serde::Serialize;
use serde_json::{Map, Value};

/// One checked quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Item {
    /// What was checked.
    pub name: String,
    /// Whether the check passed.
    pub pass: bool,
    /// Measured deviation, for quantitative checks (`null` when not finite).
    pub deviation: Option<f64>,
    /// Tolerance the deviation was compared against.
    pub tol: Option<f64>,
    /// Computed value.
    pub computed: Value,
    /// Expected value, when known.
    pub expected: Option<Value>,
    /// Diagnostic detail for failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Item {
    /// Quantitative check: passes iff `deviation ≤ tol`.
    pub fn measured(
        name: impl Into<String>,
        deviation: f64,
        tol: f64,
        computed: Value,
        expected: Option<Value>,
    ) -> Self {
        Item {
            name: name.into(),
            pass: deviation <= tol,
            deviation: deviation.is_finite().then_some(deviation),
            tol: Some(tol),
            computed,
            expected,
            note: None,
        }
    }

    /// Boolean check: passes iff `computed == expected`.
    pub fn boolean(name: impl Into<String>, computed: bool, expected: bool) -> Self {
        Item {
            name: name.into(),
            pass: computed == expected,
            deviation: None,
            tol: None,
            computed: Value::Bool(computed),
            expected: Some(Value::Bool(expected)),
            note: None,
        }
    }

    /// Attaches a diagnostic note.
    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Outcome of one command: `pass` holds iff every item passes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    /// Command name.
    pub command: String,
    /// Tolerance in effect.
    pub tol: f64,
    /// Conjunction of all items.
    pub pass: bool,
    /// Largest finite deviation among quantitative items.
    pub max_deviation: f64,
    /// Individual checks.
    pub items: Vec<Item>,
    /// Computed outputs (keys in sorted order).
    pub values: Map<String, Value>,
}

impl Report {
    /// Empty report for `command`.
    pub fn new(command: impl Into<String>, tol: f64) -> Self {
        Report {
            command: command.into(),
            tol,
            pass: true,
            max_deviation: 0.0,
            items: Vec::new(),
            values: Map::new(),
        }
    }

    /// Adds a check, updating `pass` and `max_deviation`.
    pub fn push(&mut self, item: Item) {
        self.pass &= item.pass;
        if let Some(d) = item.deviation {
            self.max_deviation = self.max_deviation.max(d);
        } else if item.tol.is_some() {
            // A quantitative check whose deviation is not finite.
            self.max_deviation = f64::INFINITY;
        }
        self.items.push(item);
    }

    /// Records an output value.
    pub fn set(&mut self, key: &str, value: Value) {
        self.values.insert(key.to_string(), value);
    }

    /// Process exit status: 0 on pass, 1 on fail.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    /// Pretty JSON.
    pub fn to_json(&self) -> String {
        let mut s = self.clone();
        if !s.max_deviation.is_finite() {
            s.max_deviation = f64::MAX;
        }
        serde_json::to_string_pretty(&s).unwrap_or_else(|e| format!("{{\"error\": \"{e}\"}}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_is_conjunction() {
        let mut r = Report::new("x", 1e-9);
        r.push(Item::measured("a", 1e-12, 1e-9, Value::Null, None));
        assert!(r.pass);
        r.push(Item::boolean("b", false, true));
        assert!(!r.pass);
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.max_deviation, 1e-12);
    }

    #[test]
    fn non_finite_deviation_fails() {
        let mut r = Report::new("x", 1e-9);
        r.push(Item::measured("a", f64::INFINITY, 1e-9, Value::Null, None));
        assert!(!r.pass);
        assert!(r.to_json().contains("\"deviation\": null"));
    }

    #[test]
    fn key_order_is_stable() {
        let r = Report::new("x", 1e-9);
        let s = r.to_json();
        let pos = |k: &str| s.find(k).unwrap();
        assert!(
            pos("\"command\"") < pos("\"tol\"")
                && pos("\"tol\"") < pos("\"pass\"")
                && pos("\"items\"") < pos("\"values\"")
        );
    }
}
