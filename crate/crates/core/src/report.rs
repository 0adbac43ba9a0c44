use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// Outcome of one check. `pass` iff `max_rel_dev ≤ tolerance`; a NaN
/// deviation never passes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub test: String,
    pub params: BTreeMap<String, Value>,
    pub max_abs_dev: f64,
    pub max_rel_dev: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Running maximum that keeps NaN once seen.
fn sticky_max(cur: f64, x: f64) -> f64 {
    if cur.is_nan() || x.is_nan() {
        f64::NAN
    } else {
        cur.max(x)
    }
}

impl VerificationReport {
    pub fn new(test: impl Into<String>, tolerance: f64) -> Self {
        Self {
            test: test.into(),
            params: BTreeMap::new(),
            max_abs_dev: 0.0,
            max_rel_dev: 0.0,
            tolerance,
            pass: true,
            seconds: 0.0,
            note: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn record(&mut self, abs_dev: f64, rel_dev: f64) {
        self.max_abs_dev = sticky_max(self.max_abs_dev, abs_dev);
        self.max_rel_dev = sticky_max(self.max_rel_dev, rel_dev);
        self.pass = self.max_rel_dev <= self.tolerance;
    }

    /// Records a failure that produced no deviation (an error).
    pub fn fail(&mut self, why: impl Into<String>) {
        self.record(f64::NAN, f64::NAN);
        self.add_note(why);
    }

    pub fn add_note(&mut self, note: impl Into<String>) {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(prev) => format!("{prev}; {note}"),
            None => note,
        });
    }

    pub fn with_seconds(mut self, seconds: f64) -> Self {
        self.seconds = seconds;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: max_abs={:.3e} max_rel={:.3e} tol={:.1e} ({:.2}s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.test,
            self.max_abs_dev,
            self.max_rel_dev,
            self.tolerance,
            self.seconds
        )?;
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

/// Serialize reports as a JSON array.
pub fn reports_to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_tracks_relative_deviation() {
        let mut r = VerificationReport::new("x", 1e-6);
        r.record(3.0, 1e-8);
        assert!(r.pass);
        r.record(1.0, 2e-6);
        assert!(!r.pass);
        assert_eq!((r.max_abs_dev, r.max_rel_dev), (3.0, 2e-6));
    }

    #[test]
    fn nan_is_sticky_and_fails() {
        let mut r = VerificationReport::new("x", 1.0);
        r.fail("boom");
        r.record(0.0, 0.0);
        assert!(!r.pass && r.max_rel_dev.is_nan());
        assert_eq!(r.note.as_deref(), Some("boom"));
    }

    #[test]
    fn exact_zero_tolerance() {
        let mut r = VerificationReport::new("exact", 0.0).param("b", "1/2");
        r.record(0.0, 0.0);
        assert!(r.pass);
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["test", "params", "max_abs_dev", "max_rel_dev", "tolerance", "pass", "seconds"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert!(json.get("note").is_none());
        assert_eq!(json["params"]["b"], "1/2");
    }
}
