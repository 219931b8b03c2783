//! Verification reports, serialized as
//! `{"suite": ..., "pass": ..., "counterexample": {...} | null, "checked": ...}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub pass: bool,
    pub counterexample: Option<Value>,
    pub checked: u64,
}

impl Report {
    pub fn passed(suite: impl Into<String>, checked: u64) -> Self {
        Self {
            suite: suite.into(),
            pass: true,
            counterexample: None,
            checked,
        }
    }

    pub fn failed(suite: impl Into<String>, checked: u64, counterexample: Value) -> Self {
        Self {
            suite: suite.into(),
            pass: false,
            counterexample: Some(counterexample),
            checked,
        }
    }

    /// Pass/fail from an optional counterexample.
    pub fn from_outcome(suite: impl Into<String>, checked: u64, failure: Option<Value>) -> Self {
        match failure {
            None => Self::passed(suite, checked),
            Some(c) => Self::failed(suite, checked, c),
        }
    }

    /// Combines sub-reports: passes iff all pass, sums the counts, and keeps
    /// the first counterexample tagged with its sub-suite name.
    pub fn combine(suite: impl Into<String>, parts: impl IntoIterator<Item = Report>) -> Self {
        let mut checked = 0;
        let mut failure = None;
        for part in parts {
            checked += part.checked;
            if failure.is_none() && !part.pass {
                failure = Some(serde_json::json!({
                    "part": part.suite,
                    "detail": part.counterexample,
                }));
            }
        }
        Self::from_outcome(suite, checked, failure)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = Report::passed("primes", 136);
        assert_eq!(
            r.to_json(),
            r#"{"suite":"primes","pass":true,"counterexample":null,"checked":136}"#
        );
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn combine_keeps_first_failure() {
        let r = Report::combine(
            "all",
            [
                Report::passed("a", 2),
                Report::failed("b", 3, serde_json::json!({"n": 1})),
                Report::failed("c", 4, serde_json::json!({"n": 2})),
            ],
        );
        assert!(!r.pass);
        assert_eq!(r.checked, 9);
        assert_eq!(r.counterexample.unwrap()["part"], "b");
    }
}
