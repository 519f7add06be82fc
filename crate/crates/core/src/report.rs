use serde::{Deserialize, Serialize};
use serde_json::Value;

/// `{ "claim", "pass", "certificate" }` as emitted by every checker.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

impl Report {
    pub fn new(claim: impl Into<String>, pass: bool, certificate: Option<Value>) -> Report {
        Report {
            claim: claim.into(),
            pass,
            certificate,
        }
    }

    pub fn pass(claim: impl Into<String>) -> Report {
        Report::new(claim, true, None)
    }

    pub fn from_failures(claim: impl Into<String>, failures: Vec<String>) -> Report {
        if failures.is_empty() {
            Report::new(claim, true, None)
        } else {
            Report::new(claim, false, Some(serde_json::json!({ "failures": failures })))
        }
    }

    pub fn failures(&self) -> Vec<String> {
        self.certificate
            .as_ref()
            .and_then(|c| c.get("failures"))
            .and_then(|f| f.as_array())
            .map(|a| a.iter().filter_map(|x| x.as_str().map(String::from)).collect())
            .unwrap_or_default()
    }

    /// Combines sub-reports; passes iff all do.
    pub fn all(claim: impl Into<String>, parts: Vec<Report>) -> Report {
        let pass = parts.iter().all(|r| r.pass);
        let failing: Vec<&Report> = parts.iter().filter(|r| !r.pass).collect();
        let cert = if failing.is_empty() {
            None
        } else {
            Some(serde_json::to_value(&failing).unwrap())
        };
        Report::new(claim, pass, cert)
    }
}

/// Rows of exact scalar strings.
pub fn matrix_json(m: &crate::linalg::Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}
