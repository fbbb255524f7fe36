//! Serializable records of verified claims.

use serde::{Deserialize, Serialize};

use crate::scalar::{self, Scalar};

/// A computed or expected value, tagged by kind in JSON (`{"int": 49}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Int(i64),
    Seq(Vec<i64>),
    Bool(bool),
    Rational(#[serde(with = "scalar::pair")] Scalar),
    Text(String),
}

impl Value {
    pub fn render(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Seq(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                format!("({})", parts.join(","))
            }
            Value::Bool(b) => b.to_string(),
            Value::Rational(r) => scalar::display(r),
            Value::Text(t) => t.clone(),
        }
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<Vec<usize>> for Value {
    fn from(v: Vec<usize>) -> Self {
        Value::Seq(v.into_iter().map(|x| x as i64).collect())
    }
}

impl From<Scalar> for Value {
    fn from(v: Scalar) -> Self {
        Value::Rational(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

/// One verified claim: a stable id, a descriptive anchor, and both values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim_id: String,
    pub anchor: String,
    pub computed: Value,
    pub expected: Value,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Certificate {
    /// Passes iff `computed == expected`.
    pub fn compare(
        claim_id: impl Into<String>,
        anchor: impl Into<String>,
        computed: impl Into<Value>,
        expected: impl Into<Value>,
    ) -> Self {
        let (computed, expected) = (computed.into(), expected.into());
        Certificate {
            claim_id: claim_id.into(),
            anchor: anchor.into(),
            passed: computed == expected,
            computed,
            expected,
            detail: None,
        }
    }

    /// A boolean claim expected to hold.
    pub fn holds(claim_id: impl Into<String>, anchor: impl Into<String>, value: bool) -> Self {
        Certificate::compare(claim_id, anchor, value, true)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_is_equality() {
        assert!(Certificate::compare("a", "b", 49usize, 49usize).passed);
        assert!(!Certificate::compare("a", "b", 48usize, 49usize).passed);
        assert!(Certificate::holds("a", "b", true).passed);
    }

    #[test]
    fn json_round_trip() {
        let c = Certificate::compare("g2.seq", "x", vec![0usize, 1, 5], vec![0usize, 1, 5])
            .with_detail("note");
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains(r#""computed":{"seq":[0,1,5]}"#));
        assert_eq!(serde_json::from_str::<Certificate>(&json).unwrap(), c);
        let r = Certificate::compare("r", "x", scalar::ratio(1, 2), scalar::ratio(1, 2));
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#"{"rational":["1","2"]}"#));
        assert_eq!(serde_json::from_str::<Certificate>(&json).unwrap(), r);
    }
}
