use serde::Serialize;
use serde_json::Value;

/// Outcome of one named property check, with witness data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: Value) -> Self {
        Self { name: name.into(), passed, detail }
    }

    /// A check whose detail is an `{"expected": .., "actual": ..}` pair.
    pub fn equal<T: PartialEq + Serialize>(name: impl Into<String>, expected: T, actual: T) -> Self {
        let passed = expected == actual;
        let detail = serde_json::json!({ "expected": expected, "actual": actual });
        Self::new(name, passed, detail)
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
