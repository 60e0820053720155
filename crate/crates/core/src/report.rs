//! Machine-readable suite reports:
//! `{"suite": name, "version": n, "checks": [{"name", "status", "witness"?}]}`.

use serde::Serialize;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A check that asserted an expected failure and saw it.
    ExpectedNegative,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl CheckResult {
    pub fn pass(name: &str) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    pub fn fail(name: &str, witness: serde_json::Value) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Fail,
            witness: Some(witness),
        }
    }

    pub fn ok(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub version: u32,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<CheckResult>) -> Self {
        SuiteReport {
            suite: suite.into(),
            version: REPORT_VERSION,
            checks,
        }
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok())
    }
}
