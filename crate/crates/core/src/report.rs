//! Pass/fail records shared by every verification suite.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// One check: `expected` and `actual` are exact renderings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

impl CheckRecord {
    /// Passes iff the two renderings are identical.
    pub fn compare(suite: &str, key: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        CheckRecord {
            suite: suite.to_string(),
            key: key.into(),
            expected,
            actual,
            status,
        }
    }

    pub fn failed(suite: &str, key: impl Into<String>, expected: impl ToString, error: impl ToString) -> Self {
        CheckRecord {
            suite: suite.to_string(),
            key: key.into(),
            expected: expected.to_string(),
            actual: format!("error: {}", error.to_string()),
            status: Status::Fail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// False for an empty report: a suite that checked nothing did not pass.
    pub fn all_passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
