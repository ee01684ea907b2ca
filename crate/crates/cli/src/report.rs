use std::fmt;

use latval_core::laws::Violation;
use latval_core::wire::ViolationJson;
use latval_core::Error;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Violated,
    Error,
}

impl Status {
    pub fn exit_code(self, kind: ErrorKind) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Violated => 2,
            Status::Error => match kind {
                ErrorKind::Malformed => 3,
                ErrorKind::Internal => 1,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Malformed,
    Internal,
}

/// Failure of a command before it produced a verdict.
#[derive(Debug)]
pub struct Failure {
    pub kind: ErrorKind,
    pub message: String,
    pub violation: Option<ViolationJson>,
}

impl Failure {
    pub fn malformed(message: impl Into<String>) -> Self {
        Failure { kind: ErrorKind::Malformed, message: message.into(), violation: None }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let violation = match &e {
            Error::InvalidRho(r) | Error::LawViolation(r) => r
                .first_violation
                .as_ref()
                .map(|v| ViolationJson::from_violation(Some(r.law.to_string()), v)),
            _ => None,
        };
        let kind = match e {
            Error::Malformed(_)
            | Error::EmptyInput
            | Error::NotUnimodular(_)
            | Error::NotFullDimensional
            | Error::NotSegment
            | Error::InvalidRho(_)
            | Error::LawViolation(_)
            | Error::NotSimpleSpec
            | Error::NotInvariant
            | Error::DegreeExceedsOrder { .. } => ErrorKind::Malformed,
            _ => ErrorKind::Internal,
        };
        Failure { kind, message: e.to_string(), violation }
    }
}

pub fn violation(label: impl Into<String>, v: &Violation) -> ViolationJson {
    ViolationJson::from_violation(Some(label.into()), v)
}

/// What a command hands back to the driver.
pub struct Outcome {
    pub status: Status,
    pub verified_order: u32,
    pub first_violation: Option<ViolationJson>,
    /// Primary artifact; written to `--out` when given.
    pub result: Value,
    /// Human-readable rendering for `--format table`.
    pub table: Vec<String>,
}

impl Outcome {
    pub fn new(verified_order: u32, result: Value, table: Vec<String>) -> Self {
        Outcome { status: Status::Holds, verified_order, first_violation: None, result, table }
    }

    pub fn violated_if(mut self, v: Option<ViolationJson>) -> Self {
        if let Some(v) = v {
            self.status = Status::Violated;
            self.first_violation = Some(v);
        }
        self
    }

    pub fn failed_if(mut self, failed: bool) -> Self {
        if failed {
            self.status = Status::Violated;
        }
        self
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub verified_order: u32,
    pub status: Status,
    pub first_violation: Option<ViolationJson>,
    pub artifacts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}
