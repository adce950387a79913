//! Per-instance verification outcomes and the run summary.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub instance: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

impl Check {
    /// An identity check. Resource-cap errors propagate; any other error
    /// counts as a failed instance.
    pub fn identity(instance: impl Into<String>, outcome: Result<bool>) -> Result<Check> {
        let instance = instance.into();
        match outcome {
            Ok(passed) => Ok(Check {
                instance,
                passed,
                expected: "identity holds".into(),
                actual: if passed {
                    "identity holds"
                } else {
                    "sides differ"
                }
                .into(),
            }),
            Err(e @ Error::ResourceLimit { .. }) => Err(e),
            Err(e) => Ok(Check {
                instance,
                passed: false,
                expected: "identity holds".into(),
                actual: format!("error: {e}"),
            }),
        }
    }

    /// A comparison of two rendered values.
    pub fn values(instance: impl Into<String>, expected: String, actual: String) -> Check {
        Check {
            instance: instance.into(),
            passed: expected == actual,
            expected,
            actual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceStatus {
    pub instance: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub command: String,
    pub instances_checked: usize,
    pub instances: Vec<InstanceStatus>,
    pub failures: Vec<Failure>,
    pub elapsed_seconds: f64,
}

impl RunReport {
    pub fn new(command: impl Into<String>, checks: &[Check], elapsed: Duration) -> RunReport {
        RunReport {
            command: command.into(),
            instances_checked: checks.len(),
            instances: checks
                .iter()
                .map(|c| InstanceStatus {
                    instance: c.instance.clone(),
                    passed: c.passed,
                })
                .collect(),
            failures: checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| Failure {
                    instance: c.instance.clone(),
                    expected: c.expected.clone(),
                    actual: c.actual.clone(),
                })
                .collect(),
            elapsed_seconds: elapsed.as_secs_f64(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
