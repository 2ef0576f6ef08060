//! Pass/fail records for theorem checks on concrete instances.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One checked statement. `anchor` names the statement by its conventional
/// name and formula so reports can be traced to the mathematics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    pub witnesses: Vec<String>,
}

impl Verdict {
    pub fn new(check: &str, anchor: &str, holds: bool, detail: impl Into<String>) -> Self {
        Verdict {
            check: check.to_string(),
            anchor: anchor.to_string(),
            status: if holds { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            witnesses: Vec::new(),
        }
    }

    pub fn skipped(check: &str, anchor: &str, reason: impl Into<String>) -> Self {
        Verdict {
            check: check.to_string(),
            anchor: anchor.to_string(),
            status: Status::Skipped,
            detail: reason.into(),
            witnesses: Vec::new(),
        }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<String>) -> Self {
        self.witnesses = witnesses;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// True if no verdict failed.
pub fn all_hold(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(|v| !v.failed())
}
