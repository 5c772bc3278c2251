use serde::{Deserialize, Serialize};

/// Outcome of a randomized check. Absence of a violation is never reported
/// as a proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    NoViolationFound,
    Violated,
}

impl Status {
    pub fn is_violated(self) -> bool {
        self == Status::Violated
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::NoViolationFound => "no_violation_found",
            Status::Violated => "violated",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
