//! Violation lists returned by the validators. Failures are data, not errors.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub violations: Vec<String>,
    /// Named exact values worth printing (canonical strings).
    pub values: Vec<(String, String)>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Self::default() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.violations.push(msg());
        }
    }

    pub fn value(&mut self, key: impl Into<String>, v: impl Into<String>) {
        self.values.push((key.into(), v.into()));
    }

    /// Append another report's violations, prefixed with its name.
    pub fn absorb(&mut self, other: &CheckReport) {
        for v in &other.violations {
            self.violations.push(alloc::format!("{}: {v}", other.name));
        }
    }
}
