//! Pass/fail reports shared by every verification routine.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one named property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Number of basis cases examined.
    pub cases: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    /// Records a check; `failure` is the first counterexample, if any.
    pub fn record(&mut self, name: impl Into<String>, cases: usize, failure: Option<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: failure.is_none(),
            cases,
            counterexample: failure,
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "  {tag} {} [{} cases]", c.name, c.cases)?;
            if let Some(cx) = &c.counterexample {
                write!(f, ": {cx}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
