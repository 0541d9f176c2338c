//! Verdict lines and exact value lines shared by every pipeline.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Self::new(name, true, "")
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {}", self.name, if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Ordered machine section: `VALUE` and `CHECK` lines plus free text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub text: Vec<String>,
    pub values: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn value(&mut self, path: impl Into<String>, v: impl Into<String>) {
        self.values.push((path.into(), v.into()));
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn checks(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn merge(&mut self, other: Report) {
        self.text.extend(other.text);
        self.values.extend(other.values);
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// The machine-readable section alone.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        for (p, v) in &self.values {
            out.push_str(&format!("VALUE {p} = {v}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("{c}\n"));
        }
        out
    }

    /// Human section, failure details, then the machine section.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        for c in self.failures() {
            if !c.detail.is_empty() {
                out.push_str(&format!("# {}: {}\n", c.name, c.detail));
            }
        }
        out.push_str(&self.machine());
        out
    }
}
