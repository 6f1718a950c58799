//! Check reports shared by the verification routines and the CLI. Text and
//! structured renderings carry the same fields in the same order.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, true, detail)
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, false, detail)
    }
}

/// A batch of named checks about one subject (a graph, a matrix family, ...).
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub context: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>, context: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            context: context.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn add(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ({})\n", self.subject, self.context));
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("  [{status}] {}\n", c.name));
            } else {
                out.push_str(&format!("  [{status}] {}: {}\n", c.name, c.detail));
            }
        }
        out
    }
}

/// Report about the differential forms of one graph: which basis was used,
/// the computed forms, and the identity checks.
#[derive(Debug, Clone, Serialize)]
pub struct FormReport {
    pub graph: String,
    pub basis: Option<String>,
    pub forms: Vec<NamedForm>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedForm {
    pub name: String,
    pub value: String,
}

impl FormReport {
    pub fn new(graph: impl Into<String>, basis: Option<String>) -> Self {
        FormReport {
            graph: graph.into(),
            basis,
            forms: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn add_form(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.forms.push(NamedForm {
            name: name.into(),
            value: value.into(),
        });
    }

    pub fn add_check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== graph {}\n", self.graph));
        if let Some(basis) = &self.basis {
            out.push_str(&format!("   basis {basis}\n"));
        }
        for f in &self.forms {
            out.push_str(&format!("   {} = {}\n", f.name, f.value));
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("  [{status}] {}\n", c.name));
            } else {
                out.push_str(&format!("  [{status}] {}: {}\n", c.name, c.detail));
            }
        }
        out
    }
}
