//! Per-axiom residual reports shared by all validators.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport { checks: Vec::new() }
    }

    /// Record a residual check: passes iff residual < tol.
    pub fn push(&mut self, name: &str, residual: f64, tol: f64) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            residual,
            tol,
            pass: residual < tol,
        });
    }

    /// Record a boolean check; the residual slot carries 0.0 or 1.0.
    pub fn push_flag(&mut self, name: &str, ok: bool, tol: f64) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            residual: if ok { 0.0 } else { 1.0 },
            tol,
            pass: ok,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn residual_of(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.residual)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

impl Default for ValidationReport {
    fn default() -> Self {
        Self::new()
    }
}
