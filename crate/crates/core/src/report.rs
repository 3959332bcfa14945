//! Verification reports.

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::Result;
use crate::exec::Exec;
use crate::tensor::{ket_string, Ket, State};

/// Stored failures per report; the total is kept in `failure_count`.
pub const MAX_STORED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub ket: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub relation: String,
    pub space: String,
    pub mode: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub failure_count: usize,
    /// Largest residual seen; exact mode reports 0 or infinity.
    pub max_residual: f64,
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Set when a failure is accounted for by a passing corrected check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explanation: Option<String>,
}

impl Report {
    pub fn new(relation: impl Into<String>, space: impl Into<String>, mode: impl Into<String>) -> Report {
        Report {
            relation: relation.into(),
            space: space.into(),
            mode: mode.into(),
            cases: 0,
            failures: Vec::new(),
            failure_count: 0,
            max_residual: 0.0,
            tol: None,
            notes: Vec::new(),
            explanation: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Passed, or failed with a recorded explanation.
    pub fn acceptable(&self) -> bool {
        self.passed() || self.explanation.is_some()
    }

    pub fn record_case(&mut self, residual: f64, failure: Option<Failure>) {
        self.cases += 1;
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = residual;
        }
        if let Some(f) = failure {
            self.failure_count += 1;
            if self.failures.len() < MAX_STORED_FAILURES {
                self.failures.push(f);
            }
        }
    }

    pub fn fail(&mut self, failure: Failure) {
        self.record_case(f64::INFINITY, Some(failure));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Associative merge of per-case partial reports.
    pub fn merge(&mut self, other: Report) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_STORED_FAILURES {
                self.failures.push(f);
            }
        }
        if other.max_residual > self.max_residual || other.max_residual.is_nan() {
            self.max_residual = other.max_residual;
        }
        self.notes.extend(other.notes);
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() {
            "PASS"
        } else if self.explanation.is_some() {
            "FAIL (explained)"
        } else {
            "FAIL"
        };
        format!(
            "{verdict} {} [{}; {}] cases={} failures={} max_residual={:.3e}",
            self.relation, self.space, self.mode, self.cases, self.failure_count, self.max_residual
        )
    }
}

/// Compares `lhs(k)` and `rhs(k)` for every ket `k`. Exact coefficients
/// must cancel; float residuals must stay within `tol`.
pub fn compare_on_kets<C, F>(report: &mut Report, exec: Exec, kets: &[Ket], tol: Option<f64>, f: F) -> Result<()>
where
    C: Coeff,
    F: Fn(&Ket) -> Result<(State<C>, State<C>)> + Sync + Send,
{
    report.tol = tol;
    let results = exec.map(kets, |k| -> Result<(f64, Option<Failure>)> {
        let (lhs, rhs) = f(k)?;
        let diff = lhs.sub(&rhs)?;
        let r = diff.max_magnitude();
        let bad = match tol {
            Some(t) => !(r <= t),
            None => !diff.is_zero(),
        };
        let failure = bad.then(|| Failure { ket: ket_string(k), lhs: lhs.render(), rhs: rhs.render() });
        Ok((r, failure))
    });
    for r in results {
        let (res, failure) = r?;
        report.record_case(res, failure);
    }
    Ok(())
}
