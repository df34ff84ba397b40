//! Machine-checkable verdicts for identities and inequalities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `residual = |lhs − rhs|` (possibly relative); pass iff `residual ≤ tolerance`.
    Equality,
    /// `residual = rhs − lhs` is the slack; pass iff `slack ≥ −tolerance`.
    Inequality,
    /// Records a quantity whose bound the theory leaves unspecified.
    Informational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Computed in exploratory mode outside the hypotheses of the check.
    Withheld,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportContext {
    pub p: Option<u32>,
    pub q1: Option<f64>,
    pub p1: Option<f64>,
    pub kernel_id: Option<String>,
    pub degree: Option<usize>,
}

/// One `(x, y)` sample of a sequence-valued check (e.g. a value per degree).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub kind: CheckKind,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub context: ReportContext,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<SeriesPoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Equality check with `residual = |lhs − rhs| / scale`.
    pub fn equality(
        name: &str,
        lhs: Complex64,
        rhs: Complex64,
        scale: f64,
        tolerance: f64,
    ) -> Self {
        let residual = (lhs - rhs).norm() / scale;
        Self::build(name, CheckKind::Equality, lhs, rhs, residual, tolerance)
    }

    /// Inequality `lhs ≤ rhs` on real quantities.
    pub fn inequality(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(
            name,
            CheckKind::Inequality,
            lhs.into(),
            rhs.into(),
            rhs - lhs,
            tolerance,
        )
    }

    /// Informational quantity; passes iff it is finite.
    pub fn informational(name: &str, value: f64) -> Self {
        let mut r = Self::build(
            name,
            CheckKind::Informational,
            value.into(),
            Complex64::new(0.0, 0.0),
            value,
            f64::INFINITY,
        );
        r.verdict = if value.is_finite() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        r
    }

    fn build(
        name: &str,
        kind: CheckKind,
        lhs: Complex64,
        rhs: Complex64,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        let ok = match kind {
            CheckKind::Equality => residual <= tolerance,
            CheckKind::Inequality => residual >= -tolerance,
            CheckKind::Informational => residual.is_finite(),
        };
        Self {
            check_name: name.to_string(),
            kind,
            lhs,
            rhs,
            residual,
            tolerance,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            context: ReportContext::default(),
            series: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_context(mut self, context: ReportContext) -> Self {
        self.context = context;
        self
    }

    pub fn with_kernel_id(mut self, id: impl Into<String>) -> Self {
        self.context.kernel_id = Some(id.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Informational and withheld reports never fail a run.
    pub fn is_blocking_failure(&self) -> bool {
        self.kind != CheckKind::Informational && self.verdict == Verdict::Fail
    }
}
