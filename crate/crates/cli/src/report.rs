//! Serializable payload rows and the run envelope.
//!
//! High-precision numbers travel as decimal strings so no digits are lost
//! to `f64`; rationals are `num/den` strings.

use serde::{Deserialize, Serialize};

use zetaint_core::discovery::{CheckRow, FitResult, MomentRecord};
use zetaint_core::identities::VerificationReport;

use crate::args::RunConfig;
use crate::format::{decimal, rational, short};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub tool_version: String,
    pub command: String,
    pub config: RunConfig,
    pub started_at: String,
    pub elapsed_s: f64,
    pub payload: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub id: String,
    pub case: String,
    pub lhs_value: String,
    pub rhs_value: String,
    pub abs_residual: String,
    pub tolerance: String,
    pub passed: bool,
    pub evaluations: u64,
    pub elapsed: f64,
    pub note: Option<String>,
}

impl VerifyRow {
    pub fn new(r: &VerificationReport, digits: usize) -> Self {
        Self {
            id: r.id.clone(),
            case: r.case.clone(),
            lhs_value: decimal(&r.lhs_value, digits),
            rhs_value: decimal(&r.rhs_value, digits),
            abs_residual: short(&r.abs_residual),
            tolerance: short(&r.tolerance),
            passed: r.passed,
            evaluations: r.evaluations,
            elapsed: r.elapsed,
            note: r.note.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: u32,
    pub value: String,
    pub coeff_zeta: Option<String>,
    pub coeff_eta: Option<String>,
    pub residual_zeta: Option<String>,
    pub residual_eta: Option<String>,
    pub note: Option<String>,
}

impl TableRow {
    pub fn new(r: &MomentRecord, digits: usize) -> Self {
        Self {
            p: r.p,
            value: decimal(&r.value, digits),
            coeff_zeta: r.coeff_zeta.as_ref().map(rational),
            coeff_eta: r.coeff_eta.as_ref().map(rational),
            residual_zeta: r.residual_zeta.as_ref().map(short),
            residual_eta: r.residual_eta.as_ref().map(short),
            note: r.note.clone(),
        }
    }
}

/// One `p` of a discovery run, either in the fit range or checked beyond it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscoverRow {
    pub p: u32,
    pub role: String,
    pub coeff_eta: Option<String>,
    /// `c_p / c_{p-1}`; absent for `p = 0`.
    pub ratio: Option<String>,
    pub closed_form_coeff: Option<String>,
    pub value: Option<String>,
    pub predicted: Option<String>,
    pub residual: Option<String>,
    pub passed: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscoverPayload {
    pub pattern_found: bool,
    pub ratio_polynomial: Option<String>,
    pub ratio_polynomial_factored: Option<String>,
    pub closed_form: Option<String>,
    pub fit_range: Vec<u32>,
    pub validated_range: Vec<u32>,
    pub rows: Vec<DiscoverRow>,
}

impl DiscoverPayload {
    pub fn new(
        fit: &FitResult,
        table: &[MomentRecord],
        checks: &[CheckRow],
        digits: usize,
    ) -> Self {
        let mut rows = Vec::new();
        for record in table {
            let check = checks.iter().find(|c| c.p == record.p);
            let role = if fit.fit_range.contains(&record.p) {
                "fit"
            } else {
                "check"
            };
            rows.push(DiscoverRow {
                p: record.p,
                role: role.into(),
                coeff_eta: record.coeff_eta.as_ref().map(rational),
                ratio: fit
                    .ratios
                    .iter()
                    .find(|(p, _)| *p == record.p)
                    .map(|(_, q)| rational(q)),
                closed_form_coeff: fit
                    .closed_form
                    .as_ref()
                    .map(|cf| rational(&cf.coefficient(record.p))),
                value: check.map(|c| decimal(&c.value, digits)),
                predicted: check.map(|c| decimal(&c.predicted, digits)),
                residual: check.map(|c| short(&c.residual)),
                passed: check.map(|c| c.passed),
            });
        }
        let validated_range = fit
            .validated_range
            .iter()
            .copied()
            .filter(|p| checks.iter().any(|c| c.p == *p && c.passed))
            .collect();
        Self {
            pattern_found: fit.pattern_found(),
            ratio_polynomial: fit.ratio_polynomial.as_ref().map(|q| q.to_string()),
            ratio_polynomial_factored: fit.ratio_polynomial.as_ref().and_then(|q| q.factored()),
            closed_form: fit.closed_form.as_ref().map(|cf| cf.describe()),
            fit_range: fit.fit_range.clone(),
            validated_range,
            rows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaRow {
    pub s: u32,
    pub method: String,
    pub value: String,
    /// `r` with `ζ(s) = r π^s`, for the Bernoulli method.
    pub pi_coefficient: Option<String>,
}
