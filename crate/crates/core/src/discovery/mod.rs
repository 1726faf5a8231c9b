//! Moment integrals `𝓘(p) = ∫ z^{2p} ln(1+e^z)/(1+e^z) dz`, exact coefficient
//! recovery against `ζ(2p+2)` and `η(2p+2)`, and fitting of the coefficient
//! pattern.

mod fit;
mod rationalize;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use thiserror::Error;

use crate::numctx::{ln_one_minus, ExactRational, HpReal, PrecisionContext};
use crate::quadrature::{
    integrate_finite, integrate_half_line, integrate_real_line, QuadConfig, QuadError, QuadResult,
};
use crate::special::{eta_factor, zeta_even, SpecialError};

pub use fit::{
    conjecture_check, fit_ratio_pattern, fit_ratio_pattern_through, Basis, CheckRow, ClosedForm,
    FitResult, RationalPolynomial,
};
pub use rationalize::rationalize;

/// Default upper bound on `p`.
pub const DEFAULT_P_CEILING: u32 = 12;
/// Height bound used when recognising table coefficients.
pub const TABLE_MAX_DENOMINATOR: u64 = 1_000_000_000;

#[derive(Debug, Error)]
pub enum DiscoveryError {
    #[error("{0}")]
    Usage(String),
    #[error("{value} is not a rational of this height at this precision")]
    Recognition { value: String },
    #[error("need at least {needed} successful eta-basis rows, have {have}")]
    InsufficientRows { needed: usize, have: usize },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// Which change of variables to integrate in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentForm {
    /// `∫_{-∞}^{∞} z^{2p} ln(1+e^z)/(1+e^z) dz`.
    RealLine,
    /// `∫_0^∞ (ln u)^{2p} ln(1+u)/(u(1+u)) du`, from `u = e^z`.
    HalfLine,
    /// `-∫_0^1 [ln t - ln(1-t)]^{2p} ln(1-t)/t dt`, from `u = t/(1-t)`.
    Unit,
}

impl MomentForm {
    pub const ALL: [MomentForm; 3] = [MomentForm::RealLine, MomentForm::HalfLine, MomentForm::Unit];

    pub fn name(self) -> &'static str {
        match self {
            MomentForm::RealLine => "REAL_LINE",
            MomentForm::HalfLine => "HALF_LINE",
            MomentForm::Unit => "UNIT",
        }
    }
}

/// `ln(1+e^z)` and `1/(1+e^z)` without overflow for large `|z|`.
pub fn softplus_and_logistic(z: &Float, prec: u32) -> (Float, Float) {
    if z.is_sign_positive() {
        let e = Float::with_val(prec, -z).exp();
        let softplus = Float::with_val(prec, e.ln_1p_ref()) + z;
        let logistic = Float::with_val(prec, &e / Float::with_val(prec, &e + 1u32));
        (softplus, logistic)
    } else {
        let e = Float::with_val(prec, z.exp_ref());
        let softplus = Float::with_val(prec, e.ln_1p_ref());
        let logistic = Float::with_val(prec, &e + 1u32).recip();
        (softplus, logistic)
    }
}

/// Real-line integrand `z^{2p} ln(1+e^z)/(1+e^z)`, in stabilised form.
pub fn moment_integrand(p: u32, z: &Float, prec: u32) -> Float {
    let (softplus, logistic) = softplus_and_logistic(z, prec);
    Float::with_val(prec, z.pow(2 * p)) * softplus * logistic
}

pub fn moment_integral(
    p: u32,
    form: MomentForm,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<QuadResult, DiscoveryError> {
    moment_integral_with_ceiling(p, form, DEFAULT_P_CEILING, cfg, ctx)
}

pub fn moment_integral_with_ceiling(
    p: u32,
    form: MomentForm,
    p_ceiling: u32,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<QuadResult, DiscoveryError> {
    if p > p_ceiling {
        return Err(DiscoveryError::Usage(format!(
            "p = {p} exceeds the ceiling {p_ceiling}"
        )));
    }
    let prec = ctx.prec();
    let two_p = 2 * p;
    let result = match form {
        MomentForm::RealLine => integrate_real_line(|z| moment_integrand(p, z, prec), cfg, ctx)?,
        MomentForm::HalfLine => integrate_half_line(
            |u| {
                let lu = Float::with_val(prec, u.ln_ref()).pow(two_p);
                let l1 = Float::with_val(prec, u.ln_1p_ref());
                let denom = Float::with_val(prec, u * Float::with_val(prec, u + 1u32));
                lu * l1 / denom
            },
            cfg,
            ctx,
        )?,
        MomentForm::Unit => integrate_finite(
            |t| {
                let lt = Float::with_val(prec, t.ln_ref());
                let l1 = ln_one_minus(t, prec);
                let diff = Float::with_val(prec, &lt - &l1).pow(two_p);
                -(diff * l1 / t)
            },
            &ctx.real(0),
            &ctx.real(1),
            cfg,
            ctx,
        )?,
    };
    Ok(result)
}

/// One row of the coefficient table.
#[derive(Debug, Clone)]
pub struct MomentRecord {
    pub p: u32,
    /// `𝓘(p)`.
    pub value: HpReal,
    /// `𝓘(p)/ζ(2p+2)` recognised as a rational.
    pub coeff_zeta: Option<ExactRational>,
    /// `𝓘(p)/η(2p+2)` recognised as a rational.
    pub coeff_eta: Option<ExactRational>,
    pub residual_zeta: Option<HpReal>,
    pub residual_eta: Option<HpReal>,
    /// Why a coefficient is missing, when it is.
    pub note: Option<String>,
}

impl MomentRecord {
    pub fn succeeded(&self) -> bool {
        self.coeff_zeta.is_some() && self.coeff_eta.is_some()
    }
}

/// `ζ(2p+2)` and `η(2p+2)` at working precision.
pub fn moment_bases(p: u32, ctx: &PrecisionContext) -> Result<(HpReal, HpReal), DiscoveryError> {
    let n = 2 * p + 2;
    let zeta = zeta_even(n, ctx)?.value;
    let eta = Float::with_val(ctx.prec(), &zeta * ctx.rational(&eta_factor(n)));
    Ok((zeta, eta))
}

fn recognise(
    value: &Float,
    basis: &Float,
    tol: &Float,
    ctx: &PrecisionContext,
) -> Result<(Rational, Float), DiscoveryError> {
    let ratio = Float::with_val(ctx.prec(), value / basis);
    let coeff = rationalize(&ratio, &Integer::from(TABLE_MAX_DENOMINATOR), tol)?;
    let residual = Float::with_val(ctx.prec(), value - ctx.rational(&coeff) * basis).abs();
    Ok((coeff, residual))
}

fn table_row(
    p: u32,
    p_ceiling: u32,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<MomentRecord, DiscoveryError> {
    let mut note = None;
    let value = match moment_integral_with_ceiling(p, MomentForm::RealLine, p_ceiling, cfg, ctx) {
        Ok(r) => r.value,
        Err(DiscoveryError::Quadrature(QuadError::NonConvergence(best))) => {
            note = Some(format!(
                "quadrature did not converge (difference {})",
                best.err_estimate.to_f64()
            ));
            best.value
        }
        Err(e) => return Err(e),
    };
    let (zeta, eta) = moment_bases(p, ctx)?;
    let tol = ctx.pow10_neg(ctx.digits().saturating_sub(12));
    let mut record = MomentRecord {
        p,
        value,
        coeff_zeta: None,
        coeff_eta: None,
        residual_zeta: None,
        residual_eta: None,
        note,
    };
    match recognise(&record.value, &zeta, &tol, ctx) {
        Ok((c, r)) => {
            record.coeff_zeta = Some(c);
            record.residual_zeta = Some(r);
        }
        Err(e) => record.note = Some(format!("zeta basis: {e}")),
    }
    match recognise(&record.value, &eta, &tol, ctx) {
        Ok((c, r)) => {
            record.coeff_eta = Some(c);
            record.residual_eta = Some(r);
        }
        Err(e) => {
            let prior = record
                .note
                .take()
                .map(|n| format!("{n}; "))
                .unwrap_or_default();
            record.note = Some(format!("{prior}eta basis: {e}"));
        }
    }
    Ok(record)
}

/// Rows `p = 0..=p_max` of the coefficient table, computed in parallel and
/// returned in order of `p`.
pub fn coefficient_table(
    p_max: u32,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<Vec<MomentRecord>, DiscoveryError> {
    coefficient_table_with_ceiling(p_max, DEFAULT_P_CEILING, cfg, ctx)
}

pub fn coefficient_table_with_ceiling(
    p_max: u32,
    p_ceiling: u32,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<Vec<MomentRecord>, DiscoveryError> {
    if p_max > p_ceiling {
        return Err(DiscoveryError::Usage(format!(
            "p_max = {p_max} exceeds the ceiling {p_ceiling}"
        )));
    }
    (0..=p_max)
        .into_par_iter()
        .map(|p| table_row(p, p_ceiling, cfg, ctx))
        .collect()
}
