//! Catalog of integral identities for zeta values, each pairing a quadrature
//! left-hand side with an exact closed-form right-hand side.

use std::time::Instant;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use thiserror::Error;

use crate::discovery::{moment_integral, DiscoveryError, MomentForm};
use crate::numctx::{ln_one_minus, ExactRational, HpReal, PrecisionContext};
use crate::quadrature::{integrate_finite, integrate_half_line, QuadConfig, QuadError};
use crate::special::{zeta_int, SpecialError};

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("unknown identity id `{0}`")]
    UnknownId(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// Which side of `t ↔ 1-t` the log-power integrand divides by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Denominator {
    T,
    OneMinusT,
}

/// Quadrature recipe for a left-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lhs {
    /// `(1/(s-1)!) ∫_0^1 (-ln u)^{s-1}/(1-u) du`.
    EulerLog { s: u32 },
    /// `(1/(s-1)!) ∫_0^∞ t^{s-1}/(e^t - 1) dt`.
    Mellin { s: u32 },
    /// `(2/(11π)) ∫_0^π θ² ln²(2cos(θ/2)) dθ`.
    Borwein,
    /// `∫_0^1 ln^a(t) ln^b(1-t) / d(t) dt`.
    LogPowers {
        log_t: u32,
        log_1mt: u32,
        denominator: Denominator,
    },
    /// `∫ z^{2p} ln(1+e^z)/(1+e^z) dz` in the given form.
    Moment { p: u32, form: MomentForm },
    /// `(1/2π) ∫_{-π}^{π} t² cos(nt) dt`.
    FourierCoeff { n: u32 },
    /// `(1/2π) ∫_{-π}^{π} t⁴ dt`.
    ParsevalFourth,
}

/// Exact right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rhs {
    /// `coeff · π^power`.
    PiPower { coeff: ExactRational, power: u32 },
    /// `coeff · ζ(arg)`.
    Zeta { coeff: ExactRational, arg: u32 },
}

impl Rhs {
    fn pi(num: i64, den: i64, power: u32) -> Self {
        Rhs::PiPower {
            coeff: Rational::from((num, den)),
            power,
        }
    }

    fn zeta(num: i64, den: i64, arg: u32) -> Self {
        Rhs::Zeta {
            coeff: Rational::from((num, den)),
            arg,
        }
    }

    pub fn value(&self, ctx: &PrecisionContext) -> Result<HpReal, IdentityError> {
        Ok(match self {
            Rhs::PiPower { coeff, power } => {
                ctx.rational(coeff) * Float::with_val(ctx.prec(), ctx.pi().pow(*power))
            }
            Rhs::Zeta { coeff, arg } => ctx.rational(coeff) * zeta_int(*arg, ctx)?,
        })
    }

    pub fn render(&self) -> String {
        let c = |r: &Rational| {
            if *r.denom() == 1 {
                r.numer().to_string()
            } else {
                format!("({}/{})", r.numer(), r.denom())
            }
        };
        match self {
            Rhs::PiPower { coeff, power: 0 } => c(coeff),
            Rhs::PiPower { coeff, power } => format!("{}*pi^{power}", c(coeff)),
            Rhs::Zeta { coeff, arg } => format!("{}*zeta({arg})", c(coeff)),
        }
    }
}

/// One checked instance of an identity.
#[derive(Debug, Clone)]
pub struct Case {
    pub label: String,
    pub lhs: Lhs,
    pub rhs: Rhs,
}

#[derive(Debug, Clone)]
pub struct Identity {
    pub id: &'static str,
    pub description: &'static str,
    /// Most rows have one case; the parametrised ones report the worst.
    pub cases: Vec<Case>,
}

impl Identity {
    /// `10^-(digits-8)`.
    pub fn default_tolerance(&self, ctx: &PrecisionContext) -> HpReal {
        ctx.pow10_neg(ctx.digits().saturating_sub(8))
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub id: String,
    /// Label of the case shown, which is the worst one for multi-case rows.
    pub case: String,
    pub lhs_value: HpReal,
    pub rhs_value: HpReal,
    pub abs_residual: HpReal,
    pub tolerance: HpReal,
    pub passed: bool,
    pub evaluations: u64,
    pub elapsed: f64,
    pub note: Option<String>,
}

fn single(id: &'static str, description: &'static str, lhs: Lhs, rhs: Rhs) -> Identity {
    Identity {
        id,
        description,
        cases: vec![Case {
            label: String::new(),
            lhs,
            rhs,
        }],
    }
}

fn log_powers(log_t: u32, log_1mt: u32, denominator: Denominator) -> Lhs {
    Lhs::LogPowers {
        log_t,
        log_1mt,
        denominator,
    }
}

/// Every catalog row, ordered by id.
pub fn catalog() -> Vec<Identity> {
    use Denominator::{OneMinusT, T};
    let mut rows = vec![
        Identity {
            id: "EULER_REP",
            description: "zeta(s) = (1/(s-1)!) int_0^1 (-ln u)^(s-1)/(1-u) du, s = 2, 3, 4",
            cases: (2..=4)
                .map(|s| Case {
                    label: format!("s={s}"),
                    lhs: Lhs::EulerLog { s },
                    rhs: Rhs::zeta(1, 1, s),
                })
                .collect(),
        },
        Identity {
            id: "MELLIN_REP",
            description: "zeta(s) = (1/(s-1)!) int_0^inf t^(s-1)/(e^t-1) dt, s = 2, 3, 4",
            cases: (2..=4)
                .map(|s| Case {
                    label: format!("s={s}"),
                    lhs: Lhs::Mellin { s },
                    rhs: Rhs::zeta(1, 1, s),
                })
                .collect(),
        },
        single(
            "BORWEIN_Z4",
            "(2/(11 pi)) int_0^pi theta^2 ln^2(2 cos(theta/2)) dtheta = zeta(4)",
            Lhs::Borwein,
            Rhs::pi(1, 90, 4),
        ),
        single(
            "BLOCK_A",
            "int_0^1 ln^2(t) ln(1-t)/t dt = -2 zeta(4)",
            log_powers(2, 1, T),
            Rhs::zeta(-2, 1, 4),
        ),
        single(
            "BLOCK_A_PRINTED",
            "int_0^1 ln^2(t) ln(1-t)/(1-t) dt = -zeta(4)/2 (the 1-t denominator variant of BLOCK_A)",
            log_powers(2, 1, OneMinusT),
            Rhs::zeta(-1, 2, 4),
        ),
        single(
            "BLOCK_B",
            "int_0^1 ln^3(1-t)/t dt = -6 zeta(4)",
            log_powers(0, 3, T),
            Rhs::zeta(-6, 1, 4),
        ),
        single(
            "BLOCK_C",
            "int_0^1 ln(t) ln^2(1-t)/t dt = -zeta(4)/2",
            log_powers(1, 2, T),
            Rhs::zeta(-1, 2, 4),
        ),
        single(
            "SYMMETRY_B",
            "int_0^1 ln^3(t)/(1-t) dt, the t <-> 1-t mirror of BLOCK_B, = -6 zeta(4)",
            log_powers(3, 0, OneMinusT),
            Rhs::zeta(-6, 1, 4),
        ),
        single(
            "MAIN_Z4_REAL_LINE",
            "int_R z^2 ln(1+e^z)/(1+e^z) dz = 7 pi^4/90",
            Lhs::Moment {
                p: 1,
                form: MomentForm::RealLine,
            },
            Rhs::pi(7, 90, 4),
        ),
        single(
            "MAIN_Z4_HALF_LINE",
            "int_0^inf ln^2(u) ln(1+u)/(u(1+u)) du = 7 pi^4/90",
            Lhs::Moment {
                p: 1,
                form: MomentForm::HalfLine,
            },
            Rhs::pi(7, 90, 4),
        ),
        single(
            "MAIN_Z4_UNIT",
            "-int_0^1 [ln t - ln(1-t)]^2 ln(1-t)/t dt = 7 pi^4/90",
            Lhs::Moment {
                p: 1,
                form: MomentForm::Unit,
            },
            Rhs::pi(7, 90, 4),
        ),
        single(
            "Z2_REP",
            "int_R ln(1+e^z)/(1+e^z) dz = pi^2/6",
            Lhs::Moment {
                p: 0,
                form: MomentForm::RealLine,
            },
            Rhs::pi(1, 6, 2),
        ),
        single(
            "MOMENT_P2",
            "int_R z^4 ln(1+e^z)/(1+e^z) dz = (279/2) zeta(6)",
            Lhs::Moment {
                p: 2,
                form: MomentForm::RealLine,
            },
            Rhs::zeta(279, 2, 6),
        ),
        single(
            "MOMENT_P3",
            "int_R z^6 ln(1+e^z)/(1+e^z) dz = 5715 zeta(8)",
            Lhs::Moment {
                p: 3,
                form: MomentForm::RealLine,
            },
            Rhs::zeta(5715, 1, 8),
        ),
        single(
            "MOMENT_P4",
            "int_R z^8 ln(1+e^z)/(1+e^z) dz = (804825/2) zeta(10)",
            Lhs::Moment {
                p: 4,
                form: MomentForm::RealLine,
            },
            Rhs::zeta(804825, 2, 10),
        ),
        Identity {
            id: "FOURIER_COEFF",
            description: "(1/2pi) int_-pi^pi t^2 cos(nt) dt = pi^2/3 (n = 0), 2(-1)^n/n^2 (n = 1, 2)",
            cases: (0..=2)
                .map(|n| Case {
                    label: format!("n={n}"),
                    lhs: Lhs::FourierCoeff { n },
                    rhs: fourier_coefficient_exact(n),
                })
                .collect(),
        },
        single(
            "PARSEVAL_Z4",
            "(1/2pi) int_-pi^pi t^4 dt = pi^4/9 + 8 zeta(4) = pi^4/5",
            Lhs::ParsevalFourth,
            Rhs::pi(1, 5, 4),
        ),
    ];
    rows.sort_by_key(|r| r.id);
    rows
}

/// `π²/3` for `n = 0`, else `2(-1)^n/n²`.
pub fn fourier_coefficient_exact(n: u32) -> Rhs {
    if n == 0 {
        Rhs::pi(1, 3, 2)
    } else {
        let sign = if n % 2 == 0 { 2 } else { -2 };
        Rhs::PiPower {
            coeff: Rational::from((Integer::from(sign), Integer::from(n).square())),
            power: 0,
        }
    }
}

/// Cosine coefficient of the `2π`-periodic extension of `t²`, by quadrature.
pub fn fourier_coefficient(n: u32, ctx: &PrecisionContext) -> Result<HpReal, IdentityError> {
    Ok(fourier_quadrature(n, &QuadConfig::new(ctx), ctx)?.0)
}

fn fourier_quadrature(
    n: u32,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<(HpReal, u64), QuadError> {
    let prec = ctx.prec();
    let pi = ctx.pi();
    let r = integrate_finite(
        |t| {
            let c = Float::with_val(prec, t * n).cos();
            Float::with_val(prec, t.square_ref()) * c
        },
        &Float::with_val(prec, -pi),
        pi,
        cfg,
        ctx,
    )?;
    Ok((r.value / Float::with_val(prec, pi * 2u32), r.evaluations))
}

/// `Σ_{n=1}^{N} n^{-4}`.
pub fn parseval_partial(n_terms: u32, ctx: &PrecisionContext) -> Result<HpReal, IdentityError> {
    if n_terms == 0 {
        return Err(IdentityError::Usage("parseval_partial needs N >= 1".into()));
    }
    let prec = ctx.prec() + 32;
    let mut sum = Float::with_val(prec, 0);
    for n in (1..=n_terms).rev() {
        sum += Float::with_val(prec, Integer::from(n).pow(4u32)).recip();
    }
    Ok(Float::with_val(ctx.prec(), sum))
}

/// `1/(3N³)`, an upper bound on `Σ_{n>N} n^{-4}`.
pub fn parseval_tail_bound(n_terms: u32, ctx: &PrecisionContext) -> HpReal {
    let cube = Integer::from(n_terms).pow(3u32) * 3u32;
    Float::with_val(ctx.prec(), cube).recip()
}

fn factorial(n: u32) -> Integer {
    Integer::factorial(n).into()
}

fn eval_lhs(
    lhs: &Lhs,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<(HpReal, u64), QuadError> {
    let prec = ctx.prec();
    let zero = ctx.real(0);
    let one = ctx.real(1);
    match *lhs {
        Lhs::EulerLog { s } => {
            let r = integrate_finite(
                |u| {
                    let l = -Float::with_val(prec, u.ln_ref());
                    l.pow(s - 1) / Float::with_val(prec, 1u32 - u)
                },
                &zero,
                &one,
                cfg,
                ctx,
            )?;
            Ok((r.value / factorial(s - 1), r.evaluations))
        }
        Lhs::Mellin { s } => {
            let r = integrate_half_line(
                |t| Float::with_val(prec, t.pow(s - 1)) / Float::with_val(prec, t.exp_m1_ref()),
                cfg,
                ctx,
            )?;
            Ok((r.value / factorial(s - 1), r.evaluations))
        }
        Lhs::Borwein => {
            // θ = π - φ puts the log singularity at φ = 0, where abscissae are exact.
            let pi = ctx.pi();
            let r = integrate_finite(
                |phi| {
                    let theta = Float::with_val(prec, pi - phi);
                    let s = Float::with_val(prec, phi / 2u32).sin() * 2u32;
                    theta.square() * s.ln().square()
                },
                &zero,
                pi,
                cfg,
                ctx,
            )?;
            let scale = Float::with_val(prec, pi * 11u32);
            Ok((r.value * 2u32 / scale, r.evaluations))
        }
        Lhs::LogPowers {
            log_t,
            log_1mt,
            denominator,
        } => {
            let r = integrate_finite(
                |t| {
                    let lt = Float::with_val(prec, t.ln_ref()).pow(log_t);
                    let l1 = ln_one_minus(t, prec).pow(log_1mt);
                    let d = match denominator {
                        Denominator::T => Float::with_val(prec, t),
                        Denominator::OneMinusT => Float::with_val(prec, 1u32 - t),
                    };
                    lt * l1 / d
                },
                &zero,
                &one,
                cfg,
                ctx,
            )?;
            Ok((r.value, r.evaluations))
        }
        Lhs::Moment { p, form } => match moment_integral(p, form, cfg, ctx) {
            Ok(r) => Ok((r.value, r.evaluations)),
            Err(DiscoveryError::Quadrature(e)) => Err(e),
            Err(e) => Err(QuadError::InvalidConfig(e.to_string())),
        },
        Lhs::FourierCoeff { n } => fourier_quadrature(n, cfg, ctx),
        Lhs::ParsevalFourth => {
            let pi = ctx.pi();
            let r = integrate_finite(
                |t| Float::with_val(prec, t.pow(4u32)),
                &Float::with_val(prec, -pi),
                pi,
                cfg,
                ctx,
            )?;
            Ok((r.value / Float::with_val(prec, pi * 2u32), r.evaluations))
        }
    }
}

struct CaseOutcome {
    label: String,
    lhs: HpReal,
    rhs: HpReal,
    residual: HpReal,
    evaluations: u64,
    note: Option<String>,
}

fn run_case(
    case: &Case,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<CaseOutcome, IdentityError> {
    let rhs = case.rhs.value(ctx)?;
    let (lhs, evaluations, note) = match eval_lhs(&case.lhs, cfg, ctx) {
        Ok((v, n)) => (v, n, None),
        Err(QuadError::NonConvergence(best)) => (
            best.value.clone(),
            best.evaluations,
            Some(format!(
                "quadrature did not converge by level {} (last difference {:.3e})",
                cfg.max_level,
                best.err_estimate.to_f64()
            )),
        ),
        Err(e) => (
            Float::with_val(ctx.prec(), rug::float::Special::Nan),
            0,
            Some(e.to_string()),
        ),
    };
    let residual = Float::with_val(ctx.prec(), &lhs - &rhs).abs();
    Ok(CaseOutcome {
        label: case.label.clone(),
        lhs,
        rhs,
        residual,
        evaluations,
        note,
    })
}

/// Evaluates both sides of `id`. `overrides` replaces the default quadrature
/// configuration.
pub fn verify(
    id: &str,
    ctx: &PrecisionContext,
    overrides: Option<&QuadConfig>,
) -> Result<VerificationReport, IdentityError> {
    let identity = catalog()
        .into_iter()
        .find(|i| i.id == id)
        .ok_or_else(|| IdentityError::UnknownId(id.to_string()))?;
    verify_identity(&identity, ctx, overrides)
}

pub fn verify_identity(
    identity: &Identity,
    ctx: &PrecisionContext,
    overrides: Option<&QuadConfig>,
) -> Result<VerificationReport, IdentityError> {
    let start = Instant::now();
    let cfg = overrides.cloned().unwrap_or_else(|| QuadConfig::new(ctx));
    let tolerance = identity.default_tolerance(ctx);
    let mut outcomes = Vec::with_capacity(identity.cases.len());
    for case in &identity.cases {
        outcomes.push(run_case(case, &cfg, ctx)?);
    }
    let evaluations = outcomes.iter().map(|o| o.evaluations).sum();
    let notes: Vec<String> = outcomes
        .iter()
        .filter_map(|o| {
            o.note.as_ref().map(|n| {
                if o.label.is_empty() {
                    n.clone()
                } else {
                    format!("{}: {n}", o.label)
                }
            })
        })
        .collect();
    let all_ok = notes.is_empty();
    // Worst case: any failed case first, then the largest residual.
    let worst = outcomes
        .into_iter()
        .reduce(|a, b| {
            let a_bad = a.note.is_some() || a.residual.is_nan();
            let b_bad = b.note.is_some() || b.residual.is_nan();
            match (a_bad, b_bad) {
                (true, false) => a,
                (false, true) => b,
                _ if b.residual > a.residual => b,
                _ => a,
            }
        })
        .ok_or_else(|| IdentityError::Usage(format!("identity {} has no cases", identity.id)))?;
    let passed = all_ok && worst.residual <= tolerance;
    Ok(VerificationReport {
        id: identity.id.to_string(),
        case: worst.label,
        lhs_value: worst.lhs,
        rhs_value: worst.rhs,
        abs_residual: worst.residual,
        tolerance,
        passed,
        evaluations,
        elapsed: start.elapsed().as_secs_f64(),
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    })
}

/// Every catalog row, rows in parallel, ordered by id.
pub fn verify_all(
    ctx: &PrecisionContext,
    overrides: Option<&QuadConfig>,
) -> Vec<VerificationReport> {
    let mut reports: Vec<VerificationReport> = catalog()
        .par_iter()
        .map(|identity| {
            verify_identity(identity, ctx, overrides).unwrap_or_else(|e| VerificationReport {
                id: identity.id.to_string(),
                case: String::new(),
                lhs_value: Float::with_val(ctx.prec(), rug::float::Special::Nan),
                rhs_value: Float::with_val(ctx.prec(), rug::float::Special::Nan),
                abs_residual: Float::with_val(ctx.prec(), rug::float::Special::Nan),
                tolerance: identity.default_tolerance(ctx),
                passed: false,
                evaluations: 0,
                elapsed: 0.0,
                note: Some(e.to_string()),
            })
        })
        .collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numctx::make_context;

    #[test]
    fn catalog_shape() {
        let rows = catalog();
        assert_eq!(rows.len(), 17);
        let mut ids: Vec<_> = rows.iter().map(|r| r.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), 17);
        let find = |id: &str| {
            rows.iter().find(|r| r.id == id).unwrap().cases[0]
                .rhs
                .clone()
        };
        assert_eq!(find("MAIN_Z4_REAL_LINE"), Rhs::pi(7, 90, 4));
        assert_eq!(find("MOMENT_P2"), Rhs::zeta(279, 2, 6));
        assert_eq!(find("Z2_REP"), Rhs::pi(1, 6, 2));
    }

    #[test]
    fn fourier_examples() {
        let ctx = make_context(30).unwrap();
        let tol = ctx.pow10_neg(25);
        for n in 0..=2 {
            let v = fourier_coefficient(n, &ctx).unwrap();
            let exact = fourier_coefficient_exact(n).value(&ctx).unwrap();
            assert!(
                Float::with_val(ctx.prec(), v - exact).abs() < tol,
                "n = {n}"
            );
        }
        assert_eq!(fourier_coefficient_exact(2), Rhs::pi(1, 2, 0));
        assert_eq!(fourier_coefficient_exact(1), Rhs::pi(-2, 1, 0));
    }

    #[test]
    fn parseval_sums() {
        let ctx = make_context(30).unwrap();
        assert_eq!(parseval_partial(1, &ctx).unwrap(), 1);
        assert!(parseval_partial(0, &ctx).is_err());
        let target = Rhs::pi(1, 90, 4).value(&ctx).unwrap();
        let gap = Float::with_val(ctx.prec(), &target - parseval_partial(10, &ctx).unwrap());
        assert!(gap > 0 && gap < parseval_tail_bound(10, &ctx));
    }

    #[test]
    fn verify_small_rows() {
        let ctx = make_context(20).unwrap();
        for id in ["BLOCK_B", "EULER_REP", "BORWEIN_Z4"] {
            let r = verify(id, &ctx, None).unwrap();
            assert!(r.passed, "{id}: {}", r.abs_residual);
        }
        assert!(matches!(
            verify("NOPE", &ctx, None),
            Err(IdentityError::UnknownId(_))
        ));
    }

    #[test]
    fn under_resolved_row_fails_with_note() {
        let ctx = make_context(50).unwrap();
        let cfg = QuadConfig::new(&ctx).with_max_level(4);
        let r = verify("BORWEIN_Z4", &ctx, Some(&cfg)).unwrap();
        assert!(!r.passed);
        assert!(r.note.is_some());
    }
}
