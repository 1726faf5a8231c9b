//! Residuals of the `Li_4` integral identities.
//!
//! Each function evaluates both sides of an identity independently (series
//! for the polylogarithms, tanh-sinh for the integral) and returns the
//! absolute difference, which is near zero when the identity holds.

use rug::ops::Pow;
use rug::Float;

use super::polylog::{polylog, polylog_below_minus_one};
use super::zeta::zeta_int;
use super::SpecialError;
use crate::numctx::{ln_one_minus, HpReal, PrecisionContext};
use crate::quadrature::{integrate_finite, QuadConfig};

fn check_unit_open(x: &Float) -> Result<(), SpecialError> {
    if x.is_finite() && *x > 0 && *x < 1 {
        Ok(())
    } else {
        Err(SpecialError::Usage("argument must lie in (0, 1)".into()))
    }
}

/// `∫_0^x f(t) dt` with the default target.
fn integral_to<F: Fn(&Float) -> Float>(
    f: F,
    x: &Float,
    ctx: &PrecisionContext,
) -> Result<Float, SpecialError> {
    let cfg = QuadConfig::new(ctx);
    Ok(integrate_finite(f, &ctx.real(0), x, &cfg, ctx)?.value)
}

/// `Li_4(x) - ln(x) Li_3(x) + ½ ln²(x) Li_2(x)`, shared by both Lewin forms.
fn lewin_head(x: &Float, ctx: &PrecisionContext) -> Result<Float, SpecialError> {
    let prec = ctx.prec();
    let l = Float::with_val(prec, x.ln_ref());
    let li4 = polylog(4, x, ctx)?;
    let li3 = polylog(3, x, ctx)?;
    let li2 = polylog(2, x, ctx)?;
    let l2 = Float::with_val(prec, l.square_ref());
    Ok(li4 - Float::with_val(prec, &l * &li3) + l2 * li2 / 2u32)
}

/// `|Li_4(x) - ln x Li_3(x) + ½ln²x Li_2(x) + ½∫_0^x ln²t ln(1-t)/t dt|`.
pub fn li4_lewin_residual(x: &HpReal, ctx: &PrecisionContext) -> Result<HpReal, SpecialError> {
    check_unit_open(x)?;
    let prec = ctx.prec();
    let integral = integral_to(
        |t| {
            let lt = Float::with_val(prec, t.ln_ref());
            let l1 = ln_one_minus(t, prec);
            lt.square() * l1 / t
        },
        x,
        ctx,
    )?;
    Ok((lewin_head(x, ctx)? + integral / 2u32).abs())
}

/// `|Li_4(x) - ln x Li_3(x) + ½ln²x Li_2(x) + ⅙ln³x ln(1-x) + ⅙∫_0^x ln³t/(1-t) dt|`.
pub fn li4_lewin2_residual(x: &HpReal, ctx: &PrecisionContext) -> Result<HpReal, SpecialError> {
    check_unit_open(x)?;
    let prec = ctx.prec();
    let integral = integral_to(
        |t| {
            let lt = Float::with_val(prec, t.ln_ref());
            let one_minus = Float::with_val(prec, 1u32 - t);
            lt.pow(3u32) / one_minus
        },
        x,
        ctx,
    )?;
    let l = Float::with_val(prec, x.ln_ref());
    let m = ln_one_minus(x, prec);
    let boundary = l.pow(3u32) * m / 6u32;
    Ok((lewin_head(x, ctx)? + boundary + integral / 6u32).abs())
}

/// Closed form for `∫_0^x ln²t ln(1-t)/(1-t) dt`:
///
/// ```text
/// -2[Li4(-x/(1-x)) + Li4(x) - Li4(1-x) + Li4(1)]
///   + 2[ln(1-x) Li3(x) - ln x Li3(1-x)] + 2 ln x ln(1-x) Li2(1-x) - ζ(2) ln²(1-x)
///   + (1/12) ln²(1-x) [6 ln²x + 4 ln x ln(1-x) - ln²(1-x)] + 2 Li3(1) C(x)
/// ```
///
/// with `C(x) = ln(x/(1-x))`. Setting `printed = true` uses `C(x) =
/// ln(1/(1-x))` instead, which drops a `2 ζ(3) ln x` term and does not
/// match the integral.
pub fn landen_log_integral_closed_form(
    x: &HpReal,
    printed: bool,
    ctx: &PrecisionContext,
) -> Result<HpReal, SpecialError> {
    check_unit_open(x)?;
    let prec = ctx.prec();
    let one_minus = Float::with_val(prec, 1u32 - x);
    let l = Float::with_val(prec, x.ln_ref());
    let m = ln_one_minus(x, prec);
    let ratio = Float::with_val(prec, x / &one_minus);
    let li4_neg = if ratio <= 1 {
        polylog(4, &Float::with_val(prec, -&ratio), ctx)?
    } else {
        polylog_below_minus_one(4, &ratio, ctx)?
    };
    let zeta2 = zeta_int(2, ctx)?;
    let zeta3 = zeta_int(3, ctx)?;
    let zeta4 = zeta_int(4, ctx)?;
    let quartic = li4_neg + polylog(4, x, ctx)? - polylog(4, &one_minus, ctx)? + zeta4;
    let mut rhs = quartic * -2i32;
    let cubic = Float::with_val(prec, &m * polylog(3, x, ctx)?)
        - Float::with_val(prec, &l * polylog(3, &one_minus, ctx)?);
    rhs += 2u32 * cubic;
    rhs += 2u32 * Float::with_val(prec, &l * &m) * polylog(2, &one_minus, ctx)?;
    let m2 = Float::with_val(prec, m.square_ref());
    rhs -= Float::with_val(prec, &zeta2 * &m2);
    let l2 = Float::with_val(prec, l.square_ref());
    let bracket = 6u32 * l2 + 4u32 * Float::with_val(prec, &l * &m) - Float::with_val(prec, &m2);
    rhs += m2 * bracket / 12u32;
    let log_factor = if printed {
        -Float::with_val(prec, &m)
    } else {
        Float::with_val(prec, &l - &m)
    };
    rhs += 2u32 * zeta3 * log_factor;
    Ok(rhs)
}

fn landen_integral(x: &Float, ctx: &PrecisionContext) -> Result<Float, SpecialError> {
    let prec = ctx.prec();
    integral_to(
        |t| {
            let lt = Float::with_val(prec, t.ln_ref());
            let l1 = ln_one_minus(t, prec);
            let one_minus = Float::with_val(prec, 1u32 - t);
            lt.square() * l1 / one_minus
        },
        x,
        ctx,
    )
}

/// `|∫_0^x ln²t ln(1-t)/(1-t) dt - closed form|` for `0 < x < 1`.
pub fn li4_landen_residual(x: &HpReal, ctx: &PrecisionContext) -> Result<HpReal, SpecialError> {
    let rhs = landen_log_integral_closed_form(x, false, ctx)?;
    Ok((landen_integral(x, ctx)? - rhs).abs())
}

/// Same residual against the `ln(1/(1-x))` variant; equals `2 ζ(3) |ln x|`.
pub fn li4_landen_printed_residual(
    x: &HpReal,
    ctx: &PrecisionContext,
) -> Result<HpReal, SpecialError> {
    let rhs = landen_log_integral_closed_form(x, true, ctx)?;
    Ok((landen_integral(x, ctx)? - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numctx::make_context;

    fn tol(ctx: &PrecisionContext) -> Float {
        ctx.pow10_neg(ctx.digits() - 5)
    }

    #[test]
    fn lewin_examples() {
        let ctx = make_context(30).unwrap();
        for x in [0.5, 0.1] {
            assert!(li4_lewin_residual(&ctx.real(x), &ctx).unwrap() < tol(&ctx));
        }
        for x in [0.5, 0.9, 0.01] {
            assert!(li4_lewin2_residual(&ctx.real(x), &ctx).unwrap() < tol(&ctx));
        }
    }

    #[test]
    fn landen_examples() {
        let ctx = make_context(30).unwrap();
        for x in [0.5, 0.25, 0.75] {
            assert!(
                li4_landen_residual(&ctx.real(x), &ctx).unwrap() < tol(&ctx),
                "x = {x}"
            );
        }
    }

    #[test]
    fn printed_landen_form_misses_zeta3_log_term() {
        let ctx = make_context(30).unwrap();
        let x = ctx.real(0.5);
        let r = li4_landen_printed_residual(&x, &ctx).unwrap();
        let expected = 2u32 * zeta_int(3, &ctx).unwrap() * ctx.ln2();
        let d = Float::with_val(ctx.prec(), &r - &expected).abs();
        assert!(d < tol(&ctx), "{r}");
    }

    #[test]
    fn domain_checks() {
        let ctx = make_context(20).unwrap();
        assert!(li4_lewin_residual(&ctx.real(0), &ctx).is_err());
        assert!(li4_lewin2_residual(&ctx.real(1), &ctx).is_err());
        assert!(li4_landen_residual(&ctx.real(1.5), &ctx).is_err());
    }
}
