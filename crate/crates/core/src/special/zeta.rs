//! Riemann zeta and Dirichlet eta at real arguments above 1.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::SpecialError;
use crate::numctx::{bernoulli_number, HpReal, PrecisionContext};
use crate::quadrature::{integrate_half_line, QuadConfig};

/// Largest even argument accepted by [`zeta_even`].
pub const MAX_EVEN_ARGUMENT: u32 = 200;
/// Largest Euler-Maclaurin order accepted by [`zeta_euler_maclaurin`].
pub const MAX_EM_ORDER: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMethod {
    BernoulliClosedForm,
    EulerMaclaurin,
    MellinQuadrature,
}

#[derive(Debug, Clone)]
pub struct ZetaValue {
    pub argument: HpReal,
    pub value: HpReal,
    pub method: ZetaMethod,
    /// `r` with `ζ(2k) = r π^{2k}`, present for the closed form only.
    pub pi_coefficient: Option<Rational>,
}

/// Exact `r` with `ζ(2k) = r π^{2k}`: `|B_{2k}| 2^{2k} / (2 (2k)!)`.
pub fn zeta_even_coefficient(two_k: u32) -> Result<Rational, SpecialError> {
    if two_k < 2 || two_k % 2 == 1 || two_k > MAX_EVEN_ARGUMENT {
        return Err(SpecialError::Usage(format!(
            "closed form needs an even argument in 2..={MAX_EVEN_ARGUMENT}, got {two_k}"
        )));
    }
    let b = bernoulli_number(two_k as usize).abs();
    let fact = Integer::from(Integer::factorial(two_k));
    Ok(b * (Integer::from(1) << two_k) / (fact * 2u32))
}

/// `ζ(2k)` from the Bernoulli closed form.
pub fn zeta_even(two_k: u32, ctx: &PrecisionContext) -> Result<ZetaValue, SpecialError> {
    let r = zeta_even_coefficient(two_k)?;
    let value = ctx.rational(&r) * Float::with_val(ctx.prec(), ctx.pi().pow(two_k));
    Ok(ZetaValue {
        argument: ctx.real(two_k),
        value,
        method: ZetaMethod::BernoulliClosedForm,
        pi_coefficient: Some(r),
    })
}

/// Rising factorial `(s)_m` at working precision.
fn rising(s: &Float, m: u32, prec: u32) -> Float {
    let mut acc = Float::with_val(prec, 1);
    for j in 0..m {
        acc *= Float::with_val(prec, s + j);
    }
    acc
}

/// Bound on `(s)_n/n! |∫_N^∞ B_n({x}) x^{-s-n} dx|`, using `|B_n({x})| <= |B_n|`.
pub fn euler_maclaurin_remainder_bound(s: &Float, order: u32, split: u32, prec: u32) -> Float {
    let b = Float::with_val(prec, bernoulli_number(order as usize).abs());
    let fact = Float::with_val(prec, Integer::from(Integer::factorial(order)));
    let exponent = Float::with_val(prec, s + order) - 1u32;
    let n_pow = Float::with_val(prec, split).pow(Float::with_val(prec, -&exponent));
    rising(s, order, prec) / fact * b * n_pow / exponent
}

/// Euler-Maclaurin value of `ζ(s)` split at `split`.
///
/// `Σ_{j<N} j^-s` is summed directly and the boundary corrections through
/// `B_order` are added at `N`. The remainder integral is bounded, not
/// evaluated; if the bound exceeds `10^-digits` the call fails.
pub fn zeta_euler_maclaurin(
    s: &HpReal,
    order: u32,
    split: u32,
    ctx: &PrecisionContext,
) -> Result<ZetaValue, SpecialError> {
    let (value, bound) = zeta_euler_maclaurin_truncated(s, order, split, ctx)?;
    if bound > ctx.epsilon() {
        return Err(SpecialError::Accuracy {
            bound: bound.to_f64(),
            advice: format!("increase the split point above {split} or the order above {order}"),
        });
    }
    Ok(ZetaValue {
        argument: s.clone(),
        value,
        method: ZetaMethod::EulerMaclaurin,
        pi_coefficient: None,
    })
}

/// The truncated Euler-Maclaurin sum and its remainder bound, with no
/// accuracy requirement.
pub fn zeta_euler_maclaurin_truncated(
    s: &HpReal,
    order: u32,
    split: u32,
    ctx: &PrecisionContext,
) -> Result<(HpReal, HpReal), SpecialError> {
    if !(s.is_finite() && *s > 1) {
        return Err(SpecialError::Usage("Euler-Maclaurin needs s > 1".into()));
    }
    if order < 2 || order % 2 == 1 || order > MAX_EM_ORDER {
        return Err(SpecialError::Usage(format!(
            "order must be even in 2..={MAX_EM_ORDER}, got {order}"
        )));
    }
    if split < 1 {
        return Err(SpecialError::Usage("split point must be >= 1".into()));
    }
    let prec = ctx.prec() + 16;
    let bound = euler_maclaurin_remainder_bound(s, order, split, prec);
    let value = Float::with_val(ctx.prec(), euler_maclaurin_sum(s, order, split, prec));
    Ok((value, Float::with_val(ctx.prec(), bound)))
}

fn euler_maclaurin_sum(s: &Float, order: u32, split: u32, prec: u32) -> Float {
    let neg_s = Float::with_val(prec, -s);
    let mut acc = Float::with_val(prec, 0);
    for j in 1..split {
        acc += Float::with_val(prec, j).pow(&neg_s);
    }
    let n = Float::with_val(prec, split);
    let n_neg_s = Float::with_val(prec, (&n).pow(&neg_s));
    let s_minus_1 = Float::with_val(prec, s - 1u32);
    acc += Float::with_val(prec, &n_neg_s * &n) / &s_minus_1;
    acc += Float::with_val(prec, &n_neg_s / 2u32);
    // B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}
    let n_sq = Float::with_val(prec, n.square_ref());
    let mut power = Float::with_val(prec, &n_neg_s / &n);
    let mut poch = Float::with_val(prec, s);
    let mut fact = Integer::from(2);
    for k in 1..=order / 2 {
        let two_k = 2 * k;
        if k > 1 {
            poch *= Float::with_val(prec, s + (two_k - 3)) * Float::with_val(prec, s + (two_k - 2));
            power /= &n_sq;
            fact *= Integer::from((two_k - 1) * two_k);
        }
        let coeff = Float::with_val(
            prec,
            bernoulli_number(two_k as usize) / Rational::from(&fact),
        );
        acc += coeff * &poch * &power;
    }
    acc
}

/// `ζ(s)` for integer `s >= 2` at working precision, choosing the method
/// and Euler-Maclaurin parameters automatically.
pub fn zeta_int(s: u32, ctx: &PrecisionContext) -> Result<HpReal, SpecialError> {
    if s < 2 {
        return Err(SpecialError::Usage(format!("zeta needs s >= 2, got {s}")));
    }
    if s % 2 == 0 && s <= MAX_EVEN_ARGUMENT {
        return Ok(zeta_even(s, ctx)?.value);
    }
    let prec = ctx.prec() + 16;
    let sf = Float::with_val(prec, s);
    let target = ctx.pow10_neg(ctx.working_digits());
    let order = MAX_EM_ORDER;
    let mut split = 4u32;
    while euler_maclaurin_remainder_bound(&sf, order, split, prec) > target {
        split += 4;
    }
    Ok(Float::with_val(
        ctx.prec(),
        euler_maclaurin_sum(&sf, order, split, prec),
    ))
}

/// `ζ(s) = 1/(s-1)! ∫_0^∞ t^{s-1}/(e^t - 1) dt` for integer `s >= 2`.
pub fn zeta_mellin(
    s: u32,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<ZetaValue, SpecialError> {
    if s < 2 {
        return Err(SpecialError::Usage(format!(
            "Mellin form needs s >= 2, got {s}"
        )));
    }
    let prec = ctx.prec();
    let integral = integrate_half_line(
        |t| {
            let num = Float::with_val(prec, t.pow(s - 1));
            num / Float::with_val(prec, t.exp_m1_ref())
        },
        cfg,
        ctx,
    )?;
    let fact = Float::with_val(prec, Integer::from(Integer::factorial(s - 1)));
    Ok(ZetaValue {
        argument: ctx.real(s),
        value: integral.value / fact,
        method: ZetaMethod::MellinQuadrature,
        pi_coefficient: None,
    })
}

/// Dirichlet eta `η(n) = (1 - 2^{1-n}) ζ(n)`.
pub fn eta(n: u32, ctx: &PrecisionContext) -> Result<HpReal, SpecialError> {
    let zeta = zeta_int(n, ctx)?;
    Ok(zeta * ctx.rational(&eta_factor(n)))
}

/// Exact `η(n)/ζ(n) = 1 - 2^{1-n}`.
pub fn eta_factor(n: u32) -> Rational {
    let two_pow = Integer::from(1) << (n - 1);
    Rational::from((two_pow.clone() - 1u32, two_pow))
}
