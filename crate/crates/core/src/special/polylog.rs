//! Polylogarithm `Li_s(z) = Σ z^k / k^s` for integer order on `[-1, 1]`.
//!
//! * `|z| <= 1/2`: the defining series with a geometric tail bound;
//! * `1/2 < z < 1`: expansion in `μ = ln z` around `z = 1`, whose
//!   coefficients are `ζ(s-k)` (Bernoulli numbers for `k >= s`);
//! * `-1 < z < -1/2`: Cohen–Rodriguez Villegas–Zagier acceleration of the
//!   alternating series;
//! * `z = ±1`: `ζ(s)` and `-η(s)`.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::zeta::{eta, zeta_int};
use super::SpecialError;
use crate::numctx::{bernoulli_number, HpReal, PrecisionContext};
use crate::quadrature::{integrate_half_line, QuadConfig};

#[derive(Debug, Clone)]
pub struct PolylogPoint {
    pub order: u32,
    pub argument: HpReal,
    pub value: HpReal,
}

impl PolylogPoint {
    pub fn evaluate(
        order: u32,
        argument: HpReal,
        ctx: &PrecisionContext,
    ) -> Result<Self, SpecialError> {
        let value = polylog(order, &argument, ctx)?;
        Ok(Self {
            order,
            argument,
            value,
        })
    }
}

/// `Li_s(z)` for `s >= 1` and `-1 <= z <= 1`.
pub fn polylog(s: u32, z: &HpReal, ctx: &PrecisionContext) -> Result<HpReal, SpecialError> {
    if s == 0 {
        return Err(SpecialError::Usage("polylog order must be >= 1".into()));
    }
    if !(z.is_finite() && *z >= -1 && *z <= 1) {
        return Err(SpecialError::Usage(format!(
            "polylog argument must lie in [-1, 1], got {}",
            z.to_string_radix(10, Some(10))
        )));
    }
    let prec = ctx.prec();
    if z.is_zero() {
        return Ok(Float::with_val(prec, 0));
    }
    if s == 1 {
        if *z == 1 {
            return Err(SpecialError::Divergent);
        }
        return Ok(-Float::with_val(prec, -z).ln_1p());
    }
    if *z == 1 {
        return zeta_int(s, ctx);
    }
    if *z == -1 {
        return Ok(-eta(s, ctx)?);
    }
    let guard = prec + 16;
    let z = Float::with_val(guard, z);
    let value = if Float::with_val(guard, z.abs_ref()) <= 0.5 {
        direct_series(s, &z, guard)
    } else if z > 0 {
        log_series(s, &z, guard, ctx)?
    } else {
        -alternating_series(s, &Float::with_val(guard, -&z), guard)
    };
    Ok(Float::with_val(prec, value))
}

fn direct_series(s: u32, z: &Float, prec: u32) -> Float {
    let eps = Float::with_val(prec, 1) >> (prec + 4);
    let one_minus = Float::with_val(prec, 1u32 - Float::with_val(prec, z.abs_ref()));
    let mut sum = Float::with_val(prec, 0);
    let mut power = Float::with_val(prec, 1);
    let mut k = 1u32;
    loop {
        power *= z;
        sum += Float::with_val(prec, &power / Float::with_val(prec, k).pow(s));
        // tail <= |z|^{k+1} / ((k+1)^s (1 - |z|))
        let next = Float::with_val(prec, &power * z).abs();
        let tail = next / Float::with_val(prec, k + 1).pow(s) / &one_minus;
        if tail < eps {
            return sum;
        }
        k += 1;
    }
}

/// `Li_s(e^μ) = Σ_{k≠s-1} ζ(s-k) μ^k/k! + μ^{s-1}/(s-1)! (H_{s-1} - ln(-μ))`.
fn log_series(s: u32, z: &Float, prec: u32, ctx: &PrecisionContext) -> Result<Float, SpecialError> {
    let eps = Float::with_val(prec, 1) >> (prec + 4);
    let mu = Float::with_val(prec, z.ln_ref());
    let mut sum = Float::with_val(prec, 0);
    // μ^k / k!
    let mut scaled = Float::with_val(prec, 1);
    for k in 0..s - 1 {
        if k > 0 {
            scaled *= &mu;
            scaled /= k;
        }
        sum += Float::with_val(prec, zeta_int(s - k, ctx)?) * &scaled;
    }
    if s > 1 {
        scaled *= &mu;
        scaled /= s - 1;
    }
    let harmonic: Rational = (1..s).map(|j| Rational::from((1, j))).sum();
    let log_neg_mu = Float::with_val(prec, -&mu).ln();
    sum += Float::with_val(
        prec,
        &scaled * (Float::with_val(prec, &harmonic) - log_neg_mu),
    );
    let mut k = s;
    loop {
        scaled *= &mu;
        scaled /= k;
        let m = k - s;
        // ζ(-m) = (-1)^m B_{m+1} / (m+1)
        let b = bernoulli_number(m as usize + 1);
        if *b.numer() != 0 {
            let mut zeta_neg = b / Integer::from(m + 1);
            if m % 2 == 1 {
                zeta_neg = -zeta_neg;
            }
            let term = Float::with_val(prec, &zeta_neg) * &scaled;
            let small = Float::with_val(prec, term.abs_ref()) < eps;
            sum += term;
            if small && k > s + 1 {
                return Ok(sum);
            }
        }
        k += 1;
    }
}

/// `Σ_{j>=0} (-1)^j y^{j+1}/(j+1)^s` for `0 < y <= 1`.
fn alternating_series(s: u32, y: &Float, prec: u32) -> Float {
    let rate = (3.0 + 8f64.sqrt()).ln();
    let n = ((f64::from(prec) + 8.0) * std::f64::consts::LN_2 / rate).ceil() as u32 + 2;
    let root = Float::with_val(prec, 8).sqrt() + 3u32;
    let mut d = root.pow(n);
    d = Float::with_val(prec, &d + Float::with_val(prec, d.recip_ref())) / 2u32;
    let mut b = Float::with_val(prec, -1);
    let mut c = Float::with_val(prec, -&d);
    let mut sum = Float::with_val(prec, 0);
    let mut power = Float::with_val(prec, 1);
    for k in 0..n {
        power *= y;
        let a = Float::with_val(prec, &power / Float::with_val(prec, k + 1).pow(s));
        c = Float::with_val(prec, &b - &c);
        sum += Float::with_val(prec, &c * &a);
        let (ki, ni) = (i64::from(k), i64::from(n));
        b *= 2 * (ki + ni) * (ki - ni);
        b /= (2 * ki + 1) * (ki + 1);
    }
    sum / d
}

/// `Li_s(-y)` for any `y > 0` from the Fermi–Dirac form
/// `-(y/(s-1)!) ∫_0^∞ t^{s-1} e^{-t} / (1 + y e^{-t}) dt`.
pub fn polylog_negative_integral(
    s: u32,
    y: &HpReal,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<HpReal, SpecialError> {
    if s == 0 || !(y.is_finite() && *y > 0) {
        return Err(SpecialError::Usage("need s >= 1 and y > 0".into()));
    }
    let prec = ctx.prec();
    let y_w = Float::with_val(prec, y);
    let r = integrate_half_line(
        |t| {
            let decay = Float::with_val(prec, -t).exp();
            let denom = Float::with_val(prec, &y_w * &decay) + 1u32;
            Float::with_val(prec, t.pow(s - 1)) * decay / denom
        },
        cfg,
        ctx,
    )?;
    let fact = Float::with_val(prec, Integer::from(Integer::factorial(s - 1)));
    Ok(-(r.value * y_w / fact))
}

/// Right side of the inversion formula:
/// `-ln^n(x)/n! + 2 Σ_{r=1}^{⌊n/2⌋} ln^{n-2r}(x)/(n-2r)! Li_{2r}(-1)`.
pub(super) fn inversion_rhs(
    n: u32,
    x: &Float,
    ctx: &PrecisionContext,
) -> Result<Float, SpecialError> {
    let prec = ctx.prec();
    let l = Float::with_val(prec, x.ln_ref());
    let fact = |m: u32| Float::with_val(prec, Integer::from(Integer::factorial(m)));
    let mut rhs = -Float::with_val(prec, (&l).pow(n)) / fact(n);
    for r in 1..=n / 2 {
        let li_neg_one = -eta(2 * r, ctx)?;
        let e = n - 2 * r;
        rhs += 2u32 * Float::with_val(prec, (&l).pow(e)) / fact(e) * li_neg_one;
    }
    Ok(rhs)
}

/// `Li_n(-y)` for `y > 1` through the inversion formula.
pub(super) fn polylog_below_minus_one(
    n: u32,
    y: &Float,
    ctx: &PrecisionContext,
) -> Result<Float, SpecialError> {
    let prec = ctx.prec();
    let inv = Float::with_val(prec, y.recip_ref());
    let mirrored = polylog(n, &(-inv), ctx)?;
    let rhs = inversion_rhs(n, y, ctx)?;
    Ok(if n % 2 == 0 {
        rhs - mirrored
    } else {
        rhs + mirrored
    })
}

/// `|Li_n(-x) + (-1)^n Li_n(-1/x) - rhs(x)|`, with whichever argument lies
/// below `-1` evaluated by quadrature rather than by the formula itself.
pub fn polylog_inversion_residual(
    n: u32,
    x: &HpReal,
    ctx: &PrecisionContext,
) -> Result<HpReal, SpecialError> {
    if n < 2 || !(x.is_finite() && *x > 0) {
        return Err(SpecialError::Usage("need n >= 2 and x > 0".into()));
    }
    let prec = ctx.prec();
    let cfg = QuadConfig::new(ctx).with_target(ctx.pow10_neg(ctx.digits() + 2));
    let eval = |y: &Float| -> Result<Float, SpecialError> {
        if *y <= 1 {
            polylog(n, &Float::with_val(prec, -y), ctx)
        } else {
            polylog_negative_integral(n, y, &cfg, ctx)
        }
    };
    let direct = eval(&Float::with_val(prec, x))?;
    let mirrored = eval(&Float::with_val(prec, x.recip_ref()))?;
    let lhs = if n % 2 == 0 {
        direct + mirrored
    } else {
        direct - mirrored
    };
    Ok((lhs - inversion_rhs(n, x, ctx)?).abs())
}
