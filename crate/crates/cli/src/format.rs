//! Text renderings shared by every output format.

use rug::float::Round;
use rug::{Float, Rational};

/// Significant digits used for residuals and tolerances.
pub const SHORT_DIGITS: usize = 6;

/// `x` in scientific notation with exactly `digits` significant digits,
/// rounded to nearest with ties to even.
pub fn decimal(x: &Float, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    if x.is_zero() {
        let zeros = "0".repeat(digits.saturating_sub(1));
        return if zeros.is_empty() {
            "0e0".into()
        } else {
            format!("0.{zeros}e0")
        };
    }
    let (negative, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
    // value = 0.mantissa × 10^exp
    let exp = exp.unwrap_or(0) - 1;
    let sign = if negative { "-" } else { "" };
    let (head, tail) = mantissa.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

/// Six significant digits, for residuals and tolerances.
pub fn short(x: &Float) -> String {
    decimal(x, SHORT_DIGITS)
}

/// `num/den`, or the bare integer when `den = 1`.
pub fn rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
