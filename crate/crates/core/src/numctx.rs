//! Working precision, cached constants and exact Bernoulli machinery.
//!
//! Every numeric routine in the crate takes a [`PrecisionContext`]. The
//! context fixes the number of requested decimal digits plus a block of
//! guard digits, and carries π and ln 2 rounded to the working precision.

use std::sync::{LazyLock, RwLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use thiserror::Error;

/// High-precision real. Values are MPFR floats whose precision is at least
/// the working precision of the context that produced them.
pub type HpReal = Float;
/// Exact fraction, always in lowest terms with a positive denominator.
pub type ExactRational = Rational;
/// Unbounded integer.
pub type ExactInteger = Integer;

pub const MIN_DIGITS: u32 = 10;
pub const MAX_DIGITS: u32 = 10_000;
pub const MIN_GUARD_DIGITS: u32 = 10;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("requested {0} digits; supported range is {MIN_DIGITS}..={MAX_DIGITS}")]
    DigitsOutOfRange(u32),
    #[error("guard digits must be at least {MIN_GUARD_DIGITS}, got {0}")]
    GuardTooSmall(u32),
}

/// Ambient precision for a computation.
///
/// Immutable after construction, so it can be shared freely between threads.
#[derive(Debug, Clone)]
pub struct PrecisionContext {
    digits: u32,
    guard_digits: u32,
    prec: u32,
    pi: HpReal,
    ln2: HpReal,
}

/// Builds a context for `digits` requested decimal digits with the default
/// guard of `max(10, digits / 10)`.
pub fn make_context(digits: u32) -> Result<PrecisionContext, ContextError> {
    PrecisionContext::new(digits)
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self, ContextError> {
        Self::with_guard_digits(digits, MIN_GUARD_DIGITS.max(digits / 10))
    }

    pub fn with_guard_digits(digits: u32, guard_digits: u32) -> Result<Self, ContextError> {
        if !(MIN_DIGITS..=MAX_DIGITS).contains(&digits) {
            return Err(ContextError::DigitsOutOfRange(digits));
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(ContextError::GuardTooSmall(guard_digits));
        }
        let working = digits + guard_digits;
        let prec = (f64::from(working) * BITS_PER_DIGIT).ceil() as u32 + 4;
        Ok(Self {
            digits,
            guard_digits,
            prec,
            pi: Float::with_val(prec, Constant::Pi),
            ln2: Float::with_val(prec, Constant::Log2),
        })
    }

    /// Requested decimal digits.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// `digits + guard_digits`.
    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard_digits
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn pi(&self) -> &HpReal {
        &self.pi
    }

    pub fn ln2(&self) -> &HpReal {
        &self.ln2
    }

    /// A float at working precision.
    pub fn real<T>(&self, value: T) -> HpReal
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec, value)
    }

    /// `10^(-k)` at working precision.
    pub fn pow10_neg(&self, k: u32) -> HpReal {
        let ten = self.real(10);
        ten.pow(-i64::from(k))
    }

    /// Default absolute accuracy target, `10^(-digits)`.
    pub fn epsilon(&self) -> HpReal {
        self.pow10_neg(self.digits)
    }

    /// Relative size of accumulated rounding noise, `10^(-(working - 5))`.
    pub fn roundoff_floor(&self) -> HpReal {
        self.pow10_neg(self.working_digits().saturating_sub(5))
    }

    /// Converts an exact rational to working precision.
    pub fn rational(&self, r: &Rational) -> HpReal {
        Float::with_val(self.prec, r)
    }
}

/// `ln(1 - t)` rounded to `prec`, using every bit of `t`.
///
/// Quadrature abscissae near `t = 1` carry more bits than the working
/// precision; rounding `-t` first would collapse `1 - t` to zero.
pub fn ln_one_minus(t: &Float, prec: u32) -> HpReal {
    let neg = Float::with_val(t.prec(), -t);
    Float::with_val(prec, neg.ln_1p_ref())
}

static BERNOULLI: LazyLock<RwLock<Vec<Rational>>> =
    LazyLock::new(|| RwLock::new(vec![Rational::from(1)]));

/// Exact Bernoulli number `B_n` with `B_1 = -1/2`.
///
/// Values come from the recurrence `sum_{k=0}^{n} C(n+1, k) B_k = 0` and are
/// cached; computing `B_n` fills the cache for every index up to `n`.
pub fn bernoulli_number(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().expect("bernoulli cache poisoned").get(n) {
        return b.clone();
    }
    let mut cache = BERNOULLI.write().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        let value = if m >= 3 && m % 2 == 1 {
            Rational::new()
        } else {
            let mut acc = Rational::new();
            let m1 = Integer::from(m + 1);
            for (k, bk) in cache.iter().enumerate() {
                if *bk.numer() == 0 {
                    continue;
                }
                let c = Integer::from(m1.binomial_ref(k as u32));
                acc += Rational::from(c) * bk;
            }
            -acc / Integer::from(m + 1)
        };
        cache.push(value);
    }
    cache[n].clone()
}

/// Exact `B_0..=B_n`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    bernoulli_number(n);
    BERNOULLI.read().expect("bernoulli cache poisoned")[..=n].to_vec()
}

/// Bernoulli polynomial `B_n(t)` at working precision.
pub fn bernoulli_polynomial(n: usize, t: &Float, ctx: &PrecisionContext) -> HpReal {
    let bs = bernoulli_numbers(n);
    let prec = ctx.prec() + 32;
    let nn = Integer::from(n);
    // Horner in t: coefficient of t^j is C(n, j) B_{n-j}.
    let mut acc = Float::with_val(prec, 0);
    for j in (0..=n).rev() {
        let c = Rational::from(Integer::from(nn.binomial_ref(j as u32))) * &bs[n - j];
        acc *= t;
        acc += Float::with_val(prec, &c);
    }
    Float::with_val(ctx.prec(), &acc)
}

/// `B_n({x})` where `{x} = x - floor(x)`.
pub fn bernoulli_polynomial_periodic(n: usize, x: &Float, ctx: &PrecisionContext) -> HpReal {
    assert!(n >= 1, "periodic Bernoulli polynomial needs n >= 1");
    let prec = ctx.prec().max(x.prec());
    let floor = Float::with_val(prec, x.floor_ref());
    let frac = Float::with_val(prec, x - &floor);
    bernoulli_polynomial(n, &frac, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_constants() {
        let ctx = make_context(50).unwrap();
        assert!(ctx
            .pi()
            .to_string_radix(10, Some(21))
            .starts_with("3.14159265358979323846"));
        assert!(ctx
            .ln2()
            .to_string_radix(10, Some(21))
            .starts_with("6.9314718055994530941"));
        assert_eq!(ctx.guard_digits(), 10);
        assert_eq!(ctx.working_digits(), 60);
    }

    #[test]
    fn context_rejects_out_of_range() {
        assert_eq!(
            make_context(5).unwrap_err(),
            ContextError::DigitsOutOfRange(5)
        );
        assert!(make_context(10_001).is_err());
        assert!(PrecisionContext::with_guard_digits(30, 3).is_err());
        assert_eq!(make_context(500).unwrap().guard_digits(), 50);
    }

    #[test]
    fn cached_pi_matches_machin() {
        let ctx = make_context(200).unwrap();
        let p = ctx.prec() + 20;
        let a = Float::with_val(p, 5).recip().atan();
        let b = Float::with_val(p, 239).recip().atan();
        let machin = Float::with_val(p, 16 * a - 4 * b);
        let diff = Float::with_val(p, &machin - ctx.pi()).abs();
        assert!(diff < ctx.epsilon());
    }

    #[test]
    fn small_bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), 1);
        assert_eq!(bernoulli_number(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli_number(2), Rational::from((1, 6)));
        assert_eq!(bernoulli_number(3), 0);
        assert_eq!(bernoulli_number(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli_number(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli_number(20), Rational::from((-174611, 330)));
    }

    #[test]
    fn even_bernoulli_sign_alternates() {
        for n in (2..=60).step_by(2) {
            let b = bernoulli_number(n);
            let expected = if (n / 2) % 2 == 1 { 1 } else { -1 };
            assert_eq!(b.cmp0() as i32, expected, "B_{n}");
        }
    }

    #[test]
    fn periodic_polynomial_examples() {
        let ctx = make_context(30).unwrap();
        let b1 = bernoulli_polynomial_periodic(1, &ctx.real(0.25), &ctx);
        assert_eq!(b1, -0.25);
        let b2 = bernoulli_polynomial_periodic(2, &ctx.real(0), &ctx);
        let sixth = ctx.rational(&Rational::from((1, 6)));
        assert!(Float::with_val(ctx.prec(), &b2 - &sixth).abs() < ctx.epsilon());
        let b2h = bernoulli_polynomial_periodic(2, &ctx.real(2.5), &ctx);
        let m12 = ctx.rational(&Rational::from((-1, 12)));
        assert!(Float::with_val(ctx.prec(), &b2h - &m12).abs() < ctx.epsilon());
    }

    #[test]
    fn rational_roundtrip() {
        let a = Rational::from((3, 7));
        let c = Rational::from((-11, 13));
        let back = Rational::from(&a + &c) - &c;
        assert_eq!(back, a);
        let r = Rational::from((6, -4));
        assert_eq!(r, Rational::from((-3, 2)));
        assert!(*r.denom() > 0);
    }
}
