use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

use zetaint_core::numctx::{bernoulli_number, bernoulli_polynomial_periodic};
use zetaint_core::special::{
    eta, li4_landen_residual, li4_lewin2_residual, li4_lewin_residual, polylog,
    polylog_inversion_residual, zeta_euler_maclaurin, zeta_even, MAX_EM_ORDER,
};
use zetaint_core::{make_context, PrecisionContext};

fn close(ctx: &PrecisionContext, a: &Float, b: &Float, tol: &Float) -> bool {
    Float::with_val(ctx.prec(), a - b).abs() <= *tol
}

#[test]
fn closed_form_matches_euler_maclaurin() {
    let ctx = make_context(50).unwrap();
    for two_k in [2u32, 4, 6, 8, 10] {
        let closed = zeta_even(two_k, &ctx).unwrap().value;
        let em = zeta_euler_maclaurin(&ctx.real(two_k), MAX_EM_ORDER, 40, &ctx)
            .unwrap()
            .value;
        assert!(close(&ctx, &closed, &em, &ctx.epsilon()), "zeta({two_k})");
    }
}

#[test]
fn euler_maclaurin_small_examples() {
    // At (order 8, N = 20) the remainder bound is 6.5e-14 for s = 2 and
    // 2.4e-15 for s = 4.
    for (s, digits) in [(2u32, 13), (4, 14)] {
        let ctx = make_context(digits).unwrap();
        let em = zeta_euler_maclaurin(&ctx.real(s), 8, 20, &ctx)
            .unwrap()
            .value;
        let closed = zeta_even(s, &ctx).unwrap().value;
        assert!(close(&ctx, &em, &closed, &ctx.epsilon()), "s = {s}");
    }
    let ctx = make_context(15).unwrap();
    let z3 = zeta_euler_maclaurin(&ctx.real(3), 8, 30, &ctx)
        .unwrap()
        .value;
    // Direct summation with the integral tail bound, at high precision.
    let hp = 300;
    let mut direct = Float::with_val(hp, 0);
    let n = 200_000u32;
    for k in (1..=n).rev() {
        direct += Float::with_val(hp, k).pow(-3i32);
    }
    // Σ_{k>n} k^-3 lies between 1/(2(n+1)^2) and 1/(2n^2).
    let tail_hi = Float::with_val(hp, n).square().recip() / 2u32;
    let tail_lo = Float::with_val(hp, n + 1).square().recip() / 2u32;
    let mid = Float::with_val(hp, &tail_hi + &tail_lo) / 2u32 + &direct;
    let half_width = Float::with_val(hp, &tail_hi - &tail_lo) / 2u32;
    assert!(half_width < 1e-16);
    assert!(Float::with_val(hp, &z3 - &mid).abs() < 1e-15);
}

#[test]
fn inversion_residuals() {
    for digits in [20, 30] {
        let ctx = make_context(digits).unwrap();
        for n in 2..=4 {
            for x in [0.5, 1.0, 2.0, 5.0] {
                let r = polylog_inversion_residual(n, &ctx.real(x), &ctx).unwrap();
                assert!(r < ctx.epsilon(), "n = {n}, x = {x}: {r}");
            }
        }
    }
}

#[test]
fn eta_is_minus_polylog_at_minus_one() {
    let ctx = make_context(40).unwrap();
    for n in 2..=12 {
        let sum = eta(n, &ctx).unwrap() + polylog(n, &ctx.real(-1), &ctx).unwrap();
        assert!(sum.abs() <= ctx.epsilon(), "n = {n}");
    }
}

#[test]
fn even_bernoulli_signs() {
    for n in (2..=60).step_by(2) {
        let b = bernoulli_number(n);
        let positive = (n / 2) % 2 == 1;
        assert_eq!(b > 0, positive, "B_{n}");
    }
}

#[test]
fn rational_roundtrip() {
    let a = Rational::from((279, 2));
    let c = Rational::from((-804825, 7));
    assert_eq!(Rational::from(&a + &c) - &c, a);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn duplication_identity(s in 2u32..=4, z in 0.001f64..0.999) {
        let ctx = make_context(30).unwrap();
        let x = ctx.real(z);
        let lhs = polylog(s, &x, &ctx).unwrap() + polylog(s, &Float::with_val(ctx.prec(), -&x), &ctx).unwrap();
        let sq = Float::with_val(ctx.prec(), x.square_ref());
        let rhs = polylog(s, &sq, &ctx).unwrap() >> (s - 1);
        prop_assert!(close(&ctx, &lhs, &rhs, &ctx.epsilon()), "s = {}, z = {}", s, z);
    }

    #[test]
    fn periodic_bernoulli_has_period_one(n in 1usize..=40, x in 0.0f64..5.0) {
        let ctx = make_context(30).unwrap();
        let a = bernoulli_polynomial_periodic(n, &ctx.real(x), &ctx);
        let b = bernoulli_polynomial_periodic(n, &(ctx.real(x) + 1u32), &ctx);
        let scale = Float::with_val(ctx.prec(), a.abs_ref()).max(&ctx.real(1));
        prop_assert!(close(&ctx, &a, &b, &(ctx.epsilon() * scale)));
    }

    #[test]
    fn exact_rational_roundtrip(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
        let x = Rational::from((a, b));
        let y = Rational::from((c, d));
        prop_assert_eq!(Rational::from(&x + &y) - &y, x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn lewin_residuals_vanish(x in 0.01f64..0.99) {
        let ctx = make_context(30).unwrap();
        let tol = ctx.pow10_neg(ctx.digits() - 5);
        let xr = ctx.real(x);
        prop_assert!(li4_lewin_residual(&xr, &ctx).unwrap() < tol);
        prop_assert!(li4_lewin2_residual(&xr, &ctx).unwrap() < tol);
        prop_assert!(li4_landen_residual(&xr, &ctx).unwrap() < tol);
    }
}
