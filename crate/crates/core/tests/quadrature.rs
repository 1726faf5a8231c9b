use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;

use zetaint_core::discovery::{moment_integrand, MomentForm};
use zetaint_core::numctx::ln_one_minus;
use zetaint_core::quadrature::{integrate_finite, integrate_half_line, integrate_real_line};
use zetaint_core::{make_context, PrecisionContext, QuadConfig, QuadResult};

type Case = (
    &'static str,
    Box<dyn Fn(&PrecisionContext, &QuadConfig) -> QuadResult>,
    Box<dyn Fn(&PrecisionContext) -> Float>,
);

fn pi_pow(ctx: &PrecisionContext, k: u32, num: u32, den: u32) -> Float {
    Float::with_val(ctx.prec(), ctx.pi().pow(k)) * num / den
}

/// Integrals with known values covering all three engines.
fn corpus() -> Vec<Case> {
    vec![
        (
            "ln t on (0,1)",
            Box::new(|ctx, cfg| {
                let p = ctx.prec();
                integrate_finite(
                    |t| Float::with_val(p, t.ln_ref()),
                    &ctx.real(0),
                    &ctx.real(1),
                    cfg,
                    ctx,
                )
                .unwrap()
            }),
            Box::new(|ctx| ctx.real(-1)),
        ),
        (
            "t^-1/2 on (0,1)",
            Box::new(|ctx, cfg| {
                let p = ctx.prec();
                integrate_finite(
                    |t| Float::with_val(p, t.recip_sqrt_ref()),
                    &ctx.real(0),
                    &ctx.real(1),
                    cfg,
                    ctx,
                )
                .unwrap()
            }),
            Box::new(|ctx| ctx.real(2)),
        ),
        (
            "ln^3(1-t)/t on (0,1)",
            Box::new(|ctx, cfg| {
                let p = ctx.prec();
                integrate_finite(
                    |t| ln_one_minus(t, p).pow(3u32) / t,
                    &ctx.real(0),
                    &ctx.real(1),
                    cfg,
                    ctx,
                )
                .unwrap()
            }),
            Box::new(|ctx| -pi_pow(ctx, 4, 6, 90)),
        ),
        (
            "e^-t on (0,inf)",
            Box::new(|ctx, cfg| {
                let p = ctx.prec();
                integrate_half_line(|t| Float::with_val(p, -t).exp(), cfg, ctx).unwrap()
            }),
            Box::new(|ctx| ctx.real(1)),
        ),
        (
            "t^3/(e^t-1) on (0,inf)",
            Box::new(|ctx, cfg| {
                let p = ctx.prec();
                integrate_half_line(
                    |t| Float::with_val(p, t.pow(3u32)) / Float::with_val(p, t.exp_m1_ref()),
                    cfg,
                    ctx,
                )
                .unwrap()
            }),
            Box::new(|ctx| pi_pow(ctx, 4, 1, 15)),
        ),
        (
            "e^-z^2 on R",
            Box::new(|ctx, cfg| {
                let p = ctx.prec();
                integrate_real_line(|z| (-Float::with_val(p, z.square_ref())).exp(), cfg, ctx)
                    .unwrap()
            }),
            Box::new(|ctx| Float::with_val(ctx.prec(), ctx.pi().sqrt_ref())),
        ),
        (
            "sech z on R",
            Box::new(|ctx, cfg| {
                let p = ctx.prec();
                integrate_real_line(|z| Float::with_val(p, z.sech_ref()), cfg, ctx).unwrap()
            }),
            Box::new(|ctx| ctx.pi().clone()),
        ),
        (
            "z^2 ln(1+e^z)/(1+e^z) on R",
            Box::new(|ctx, cfg| {
                let p = ctx.prec();
                integrate_real_line(|z| moment_integrand(1, z, p), cfg, ctx).unwrap()
            }),
            Box::new(|ctx| pi_pow(ctx, 4, 7, 90)),
        ),
    ]
}

fn abs_diff(ctx: &PrecisionContext, a: &Float, b: &Float) -> Float {
    Float::with_val(ctx.prec(), a - b).abs()
}

#[test]
fn corpus_reaches_target() {
    for digits in [15, 30, 50] {
        let ctx = make_context(digits).unwrap();
        let cfg = QuadConfig::new(&ctx);
        for (name, run, exact) in corpus() {
            let r = run(&ctx, &cfg);
            let err = abs_diff(&ctx, &r.value, &exact(&ctx));
            assert!(
                err <= cfg.target_abs_err,
                "{name} at {digits} digits: error {err}"
            );
            assert!(r.err_estimate >= 0 && r.levels_used >= 1 && r.evaluations >= 1);
        }
    }
}

#[test]
fn error_estimate_is_honest() {
    let ctx = make_context(40).unwrap();
    let cfg = QuadConfig::new(&ctx);
    // Exact roundoff-level agreement can leave a zero estimate; allow the floor.
    let floor = ctx.pow10_neg(ctx.working_digits() - 5);
    for (name, run, exact) in corpus() {
        let r = run(&ctx, &cfg);
        let err = abs_diff(&ctx, &r.value, &exact(&ctx));
        let allowed = Float::with_val(ctx.prec(), &r.err_estimate * 10u32) + &floor;
        assert!(
            err <= allowed,
            "{name}: error {err} vs estimate {}",
            r.err_estimate
        );
    }
}

#[test]
fn later_levels_are_at_least_as_accurate() {
    let ctx = make_context(40).unwrap();
    let cfg = QuadConfig::new(&ctx);
    // Tails are cut once terms drop below target / 100, so errors under that
    // are noise, not regressions.
    let floor = Float::with_val(ctx.prec(), &cfg.target_abs_err / 100u32);
    for (name, run, exact) in corpus() {
        let r = run(&ctx, &cfg);
        let x = exact(&ctx);
        let errs: Vec<Float> = r.history.iter().map(|h| abs_diff(&ctx, h, &x)).collect();
        for k in 1..errs.len().saturating_sub(1) {
            let later = &errs[k + 1];
            assert!(
                later <= &errs[k] || *later <= floor,
                "{name}: level {k} error {} then {later}",
                errs[k]
            );
        }
    }
}

#[test]
fn moment_forms_agree_to_ten_targets() {
    let ctx = make_context(30).unwrap();
    let cfg = QuadConfig::new(&ctx);
    let tol = Float::with_val(ctx.prec(), &cfg.target_abs_err * 10u32);
    for p in 0..=3 {
        let vals: Vec<Float> = MomentForm::ALL
            .iter()
            .map(|f| {
                zetaint_core::discovery::moment_integral(p, *f, &cfg, &ctx)
                    .unwrap()
                    .value
            })
            .collect();
        for i in 0..3 {
            for j in i + 1..3 {
                let d = abs_diff(&ctx, &vals[i], &vals[j]);
                // Relative for large p, since |I(p)| grows quickly.
                let scale = Float::with_val(ctx.prec(), vals[i].abs_ref()).max(&ctx.real(1));
                assert!(
                    d <= Float::with_val(ctx.prec(), &tol * &scale),
                    "p = {p}, forms {i} {j}: {d}"
                );
            }
        }
    }
}

#[test]
fn results_are_deterministic() {
    let ctx = make_context(30).unwrap();
    let cfg = QuadConfig::new(&ctx);
    let (_, run, _) = &corpus()[2];
    let a = run(&ctx, &cfg);
    let b = run(&ctx, &cfg);
    assert_eq!(a.value, b.value);
    assert_eq!(a.evaluations, b.evaluations);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadrature_is_linear(alpha in -5.0f64..5.0, beta in -5.0f64..5.0, a in -2.0f64..2.0, b in 0.1f64..6.0) {
        let ctx = make_context(30).unwrap();
        let cfg = QuadConfig::new(&ctx);
        let p = ctx.prec();
        let (zero, one) = (ctx.real(0), ctx.real(1));
        let f = |t: &Float| Float::with_val(p, t * a).exp();
        let g = |t: &Float| Float::with_val(p, t * b).cos();
        let combined = integrate_finite(|t| f(t) * alpha + g(t) * beta, &zero, &one, &cfg, &ctx).unwrap().value;
        let fi = integrate_finite(f, &zero, &one, &cfg, &ctx).unwrap().value;
        let gi = integrate_finite(g, &zero, &one, &cfg, &ctx).unwrap().value;
        let separate = fi * alpha + gi * beta;
        let d = abs_diff(&ctx, &combined, &separate);
        prop_assert!(d <= Float::with_val(p, &cfg.target_abs_err * 10u32), "difference {}", d);
    }
}
