//! Double-exponential quadrature at arbitrary precision.
//!
//! Three engines share one level-doubling driver:
//!
//! * tanh-sinh for finite intervals, `x = mid + half * tanh(π/2 · sinh t)`;
//! * exp-sinh for `(0, ∞)`, `x = exp(π/2 · sinh t)`;
//! * sinh-sinh for the whole line, `x = sinh(π/2 · sinh t)`.
//!
//! The trapezoid rule in `t` with step `h = 2^-level` converges
//! double-exponentially for integrands analytic in a strip, including those
//! with logarithmic or weak power singularities at finite endpoints. Each
//! level adds only the odd multiples of the new step, so the estimate at
//! level `L` costs about as much as all earlier levels combined.
//!
//! Abscissae are generated at 64 bits above the working precision and cached
//! per `(engine, precision, level)`, which keeps distances to a finite
//! endpoint accurate when the integrand is singular there.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use rug::Float;
use thiserror::Error;

use crate::numctx::{HpReal, PrecisionContext};

const NODE_GUARD_BITS: u32 = 64;
const ACCUMULATOR_GUARD_BITS: u32 = 32;
/// Abscissae are generated for `|t| <= T_MAX`.
const T_MAX: f64 = 6.5;
/// Tail truncation only engages once `|t|` reaches this value.
const T_TRUNCATE_FROM: f64 = 1.0;
const SMALL_RUN: u32 = 3;
pub const MAX_LEVEL_LIMIT: u32 = 20;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid interval: lower limit must be below upper limit")]
    InvalidInterval,
    #[error(
        "no convergence by level {}: best estimate {} with difference {}",
        .0.levels_used,
        .0.value.to_string_radix(10, Some(20)),
        .0.err_estimate.to_string_radix(10, Some(6))
    )]
    NonConvergence(Box<QuadResult>),
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: String },
}

#[derive(Debug, Clone)]
pub struct QuadConfig {
    pub target_abs_err: HpReal,
    pub max_level: u32,
    pub initial_level: u32,
}

impl QuadConfig {
    /// Target `10^-digits`, levels 3 through 12.
    pub fn new(ctx: &PrecisionContext) -> Self {
        Self {
            target_abs_err: ctx.epsilon(),
            max_level: 12,
            initial_level: 3,
        }
    }

    pub fn with_max_level(mut self, max_level: u32) -> Self {
        self.max_level = max_level;
        self
    }

    pub fn with_initial_level(mut self, initial_level: u32) -> Self {
        self.initial_level = initial_level;
        self
    }

    pub fn with_target(mut self, target_abs_err: HpReal) -> Self {
        self.target_abs_err = target_abs_err;
        self
    }

    pub fn validate(&self) -> Result<(), QuadError> {
        if !(1 <= self.initial_level
            && self.initial_level <= self.max_level
            && self.max_level <= MAX_LEVEL_LIMIT)
        {
            return Err(QuadError::InvalidConfig(format!(
                "need 1 <= initial_level ({}) <= max_level ({}) <= {MAX_LEVEL_LIMIT}",
                self.initial_level, self.max_level
            )));
        }
        if !(self.target_abs_err.is_finite() && self.target_abs_err > 0) {
            return Err(QuadError::InvalidConfig(
                "target_abs_err must be positive and finite".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: HpReal,
    /// Absolute difference between the last two level estimates.
    pub err_estimate: HpReal,
    pub levels_used: u32,
    pub evaluations: u64,
    /// Estimate after each level, starting with the initial level.
    pub history: Vec<HpReal>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Engine {
    TanhSinh,
    ExpSinh,
    SinhSinh,
}

/// One abscissa pair `±t`.
///
/// For tanh-sinh `pos` holds the complement `1 - tanh(u)` and `w_pos` the
/// weight on the unit interval `[-1, 1]`; the map to `[a, b]` happens at
/// evaluation time. For the other engines the fields are literal.
#[derive(Debug)]
struct Node {
    t: f64,
    pos: Float,
    neg: Float,
    w_pos: Float,
    w_neg: Float,
}

type NodeKey = (Engine, u32, u32);

static NODE_CACHE: LazyLock<Mutex<HashMap<NodeKey, Arc<Vec<Node>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Abscissae introduced at `level`: the integers `1, 2, ...` at level 0 and
/// the odd multiples of `2^-level` above it.
fn level_nodes(engine: Engine, prec: u32, level: u32) -> Arc<Vec<Node>> {
    let key = (engine, prec, level);
    if let Some(nodes) = NODE_CACHE.lock().expect("node cache poisoned").get(&key) {
        return Arc::clone(nodes);
    }
    let scale = f64::from(1u32 << level);
    let (first, stride) = if level == 0 { (1u64, 1u64) } else { (1, 2) };
    let mut nodes = Vec::new();
    let mut k = first;
    while (k as f64) / scale <= T_MAX {
        let t = (k as f64) / scale;
        nodes.push(make_node(engine, prec, t));
        k += stride;
    }
    let nodes = Arc::new(nodes);
    NODE_CACHE
        .lock()
        .expect("node cache poisoned")
        .entry(key)
        .or_insert_with(|| Arc::clone(&nodes));
    nodes
}

fn make_node(engine: Engine, prec: u32, t: f64) -> Node {
    let tf = Float::with_val(prec, t);
    let half_pi = Float::with_val(prec, rug::float::Constant::Pi) / 2u32;
    let u = Float::with_val(prec, tf.sinh_ref()) * &half_pi;
    let dudt = Float::with_val(prec, tf.cosh_ref()) * &half_pi;
    match engine {
        Engine::TanhSinh => {
            // 1 - tanh(u) = 2 e^{-2u} / (1 + e^{-2u}); sech^2(u) = 4 e^{-2u} / (1 + e^{-2u})^2.
            let e = Float::with_val(prec, &u * -2i32).exp();
            let denom = Float::with_val(prec, 1u32 + &e);
            let complement = Float::with_val(prec, &e * 2u32) / &denom;
            let sech2 = Float::with_val(prec, &e * 4u32) / denom.square();
            let w = dudt * sech2;
            Node {
                t,
                pos: complement.clone(),
                neg: complement,
                w_pos: w.clone(),
                w_neg: w,
            }
        }
        Engine::ExpSinh => {
            let xp = Float::with_val(prec, u.exp_ref());
            let xn = Float::with_val(prec, xp.recip_ref());
            let w_pos = Float::with_val(prec, &dudt * &xp);
            let w_neg = Float::with_val(prec, &dudt * &xn);
            Node {
                t,
                pos: xp,
                neg: xn,
                w_pos,
                w_neg,
            }
        }
        Engine::SinhSinh => {
            let (s, c) = u.sinh_cosh(Float::new(prec));
            let w = dudt * c;
            Node {
                t,
                neg: Float::with_val(prec, -&s),
                pos: s,
                w_pos: w.clone(),
                w_neg: w,
            }
        }
    }
}

/// Interval data needed to map unit tanh-sinh nodes onto `[a, b]`.
struct Mapping {
    engine: Engine,
    a: Float,
    b: Float,
    half: Float,
}

impl Mapping {
    fn center(&self, prec: u32) -> (Float, Float) {
        let half_pi = Float::with_val(prec, rug::float::Constant::Pi) / 2u32;
        match self.engine {
            Engine::TanhSinh => {
                let x = Float::with_val(prec, &self.a + &self.half);
                (x, half_pi * &self.half)
            }
            Engine::ExpSinh => (Float::with_val(prec, 1), half_pi),
            Engine::SinhSinh => (Float::with_val(prec, 0), half_pi),
        }
    }

    /// Returns `None` when the abscissa rounds onto a finite endpoint.
    fn map(&self, node: &Node, positive: bool, prec: u32) -> Option<(Float, Float)> {
        let (raw, w) = if positive {
            (&node.pos, &node.w_pos)
        } else {
            (&node.neg, &node.w_neg)
        };
        match self.engine {
            Engine::TanhSinh => {
                let offset = Float::with_val(prec, &self.half * raw);
                let x = if positive {
                    Float::with_val(prec, &self.b - &offset)
                } else {
                    Float::with_val(prec, &self.a + &offset)
                };
                if x <= self.a || x >= self.b {
                    return None;
                }
                Some((x, Float::with_val(prec, &self.half * w)))
            }
            Engine::ExpSinh | Engine::SinhSinh => Some((raw.clone(), w.clone())),
        }
    }
}

struct Driver<'a, F> {
    f: F,
    mapping: Mapping,
    cfg: &'a QuadConfig,
    ctx: &'a PrecisionContext,
    node_prec: u32,
    acc_prec: u32,
    evaluations: u64,
}

impl<F: Fn(&Float) -> Float> Driver<'_, F> {
    fn eval(&mut self, x: &Float, w: &Float) -> Result<Float, QuadError> {
        self.evaluations += 1;
        let fx = (self.f)(x);
        if !fx.is_finite() {
            return Err(QuadError::NonFinite {
                x: x.to_string_radix(10, Some(25)),
            });
        }
        Ok(Float::with_val(self.acc_prec, w * &fx))
    }

    /// Raw weighted sum over the nodes introduced at `level`, with the
    /// per-direction tail truncation.
    fn sweep(&mut self, level: u32, h: &Float, threshold: &Float) -> Result<Float, QuadError> {
        let nodes = level_nodes(self.mapping.engine, self.node_prec, level);
        let mut sum = Float::with_val(self.acc_prec, 0);
        let mut live = [true, true];
        let mut small = [0u32, 0u32];
        for node in nodes.iter() {
            if !live[0] && !live[1] {
                break;
            }
            for (dir, positive) in [(0usize, true), (1usize, false)] {
                if !live[dir] {
                    continue;
                }
                let Some((x, w)) = self.mapping.map(node, positive, self.node_prec) else {
                    live[dir] = false;
                    continue;
                };
                let term = self.eval(&x, &w)?;
                let scaled = Float::with_val(self.acc_prec, &term * h).abs();
                sum += &term;
                if node.t >= T_TRUNCATE_FROM && scaled < *threshold {
                    small[dir] += 1;
                    if small[dir] >= SMALL_RUN {
                        live[dir] = false;
                    }
                } else {
                    small[dir] = 0;
                }
            }
        }
        Ok(sum)
    }

    fn run(mut self) -> Result<QuadResult, QuadError> {
        self.cfg.validate()?;
        let prec = self.acc_prec;
        let threshold = Float::with_val(prec, &self.cfg.target_abs_err / 100u32);
        let floor = self.ctx.roundoff_floor();
        let step = |level: u32| Float::with_val(prec, 1u32) >> level;

        let (cx, cw) = self.mapping.center(self.node_prec);
        let mut raw = self.eval(&cx, &cw)?;
        let h0 = step(self.cfg.initial_level);
        for level in 0..=self.cfg.initial_level {
            raw += self.sweep(level, &h0, &threshold)?;
        }
        let mut prev = Float::with_val(prec, &raw * &h0);
        let mut history = vec![Float::with_val(self.ctx.prec(), &prev)];
        let mut err = Float::with_val(prec, prev.abs_ref());
        for level in self.cfg.initial_level + 1..=self.cfg.max_level {
            let h = step(level);
            raw += self.sweep(level, &h, &threshold)?;
            let cur = Float::with_val(prec, &raw * &h);
            err = Float::with_val(prec, &cur - &prev).abs();
            history.push(Float::with_val(self.ctx.prec(), &cur));
            let noise = Float::with_val(prec, cur.abs_ref()) * &floor;
            if err <= self.cfg.target_abs_err || err <= noise {
                return Ok(self.finish(cur, err, history));
            }
            prev = cur;
        }
        Err(QuadError::NonConvergence(Box::new(
            self.finish(prev, err, history),
        )))
    }

    fn finish(&self, value: Float, err: Float, history: Vec<Float>) -> QuadResult {
        QuadResult {
            value: Float::with_val(self.ctx.prec(), value),
            err_estimate: Float::with_val(self.ctx.prec(), err),
            levels_used: history.len() as u32,
            evaluations: self.evaluations,
            history,
        }
    }
}

fn driver<'a, F>(
    f: F,
    mapping: Mapping,
    cfg: &'a QuadConfig,
    ctx: &'a PrecisionContext,
) -> Driver<'a, F> {
    Driver {
        f,
        mapping,
        cfg,
        ctx,
        node_prec: ctx.prec() + NODE_GUARD_BITS,
        acc_prec: ctx.prec() + ACCUMULATOR_GUARD_BITS,
        evaluations: 0,
    }
}

/// `∫_a^b f(x) dx` by tanh-sinh. `f` is never evaluated at `a` or `b`.
pub fn integrate_finite<F>(
    f: F,
    a: &HpReal,
    b: &HpReal,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<QuadResult, QuadError>
where
    F: Fn(&Float) -> Float,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(QuadError::InvalidInterval);
    }
    let prec = ctx.prec() + NODE_GUARD_BITS;
    let a = Float::with_val(prec, a);
    let b = Float::with_val(prec, b);
    let half = Float::with_val(prec, &b - &a) / 2u32;
    let mapping = Mapping {
        engine: Engine::TanhSinh,
        a,
        b,
        half,
    };
    driver(f, mapping, cfg, ctx).run()
}

/// `∫_0^∞ f(x) dx` by exp-sinh.
pub fn integrate_half_line<F>(
    f: F,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<QuadResult, QuadError>
where
    F: Fn(&Float) -> Float,
{
    driver(f, unbounded(Engine::ExpSinh, ctx), cfg, ctx).run()
}

/// `∫_{-∞}^{∞} f(x) dx` by sinh-sinh.
pub fn integrate_real_line<F>(
    f: F,
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<QuadResult, QuadError>
where
    F: Fn(&Float) -> Float,
{
    driver(f, unbounded(Engine::SinhSinh, ctx), cfg, ctx).run()
}

fn unbounded(engine: Engine, ctx: &PrecisionContext) -> Mapping {
    let prec = ctx.prec() + NODE_GUARD_BITS;
    Mapping {
        engine,
        a: Float::with_val(prec, 0),
        b: Float::with_val(prec, 0),
        half: Float::with_val(prec, 0),
    }
}
