//! Ratio-pattern fitting for the moment coefficients and validation of the
//! resulting closed form.
//!
//! Coefficients grow super-exponentially in `p`, but consecutive ratios
//! `c_p / c_{p-1}` are low-degree polynomials in `p`. Fitting the ratio and
//! telescoping the product gives a hypergeometric closed form.

use std::fmt;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use super::{moment_bases, moment_integral, DiscoveryError, MomentForm, MomentRecord};
use crate::numctx::{ExactRational, HpReal, PrecisionContext};
use crate::quadrature::{QuadConfig, QuadError};

/// Polynomial in `p` with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rational::new());
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, p: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::new(), |acc, c| acc * p + c)
    }

    /// The unique polynomial of degree `< points.len()` through `points`.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        // Newton divided differences, then expansion to monomials.
        let n = points.len();
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = Rational::from(&dd[i] - &dd[i - 1]);
                let den = Rational::from(&points[i].0 - &points[i - level].0);
                dd[i] = num / den;
            }
        }
        let mut coeffs = vec![Rational::new(); n.max(1)];
        for i in (0..n).rev() {
            // coeffs = coeffs * (p - x_i) + dd[i]
            let xi = &points[i].0;
            let mut next = vec![Rational::new(); n.max(1)];
            for (j, c) in coeffs.iter().enumerate() {
                if j + 1 < next.len() {
                    next[j + 1] += c;
                }
                next[j] -= Rational::from(c * xi);
            }
            next[0] += &dd[i];
            coeffs = next;
        }
        Self::new(coeffs)
    }

    /// Rational roots with multiplicity, or `None` if the polynomial does
    /// not split into rational linear factors.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        let mut poly = self.coeffs.clone();
        let mut roots = Vec::new();
        while poly.len() > 1 {
            if poly[0] == 0 {
                roots.push(Rational::new());
                poly.remove(0);
                continue;
            }
            let ints = integer_coefficients(&poly);
            let low = ints.first()?.clone().abs();
            let high = ints.last()?.clone().abs();
            let root = divisors(&low)?.into_iter().find_map(|u| {
                divisors(&high)?.into_iter().find_map(|v| {
                    [1i32, -1].into_iter().find_map(|sign| {
                        let cand = Rational::from((Integer::from(&u * sign), v.clone()));
                        (RationalPolynomial::new(poly.clone()).eval(&cand) == 0).then_some(cand)
                    })
                })
            })?;
            poly = deflate(&poly, &root);
            roots.push(root);
        }
        Some(roots)
    }

    /// Product of primitive integer linear factors, e.g. `(2p - 1)(2p + 2)`.
    pub fn factored(&self) -> Option<String> {
        if self.degree() == 0 {
            return None;
        }
        let mut roots = self.rational_roots()?;
        roots.sort_by(|a, b| b.cmp(a));
        let mut leftover = self.coeffs.last()?.clone();
        let mut factors = Vec::new();
        for r in &roots {
            let (num, den) = (r.numer().clone(), r.denom().clone());
            leftover /= Rational::from(den.clone());
            factors.push((den, num));
        }
        if leftover.denom() == &1u32 {
            if let Some(last) = factors.last_mut() {
                let scale = leftover.numer().clone();
                last.0 *= &scale;
                last.1 *= &scale;
                leftover = Rational::from(1);
            }
        }
        let mut out = String::new();
        if leftover != 1 {
            out.push_str(&render_rational(&leftover));
        }
        for (a, b) in factors {
            let lin = RationalPolynomial::new(vec![Rational::from(-b), Rational::from(a)]);
            out.push_str(&format!("({lin})"));
        }
        Some(out)
    }
}

fn integer_coefficients(poly: &[Rational]) -> Vec<Integer> {
    let lcm = poly
        .iter()
        .fold(Integer::from(1), |acc, c| acc.lcm(c.denom()));
    poly.iter()
        .map(|c| Rational::from(c * &lcm).into_numer_denom().0)
        .collect()
}

/// Positive divisors, for values small enough to factor by trial division.
fn divisors(n: &Integer) -> Option<Vec<Integer>> {
    let n = n.to_u64().filter(|&v| v > 0 && v < 1_000_000_000_000)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(Integer::from(d));
            if d * d != n {
                out.push(Integer::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

/// Divides by `(p - root)`.
fn deflate(poly: &[Rational], root: &Rational) -> Vec<Rational> {
    let deg = poly.len() - 1;
    let mut out = vec![Rational::new(); deg];
    let mut carry = Rational::new();
    for i in (1..=deg).rev() {
        carry = carry * root + &poly[i];
        out[i - 1] = carry.clone();
    }
    out
}

pub(crate) fn render_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 && !(first && power == 0) {
                continue;
            }
            let negative = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let unit = mag == 1 && power > 0;
            if !unit {
                write!(f, "{}", render_rational(&mag))?;
            }
            match power {
                0 => {}
                1 => write!(f, "p")?,
                _ => write!(f, "p^{power}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Zeta,
    Eta,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Zeta => "zeta",
            Basis::Eta => "eta",
        }
    }
}

/// `𝓘(p) = c_p · basis(2p+2)` with `c_p = c_0 Π_{k=1}^{p} q(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub basis: Basis,
    pub c0: ExactRational,
    pub ratio: RationalPolynomial,
}

impl ClosedForm {
    pub fn coefficient(&self, p: u32) -> Rational {
        (1..=p).fold(self.c0.clone(), |acc, k| {
            acc * self.ratio.eval(&Rational::from(k))
        })
    }

    /// `c_p · basis(2p+2)` at working precision.
    pub fn value(&self, p: u32, ctx: &PrecisionContext) -> Result<HpReal, DiscoveryError> {
        let (zeta, eta) = moment_bases(p, ctx)?;
        let basis = match self.basis {
            Basis::Zeta => zeta,
            Basis::Eta => eta,
        };
        Ok(ctx.rational(&self.coefficient(p)) * basis)
    }

    /// `A` when `c_p = A (p+1) (2p)!`, i.e. when `q(p) = 2(p+1)(2p-1)`.
    pub fn factorial_form(&self) -> Option<ExactRational> {
        (self.ratio == RationalPolynomial::from_integers(&[-2, 2, 4])).then(|| self.c0.clone())
    }

    /// `c_p = c0 · lead^p · Π (1 - r_i)_p` over the roots `r_i` of `q`.
    pub fn pochhammer(&self) -> Option<(Rational, Vec<Rational>)> {
        let roots = self.ratio.rational_roots()?;
        let lead = self.ratio.coefficients().last()?.clone();
        let shifts = roots.into_iter().map(|r| Rational::from(1) - r).collect();
        Some((lead, shifts))
    }

    pub fn describe(&self) -> String {
        let sym = self.basis.symbol();
        if let Some(a) = self.factorial_form() {
            let lead = if a == 1 {
                String::new()
            } else {
                render_rational(&a)
            };
            return format!(
                "c_p^{sym} = {lead}(p+1)(2p)!, i.e. I(p) = {lead}(p+1)(2p)! * {sym}(2p+2)"
            );
        }
        if let Some((lead, shifts)) = self.pochhammer() {
            let mut s = format!("c_p^{sym} = {}", render_rational(&self.c0));
            if lead != 1 {
                s.push_str(&format!(" * ({})^p", render_rational(&lead)));
            }
            for a in shifts {
                s.push_str(&format!(" * ({})_p", render_rational(&a)));
            }
            return s;
        }
        format!(
            "c_p^{sym} = {} * prod_(k=1..p) ({})",
            render_rational(&self.c0),
            self.ratio.to_string().replace('p', "k")
        )
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[derive(Debug, Clone)]
pub struct FitResult {
    /// `(p, c_p / c_{p-1})` in the eta basis.
    pub ratios: Vec<(u32, Rational)>,
    pub ratio_polynomial: Option<RationalPolynomial>,
    pub closed_form: Option<ClosedForm>,
    pub fit_range: Vec<u32>,
    pub validated_range: Vec<u32>,
    /// Rows beyond the fit range the closed form does not reproduce.
    pub failed_range: Vec<u32>,
}

impl FitResult {
    pub fn pattern_found(&self) -> bool {
        self.closed_form.is_some()
    }
}

/// Fits on every row of `table`.
pub fn fit_ratio_pattern(
    table: &[MomentRecord],
    degree_max: usize,
) -> Result<FitResult, DiscoveryError> {
    let through = table.iter().map(|r| r.p).max().unwrap_or(0);
    fit_ratio_pattern_through(table, through, degree_max)
}

/// Fits on rows with `p <= fit_through` and checks the closed form exactly
/// against the remaining successful rows.
///
/// A degree-`d` ratio polynomial is accepted only when it reproduces at
/// least one ratio beyond the `d + 1` it was solved from; the lowest such
/// degree wins.
pub fn fit_ratio_pattern_through(
    table: &[MomentRecord],
    fit_through: u32,
    degree_max: usize,
) -> Result<FitResult, DiscoveryError> {
    let mut rows: Vec<&MomentRecord> = table.iter().collect();
    rows.sort_by_key(|r| r.p);
    // Consecutive successful eta rows starting at p = 0.
    let mut fit_rows: Vec<(u32, Rational)> = Vec::new();
    for r in rows.iter().filter(|r| r.p <= fit_through) {
        match (&r.coeff_eta, r.p as usize == fit_rows.len()) {
            (Some(c), true) if *c != 0 => fit_rows.push((r.p, c.clone())),
            _ => break,
        }
    }
    let needed = degree_max + 1;
    if fit_rows.len() < needed {
        return Err(DiscoveryError::InsufficientRows {
            needed,
            have: fit_rows.len(),
        });
    }
    let ratios: Vec<(u32, Rational)> = fit_rows
        .windows(2)
        .map(|w| (w[1].0, Rational::from(&w[1].1 / &w[0].1)))
        .collect();
    let fit_range: Vec<u32> = fit_rows.iter().map(|(p, _)| *p).collect();

    let mut ratio_polynomial = None;
    for degree in 0..=degree_max {
        if degree + 2 > ratios.len() {
            break;
        }
        let points: Vec<(Rational, Rational)> = ratios[..=degree]
            .iter()
            .map(|(p, r)| (Rational::from(*p), r.clone()))
            .collect();
        let q = RationalPolynomial::interpolate(&points);
        if ratios
            .iter()
            .all(|(p, r)| q.eval(&Rational::from(*p)) == *r)
        {
            ratio_polynomial = Some(q);
            break;
        }
    }

    let closed_form = ratio_polynomial.as_ref().map(|q| ClosedForm {
        basis: Basis::Eta,
        c0: fit_rows[0].1.clone(),
        ratio: q.clone(),
    });
    let mut validated_range = Vec::new();
    let mut failed_range = Vec::new();
    if let Some(cf) = &closed_form {
        for r in rows.iter().filter(|r| r.p > fit_through) {
            if let Some(c) = &r.coeff_eta {
                if cf.coefficient(r.p) == *c {
                    validated_range.push(r.p);
                } else {
                    failed_range.push(r.p);
                }
            }
        }
    }
    Ok(FitResult {
        ratios,
        ratio_polynomial,
        closed_form,
        fit_range,
        validated_range,
        failed_range,
    })
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub p: u32,
    /// Freshly computed `𝓘(p)`.
    pub value: HpReal,
    pub predicted: HpReal,
    pub residual: HpReal,
    pub threshold: HpReal,
    pub passed: bool,
    pub note: Option<String>,
}

/// Compares `closed_form(p)` with a fresh real-line quadrature of `𝓘(p)` for
/// each `p`; passes when they agree to `10^-(digits-10)`.
pub fn conjecture_check(
    closed_form: &ClosedForm,
    p_list: &[u32],
    cfg: &QuadConfig,
    ctx: &PrecisionContext,
) -> Result<Vec<CheckRow>, DiscoveryError> {
    let threshold = ctx.pow10_neg(ctx.digits().saturating_sub(10));
    p_list
        .par_iter()
        .map(|&p| {
            let (value, note) = match moment_integral(p, MomentForm::RealLine, cfg, ctx) {
                Ok(r) => (r.value, None),
                Err(DiscoveryError::Quadrature(QuadError::NonConvergence(best))) => {
                    (best.value, Some("quadrature did not converge".to_string()))
                }
                Err(e) => return Err(e),
            };
            let predicted = closed_form.value(p, ctx)?;
            let residual = Float::with_val(ctx.prec(), &value - &predicted).abs();
            let passed = note.is_none() && residual <= threshold;
            Ok(CheckRow {
                p,
                value,
                predicted,
                residual,
                threshold: threshold.clone(),
                passed,
                note,
            })
        })
        .collect()
}
