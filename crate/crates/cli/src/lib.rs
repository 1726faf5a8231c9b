//! Command-line front end: argument types, payload rows and the command
//! runners behind the `zetaint` binary.

pub mod args;
pub mod format;
pub mod report;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use zetaint_core::discovery::{
    coefficient_table, conjecture_check, fit_ratio_pattern_through, DiscoveryError,
    DEFAULT_P_CEILING,
};
use zetaint_core::identities::{catalog, verify_all, verify_identity, IdentityError};
use zetaint_core::special::{zeta_euler_maclaurin, zeta_even, zeta_int, zeta_mellin, SpecialError};
use zetaint_core::{make_context, PrecisionContext, QuadConfig};

use args::{Cli, Command, CommonArgs, OutputFormat, RunConfig, ZetaMethodArg};
use format::{decimal, rational};
use report::{DiscoverPayload, Envelope, TableRow, VerifyRow, ZetaRow};

/// Exit status for a run where every check passed.
pub const EXIT_OK: i32 = 0;
/// Exit status when any verification, table row or fit failed.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for usage errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot encode CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

/// Rendered output and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.success {
            EXIT_OK
        } else {
            EXIT_FAILED
        }
    }
}

fn setup(common: &CommonArgs) -> Result<(PrecisionContext, QuadConfig), CliError> {
    let ctx = make_context(common.digits).map_err(|e| CliError::Usage(e.to_string()))?;
    let cfg = QuadConfig::new(&ctx).with_max_level(common.max_level);
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok((ctx, cfg))
}

fn envelope<T>(command: &str, common: &CommonArgs, start: Instant, payload: Vec<T>) -> Envelope<T> {
    Envelope {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        config: RunConfig::from(common),
        started_at: chrono::Utc::now().to_rfc3339(),
        elapsed_s: start.elapsed().as_secs_f64(),
        payload,
    }
}

fn to_json<T: Serialize>(env: &Envelope<T>) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(env)? + "\n")
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify { ids, common } => cmd_verify(ids, common),
        Command::Table { pmax, common } => cmd_table(*pmax, common),
        Command::Discover {
            pfit,
            pcheck,
            degree_max,
            common,
        } => cmd_discover(*pfit, *pcheck, *degree_max, common),
        Command::Zeta {
            s,
            method,
            order,
            split,
            common,
        } => cmd_zeta(*s, *method, order.zip(*split), common),
    }
}

pub fn cmd_verify(ids: &[String], common: &CommonArgs) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let all = catalog();
    let selected: Vec<_> = if ids.iter().any(|i| i.eq_ignore_ascii_case("all")) {
        all.clone()
    } else {
        ids.iter()
            .map(|id| {
                all.iter().find(|i| i.id == id).cloned().ok_or_else(|| {
                    CliError::Usage(IdentityError::UnknownId(id.clone()).to_string())
                })
            })
            .collect::<Result<_, _>>()?
    };
    let (ctx, cfg) = setup(common)?;
    let reports = if selected.len() == all.len() {
        verify_all(&ctx, Some(&cfg))
    } else {
        selected
            .iter()
            .map(|i| verify_identity(i, &ctx, Some(&cfg)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Failed(e.to_string()))?
    };
    let digits = common.digits as usize;
    let rows: Vec<VerifyRow> = reports.iter().map(|r| VerifyRow::new(r, digits)).collect();
    let success = rows.iter().all(|r| r.passed);
    let output = match common.format {
        OutputFormat::Json => to_json(&envelope("verify", common, start, rows))?,
        OutputFormat::Csv => to_csv(&rows)?,
        OutputFormat::Text => {
            let width = rows
                .iter()
                .map(|r| r.id.len() + r.case.len() + 1)
                .max()
                .unwrap_or(0);
            let mut s = String::new();
            for r in &rows {
                let name = if r.case.is_empty() {
                    r.id.clone()
                } else {
                    format!("{} {}", r.id, r.case)
                };
                let _ = writeln!(
                    s,
                    "{name:width$}  {}  abs_residual {}  tolerance {}  evaluations {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.abs_residual,
                    r.tolerance,
                    r.evaluations
                );
                let _ = writeln!(s, "    lhs_value {}", r.lhs_value);
                let _ = writeln!(s, "    rhs_value {}", r.rhs_value);
                if let Some(n) = &r.note {
                    let _ = writeln!(s, "    note: {n}");
                }
            }
            let passed = rows.iter().filter(|r| r.passed).count();
            let _ = writeln!(s, "{passed}/{} passed", rows.len());
            s
        }
    };
    Ok(Outcome { output, success })
}

fn check_ceiling(p: u32, what: &str) -> Result<(), CliError> {
    if p > DEFAULT_P_CEILING {
        return Err(CliError::Usage(format!(
            "{what} = {p} exceeds the ceiling {DEFAULT_P_CEILING}"
        )));
    }
    Ok(())
}

fn discovery_error(e: DiscoveryError) -> CliError {
    match e {
        DiscoveryError::Usage(_) | DiscoveryError::InsufficientRows { .. } => {
            CliError::Usage(e.to_string())
        }
        _ => CliError::Failed(e.to_string()),
    }
}

pub fn cmd_table(pmax: u32, common: &CommonArgs) -> Result<Outcome, CliError> {
    let start = Instant::now();
    check_ceiling(pmax, "pmax")?;
    let (ctx, cfg) = setup(common)?;
    let table = coefficient_table(pmax, &cfg, &ctx).map_err(discovery_error)?;
    let success = table.iter().all(|r| r.succeeded() && r.note.is_none());
    let rows: Vec<TableRow> = table
        .iter()
        .map(|r| TableRow::new(r, common.digits as usize))
        .collect();
    let output = match common.format {
        OutputFormat::Json => to_json(&envelope("table", common, start, rows))?,
        OutputFormat::Csv => to_csv(&rows)?,
        OutputFormat::Text => {
            let dash = || "-".to_string();
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>3}  {:>16}  {:>14}  {:>13}  {:>13}",
                "p", "coeff_zeta", "coeff_eta", "residual_zeta", "residual_eta"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>3}  {:>16}  {:>14}  {:>13}  {:>13}",
                    r.p,
                    r.coeff_zeta.clone().unwrap_or_else(dash),
                    r.coeff_eta.clone().unwrap_or_else(dash),
                    r.residual_zeta.clone().unwrap_or_else(dash),
                    r.residual_eta.clone().unwrap_or_else(dash),
                );
                let _ = writeln!(s, "     value {}", r.value);
                if let Some(n) = &r.note {
                    let _ = writeln!(s, "     note: {n}");
                }
            }
            s
        }
    };
    Ok(Outcome { output, success })
}

pub fn cmd_discover(
    pfit: u32,
    pcheck: u32,
    degree_max: usize,
    common: &CommonArgs,
) -> Result<Outcome, CliError> {
    let start = Instant::now();
    if pcheck <= pfit {
        return Err(CliError::Usage(format!(
            "pcheck ({pcheck}) must exceed pfit ({pfit})"
        )));
    }
    if (pfit as usize) < degree_max {
        return Err(CliError::Usage(format!(
            "a degree-{degree_max} fit needs pfit >= {degree_max}, got {pfit}"
        )));
    }
    check_ceiling(pcheck, "pcheck")?;
    let (ctx, cfg) = setup(common)?;
    let table = coefficient_table(pcheck, &cfg, &ctx).map_err(discovery_error)?;
    let fit = fit_ratio_pattern_through(&table, pfit, degree_max).map_err(discovery_error)?;
    let check_ps: Vec<u32> = (pfit + 1..=pcheck).collect();
    let checks = match &fit.closed_form {
        Some(cf) => conjecture_check(cf, &check_ps, &cfg, &ctx).map_err(discovery_error)?,
        None => Vec::new(),
    };
    let digits = common.digits as usize;
    let payload = DiscoverPayload::new(&fit, &table, &checks, digits);
    let success = payload.pattern_found && payload.validated_range == check_ps;
    let output = match common.format {
        OutputFormat::Json => to_json(&envelope("discover", common, start, vec![payload]))?,
        OutputFormat::Csv => to_csv(&payload.rows)?,
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "eta-basis coefficients and ratios c_p/c_(p-1):");
            for r in payload.rows.iter().filter(|r| r.role == "fit") {
                let _ = writeln!(
                    s,
                    "  p={:<2} c_p {:>14}  ratio {}",
                    r.p,
                    r.coeff_eta.as_deref().unwrap_or("-"),
                    r.ratio.as_deref().unwrap_or("-")
                );
            }
            match (&payload.ratio_polynomial, &payload.closed_form) {
                (Some(q), Some(cf)) => {
                    let factored = payload
                        .ratio_polynomial_factored
                        .as_ref()
                        .map(|f| format!(" = {f}"))
                        .unwrap_or_default();
                    let _ = writeln!(s, "ratio polynomial: q(p) = {q}{factored}");
                    let _ = writeln!(s, "closed form: {cf}");
                    let threshold = ctx.pow10_neg(ctx.digits().saturating_sub(10));
                    let _ = writeln!(
                        s,
                        "validation by fresh quadrature (threshold {}):",
                        format::short(&threshold)
                    );
                    for r in payload.rows.iter().filter(|r| r.role == "check") {
                        let _ = writeln!(
                            s,
                            "  p={:<2} c_p {:>20}  table {:>20}  residual {}  {}",
                            r.p,
                            r.closed_form_coeff.as_deref().unwrap_or("-"),
                            r.coeff_eta.as_deref().unwrap_or("-"),
                            r.residual.as_deref().unwrap_or("-"),
                            if r.passed == Some(true) {
                                "PASS"
                            } else {
                                "FAIL"
                            }
                        );
                    }
                    let _ = writeln!(
                        s,
                        "fit_range {:?}, validated_range {:?}",
                        payload.fit_range, payload.validated_range
                    );
                }
                _ => {
                    let _ = writeln!(
                        s,
                        "no ratio polynomial of degree <= {degree_max} fits the ratios above"
                    );
                }
            }
            s
        }
    };
    Ok(Outcome { output, success })
}

fn special_error(e: SpecialError) -> CliError {
    match e {
        SpecialError::Usage(_) => CliError::Usage(e.to_string()),
        _ => CliError::Failed(e.to_string()),
    }
}

pub fn cmd_zeta(
    s: u32,
    method: ZetaMethodArg,
    em: Option<(u32, u32)>,
    common: &CommonArgs,
) -> Result<Outcome, CliError> {
    let start = Instant::now();
    if em.is_some() && method != ZetaMethodArg::EulerMaclaurin {
        return Err(CliError::Usage(
            "--order/--split apply to euler-maclaurin only".into(),
        ));
    }
    let (ctx, cfg) = setup(common)?;
    let (value, pi_coefficient) = match method {
        ZetaMethodArg::Bernoulli => {
            let z = zeta_even(s, &ctx).map_err(special_error)?;
            (z.value, z.pi_coefficient)
        }
        ZetaMethodArg::EulerMaclaurin => match em {
            Some((order, split)) => (
                zeta_euler_maclaurin(&ctx.real(s), order, split, &ctx)
                    .map_err(special_error)?
                    .value,
                None,
            ),
            None => (zeta_int(s, &ctx).map_err(special_error)?, None),
        },
        ZetaMethodArg::Mellin => (
            zeta_mellin(s, &cfg, &ctx).map_err(special_error)?.value,
            None,
        ),
    };
    let row = ZetaRow {
        s,
        method: method.name().to_string(),
        value: decimal(&value, common.digits as usize),
        pi_coefficient: pi_coefficient.as_ref().map(rational),
    };
    let output = match common.format {
        OutputFormat::Json => to_json(&envelope("zeta", common, start, vec![row]))?,
        OutputFormat::Csv => to_csv(&[row])?,
        OutputFormat::Text => {
            let mut out = String::new();
            if let Some(r) = &row.pi_coefficient {
                let _ = writeln!(out, "zeta({s}) = {r} * pi^{s}");
            }
            let _ = writeln!(out, "zeta({s}) = {}", row.value);
            out
        }
    };
    Ok(Outcome {
        output,
        success: true,
    })
}
