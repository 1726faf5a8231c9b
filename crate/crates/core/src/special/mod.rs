//! Zeta, eta and polylogarithm evaluation, plus residuals of the classical
//! polylogarithm identities.

mod lewin;
mod polylog;
mod zeta;

use thiserror::Error;

use crate::quadrature::QuadError;

pub use lewin::{
    landen_log_integral_closed_form, li4_landen_printed_residual, li4_landen_residual,
    li4_lewin2_residual, li4_lewin_residual,
};
pub use polylog::{polylog, polylog_inversion_residual, polylog_negative_integral, PolylogPoint};
pub use zeta::{
    eta, eta_factor, euler_maclaurin_remainder_bound, zeta_euler_maclaurin,
    zeta_euler_maclaurin_truncated, zeta_even, zeta_even_coefficient, zeta_int, zeta_mellin,
    ZetaMethod, ZetaValue, MAX_EM_ORDER, MAX_EVEN_ARGUMENT,
};

#[derive(Debug, Error)]
pub enum SpecialError {
    #[error("{0}")]
    Usage(String),
    #[error("Li_1(1) diverges")]
    Divergent,
    #[error("remainder bound {bound:e} exceeds the accuracy target; {advice}")]
    Accuracy { bound: f64, advice: String },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}
