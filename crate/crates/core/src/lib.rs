//! High-precision verification of integral representations of `ζ(4)` and
//! of the moment family `∫ z^{2p} ln(1+e^z)/(1+e^z) dz`.
//!
//! The crate is organised bottom-up:
//!
//! * [`numctx`] — precision contexts, exact Bernoulli numbers;
//! * [`quadrature`] — tanh-sinh / exp-sinh / sinh-sinh engines;
//! * [`special`] — zeta, eta, polylogarithms and polylog identity residuals;
//! * [`identities`] — the catalog of integral identities and their checks;
//! * [`discovery`] — moment integrals, rational recognition, pattern fitting.

pub mod discovery;
pub mod identities;
pub mod numctx;
pub mod quadrature;
pub mod special;

pub use numctx::{make_context, ExactInteger, ExactRational, HpReal, PrecisionContext};
pub use quadrature::{QuadConfig, QuadError, QuadResult};
