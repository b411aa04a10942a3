//! Scalar numerical kernels shared by the slab-isoperimetry crates.
//!
//! Everything here is plain `f64`, pure, and reentrant: incomplete elliptic
//! integrals in Carlson symmetric form, the standard normal cdf/quantile
//! pair, digamma and log-gamma, a tanh-sinh quadrature rule that tolerates
//! endpoint singularities of order < 1, cached Gauss-Legendre rules, a
//! Brent-style bracketed root finder, and a golden-section minimizer.

// Coefficients are quoted at their published precision even where that
// exceeds f64; rounding them by hand would only invite transcription slips.
#![allow(clippy::excessive_precision)]

mod elliptic;
mod gamma;
mod gauss;
mod legendre;
mod optim;
mod quad;
mod root;

pub use elliptic::{ellip_e, ellip_f};
pub use gamma::{digamma, ln_gamma};
pub use gauss::{erf, erfc, gauss_cdf, gauss_density, gauss_quantile};
pub use legendre::gauss_legendre;
pub use optim::golden_min;
pub use quad::integrate_endpoint_singular;
pub use root::find_root;

/// Format a double with 17 significant digits, enough to round-trip exactly.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Convergence controls shared by the iterative kernels.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Absolute tolerance on the result.
    pub abs_tol: f64,
    /// Relative tolerance on the result.
    pub rel_tol: f64,
    /// Iteration cap for root finding and quadrature refinement.
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { abs_tol: 1e-10, rel_tol: 1e-10, max_iter: 200 }
    }
}

impl Tolerances {
    /// Mixed absolute/relative target for a quantity of magnitude `scale`.
    pub fn target(&self, scale: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * scale.abs())
    }
}

/// Outcome of an adaptive quadrature call.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate (last refinement increment).
    pub error_estimate: f64,
    /// Number of integrand evaluations consumed.
    pub evaluations: usize,
}

/// Errors produced by the numerical kernels.
#[derive(Debug, thiserror::Error)]
pub enum NumError {
    #[error("{func}: {arg} = {value:e} outside {domain}")]
    Domain { func: &'static str, arg: &'static str, value: f64, domain: &'static str },
    #[error("{func}: integral diverges")]
    Divergent { func: &'static str },
    #[error("quadrature did not converge: {reason}")]
    NonConvergent { reason: &'static str },
    #[error("find_root: no sign change on [{lo:e}, {hi:e}] (f: {flo:e}, {fhi:e})")]
    NoBracket { lo: f64, hi: f64, flo: f64, fhi: f64 },
}

pub type Result<T> = std::result::Result<T, NumError>;

pub(crate) fn check_domain(
    func: &'static str,
    arg: &'static str,
    value: f64,
    ok: bool,
    domain: &'static str,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(NumError::Domain { func, arg, value, domain })
    }
}
