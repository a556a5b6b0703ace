//! Complex special functions: log-Gamma, digamma, Hurwitz zeta and the
//! Riemann–Siegel functions.

pub mod gamma;
pub mod riemann_siegel;
pub mod zeta;

pub use num_complex::Complex64 as Complex;

use crate::error::{Error, Result};

pub use gamma::{digamma, digamma_real, gamma, log_gamma, EULER_GAMMA};
pub use riemann_siegel::{gram_point, hardy_z, riemann_siegel_theta, riemann_siegel_z, RsValue};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_bounded, zeta};

/// Accuracy targets for series-based evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyBudget {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl AccuracyBudget {
    pub fn new(abs_tol: f64, rel_tol: f64, max_terms: usize) -> Result<Self> {
        let budget = AccuracyBudget {
            abs_tol,
            rel_tol,
            max_terms,
        };
        budget.validate()?;
        Ok(budget)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 1 {
            return Err(Error::InvalidParameter("max_terms must be at least 1".into()));
        }
        Ok(())
    }

    /// Same budget with a different absolute tolerance.
    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        AccuracyBudget { abs_tol, ..self }
    }

    pub(crate) fn target(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        AccuracyBudget {
            abs_tol: 1e-12,
            rel_tol: 1e-13,
            max_terms: 1 << 16,
        }
    }
}
