//! Riemann–Siegel theta and Z.
//!
//! `riemann_siegel_z` is the fast asymptotic evaluation used for scanning;
//! `hardy_z` evaluates the same function through Euler–Maclaurin and is used
//! where ordinates need full double precision.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{digamma, log_gamma};
use super::zeta::hurwitz_zeta_bounded;
use super::AccuracyBudget;
use crate::error::{Error, Result};

/// Height above which the Riemann–Siegel evaluation is refused.
pub const RS_MAX_HEIGHT: f64 = 1e4;
/// Height below which the Riemann–Siegel evaluation is refused.
pub const RS_MIN_HEIGHT: f64 = 2.0;

/// Constant in the remainder bound `|R| ≤ C t^{-3/4}` after the first
/// correction term.
const RS_REMAINDER_CONSTANT: f64 = 0.127;
/// Below this height the asymptotic remainder is not tabulated; a flat bound
/// measured against Euler–Maclaurin is used instead.
const RS_LOW_HEIGHT: f64 = 12.0;
const RS_LOW_BOUND: f64 = 0.1;

/// A Riemann–Siegel evaluation with its remainder bound.
#[derive(Debug, Clone, Copy)]
pub struct RsValue {
    pub value: f64,
    pub bound: f64,
}

/// `θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π`.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain {
            function: "riemann_siegel_theta",
            at: format!("{t}"),
            reason: "need t > 0".into(),
        });
    }
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * PI.ln())
}

/// `θ'(t) = ½ Re ψ(1/4 + it/2) − ½ log π`.
pub(crate) fn theta_derivative(t: f64) -> Result<f64> {
    let psi = digamma(Complex64::new(0.25, 0.5 * t))?;
    Ok(0.5 * psi.re - 0.5 * PI.ln())
}

fn c0(p: f64) -> f64 {
    let raw = |p: f64| (2.0 * PI * (p * p - p - 1.0 / 16.0)).cos() / (2.0 * PI * p).cos();
    if (2.0 * PI * p).cos().abs() < 1e-3 {
        // removable singularity at p = 1/4, 3/4
        let d = 2e-3;
        0.5 * (raw(p - d) + raw(p + d))
    } else {
        raw(p)
    }
}

/// Riemann–Siegel main sum plus the first correction term, with its
/// remainder bound. Valid for `2 ≤ t ≤ 10^4`.
pub fn riemann_siegel_z_bounded(t: f64) -> Result<RsValue> {
    if !(RS_MIN_HEIGHT..=RS_MAX_HEIGHT).contains(&t) {
        return Err(Error::Domain {
            function: "riemann_siegel_z",
            at: format!("{t}"),
            reason: format!("outside the validity range [{RS_MIN_HEIGHT}, {RS_MAX_HEIGHT}]"),
        });
    }
    let theta = riemann_siegel_theta(t)?;
    let tau = (t / (2.0 * PI)).sqrt();
    let n = tau.floor() as usize;
    let p = tau - n as f64;
    let mut sum = 0.0;
    for k in (1..=n).rev() {
        let kf = k as f64;
        sum += (theta - t * kf.ln()).cos() / kf.sqrt();
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let value = 2.0 * sum + sign * c0(p) / tau.sqrt();
    let bound = if t < RS_LOW_HEIGHT {
        RS_LOW_BOUND
    } else {
        RS_REMAINDER_CONSTANT * t.powf(-0.75)
    };
    Ok(RsValue { value, bound })
}

/// Riemann–Siegel `Z(t)`; refuses when the remainder bound exceeds
/// `budget.abs_tol`.
pub fn riemann_siegel_z(t: f64, budget: &AccuracyBudget) -> Result<f64> {
    budget.validate()?;
    let rs = riemann_siegel_z_bounded(t)?;
    if rs.bound > budget.abs_tol {
        return Err(Error::BudgetExceeded {
            function: "riemann_siegel_z",
            achieved: rs.bound,
            requested: budget.abs_tol,
        });
    }
    Ok(rs.value)
}

/// Hardy's `Z(t) = e^{iθ(t)} ζ(1/2 + it)` through Euler–Maclaurin, with the
/// truncation bound of the zeta evaluation.
pub fn hardy_z_bounded(t: f64, budget: &AccuracyBudget) -> Result<(f64, f64)> {
    let theta = riemann_siegel_theta(t)?;
    let (z, bound) = hurwitz_zeta_bounded(Complex64::new(0.5, t), 1.0, budget)?;
    let rotated = Complex64::from_polar(1.0, theta) * z;
    Ok((rotated.re, bound))
}

/// Hardy's `Z(t)` at full precision.
pub fn hardy_z(t: f64, budget: &AccuracyBudget) -> Result<f64> {
    hardy_z_bounded(t, budget).map(|(v, _)| v)
}

/// Gram point `g_n`, the solution of `θ(t) = nπ` with `t > 7`, for `n ≥ -1`.
pub fn gram_point(n: i64) -> Result<f64> {
    if n < -1 {
        return Err(Error::InvalidParameter(format!(
            "Gram index must be at least -1, got {n}"
        )));
    }
    let target = n as f64 * PI;
    let f = |t: f64| riemann_siegel_theta(t).map(|v| v - target);
    let mut lo = 7.0;
    let mut hi = 16.0;
    while f(hi)? < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..100 {
        let v = f(t)?;
        if v < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let mut next = t - v / theta_derivative(t)?;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 1e-14 * t {
            return Ok(next);
        }
        t = next;
    }
    Ok(t)
}
