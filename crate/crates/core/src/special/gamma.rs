//! Complex log-Gamma and digamma via the Stirling series with a recurrence
//! shift.
//!
//! The argument is shifted right with `Γ(z+1) = zΓ(z)` until it lies where
//! the asymptotic series with ten Bernoulli terms is accurate to machine
//! precision (`Re w ≥ 0`, `|w| ≥ 12`). Summing principal logarithms of the
//! shift factors yields the principal branch of `log Γ`, continuous on the
//! plane slit along the non-positive real axis.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Bernoulli numbers B_2, B_4, ..., B_22.
pub(crate) const BERNOULLI_EVEN: [f64; 11] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
];

const STIRLING_TERMS: usize = 10;
const SHIFT_MODULUS: f64 = 12.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn check_pole(function: &'static str, z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain {
            function,
            at: format!("{z}"),
            reason: "non-finite argument".into(),
        });
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole {
            function,
            at: format!("{}", z.re),
        });
    }
    Ok(())
}

fn shift_count(z: Complex64) -> usize {
    let mut n = 0usize;
    let mut w = z;
    while w.re < 0.0 || w.norm() < SHIFT_MODULUS {
        w.re += 1.0;
        n += 1;
    }
    n
}

fn finite(function: &'static str, v: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(function))
    }
}

/// Principal branch of `log Γ(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_pole("log_gamma", z)?;
    let n = shift_count(z);
    let mut correction = Complex64::new(0.0, 0.0);
    for k in 0..n {
        correction += (z + k as f64).ln();
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for (k, b) in BERNOULLI_EVEN.iter().take(STIRLING_TERMS).enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        series += power * (b / (two_k * (two_k - 1.0)));
        power *= inv2;
    }
    let value = (w - 0.5) * w.ln() - w + HALF_LN_2PI + series - correction;
    finite("log_gamma", value)
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_pole("digamma", z)?;
    let n = shift_count(z);
    let mut correction = Complex64::new(0.0, 0.0);
    for k in 0..n {
        correction += (z + k as f64).inv();
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().take(STIRLING_TERMS).enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        series += power * (b / two_k);
        power *= inv2;
    }
    let value = w.ln() - inv * 0.5 - series - correction;
    finite("digamma", value)
}

/// `Γ(z)` as `exp(log Γ(z))`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// Real digamma for `x > 0`, used on hot paths where the argument is real.
pub fn digamma_real(x: f64) -> Result<f64> {
    Ok(digamma(Complex64::new(x, 0.0))?.re)
}

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
