//! Hurwitz zeta by Euler–Maclaurin summation with a certified remainder.

use num_complex::Complex64;

use super::gamma::BERNOULLI_EVEN;
use super::AccuracyBudget;
use crate::error::{Error, Result};

/// Highest Bernoulli correction used (B_20); B_22 only feeds the remainder.
const MAX_CORRECTIONS: usize = 10;

struct Partial {
    value: Complex64,
    bound: f64,
}

fn euler_maclaurin(s: Complex64, a: f64, n: usize) -> Partial {
    let mut head = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    // smallest terms first
    for k in (0..n).rev() {
        let term = (-s * (k as f64 + a).ln()).exp();
        magnitude += term.norm();
        head += term;
    }
    let w = n as f64 + a;
    let w_pow = (-s * w.ln()).exp();
    let mut value = head + w * w_pow / (s - 1.0) + w_pow * 0.5;

    // T_k = B_2k / (2k)! * s(s+1)...(s+2k-2) * w^(-s-2k+1)
    let mut terms = [Complex64::new(0.0, 0.0); MAX_CORRECTIONS + 1];
    let mut poch = s;
    let mut wp = w_pow / w;
    let mut fact = 2.0;
    let w2 = w * w;
    for (k, slot) in terms.iter_mut().enumerate() {
        *slot = poch * wp * (BERNOULLI_EVEN[k] / fact);
        let j = 2.0 * (k as f64 + 1.0);
        poch *= (s + (j - 1.0)) * (s + j);
        wp /= w2;
        fact *= (j + 1.0) * (j + 2.0);
    }

    let remainder = |k: usize| {
        // bound on the tail after k corrections, via the next term
        let order = 2.0 * k as f64 + 1.0;
        let denom = s.re + order;
        if denom <= 0.0 {
            f64::INFINITY
        } else {
            2.0 * terms[k].norm() * (s + order).norm() / denom
        }
    };
    let mut best_k = 0;
    let mut best = remainder(0);
    for k in 1..=MAX_CORRECTIONS {
        let r = remainder(k);
        if r < best {
            best = r;
            best_k = k;
        }
    }
    for t in terms.iter().take(best_k) {
        value += *t;
    }
    let rounding = 4.0 * f64::EPSILON * (magnitude + value.norm());
    Partial {
        value,
        bound: best + rounding,
    }
}

/// `ζ(s, a)` together with a bound on the truncation error.
pub fn hurwitz_zeta_bounded(
    s: Complex64,
    a: f64,
    budget: &AccuracyBudget,
) -> Result<(Complex64, f64)> {
    budget.validate()?;
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain {
            function: "hurwitz_zeta",
            at: format!("{s}"),
            reason: "non-finite argument".into(),
        });
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            at: "1".into(),
        });
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain {
            function: "hurwitz_zeta",
            at: format!("a = {a}"),
            reason: "shift must lie in (0, 1]".into(),
        });
    }
    let mut n = ((0.3 * s.norm()).ceil() as usize).max(10).min(budget.max_terms);
    loop {
        let partial = euler_maclaurin(s, a, n);
        if !(partial.value.re.is_finite() && partial.value.im.is_finite()) {
            return Err(Error::NonFinite("hurwitz_zeta"));
        }
        if partial.bound <= budget.target(partial.value.norm()) {
            return Ok((partial.value, partial.bound));
        }
        if n >= budget.max_terms {
            return Err(Error::BudgetExceeded {
                function: "hurwitz_zeta",
                achieved: partial.bound,
                requested: budget.target(partial.value.norm()),
            });
        }
        n = (2 * n).min(budget.max_terms);
    }
}

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n+a)^{-s}` for `a ∈ (0, 1]`.
pub fn hurwitz_zeta(s: Complex64, a: f64, budget: &AccuracyBudget) -> Result<Complex64> {
    hurwitz_zeta_bounded(s, a, budget).map(|(v, _)| v)
}

/// Riemann zeta `ζ(s) = ζ(s, 1)`.
pub fn zeta(s: Complex64, budget: &AccuracyBudget) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0, budget)
}
