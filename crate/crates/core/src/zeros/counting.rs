//! Zero counting: the Riemann–von Mangoldt formula with `S(T)` from
//! argument tracking, a rectangle argument-principle counter, and explicit
//! over-estimates of the counting function used by tail bounds.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dirichlet::dirichlet_l;
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::special::{riemann_siegel_theta, zeta, AccuracyBudget};

const MAX_DEPTH: u32 = 40;
const MAX_STEP_ARG: f64 = 0.4;

fn arg_segment<F>(f: &F, a: Complex64, fa: Complex64, b: Complex64, fb: Complex64, depth: u32) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    if fm.norm() == 0.0 {
        return Err(Error::InternalConsistency {
            what: "argument tracking",
            detail: format!("function vanishes on the contour at {m}"),
        });
    }
    let d1 = (fm / fa).arg();
    let d2 = (fb / fm).arg();
    let d = (fb / fa).arg();
    if d1.abs() < MAX_STEP_ARG && d2.abs() < MAX_STEP_ARG && (d1 + d2 - d).abs() < 1e-9 {
        return Ok(d1 + d2);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::InternalConsistency {
            what: "argument tracking",
            detail: format!("no convergence near {m}; a zero may lie on the contour"),
        });
    }
    Ok(arg_segment(f, a, fa, m, fm, depth + 1)? + arg_segment(f, m, fm, b, fb, depth + 1)?)
}

/// Continuous change of `arg f` along the segment `a → b`.
pub fn arg_change<F>(f: &F, a: Complex64, b: Complex64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    // coarse pre-split keeps the recursion shallow on long edges
    let pieces = ((b - a).norm().ceil() as usize).max(1);
    let mut total = 0.0;
    let mut za = a;
    let mut fa = f(a)?;
    for k in 1..=pieces {
        let zb = a + (b - a) * (k as f64 / pieces as f64);
        let fb = f(zb)?;
        total += arg_segment(f, za, fa, zb, fb, 0)?;
        za = zb;
        fa = fb;
    }
    Ok(total)
}

/// Number of zeros of `f` inside the rectangle `[σ0, σ1] × [t0, t1]`.
pub fn argument_principle_count<F>(f: F, sigma0: f64, sigma1: f64, t0: f64, t1: f64) -> Result<i64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let c = |x: f64, y: f64| Complex64::new(x, y);
    let corners = [c(sigma0, t0), c(sigma1, t0), c(sigma1, t1), c(sigma0, t1)];
    let mut total = 0.0;
    for k in 0..4 {
        total += arg_change(&f, corners[k], corners[(k + 1) % 4])?;
    }
    let winding = total / (2.0 * PI);
    let n = winding.round();
    if (winding - n).abs() > 0.05 {
        return Err(Error::InternalConsistency {
            what: "argument principle",
            detail: format!("winding number {winding} is not close to an integer"),
        });
    }
    Ok(n as i64)
}

/// `N(T)`, the number of zeros of ζ with `0 < γ ≤ T`, from
/// `θ(T)/π + 1 + S(T)` with `S(T)` obtained by tracking `arg ζ` from `3 + iT`.
pub fn riemann_count(t: f64, budget: &AccuracyBudget) -> Result<i64> {
    if t < 14.0 {
        return Ok(0);
    }
    let f = |s: Complex64| zeta(s, budget);
    let mut height = t;
    // step off a zero sitting on the horizontal path
    for _ in 0..8 {
        let v = f(Complex64::new(0.5, height))?;
        if v.norm() > 1e-9 {
            break;
        }
        height += 1e-7;
    }
    let start = Complex64::new(3.0, height);
    let arg0 = f(start)?.arg();
    let s_t = (arg0 + arg_change(&f, start, Complex64::new(0.5, height))?) / PI;
    let n = riemann_siegel_theta(height)? / PI + 1.0 + s_t;
    let rounded = n.round();
    if (n - rounded).abs() > 0.05 {
        return Err(Error::InternalConsistency {
            what: "zero counting",
            detail: format!("N({t}) evaluates to non-integer {n}"),
        });
    }
    Ok(rounded as i64)
}

/// Number of zeros of `L(s, χ)` with `0 < γ ≤ T` in the critical strip, by
/// the argument principle on `[−1/2, 3/2] × [−δ, T]`. The lower edge sits
/// below the real axis so it avoids the trivial zero at `s = 0` of even `χ`,
/// which is then subtracted; for the moduli handled here no other zero has
/// `|γ| < δ`.
pub fn dirichlet_count(chi: &DirichletCharacter, t: f64, budget: &AccuracyBudget) -> Result<i64> {
    const DELTA: f64 = 0.1;
    if chi.modulus() == 1 {
        return riemann_count(t, budget);
    }
    if t <= 0.0 {
        return Ok(0);
    }
    let f = |s: Complex64| dirichlet_l(chi, s, budget);
    let mut height = t;
    for _ in 0..8 {
        if f(Complex64::new(0.5, height))?.norm() > 1e-9 {
            break;
        }
        height += 1e-7;
    }
    let n = argument_principle_count(f, -0.5, 1.5, -DELTA, height)?;
    Ok(if chi.is_even() { n - 1 } else { n })
}

/// Smooth main term of the zero counting function for modulus `q`
/// (`q = 1` is ζ), zeros with `0 < γ ≤ t`.
pub fn zero_count_main(q: u64, t: f64) -> f64 {
    let t = t.max(1.0);
    let qf = q as f64;
    let main = t / (2.0 * PI) * (qf * t / (2.0 * PI * std::f64::consts::E)).ln();
    if q == 1 {
        main + 7.0 / 8.0
    } else {
        main
    }
}

/// Explicit over-estimate of the number of zeros with `0 < γ ≤ t`: main term
/// plus a published-type error envelope `|S|`-bound, valid for `t ≥ 1`.
pub fn zero_count_upper(q: u64, t: f64) -> f64 {
    let tt = t.max(3.0);
    let err = if q == 1 {
        0.137 * tt.ln() + 0.443 * tt.ln().ln() + 4.35
    } else {
        0.247 * (q as f64 * (tt + 3.0)).ln() + 7.0
    };
    (zero_count_main(q, t) + err).max(0.0)
}
