//! Positivity of `Z(k)` for `k = g * g^τ` with small support.
//!
//! When `supp k ⊆ [1/2, 2]` no prime power lies inside the support and
//! `Z(k) = ∫ α(τ) |ĝ(1/2 + iτ)|² dτ/2π` with
//! `α(τ) = 8√2 cos(τ log 2)/(1 + 4τ²) + h₊(τ)`. If `A cos(ετ) + α(τ) ≥ 0`
//! for every `τ` and `supp g ⊆ [e^{−ε/2}, e^{ε/2}]`, the cosine moment of
//! `|ĝ|²` vanishes and `Z(k) ≥ 0`. The search below finds the largest such
//! `ε` and reports `c = e^{ε/2}`.

use std::f64::consts::{LN_2, PI, SQRT_2};
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::golden_min;
use crate::spectral::{chunked_integral, h_plus, zero_tail_bound, T_CUT_MAX, T_CUT_START};
use crate::test_functions::{autocorrelation, make_bump, Profile, TestFunction};
use crate::zeros::ZeroSet;

/// Coefficient of the kernel `8√2 cos(τ log 2)/(1 + 4τ²)`.
pub const KERNEL_COEFFICIENT: f64 = 8.0 * SQRT_2;

/// `Re ψ(1/4 + iτ/2) ≥ log(τ/2) − DIGAMMA_TAIL_C` for `τ ≥ DIGAMMA_TAIL_TAU0`.
///
/// From `ψ(z) = log z − 1/(2z) + R(z)` with `|R(z)| ≤ 1/(3|z|²)` for
/// `Re z > 0`: at `|z| ≥ 5` the correction is at most `0.1 + 0.014`.
pub const DIGAMMA_TAIL_C: f64 = 0.12;
pub const DIGAMMA_TAIL_TAU0: f64 = 10.0;

/// Extent and spacing of the tabulated `α`.
pub const ALPHA_TABLE_MAX: f64 = 5000.0;
pub const ALPHA_TABLE_STEP: f64 = 0.01;

/// `ε`-grid defaults: geometric in `[0.01, 0.7]`.
pub const DEFAULT_EPS_MIN: f64 = 0.01;
pub const DEFAULT_EPS_MAX: f64 = 0.7;
pub const DEFAULT_EPS_POINTS: usize = 400;

/// Width at which the bisection on `ε` stops.
const EPS_RESOLUTION: f64 = 1e-9;
/// Tolerance of the line integrals in the report.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// `8√2 cos(τ log 2)/(1 + 4τ²)`.
pub fn kernel(tau: f64) -> f64 {
    KERNEL_COEFFICIENT * (LN_2 * tau).cos() / (1.0 + 4.0 * tau * tau)
}

/// `α(τ) = 8√2 cos(τ log 2)/(1 + 4τ²) + h₊(τ)`.
pub fn alpha(tau: f64) -> Result<f64> {
    Ok(kernel(tau) + h_plus(tau)?)
}

/// Lower bound for `α(τ)` valid for `τ ≥ 10`; increasing there.
pub fn alpha_lower(tau: f64) -> f64 {
    let t = tau.abs().max(DIGAMMA_TAIL_TAU0);
    -PI.ln() + (0.5 * t).ln() - DIGAMMA_TAIL_C - KERNEL_COEFFICIENT / (1.0 + 4.0 * t * t)
}

struct AlphaTable {
    values: Vec<f64>,
}

impl AlphaTable {
    fn tau(&self, i: usize) -> f64 {
        i as f64 * ALPHA_TABLE_STEP
    }
}

fn alpha_table() -> &'static AlphaTable {
    static TABLE: OnceLock<AlphaTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = (ALPHA_TABLE_MAX / ALPHA_TABLE_STEP).round() as usize;
        let values = (0..=n)
            .into_par_iter()
            .map(|i| alpha(i as f64 * ALPHA_TABLE_STEP).expect("α is finite on the real line"))
            .collect();
        AlphaTable { values }
    })
}

/// Minimum of `α` over `τ ≥ 0` and where it is attained. Beyond the table
/// `α ≥ alpha_lower(ALPHA_TABLE_MAX) > 0`.
pub fn alpha_min() -> (f64, f64) {
    let table = alpha_table();
    let (i, _) = table
        .values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty table");
    let lo = table.tau(i.saturating_sub(1));
    let hi = table.tau(i + 1);
    let (tau, v) = golden_min(|t| alpha(t).unwrap_or(f64::INFINITY), lo, hi, 1e-10);
    (tau, v)
}

/// `(τ, α(τ))` samples for plotting.
pub fn alpha_profile(tau_max: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    if !(tau_max > 0.0 && step > 0.0) {
        return Err(Error::InvalidParameter(format!("profile range {tau_max} / step {step}")));
    }
    let n = (tau_max / step).round() as usize;
    (0..=n)
        .map(|i| {
            let t = i as f64 * step;
            Ok((t, alpha(t)?))
        })
        .collect()
}

/// CSV rendering of [`alpha_profile`] with header `tau,alpha`.
pub fn alpha_profile_csv(tau_max: f64, step: f64) -> Result<String> {
    let mut out = String::from("tau,alpha\n");
    for (t, a) in alpha_profile(tau_max, step)? {
        out.push_str(&format!("{t:.6},{a:.15e}\n"));
    }
    Ok(out)
}

/// Feasible amplitudes `A` with `A cos(ετ) + α(τ) ≥ 0` for all `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feasibility {
    pub epsilon: f64,
    /// `max(0, sup_{cos > 0} −α/cos)`.
    pub a_lo: f64,
    /// `min(inf_{cos < 0} α/|cos|, α_lower(T))`.
    pub a_hi: f64,
    /// Where the lower and upper constraints bind.
    pub tau_lo: Option<f64>,
    pub tau_hi: Option<f64>,
    /// Grid range; beyond it `α ≥ alpha_lower(certified_to) ≥ a_hi`.
    pub certified_to: f64,
}

impl Feasibility {
    pub fn feasible(&self) -> bool {
        self.a_lo <= self.a_hi
    }

    pub fn interval(&self) -> Option<(f64, f64)> {
        self.feasible().then_some((self.a_lo, self.a_hi))
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a_lo + self.a_hi)
    }
}

/// Refines a grid extremum of `f` over a neighbourhood, maximising.
fn refine_max<F: Fn(f64) -> f64>(f: F, tau: f64) -> (f64, f64) {
    let lo = (tau - ALPHA_TABLE_STEP).max(0.0);
    let hi = tau + ALPHA_TABLE_STEP;
    let (t, v) = golden_min(|x| -f(x), lo, hi, 1e-10);
    let grid = f(tau);
    if -v >= grid {
        (t, -v)
    } else {
        (tau, grid)
    }
}

/// Exact feasibility region for one `ε`.
pub fn feasible_amplitude(epsilon: f64) -> Result<Feasibility> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("ε must be positive, got {epsilon}")));
    }
    let table = alpha_table();
    // (best lower candidate, index), (best upper candidate, index)
    let init = || ((f64::NEG_INFINITY, usize::MAX), (f64::INFINITY, usize::MAX));
    let (lo, hi) = table
        .values
        .par_iter()
        .enumerate()
        .fold(init, |(mut lo, mut hi), (i, &a)| {
            let c = (epsilon * table.tau(i)).cos();
            if c > 0.0 {
                let r = -a / c;
                if r > lo.0 {
                    lo = (r, i);
                }
            } else if c < 0.0 {
                let r = a / -c;
                if r < hi.0 {
                    hi = (r, i);
                }
            } else if a < 0.0 {
                lo = (f64::INFINITY, i);
            }
            (lo, hi)
        })
        .reduce(init, |x, y| {
            let lo = if y.0 .0 > x.0 .0 { y.0 } else { x.0 };
            let hi = if y.1 .0 < x.1 .0 { y.1 } else { x.1 };
            (lo, hi)
        });
    let ratio_lo = |t: f64| {
        let c = (epsilon * t).cos();
        if c > 0.0 {
            -alpha(t).unwrap_or(f64::NAN) / c
        } else {
            f64::NEG_INFINITY
        }
    };
    let ratio_hi = |t: f64| {
        let c = (epsilon * t).cos();
        if c < 0.0 {
            -alpha(t).unwrap_or(f64::NAN) / -c
        } else {
            f64::NEG_INFINITY
        }
    };
    let (tau_lo, a_lo) = if lo.1 == usize::MAX || !lo.0.is_finite() {
        (None, lo.0)
    } else {
        let (t, v) = refine_max(ratio_lo, table.tau(lo.1));
        (Some(t), v)
    };
    let (tau_hi, a_hi) = if hi.1 == usize::MAX || !hi.0.is_finite() {
        (None, hi.0)
    } else {
        let (t, v) = refine_max(ratio_hi, table.tau(hi.1));
        (Some(t), -v)
    };
    let ceiling = alpha_lower(ALPHA_TABLE_MAX);
    let a_lo = a_lo.max(0.0);
    Ok(Feasibility {
        epsilon,
        a_lo,
        a_hi: a_hi.min(ceiling),
        tau_lo,
        tau_hi,
        certified_to: ALPHA_TABLE_MAX,
    })
}

/// `min_τ (A cos(ετ) + α(τ))` over the table with local refinement.
pub fn witness_minimum(a: f64, epsilon: f64) -> (f64, f64) {
    let table = alpha_table();
    let (i, _) = table
        .values
        .par_iter()
        .enumerate()
        .map(|(i, &v)| (i, a * (epsilon * table.tau(i)).cos() + v))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("non-empty table");
    let f = |t: f64| -(a * (epsilon * t).cos() + alpha(t).unwrap_or(f64::NAN));
    let (t, v) = refine_max(f, table.tau(i));
    (t, -v)
}

/// The default `ε` grid.
pub fn default_eps_grid() -> Vec<f64> {
    geometric_grid(DEFAULT_EPS_MIN, DEFAULT_EPS_MAX, DEFAULT_EPS_POINTS)
}

pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let r = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|i| lo * (r * i as f64).exp()).collect()
}

/// Tail bound for `∫_{|τ| > T} |w(τ)| |ĝ(1/2 + iτ)|² dτ/2π` with
/// `|w(τ)| ≤ log τ + 2` (true for every weight used here once `τ ≥ 50`).
fn line_tail(g: &TestFunction, t: f64) -> f64 {
    let v = g.derivative_bounds_at(0.5);
    let lt = t.ln();
    let mut best = f64::INFINITY;
    for (m, &vm) in v.iter().enumerate().skip(1) {
        let k = 2.0 * m as f64 - 1.0;
        best = best.min(vm * vm * t.powf(-k) * ((lt + 2.0) / k + 1.0 / (k * k)));
    }
    2.0 * best / (2.0 * PI)
}

/// `∫ w(τ) |ĝ(1/2 + iτ)|² dτ/2π` with automatic truncation.
fn line_integral<W>(g: &TestFunction, w: W, even_real: bool, tol: f64, what: &'static str) -> Result<(Complex64, f64)>
where
    W: Fn(f64) -> Result<Complex64> + Sync,
{
    let mut t = T_CUT_START;
    while line_tail(g, t) > 0.5 * tol {
        t *= 2.0;
        if t > T_CUT_MAX {
            return Err(Error::TailBound {
                what,
                bound: line_tail(g, t),
                requested: tol,
            });
        }
    }
    let tail = line_tail(g, t);
    let mellin_tol = 1e-3 * tol / t;
    let integrand = |tau: f64| -> Result<Complex64> {
        let m = g.mellin_tol(Complex64::new(0.5, tau), mellin_tol)?;
        Ok(w(tau)? * m.value.norm_sqr())
    };
    let symmetric = even_real && g.is_real();
    let (value, qerr) = chunked_integral(integrand, t, symmetric, 0.4 * tol, what)?;
    Ok((value, qerr + tail + mellin_tol * t))
}

fn check_small_support(g: &TestFunction, what: &'static str) -> Result<()> {
    let (a, b) = g.support();
    // supp k = [a/b, b/a] must lie in [1/2, 2]
    if b / a > 2.0 * (1.0 + 1e-12) {
        return Err(Error::SupportTooWide {
            what,
            a,
            b,
            reason: "supp g*g^τ must lie in [1/2, 2], i.e. b/a ≤ 2",
        });
    }
    Ok(())
}

/// `Z(k)` over supplied zeros: `Σ_{γ>0} |ĝ(1/2+iγ)|² + |ĝ(1/2−iγ)|²`.
#[derive(Debug, Clone, Copy)]
pub struct ZeroSideZ {
    pub value: f64,
    pub tail_bound: f64,
    pub zeros_used: usize,
}

pub fn z_zero_side(g: &TestFunction, zeros: &ZeroSet) -> Result<ZeroSideZ> {
    if zeros.character.modulus != 1 {
        return Err(Error::InvalidParameter(format!(
            "Z(k) is defined here for ζ only, got zeros of {}",
            zeros.character
        )));
    }
    let terms: Vec<f64> = zeros
        .ordinates()
        .par_iter()
        .map(|&gm| {
            let up = g.mellin_tol(Complex64::new(0.5, gm), 1e-15)?.value.norm_sqr();
            let down = g.mellin_tol(Complex64::new(0.5, -gm), 1e-15)?.value.norm_sqr();
            Ok(up + down)
        })
        .collect::<Result<_>>()?;
    let value = crate::quadrature::pairwise_sum(&terms);
    let bound = |t: f64| 2.0 * g.mellin_decay_bound(0.5, t).powi(2);
    let tail_bound = zero_tail_bound(bound, 1, zeros.len(), zeros.height);
    Ok(ZeroSideZ {
        value,
        tail_bound,
        zeros_used: zeros.len(),
    })
}

/// `Z(k) = ∫ α(τ)|ĝ(1/2 + iτ)|² dτ/2π`, valid for `b/a ≤ 2`; returns the
/// value and its error bound.
pub fn z_spectral(g: &TestFunction) -> Result<(f64, f64)> {
    z_spectral_tol(g, POSITIVITY_TOL)
}

pub fn z_spectral_tol(g: &TestFunction, tol: f64) -> Result<(f64, f64)> {
    check_small_support(g, "z_spectral")?;
    let (v, e) = line_integral(g, |t| Ok(Complex64::new(alpha(t)?, 0.0)), true, tol, "Z(k) spectral integral")?;
    Ok((v.re, e))
}

/// The two routes to `2 Re k̂(0)` and the auxiliary vanishing moment.
#[derive(Debug, Clone, Copy)]
pub struct KernelCheck {
    /// `2 Re k̂(0)` from `k` directly.
    pub lhs: f64,
    /// `∫ 8√2 cos(τ log 2)/(1 + 4τ²) |ĝ|² dτ/2π`.
    pub rhs: f64,
    pub residual: f64,
    /// `|∫ k̂(s) 2^{1−s}/s dτ/2π|`, zero when `supp k ⊆ [1/2, 2]`.
    pub auxiliary: f64,
    pub error: f64,
}

pub fn kernel_moment_check(g: &TestFunction) -> Result<KernelCheck> {
    check_small_support(g, "kernel_moment_check")?;
    let k = autocorrelation(g);
    let direct = k.mellin(Complex64::new(0.0, 0.0))?;
    let lhs = 2.0 * direct.value.re;
    let (rhs, e1) = line_integral(
        g,
        |t| Ok(Complex64::new(kernel(t), 0.0)),
        true,
        POSITIVITY_TOL,
        "kernel moment",
    )?;
    let (aux, e2) = line_integral(
        g,
        |t| {
            let s = Complex64::new(0.5, t);
            Ok(((1.0 - s) * LN_2).exp() / s)
        },
        false,
        POSITIVITY_TOL,
        "auxiliary moment",
    )?;
    Ok(KernelCheck {
        lhs,
        rhs: rhs.re,
        residual: (lhs - rhs.re).abs(),
        auxiliary: aux.norm(),
        error: e1 + e2 + 2.0 * direct.quadrature_error,
    })
}

/// `∫ cos(ετ)|ĝ(1/2 + iτ)|² dτ/2π` and its closed form `Re(e^{ε/2} k(e^ε))`.
#[derive(Debug, Clone, Copy)]
pub struct CosineMoment {
    pub integral: f64,
    pub direct: f64,
    pub residual: f64,
    pub error: f64,
}

pub fn cosine_moment(g: &TestFunction, epsilon: f64) -> Result<CosineMoment> {
    let (v, e) = line_integral(
        g,
        |t| Ok(Complex64::new((epsilon * t).cos(), 0.0)),
        true,
        POSITIVITY_TOL,
        "cosine moment",
    )?;
    let k = autocorrelation(g);
    let direct = ((0.5 * epsilon).exp() * k.eval(epsilon.exp())).re;
    let residual = (v.re - direct).abs();
    if residual > 1e-6 {
        return Err(Error::InternalConsistency {
            what: "cosine moment",
            detail: format!("integral {} vs Re(e^(ε/2) k(e^ε)) = {direct}", v.re),
        });
    }
    Ok(CosineMoment {
        integral: v.re,
        direct,
        residual,
        error: e,
    })
}

/// Everything the positivity search produces.
#[derive(Debug, Clone)]
pub struct PositivityReport {
    pub g_descriptor: String,
    pub c: f64,
    /// `ε* = 2 log c`, the supremum of feasible `ε` found.
    pub epsilon: f64,
    /// Smallest infeasible `ε` above `ε*`, if the grid reached one.
    pub epsilon_infeasible: Option<f64>,
    pub feasible_a: Option<(f64, f64)>,
    pub witness_a: f64,
    /// `min_τ (A cos(ε*τ) + α(τ))` over the certified range.
    pub witness_min: f64,
    pub witness_argmin: f64,
    pub certified_to: f64,
    pub alpha_min: f64,
    pub alpha_argmin: f64,
    pub z_zero_side: Option<ZeroSideZ>,
    pub z_spectral: f64,
    pub z_spectral_error: f64,
    pub z_residual: Option<f64>,
    pub kernel: KernelCheck,
    pub cosine: CosineMoment,
    /// `|z_spectral − (∫(A cos + α)|ĝ|² − A·cosine moment)|`.
    pub decomposition_residual: f64,
    pub grid_points: usize,
}

impl PositivityReport {
    /// `1 < c < √2`.
    pub fn c_in_range(&self) -> bool {
        self.c > 1.0 && self.c < SQRT_2
    }
}

/// Bisects between a feasible and an infeasible `ε`.
fn bisect_transition(mut feasible: Feasibility, mut infeasible: f64) -> Result<(Feasibility, f64)> {
    while infeasible - feasible.epsilon > EPS_RESOLUTION {
        let mid = 0.5 * (feasible.epsilon + infeasible);
        let f = feasible_amplitude(mid)?;
        if f.feasible() {
            feasible = f;
        } else {
            infeasible = mid;
        }
    }
    Ok((feasible, infeasible))
}

/// Scans `ε`, locates the feasibility transition, and assembles the report
/// for `g` (default: the `exp_inverse` bump on `[1/c, c]`).
pub fn max_admissible_c(eps_grid: &[f64], g: Option<&TestFunction>, zeros: Option<&ZeroSet>) -> Result<PositivityReport> {
    if eps_grid.is_empty() {
        return Err(Error::InvalidParameter("empty ε grid".into()));
    }
    let mut grid = eps_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let scans: Vec<Feasibility> = grid.par_iter().map(|&e| feasible_amplitude(e)).collect::<Result<_>>()?;
    let last = scans.iter().rposition(Feasibility::feasible).ok_or(Error::NoFeasibleEpsilon)?;
    let (best, infeasible) = if last + 1 < scans.len() {
        let (f, inf) = bisect_transition(scans[last], grid[last + 1])?;
        (f, Some(inf))
    } else {
        (scans[last], None)
    };
    let epsilon = best.epsilon;
    let c = (0.5 * epsilon).exp();
    let witness_a = best.midpoint();
    let (witness_argmin, witness_min) = witness_minimum(witness_a, epsilon);
    let (alpha_argmin, alpha_min) = alpha_min();

    let sample = match g {
        Some(g) => g.clone(),
        None => make_bump(1.0 / c, c, Profile::ExpInverse)?,
    };
    let (z_spec, z_err) = z_spectral(&sample)?;
    let kernel = kernel_moment_check(&sample)?;
    let cosine = cosine_moment(&sample, epsilon)?;
    let (shifted, _) = line_integral(
        &sample,
        |t| Ok(Complex64::new(witness_a * (epsilon * t).cos() + alpha(t)?, 0.0)),
        true,
        POSITIVITY_TOL,
        "shifted Z(k) integral",
    )?;
    let decomposition_residual = (z_spec - (shifted.re - witness_a * cosine.integral)).abs();
    let z_zero = zeros.map(|z| z_zero_side(&sample, z)).transpose()?;
    let z_residual = z_zero.map(|z| (z.value - z_spec).abs());
    let report = PositivityReport {
        g_descriptor: sample.descriptor(),
        c,
        // stored as 2 log c so the pair is consistent to the last bit
        epsilon: 2.0 * c.ln(),
        epsilon_infeasible: infeasible,
        feasible_a: best.interval(),
        witness_a,
        witness_min,
        witness_argmin,
        certified_to: best.certified_to,
        alpha_min,
        alpha_argmin,
        z_zero_side: z_zero,
        z_spectral: z_spec,
        z_spectral_error: z_err,
        z_residual,
        kernel,
        cosine,
        decomposition_residual,
        grid_points: grid.len(),
    };
    if !report.c_in_range() {
        return Err(Error::Certificate(format!("admissible c = {c} outside (1, √2)")));
    }
    Ok(report)
}
