//! Spectral side: Tate Gamma factors, their logarithmic derivatives as
//! multipliers of the conductor operator, Poisson-summed profiles, and the
//! zero side of the explicit formula.
//!
//! On the critical line `s = 1/2 + iτ` each place contributes
//! `∫ (transform of g_{ν;χ})(τ) · h_ν(τ) dτ/2π` with `h_ν = Γ'/Γ(s, χ_ν)`.
//! At the real place the transform is `ĝ(iτ)`. At a finite place the value
//! group is `p^ℤ`, so the transform is a trigonometric polynomial in `τ` of
//! period `2π/log p` and the integral runs over one period.

use std::f64::consts::PI;
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::characters::{local_component, Angle, DirichletCharacter, LocalCharacter, Place};
use crate::error::{Error, Result};
use crate::local_terms::{contributing_places, Method, PlaceTerm, PLACE_SIDE_SIGN};
use crate::quadrature::{integrate_complex, pairwise_sum_complex};
use crate::special::{digamma, log_gamma};
use crate::test_functions::TestFunction;
use crate::zeros::{zero_count_upper, ZeroSet};

/// Starting truncation of the real-place spectral integral.
pub const T_CUT_START: f64 = 50.0;
/// Largest truncation tried before giving up.
pub const T_CUT_MAX: f64 = 1.0e5;
/// Default tolerance of spectral place terms.
pub const SPECTRAL_TOL: f64 = 1e-11;
/// Extra trapezoid nodes beyond `2K` on one period of a finite-place integral.
const PERIOD_PADDING: usize = 256;
/// Width of the chunks the real-place integral is split into.
const CHUNK: f64 = 25.0;

fn strip_check(s: Complex64) -> Result<()> {
    if s.re > 0.0 && s.re < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "tate_gamma",
            at: format!("{s}"),
            reason: "outside the open strip 0 < Re s < 1".into(),
        })
    }
}

/// Local Tate Gamma factor `Γ(s, χ_ν)`, defined by
/// `F(χ_ν(x)|x|^{s−1}) = Γ(s, χ_ν) χ_ν^{−1}(x) |x|^{−s}` for the additive
/// Fourier transform `F` with kernel `e^{−2πixy}` at the real place.
///
/// Finite places use the untwisted unramified factor; the value `χ(p)` is
/// carried by the twisted profile instead (see [`twisted_profile`]).
#[derive(Debug, Clone)]
pub struct TateGamma {
    pub place: Place,
    pub local: LocalCharacter,
    /// Unimodular constant of a ramified factor; not computed, taken as 1.
    pub root_number: Option<Complex64>,
}

/// The odd real-place factor carries `−i`, fixed by the Gaussian
/// `x e^{−πx²}`, whose transform is `−i y e^{−πy²}`.
pub const ODD_REAL_CONSTANT: Complex64 = Complex64 { re: 0.0, im: -1.0 };

impl TateGamma {
    pub fn new(local: &LocalCharacter) -> Self {
        TateGamma {
            place: local.place,
            local: local.clone(),
            root_number: None,
        }
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        strip_check(s)?;
        let one = Complex64::new(1.0, 0.0);
        match self.place {
            Place::Real => {
                let ln_pi = PI.ln();
                if self.local.parity == Some(-1) {
                    let l = (0.5 - s) * ln_pi + log_gamma((one + s) * 0.5)? - log_gamma(one - s * 0.5)?;
                    Ok(ODD_REAL_CONSTANT * l.exp())
                } else {
                    let l = (0.5 - s) * ln_pi + log_gamma(s * 0.5)? - log_gamma((one - s) * 0.5)?;
                    Ok(l.exp())
                }
            }
            Place::Finite(p) => {
                let lp = (p as f64).ln();
                if self.local.is_ramified() {
                    let eps = self.root_number.unwrap_or(one);
                    Ok(eps * ((s - 0.5) * (self.local.f as f64 * lp)).exp())
                } else {
                    Ok((one - ((s - 1.0) * lp).exp()) / (one - (-s * lp).exp()))
                }
            }
        }
    }
}

pub fn tate_gamma(local: &LocalCharacter) -> TateGamma {
    TateGamma::new(local)
}

/// Spectral multiplier `h(τ) = Γ'/Γ(1/2 + iτ, χ_ν)` of the conductor
/// operator at one place.
#[derive(Debug, Clone)]
pub struct SpectralMultiplier {
    pub place: Place,
    pub local: LocalCharacter,
    /// `2π/log p` at finite places.
    pub period: Option<f64>,
}

impl SpectralMultiplier {
    pub fn new(local: &LocalCharacter) -> Self {
        let period = local.prime().map(|p| 2.0 * PI / (p as f64).ln());
        SpectralMultiplier {
            place: local.place,
            local: local.clone(),
            period,
        }
    }

    pub fn h(&self, tau: f64) -> Result<Complex64> {
        let s = Complex64::new(0.5, tau);
        let one = Complex64::new(1.0, 0.0);
        match self.place {
            Place::Real => {
                let shift = if self.local.parity == Some(-1) { one } else { Complex64::new(0.0, 0.0) };
                let a = digamma((s + shift) * 0.5)?;
                let b = digamma((one - s + shift) * 0.5)?;
                Ok(Complex64::new(-PI.ln(), 0.0) + (a + b) * 0.5)
            }
            Place::Finite(p) => {
                let lp = (p as f64).ln();
                if self.local.is_ramified() {
                    return Ok(Complex64::new(self.local.f as f64 * lp, 0.0));
                }
                let up = ((s - 1.0) * lp).exp();
                let down = (-s * lp).exp();
                Ok(-(up / (one - up) + down / (one - down)) * lp)
            }
        }
    }
}

pub fn multiplier(local: &LocalCharacter) -> SpectralMultiplier {
    SpectralMultiplier::new(local)
}

/// `h₊(τ) = −log π + Re ψ(1/4 + iτ/2)`, the even real-place multiplier.
pub fn h_plus(tau: f64) -> Result<f64> {
    Ok(-PI.ln() + digamma(Complex64::new(0.25, 0.5 * tau))?.re)
}

/// Exponents `k` with `q^k` strictly inside the support of `g`.
fn profile_range(g: &TestFunction, q: f64) -> (i64, i64) {
    let (la, lb) = g.log_support();
    let lq = q.ln();
    let lo = (la / lq).floor() as i64;
    let hi = (lb / lq).ceil() as i64;
    (lo, hi)
}

/// `Σ_{k∈ℤ} g(q^k) q^{ikτ}`, a finite sum.
pub fn poisson_profile(g: &TestFunction, q: f64, tau: f64) -> Result<Complex64> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!("profile base must exceed 1, got {q}")));
    }
    let lq = q.ln();
    let (lo, hi) = profile_range(g, q);
    Ok((lo..=hi)
        .map(|k| g.eval_log(k as f64 * lq) * Complex64::from_polar(1.0, k as f64 * lq * tau))
        .sum())
}

/// `Σ_k g(p^k) χ(p)^k p^{ikτ}`: the profile of `g_{ν;χ}` at a finite place.
pub fn twisted_profile(g: &TestFunction, local: &LocalCharacter, tau: f64) -> Result<Complex64> {
    let p = local
        .prime()
        .ok_or_else(|| Error::InvalidParameter("twisted profile needs a finite place".into()))?;
    let c = local.value_at_p.unwrap_or(Angle::ONE);
    let lq = (p as f64).ln();
    let (lo, hi) = profile_range(g, p as f64);
    Ok((lo..=hi)
        .map(|k| g.eval_log(k as f64 * lq) * c.pow(k).to_complex() * Complex64::from_polar(1.0, k as f64 * lq * tau))
        .sum())
}

/// Certified upper bound for `Σ_{j ≥ 1} B(x₀ + (j−1)·step)` with
/// `B(x) = min_m V_m x^{−m}` (the tail of a periodized Mellin sum).
fn lattice_tail(v: &[f64], x0: f64, step: f64) -> f64 {
    if x0 <= 0.0 {
        return f64::INFINITY;
    }
    let mut best = f64::INFINITY;
    for (m, &vm) in v.iter().enumerate().skip(2) {
        let mf = m as f64;
        // first term plus the integral comparison for the rest
        let bound = vm * (x0.powf(-mf) + x0.powf(1.0 - mf) / ((mf - 1.0) * step));
        best = best.min(bound);
    }
    best
}

/// Result of a periodized Mellin sum.
#[derive(Debug, Clone, Copy)]
pub struct PeriodizedSum {
    pub value: Complex64,
    /// Certified bound on the omitted terms plus quadrature errors.
    pub error: f64,
    /// Terms `|j| ≤ j_max` were summed.
    pub j_max: i64,
}

/// `(1/log q) Σ_j ĝ(i(τ + 2πj/log q))`, truncated once the decay bound of
/// the omitted terms falls below `tol`.
pub fn periodized_mellin(g: &TestFunction, q: f64, tau: f64, tol: f64) -> Result<PeriodizedSum> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!("profile base must exceed 1, got {q}")));
    }
    let lq = q.ln();
    let step = 2.0 * PI / lq;
    let v = g.derivative_bounds_at(0.0);
    let mellin = |j: i64| g.mellin_tol(Complex64::new(0.0, tau + step * j as f64), 1e-3 * tol);
    let first = mellin(0)?;
    let mut acc = first.value;
    let mut qerr = first.quadrature_error;
    let mut j = 0i64;
    loop {
        j += 1;
        for jj in [j, -j] {
            let m = mellin(jj)?;
            acc += m.value;
            qerr += m.quadrature_error;
        }
        // both tails start at distance j·step − |τ| from the origin
        let x0 = (j as f64 + 1.0) * step - tau.abs();
        let tail = 2.0 * lattice_tail(&v, x0, step);
        if tail / lq <= tol {
            return Ok(PeriodizedSum {
                value: acc / lq,
                error: (tail + qerr) / lq,
                j_max: j,
            });
        }
        if j > 100_000 {
            return Err(Error::TailBound {
                what: "periodized Mellin sum",
                bound: tail / lq,
                requested: tol,
            });
        }
    }
}

/// Certified `∫_T^∞ B(τ)(log τ + 1) dτ` with `B = min_m V_m τ^{−m}`; valid
/// for `T ≥ 50`, where `|h(τ)| ≤ log τ + 1` at the real place.
fn real_tail(v: &[f64], t: f64) -> f64 {
    let mut best = f64::INFINITY;
    let lt = t.ln();
    for (m, &vm) in v.iter().enumerate().skip(2) {
        let k = m as f64 - 1.0;
        // ∫_T^∞ τ^{−m}(log τ + 1) dτ = T^{−k}((log T + 1)/k + 1/k²)
        best = best.min(vm * t.powf(-k) * ((lt + 1.0) / k + 1.0 / (k * k)));
    }
    best
}

/// `(1/2π) ∫_{−T}^{T} f(τ) dτ` in parallel chunks.
pub(crate) fn chunked_integral<F>(f: F, t: f64, symmetric_real: bool, tol: f64, what: &'static str) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    let lo = if symmetric_real { 0.0 } else { -t };
    let n = ((t - lo) / CHUNK).ceil().max(1.0) as usize;
    let width = (t - lo) / n as f64;
    let share = tol / n as f64;
    let pieces: Vec<(Complex64, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = lo + i as f64 * width;
            let failure = Mutex::new(None);
            let q = integrate_complex(
                |x| match f(x) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.lock().unwrap().get_or_insert(e);
                        Complex64::new(f64::NAN, 0.0)
                    }
                },
                a,
                a + width,
                share,
                what,
            );
            if let Some(e) = failure.into_inner().unwrap() {
                return Err(e);
            }
            let q = q?;
            Ok((q.value, q.error))
        })
        .collect::<Result<_>>()?;
    let values: Vec<Complex64> = pieces.iter().map(|p| p.0).collect();
    let mut value = pairwise_sum_complex(&values);
    let mut error: f64 = pieces.iter().map(|p| p.1).sum();
    if symmetric_real {
        // f(−τ) = conj f(τ)
        value = Complex64::new(2.0 * value.re, 0.0);
        error *= 2.0;
    }
    Ok((value / (2.0 * PI), error / (2.0 * PI)))
}

/// Real-place term `(1/2π) ∫ ĝ(iτ) h(τ) dτ`, with `T_cut` doubled from 50
/// until the certified tail is below half the tolerance.
pub fn spectral_real_term(g: &TestFunction, parity: i8, tol: f64) -> Result<PlaceTerm> {
    let local = LocalCharacter {
        place: Place::Real,
        parity: Some(parity),
        unit_values: vec![Some(Angle::ONE)],
        value_at_p: None,
        f: 0,
    };
    let mult = SpectralMultiplier::new(&local);
    let v = g.derivative_bounds_at(0.0);
    let mut t = T_CUT_START;
    let mut tail = 2.0 * real_tail(&v, t) / (2.0 * PI);
    while tail > 0.5 * tol {
        t *= 2.0;
        if t > T_CUT_MAX {
            return Err(Error::TailBound {
                what: "real-place spectral integral",
                bound: tail,
                requested: tol,
            });
        }
        tail = 2.0 * real_tail(&v, t) / (2.0 * PI);
    }
    let mellin_tol = 1e-3 * tol / t;
    let integrand = |tau: f64| -> Result<Complex64> {
        Ok(g.mellin_tol(Complex64::new(0.0, tau), mellin_tol)?.value * mult.h(tau)?)
    };
    let (value, qerr) = chunked_integral(integrand, t, g.is_real(), 0.4 * tol, "real-place spectral integral")?;
    Ok(PlaceTerm {
        place: Place::Real,
        value,
        method: Method::Spectral,
        est_error: qerr + tail + 2.0 * mellin_tol * t,
    })
}

/// Finite-place term `(log p/2π) ∫_0^{2π/log p} P_χ(τ) h(τ) dτ`, by the
/// trapezoid rule, which is exact up to aliasing of order `p^{−128}` for
/// trigonometric-polynomial profiles.
pub fn spectral_finite_term(g: &TestFunction, local: &LocalCharacter) -> Result<PlaceTerm> {
    let p = local
        .prime()
        .ok_or_else(|| Error::InvalidParameter("finite-place term requested at the real place".into()))?;
    let mult = SpectralMultiplier::new(local);
    let period = mult.period.expect("finite place has a period");
    let (lo, hi) = profile_range(g, p as f64);
    let k = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
    let m = 2 * k + PERIOD_PADDING;
    let samples: Vec<Complex64> = (0..m)
        .into_par_iter()
        .map(|i| {
            // offset by half a step: h is singular nowhere on the line, but this
            // keeps τ = 0 off the grid for symmetric profiles
            let tau = period * (i as f64 + 0.5) / m as f64;
            Ok(twisted_profile(g, local, tau)? * mult.h(tau)?)
        })
        .collect::<Result<_>>()?;
    let value = pairwise_sum_complex(&samples) / m as f64;
    let scale: f64 = samples.iter().map(|z| z.norm()).sum::<f64>() / m as f64;
    Ok(PlaceTerm {
        place: Place::Finite(p),
        value,
        method: Method::Spectral,
        est_error: 8.0 * f64::EPSILON * scale.max(value.norm()) * (m as f64).sqrt(),
    })
}

/// Spectral term at one place of a primitive character.
pub fn spectral_place_term(g: &TestFunction, chi: &DirichletCharacter, place: Place, tol: f64) -> Result<PlaceTerm> {
    let local = local_component(chi, place)?;
    match place {
        Place::Real => spectral_real_term(g, chi.parity(), tol),
        Place::Finite(_) => spectral_finite_term(g, &local),
    }
}

/// An element `t₀` of `ℚ_ν^×`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupElement {
    Real(f64),
    /// `p^k · u` with `u` a unit.
    Finite { k: i64, unit: i64 },
}

/// `H_ν(g_{ν;χ})(t₀)` by spectral synthesis. `H_ν` commutes with
/// dilations, so the value at `t₀` is `χ_ν^{−1}(t₀)` times the value at 1
/// for `g(|t₀| ·)`.
pub fn conductor_operator_apply(
    g: &TestFunction,
    chi: &DirichletCharacter,
    place: Place,
    t0: GroupElement,
    tol: f64,
) -> Result<Complex64> {
    let local = local_component(chi, place)?;
    let (abs, twist) = match (place, t0) {
        (Place::Real, GroupElement::Real(x)) if x != 0.0 && x.is_finite() => {
            let sign = if x < 0.0 { chi.parity() as f64 } else { 1.0 };
            (x.abs(), Complex64::new(sign, 0.0))
        }
        (Place::Finite(p), GroupElement::Finite { k, unit }) if unit.rem_euclid(p as i64) != 0 => {
            let value = local
                .eval(k, unit)
                .ok_or_else(|| Error::InvalidParameter(format!("no character value at {p}^{k}·{unit}")))?;
            ((p as f64).powi(-(k as i32)), value.inv().to_complex())
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "group element {t0:?} does not belong to the place {place}"
            )))
        }
    };
    // g(|t₀| u) = g.dilated(1/|t₀|)(u)
    let moved = g.dilated(1.0 / abs)?;
    Ok(spectral_place_term(&moved, chi, place, tol)?.value * twist)
}

/// Assembled spectral side.
#[derive(Debug, Clone)]
pub struct SpectralSide {
    pub value: Complex64,
    pub error: f64,
    pub terms: Vec<PlaceTerm>,
}

/// `PLACE_SIDE_SIGN · Σ_ν` spectral place terms.
pub fn spectral_side_sum(
    g: &TestFunction,
    chi: &DirichletCharacter,
    prime_bound: Option<u64>,
    tol: f64,
) -> Result<SpectralSide> {
    let places = contributing_places(g, chi, prime_bound)?;
    let terms: Vec<PlaceTerm> = places
        .iter()
        .map(|&place| spectral_place_term(g, chi, place, tol))
        .collect::<Result<_>>()?;
    let value = terms.iter().map(|t| t.value).sum::<Complex64>() * PLACE_SIDE_SIGN;
    let error = terms.iter().map(|t| t.est_error).sum();
    Ok(SpectralSide { value, error, terms })
}

/// Normalisation of the zero sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizationMode {
    /// `Σ_ρ ĝ(ρ − 1/2) − δ_χ(ĝ(1/2) + ĝ(−1/2))`.
    Centered,
    /// `Σ_ρ ĝ(ρ)`, no pole terms.
    Classical,
}

/// Certified upper bound for `Σ_{γ > H} f(γ)` over the zeros of an
/// L-function of modulus `q` above the completeness height `H` of a set
/// holding `n` zeros, for decreasing `f`.
///
/// Abel summation on a geometric grid `t_i` gives
/// `Σ_i (N(t_{i+1}) − n)(f(t_i) − f(t_{i+1}))`, and `N` is replaced by the
/// explicit envelope `zero_count_upper`. Beyond the last node the remainder
/// is bounded by `3 N_up(t) f(t)`, valid once `f` decays at least like `t^{−2}`.
pub fn zero_tail_bound<F: Fn(f64) -> f64>(f: F, q: u64, n: usize, height: f64) -> f64 {
    const RATIO: f64 = 1.01;
    const MAX_NODES: usize = 20_000;
    let n = n as f64;
    let excess = |t: f64| (zero_count_upper(q, t) - n).max(0.0);
    let mut t = height.max(1e-3);
    let mut ft = f(height.max(0.0));
    let mut total = 0.0;
    let mut running = excess(t);
    for _ in 0..MAX_NODES {
        let next = t * RATIO;
        let f_next = f(next);
        running = running.max(excess(next));
        total += running * (ft - f_next).max(0.0);
        t = next;
        ft = f_next;
        if running * ft < 1e-30 * total.max(1e-300) || running * ft < 1e-300 {
            break;
        }
    }
    total + 3.0 * running.max(excess(t)) * ft
}

/// Zero-side value with its certified tail.
#[derive(Debug, Clone, Copy)]
pub struct ZeroSide {
    pub value: Complex64,
    /// Bound on the omitted zeros above the completeness heights.
    pub tail_bound: f64,
    /// Accumulated Mellin quadrature error.
    pub quadrature_error: f64,
    pub zeros_used: usize,
}

impl ZeroSide {
    pub fn error(&self) -> f64 {
        self.tail_bound + self.quadrature_error
    }
}

/// Sum over zeros. Ordinates of `zeros` are the `γ > 0` of `L(s, χ)`; the
/// `γ < 0` are the negated ordinates of `conj_zeros`, the zeros of
/// `L(s, χ̄)`. For real `χ` the second set defaults to the first.
pub fn zero_side_sum(
    g: &TestFunction,
    chi: &DirichletCharacter,
    zeros: &ZeroSet,
    conj_zeros: Option<&ZeroSet>,
    mode: NormalizationMode,
    tol: Option<f64>,
) -> Result<ZeroSide> {
    if zeros.character != chi.id() {
        return Err(Error::InvalidParameter(format!(
            "zero set belongs to {}, not {}",
            zeros.character,
            chi.id()
        )));
    }
    let conj = match conj_zeros {
        Some(set) => {
            if set.character != chi.conj().id() {
                return Err(Error::InvalidParameter(format!(
                    "conjugate zero set belongs to {}, not {}",
                    set.character,
                    chi.conj().id()
                )));
            }
            set
        }
        None if chi.is_real() => zeros,
        None => {
            return Err(Error::InvalidParameter(format!(
                "{} is complex: the zeros of its conjugate are required",
                chi.id()
            )))
        }
    };
    let sigma = match mode {
        NormalizationMode::Centered => 0.0,
        NormalizationMode::Classical => 0.5,
    };
    let qtol = 1e-15;
    let upper: Vec<(Complex64, f64)> = zeros
        .ordinates()
        .par_iter()
        .map(|&gm| g.mellin_tol(Complex64::new(sigma, gm), qtol).map(|m| (m.value, m.quadrature_error)))
        .collect::<Result<_>>()?;
    let lower: Vec<(Complex64, f64)> = conj
        .ordinates()
        .par_iter()
        .map(|&gm| g.mellin_tol(Complex64::new(sigma, -gm), qtol).map(|m| (m.value, m.quadrature_error)))
        .collect::<Result<_>>()?;
    let mut values: Vec<Complex64> = upper.iter().chain(&lower).map(|x| x.0).collect();
    let mut qerr: f64 = upper.iter().chain(&lower).map(|x| x.1).sum();
    if mode == NormalizationMode::Centered && chi.modulus() == 1 {
        for s in [0.5, -0.5] {
            let m = g.mellin_tol(Complex64::new(s, 0.0), qtol)?;
            values.push(-m.value);
            qerr += m.quadrature_error;
        }
    }
    let value = pairwise_sum_complex(&values);
    let q = chi.modulus();
    let bound = |t: f64| g.mellin_decay_bound(sigma, t);
    let mut tail = zero_tail_bound(bound, q, zeros.len(), zeros.height);
    if !std::ptr::eq(conj, zeros) || !chi.is_real() {
        tail += zero_tail_bound(bound, q, conj.len(), conj.height);
    } else {
        tail *= 2.0;
    }
    if let Some(tol) = tol {
        if tail > tol {
            return Err(Error::TailBound {
                what: "zero-side sum",
                bound: tail,
                requested: tol,
            });
        }
    }
    Ok(ZeroSide {
        value,
        tail_bound: tail,
        quadrature_error: qerr,
        zeros_used: zeros.len() + if std::ptr::eq(conj, zeros) { 0 } else { conj.len() },
    })
}
