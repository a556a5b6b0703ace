//! Place-side local terms `w_ν(g; χ)` of the explicit formula over ℚ.
//!
//! All quadrature runs in log coordinates: on `ℝ_{>0}` the Weil measure
//! `d^×t = dt/(2|t|)` becomes `dy/2` with `y = log t`, and `g(1/t)√t` becomes
//! `G(−y) e^{y/2}` with `G(x) = g(e^x)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::characters::arith::{euler_phi, primes_up_to};
use crate::characters::{local_component, CycloSum, DirichletCharacter, LocalCharacter, Place};
use crate::error::{Error, Result};
use crate::quadrature::integrate_complex;
use crate::special::EULER_GAMMA;
use crate::test_functions::TestFunction;

/// Sign relating the zero side to the assembled place side:
/// `Σ_ρ ĝ(ρ − 1/2) − δ_χ(ĝ(1/2) + ĝ(−1/2)) = PLACE_SIDE_SIGN · Σ_ν w_ν(g; χ)`.
pub const PLACE_SIDE_SIGN: f64 = 1.0;

/// Default absolute tolerance for the archimedean quadratures.
pub const LOCAL_TOL: f64 = 1e-13;

/// Tolerance of the ramified two-path consistency check.
pub const RAMIFIED_CONSISTENCY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectWeil,
    Spectral,
}

/// One place's contribution with the method that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaceTerm {
    pub place: Place,
    pub value: Complex64,
    pub method: Method,
    pub est_error: f64,
}

/// Haar measure normalisation on `ℚ_p^×`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureConvention {
    /// Units carry mass `log p`.
    WeilLogQ,
    /// Units carry mass 1.
    TateUnit,
}

impl MeasureConvention {
    pub fn units_mass(self, p: u64) -> f64 {
        match self {
            MeasureConvention::WeilLogQ => (p as f64).ln(),
            MeasureConvention::TateUnit => 1.0,
        }
    }

    /// Re-expresses an integral against this measure in the other convention.
    pub fn convert(self, value: f64, to: MeasureConvention, p: u64) -> f64 {
        match (self, to) {
            (MeasureConvention::TateUnit, MeasureConvention::WeilLogQ) => value * (p as f64).ln(),
            (MeasureConvention::WeilLogQ, MeasureConvention::TateUnit) => value / (p as f64).ln(),
            _ => value,
        }
    }
}

/// The four pieces of the archimedean term.
#[derive(Debug, Clone, Copy)]
pub struct RealPieces {
    /// `−(log 2π + γ) g(1)`.
    pub constant: Complex64,
    /// `∫_{t ≥ c} (g(1/t)√t − g(1)) / |1 − t| d^×t`.
    pub upper: Complex64,
    /// `∫_{0 < t < c} g(1/t)√t / |1 − t| d^×t`.
    pub lower: Complex64,
    /// `∫_{t < 0} g(1/|t|)√|t| / |1 − t| d^×t` without the parity factor.
    pub negative: Complex64,
    /// `g(1)·½ log((1 − c)/c)`, zero at the printed split `c = 1/2`.
    pub split_correction: Complex64,
    pub error: f64,
}

impl RealPieces {
    pub fn assemble(&self, parity: i8) -> Complex64 {
        self.constant - self.upper - self.lower - self.split_correction - self.negative * parity as f64
    }
}

fn check_parity(parity: i8) -> Result<()> {
    if parity == 1 || parity == -1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("parity must be ±1, got {parity}")))
    }
}

/// Integrates over `[lo, hi]`, splitting at the given breakpoints.
fn integrate_pieces<F: Fn(f64) -> Complex64>(
    f: F,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    tol: f64,
    what: &'static str,
) -> Result<(Complex64, f64)> {
    if hi <= lo {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let mut knots: Vec<f64> = breaks.iter().copied().filter(|&x| x > lo && x < hi).collect();
    knots.push(lo);
    knots.push(hi);
    knots.sort_by(f64::total_cmp);
    let share = tol / (knots.len() - 1) as f64;
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for w in knots.windows(2) {
        let q = integrate_complex(&f, w[0], w[1], share, what)?;
        value += q.value;
        error += q.error;
    }
    Ok((value, error))
}

/// Pieces of the archimedean term with the split between the subtracted
/// and plain integrals placed at `t = split` in `(0, 1)`.
pub fn real_place_pieces(g: &TestFunction, split: f64, tol: f64) -> Result<RealPieces> {
    if !(split > 0.0 && split < 1.0) {
        return Err(Error::InvalidParameter(format!("split point {split} outside (0, 1)")));
    }
    let (la, lb) = g.log_support();
    let g1 = g.eval_log(0.0);
    let ys = split.ln();
    // G(−y) vanishes outside [−lb, −la]
    let (ylo, yhi) = (-lb, -la);
    let breaks = [ylo, yhi, 0.0];
    let h = |y: f64| g.eval_log(-y) * (0.5 * y).exp();
    let tol4 = tol / 4.0;

    let upper_end = yhi.max(0.0);
    let (mut upper, e1) = integrate_pieces(
        |y| (h(y) - g1) / (1.0 - y.exp()).abs() * 0.5,
        ys,
        upper_end,
        &breaks,
        tol4,
        "archimedean subtracted integral",
    )?;
    if upper_end > 0.0 {
        // beyond the support only −g(1)/(e^y − 1) remains
        upper += g1 * (0.5 * (-(-upper_end).exp()).ln_1p());
    }
    let (lower, e2) = integrate_pieces(
        |y| h(y) / (1.0 - y.exp()) * 0.5,
        ylo,
        yhi.min(ys),
        &breaks,
        tol4,
        "archimedean lower integral",
    )?;
    let (negative, e3) = integrate_pieces(
        |y| h(y) / (1.0 + y.exp()) * 0.5,
        ylo,
        yhi,
        &breaks,
        tol4,
        "archimedean negative integral",
    )?;
    Ok(RealPieces {
        constant: -g1 * ((2.0 * PI).ln() + EULER_GAMMA),
        upper,
        lower,
        negative,
        split_correction: g1 * (0.5 * ((1.0 - split) / split).ln()),
        error: e1 + e2 + e3 + tol4,
    })
}

/// Archimedean term `w_r(g; χ)` with the split point `c`; the result does not
/// depend on `c`.
pub fn w_real_with_split(g: &TestFunction, parity: i8, split: f64, tol: f64) -> Result<PlaceTerm> {
    check_parity(parity)?;
    let pieces = real_place_pieces(g, split, tol)?;
    Ok(PlaceTerm {
        place: Place::Real,
        value: pieces.assemble(parity),
        method: Method::DirectWeil,
        est_error: pieces.error,
    })
}

/// Archimedean term for a character of the given parity `χ(−1)`.
pub fn w_real(g: &TestFunction, parity: i8) -> Result<PlaceTerm> {
    w_real_with_split(g, parity, 0.5, LOCAL_TOL)
}

/// Exponents `j ≥ 1` with `p^j` (resp. `p^{−j}`) strictly inside the support.
pub(crate) fn prime_power_exponents(g: &TestFunction, p: u64) -> (Vec<i32>, Vec<i32>) {
    let (a, b) = g.support();
    let pf = p as f64;
    let mut up = Vec::new();
    let mut down = Vec::new();
    let mut j = 1;
    loop {
        let x = pf.powi(j);
        if x >= b && 1.0 / x <= a {
            break;
        }
        if x > a && x < b {
            up.push(j);
        }
        if 1.0 / x > a && 1.0 / x < b {
            down.push(j);
        }
        j += 1;
    }
    (up, down)
}

fn expect_finite(chi_p: &LocalCharacter) -> Result<u64> {
    chi_p
        .prime()
        .ok_or_else(|| Error::InvalidParameter("finite-place term requested at the real place".into()))
}

/// Unramified term `−log p Σ_j (χ(p)^j p^{−j/2} g(p^j) + χ(p)^{−j} p^{−j/2} g(p^{−j}))`.
pub fn w_finite_unramified(g: &TestFunction, chi_p: &LocalCharacter) -> Result<PlaceTerm> {
    let p = expect_finite(chi_p)?;
    if chi_p.is_ramified() {
        return Err(Error::InvalidParameter(format!("character is ramified at {p}")));
    }
    let c = chi_p
        .value_at_p
        .ok_or_else(|| Error::InvalidParameter(format!("no uniformizer value at {p}")))?;
    let pf = p as f64;
    let (up, down) = prime_power_exponents(g, p);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in up {
        acc += c.pow(j as i64).to_complex() * pf.powf(-0.5 * j as f64) * g.eval(pf.powi(j));
    }
    for j in down {
        acc += c.pow(-(j as i64)).to_complex() * pf.powf(-0.5 * j as f64) * g.eval(pf.powi(-j));
    }
    Ok(PlaceTerm {
        place: Place::Finite(p),
        value: -acc * pf.ln(),
        method: Method::DirectWeil,
        est_error: 4.0 * f64::EPSILON * acc.norm() * pf.ln(),
    })
}

/// `Σ_{k<f} p^k Σ_{u ∈ S_k} (1 − χ_p(u))` in `ℤ[ζ_n]`, where `S_k` is the
/// set of units mod `p^f` with `v_p(1 − u) = k`. Shells with `k ≥ f` have
/// `χ_p = 1` and drop out.
fn conductor_shell_sum(chi_p: &LocalCharacter, p: u64) -> CycloSum {
    let m = chi_p.unit_modulus();
    let n = chi_p
        .unit_values
        .iter()
        .flatten()
        .fold(1u64, |acc, a| crate::characters::arith::lcm(acc, a.den()));
    let mut sum = CycloSum::zero(n);
    for u in 1..m {
        let Some(v) = chi_p.unit_values[u as usize] else { continue };
        let d = (m + 1 - u) % m;
        let k = if d == 0 { chi_p.f } else { crate::characters::arith::valuation(d, p).min(chi_p.f) };
        if k >= chi_p.f {
            continue;
        }
        let weight = p.pow(k) as i64;
        sum.add_integer(weight);
        sum.add_root(v, -weight);
    }
    sum
}

/// `∫_{|t|_p = 1} (1 − χ_p(t)) / |1 − t|_p d^×t` in the Weil measure,
/// enumerated exactly over unit shells.
pub fn conductor_integral(chi_p: &LocalCharacter) -> Result<f64> {
    let p = expect_finite(chi_p)?;
    if !chi_p.is_ramified() {
        return Ok(0.0);
    }
    let sum = conductor_shell_sum(chi_p, p);
    let n = sum.as_integer().ok_or_else(|| Error::InternalConsistency {
        what: "conductor integral",
        detail: format!("shell sum at p = {p} is not rational"),
    })?;
    let phi = euler_phi(chi_p.unit_modulus()) as f64;
    Ok(n as f64 / phi * (p as f64).ln())
}

/// `Σ_{u mod p^f} χ_p(u)` in exact arithmetic.
pub fn unit_character_sum(chi_p: &LocalCharacter) -> CycloSum {
    let n = chi_p
        .unit_values
        .iter()
        .flatten()
        .fold(1u64, |acc, a| crate::characters::arith::lcm(acc, a.den()));
    let mut sum = CycloSum::zero(n);
    for v in chi_p.unit_values.iter().flatten() {
        sum.add_root(*v, 1);
    }
    sum
}

/// Ramified term assembled shell by shell and checked against the closed
/// form `f log p · g(1)`.
pub fn w_finite_ramified(g: &TestFunction, chi_p: &LocalCharacter) -> Result<PlaceTerm> {
    let p = expect_finite(chi_p)?;
    if !chi_p.is_ramified() {
        return Err(Error::InvalidParameter(format!("character is unramified at {p}")));
    }
    let c = chi_p
        .value_at_p
        .ok_or_else(|| Error::InvalidParameter(format!("no uniformizer value at {p}")))?;
    let pf = p as f64;
    let log_p = pf.ln();
    let phi = euler_phi(chi_p.unit_modulus()) as f64;

    // |t| ≠ 1: on p^j U_p everything but χ_p is constant, and the unit sum vanishes
    let unit_sum = unit_character_sum(chi_p);
    if !unit_sum.is_zero() {
        return Err(Error::InternalConsistency {
            what: "ramified local term",
            detail: format!("unit sum of χ_p at p = {p} does not vanish"),
        });
    }
    let unit_integral = unit_sum.to_complex() * (log_p / phi);
    let (up, down) = prime_power_exponents(g, p);
    let mut off_units = Complex64::new(0.0, 0.0);
    // t = p^j u has |t| = p^{−j}, g(1/|t|) = g(p^j), |1 − t| = 1
    for j in up {
        off_units += g.eval(pf.powi(j)) * pf.powf(-0.5 * j as f64) * c.pow(j as i64).to_complex() * unit_integral;
    }
    // t = p^{−j} u has |t| = p^j, g(1/|t|) = g(p^{−j}), |1 − t| = p^j
    for j in down {
        off_units +=
            g.eval(pf.powi(-j)) * pf.powf(0.5 * j as f64 - j as f64) * c.pow(-(j as i64)).to_complex() * unit_integral;
    }
    let g1 = g.eval(1.0);
    let assembled = -off_units + g1 * conductor_integral(chi_p)?;
    let shortcut = g1 * (chi_p.f as f64 * log_p);
    let gap = (assembled - shortcut).norm();
    if gap > RAMIFIED_CONSISTENCY_TOL * shortcut.norm().max(1.0) {
        return Err(Error::InternalConsistency {
            what: "ramified local term",
            detail: format!("assembled {assembled} vs f log p g(1) = {shortcut}"),
        });
    }
    Ok(PlaceTerm {
        place: Place::Finite(p),
        value: assembled,
        method: Method::DirectWeil,
        est_error: gap + 4.0 * f64::EPSILON * shortcut.norm(),
    })
}

/// Direct Weil term at one place of a primitive character.
pub fn w_place(g: &TestFunction, chi: &DirichletCharacter, place: Place) -> Result<PlaceTerm> {
    let local = local_component(chi, place)?;
    match place {
        Place::Real => w_real(g, chi.parity()),
        Place::Finite(_) if local.is_ramified() => w_finite_ramified(g, &local),
        Place::Finite(_) => w_finite_unramified(g, &local),
    }
}

/// Largest prime with a power `p^{±j}` strictly inside the support, or 1.
pub fn largest_relevant_prime(g: &TestFunction) -> u64 {
    let (a, b) = g.support();
    let reach = b.max(1.0 / a);
    if !reach.is_finite() || reach < 2.0 {
        return 1;
    }
    primes_up_to(reach.floor() as u64)
        .into_iter()
        .rev()
        .find(|&p| {
            let (up, down) = prime_power_exponents(g, p);
            !up.is_empty() || !down.is_empty()
        })
        .unwrap_or(1)
}

/// Places that can contribute for `g` and `χ`: the real place, primes up to
/// the bound, and every prime dividing the conductor.
pub fn contributing_places(g: &TestFunction, chi: &DirichletCharacter, prime_bound: Option<u64>) -> Result<Vec<Place>> {
    let needed = largest_relevant_prime(g);
    let bound = prime_bound.unwrap_or(needed);
    if bound < needed {
        return Err(Error::InvalidParameter(format!(
            "prime bound {bound} is below {needed}, which has a power inside the support"
        )));
    }
    let mut primes = if bound >= 2 { primes_up_to(bound) } else { Vec::new() };
    for (p, _) in crate::characters::arith::factorize(chi.modulus()) {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort_unstable();
    let mut places = vec![Place::Real];
    places.extend(primes.into_iter().map(Place::Finite));
    Ok(places)
}

/// The assembled place side with its terms.
#[derive(Debug, Clone)]
pub struct PlaceSide {
    pub value: Complex64,
    pub error: f64,
    pub terms: Vec<PlaceTerm>,
}

/// `PLACE_SIDE_SIGN · (w_r + Σ_p w_p)`; ramified primes are always included.
pub fn place_side_sum(g: &TestFunction, chi: &DirichletCharacter, prime_bound: Option<u64>) -> Result<PlaceSide> {
    let places = contributing_places(g, chi, prime_bound)?;
    let terms: Vec<PlaceTerm> = places
        .par_iter()
        .map(|&place| w_place(g, chi, place))
        .collect::<Result<_>>()?;
    let value = terms.iter().map(|t| t.value).sum::<Complex64>() * PLACE_SIDE_SIGN;
    let error = terms.iter().map(|t| t.est_error).sum();
    Ok(PlaceSide { value, error, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::primitive_characters;
    use crate::test_functions::{make_bump, Profile};

    fn bump(a: f64, b: f64) -> TestFunction {
        make_bump(a, b, Profile::ExpInverse).unwrap()
    }

    /// Composite Simpson in the `t` variable, for integrands that vanish at
    /// both ends to all orders.
    fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
        let h = (hi - lo) / n as f64;
        let mut acc = f(lo) + f(hi);
        for k in 1..n {
            acc += f(lo + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    }

    #[test]
    fn real_term_without_regularisation() {
        // support in (1, 2): g(1) = 0 and g(1/t) lives on t ∈ (1/2, 1)
        let g = bump(1.1, 1.9);
        let gr = |t: f64| g.eval(1.0 / t).re * t.sqrt();
        let (lo, hi) = (1.0 / 1.9, 1.0 / 1.1);
        let upper = simpson(|t| gr(t) / (1.0 - t) / (2.0 * t), lo, hi, 20000);
        let negative = simpson(|t| gr(t) / (1.0 + t) / (2.0 * t), lo, hi, 20000);
        for parity in [1i8, -1] {
            let w = w_real(&g, parity).unwrap();
            let expected = -upper - parity as f64 * negative;
            assert!((w.value.re - expected).abs() < 1e-10, "{} vs {expected}", w.value.re);
            assert!(w.value.im.abs() <= w.est_error.max(1e-15));
        }
    }

    #[test]
    fn parity_flip_is_twice_the_negative_integral() {
        let g = bump(0.6, 1.7);
        let pieces = real_place_pieces(&g, 0.5, LOCAL_TOL).unwrap();
        let even = w_real(&g, 1).unwrap().value;
        let odd = w_real(&g, -1).unwrap().value;
        assert!((odd - even - pieces.negative * 2.0).norm() < 1e-13);
    }

    #[test]
    fn split_point_is_a_presentation_artifact() {
        for (a, b) in [(0.6, 1.7), (0.3, 3.5), (0.05, 20.0)] {
            let g = bump(a, b);
            let half = w_real_with_split(&g, 1, 0.5, LOCAL_TOL).unwrap().value;
            let third = w_real_with_split(&g, 1, 1.0 / 3.0, LOCAL_TOL).unwrap().value;
            assert!((half - third).norm() < 1e-11, "[{a}, {b}]: {half} vs {third}");
        }
    }

    #[test]
    fn real_term_against_t_coordinate_oracle() {
        // independent evaluation of the printed form in the t variable
        let g = bump(0.6, 1.7);
        let g1 = g.eval(1.0).re;
        let gr = |t: f64| g.eval(1.0 / t).re * t.sqrt();
        let (lo, hi) = (1.0 / 1.7, 1.0 / 0.6);
        let sub = |t: f64| (gr(t) - g1) / (1.0 - t).abs() / (2.0 * t);
        // even panel counts keep t = 1 off the grid; the jump there is integrable
        let near = simpson(sub, 0.5, 1.0 - 1e-9, 40000) + simpson(sub, 1.0 + 1e-9, hi, 40000);
        let tail = -g1 * 0.5 * (hi / (hi - 1.0)).ln();
        let negative = simpson(|t| gr(t) / (1.0 + t) / (2.0 * t), lo, hi, 40000);
        let expected = -((2.0 * PI).ln() + EULER_GAMMA) * g1 - (near + tail) - negative;
        let w = w_real(&g, 1).unwrap();
        assert!((w.value.re - expected).abs() < 1e-7, "{} vs {expected}", w.value.re);
    }

    #[test]
    fn unramified_examples() {
        let chi = DirichletCharacter::principal(1).unwrap();
        let two = local_component(&chi, Place::Finite(2)).unwrap();
        assert_eq!(w_finite_unramified(&bump(0.6, 1.7), &two).unwrap().value.norm(), 0.0);

        let g = bump(0.4, 2.5);
        let w = w_finite_unramified(&g, &two).unwrap();
        let expected = -(2f64.ln()) * 2f64.powf(-0.5) * (g.eval(2.0) + g.eval(0.5)).re;
        assert!((w.value.re - expected).abs() < 1e-15);

        let three = local_component(&chi, Place::Finite(3)).unwrap();
        assert_eq!(w_finite_unramified(&bump(1.0 / 3.0, 3.0), &three).unwrap().value.norm(), 0.0);
    }

    #[test]
    fn unramified_twist_uses_chi_of_p() {
        let chi = primitive_characters(5).into_iter().find(|c| !c.is_real()).unwrap();
        let local = local_component(&chi, Place::Finite(2)).unwrap();
        let g = bump(0.4, 2.5);
        let w = w_finite_unramified(&g, &local).unwrap();
        let c = chi.eval(2);
        let expected = -(g.eval(2.0) * c + g.eval(0.5) * c.conj()) * (2f64.ln() / 2f64.sqrt());
        assert!((w.value - expected).norm() < 1e-15);
    }

    #[test]
    fn conductor_integral_examples() {
        let mod9 = primitive_characters(9).remove(0);
        let l9 = local_component(&mod9, Place::Finite(3)).unwrap();
        assert!((conductor_integral(&l9).unwrap() - 2.0 * 3f64.ln()).abs() < 1e-15);
        let mod5 = primitive_characters(5).remove(0);
        let l5 = local_component(&mod5, Place::Finite(5)).unwrap();
        assert!((conductor_integral(&l5).unwrap() - 5f64.ln()).abs() < 1e-15);
        let principal = DirichletCharacter::principal(1).unwrap();
        let l7 = local_component(&principal, Place::Finite(7)).unwrap();
        assert_eq!(conductor_integral(&l7).unwrap(), 0.0);
    }

    #[test]
    fn ramified_paths_agree_for_small_conductors() {
        let g = bump(0.3, 3.5);
        for q in 2..=50 {
            for chi in primitive_characters(q) {
                for (p, f) in crate::characters::arith::factorize(q) {
                    let local = local_component(&chi, Place::Finite(p)).unwrap();
                    let exact = crate::characters::arith::valuation(q, p);
                    assert_eq!(local.f, f);
                    let ci = conductor_shell_sum(&local, p).as_integer().unwrap();
                    assert_eq!(ci, exact as i64 * euler_phi(local.unit_modulus()) as i64, "{chi}");
                    let w = w_finite_ramified(&g, &local).unwrap();
                    let shortcut = g.eval(1.0) * (f as f64 * (p as f64).ln());
                    assert!((w.value - shortcut).norm() < 1e-12, "{chi} at {p}");
                }
            }
        }
    }

    #[test]
    fn ramified_value_for_mod_nine() {
        let g = bump(0.6, 1.7).scaled(Complex64::new(0.5 / bump(0.6, 1.7).eval(1.0).re, 0.0));
        assert!((g.eval(1.0).re - 0.5).abs() < 1e-15);
        let chi = primitive_characters(9).remove(0);
        let local = local_component(&chi, Place::Finite(3)).unwrap();
        let w = w_finite_ramified(&g, &local).unwrap();
        assert!((w.value.re - 3f64.ln()).abs() < 1e-14);
        let vanishing = bump(1.1, 1.9);
        assert_eq!(w_finite_ramified(&vanishing, &local).unwrap().value.norm(), 0.0);
    }

    #[test]
    fn unit_sums_vanish_for_mod_five() {
        for chi in primitive_characters(5) {
            let local = local_component(&chi, Place::Finite(5)).unwrap();
            assert!(unit_character_sum(&local).is_zero());
        }
    }

    #[test]
    fn measure_conversion_is_log_p() {
        for p in [2u64, 3, 5, 97] {
            let tate = 0.37;
            let weil = MeasureConvention::TateUnit.convert(tate, MeasureConvention::WeilLogQ, p);
            assert_eq!(weil, tate * (p as f64).ln());
            let back = MeasureConvention::WeilLogQ.convert(weil, MeasureConvention::TateUnit, p);
            assert!((back - tate).abs() <= f64::EPSILON * tate);
        }
    }

    #[test]
    fn place_side_examples() {
        let principal = DirichletCharacter::principal(1).unwrap();
        let g = bump(0.6, 1.7);
        let side = place_side_sum(&g, &principal, None).unwrap();
        assert!((side.value - w_real(&g, 1).unwrap().value).norm() < 1e-15);

        let g = bump(0.3, 3.5);
        let side = place_side_sum(&g, &principal, Some(10)).unwrap();
        let finite: Complex64 = side.terms.iter().filter(|t| t.place != Place::Real).map(|t| t.value).sum();
        let expected = -(2f64.ln()) / 2f64.sqrt() * (g.eval(2.0) + g.eval(0.5)).re
            - 3f64.ln() / 3f64.sqrt() * (g.eval(3.0) + g.eval(1.0 / 3.0)).re;
        assert!((finite.re - expected).abs() < 1e-15);
        assert!(place_side_sum(&g, &principal, Some(2)).is_err());

        let chi9 = primitive_characters(9).remove(0);
        let g = bump(0.6, 1.7);
        let side = place_side_sum(&g, &chi9, Some(2)).unwrap();
        let three = side.terms.iter().find(|t| t.place == Place::Finite(3)).unwrap();
        assert!((three.value.re - 2.0 * 3f64.ln() * g.eval(1.0).re).abs() < 1e-14);
    }
}
