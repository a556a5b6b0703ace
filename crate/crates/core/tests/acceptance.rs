//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p weilbench --test acceptance -- --nocapture` to see
//! the verdicts.

use std::f64::consts::SQRT_2;
use std::path::Path;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use weilbench::characters::arith::{crt, euler_phi, valuation};
use weilbench::characters::{local_component, primitive_characters, DirichletCharacter, Place};
use weilbench::local_terms::{conductor_integral, contributing_places, w_place};
use weilbench::positivity::{default_eps_grid, max_admissible_c};
use weilbench::report::verify_explicit_formula;
use weilbench::special::AccuracyBudget;
use weilbench::spectral::{periodized_mellin, poisson_profile, spectral_place_term, tate_gamma};
use weilbench::test_functions::{make_bump, Profile, TestFunction};
use weilbench::zeros::{compute_dirichlet_zeros, compute_first_n, compute_riemann_zeros, import_zeros, riemann_count, ZeroSet};

const BUMPS: [(f64, f64); 3] = [(0.6, 1.7), (0.4, 2.5), (0.3, 3.5)];

fn bump(a: f64, b: f64) -> TestFunction {
    make_bump(a, b, Profile::ExpInverse).unwrap()
}

/// The first 2000 zeros of ζ and the time it took to compute them.
fn zeta_zeros() -> &'static (ZeroSet, Duration) {
    static ZEROS: OnceLock<(ZeroSet, Duration)> = OnceLock::new();
    ZEROS.get_or_init(|| {
        let t = Instant::now();
        let set = compute_first_n(2000, &AccuracyBudget::default()).unwrap();
        (set, t.elapsed())
    })
}

fn verdict(n: u32, pass: bool, detail: String) {
    println!("{} criterion {n}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_1_explicit_formula_for_zeta() {
    let t = Instant::now();
    let (zeros, zero_time) = zeta_zeros();
    let one = DirichletCharacter::principal(1).unwrap();
    let mut worst_place: f64 = 0.0;
    let mut worst_spectral: f64 = 0.0;
    for (a, b) in BUMPS {
        let check = verify_explicit_formula(&bump(a, b), &one, zeros, None, 1e-6).unwrap();
        worst_place = worst_place.max(check.residuals[0].value);
        worst_spectral = worst_spectral.max(check.residuals[1].value);
    }
    let elapsed = t.elapsed().max(*zero_time);
    let pass = worst_place <= 1e-6 && worst_spectral <= 1e-6 && elapsed.as_secs_f64() <= 60.0;
    verdict(
        1,
        pass,
        format!(
            "zero-place {worst_place:.2e}, zero-spectral {worst_spectral:.2e} over 3 bumps with {} zeros ({:.1} s)",
            zeros.len(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_place_by_place() {
    let t = Instant::now();
    let mut worst_real: f64 = 0.0;
    let mut worst_finite: f64 = 0.0;
    let mut compared = 0;
    for q in [1u64, 3, 5, 9] {
        for chi in primitive_characters(q) {
            for (a, b) in BUMPS {
                let g = bump(a, b);
                for place in contributing_places(&g, &chi, None).unwrap() {
                    let direct = w_place(&g, &chi, place).unwrap();
                    let spectral = spectral_place_term(&g, &chi, place, 1e-10).unwrap();
                    let r = (direct.value - spectral.value).norm();
                    match place {
                        Place::Real => worst_real = worst_real.max(r),
                        Place::Finite(_) => worst_finite = worst_finite.max(r),
                    }
                    compared += 1;
                }
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let pass = worst_real <= 1e-8 && worst_finite <= 1e-10 && secs <= 30.0;
    verdict(
        2,
        pass,
        format!("real {worst_real:.2e}, finite {worst_finite:.2e} over {compared} place terms ({secs:.1} s)"),
    );
}

/// `∫_{|t|_p = 1} (1 − χ_p(t))/|1 − t|_p d^×t` summed over every unit
/// residue mod `p^{f+2}`, in floating point, with `χ_p` read off `χ` itself.
fn brute_force_shell(chi: &DirichletCharacter, p: u64) -> f64 {
    let q = chi.modulus();
    let f = valuation(q, p);
    let pf = p.pow(f);
    let rest = q / pf;
    let n = p.pow(f + 2);
    // Neumaier summation: up to 43^3 terms of mixed sign
    let (mut acc, mut carry) = (0.0f64, 0.0f64);
    for u in 1..n {
        if u % p == 0 {
            continue;
        }
        let a = if rest == 1 { u % pf } else { crt(&[(u % pf, pf), (1, rest)]) };
        let one_minus = Complex64::new(1.0, 0.0) - chi.eval(a as i64);
        let v = valuation((n + 1 - u) % n, p).min(f + 2);
        let v = if u == 1 { f + 2 } else { v };
        let x = one_minus.re * (p as f64).powi(v as i32);
        let t = acc + x;
        carry += if acc.abs() >= x.abs() { (acc - t) + x } else { (x - t) + acc };
        acc = t;
    }
    (acc + carry) / euler_phi(n) as f64 * (p as f64).ln()
}

#[test]
fn criterion_3_conductor_identity() {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    let mut mod9 = Vec::new();
    for q in 2..=50u64 {
        for chi in primitive_characters(q) {
            for (p, f) in weilbench::characters::arith::factorize(q) {
                let expected = f as f64 * (p as f64).ln();
                let brute = brute_force_shell(&chi, p);
                let exact = conductor_integral(&local_component(&chi, Place::Finite(p)).unwrap()).unwrap();
                worst = worst.max((brute - expected).abs()).max((exact - expected).abs());
                if q == 9 {
                    mod9.push(brute);
                }
                cases += 1;
            }
        }
    }
    let two_log3 = 2.0 * 3f64.ln();
    let mod9_ok = !mod9.is_empty() && mod9.iter().all(|v| (v - two_log3).abs() <= 1e-12);
    let secs = t.elapsed().as_secs_f64();
    let pass = worst <= 1e-12 && mod9_ok && secs <= 5.0;
    verdict(
        3,
        pass,
        format!("max |shell − f log p| {worst:.2e} over {cases} (χ, p) pairs, mod 9 gives 2 log 3: {mod9_ok} ({secs:.2} s)"),
    );
}

#[test]
fn criterion_4_poisson_display() {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for (a, b) in BUMPS {
        let g = bump(a, b);
        for p in [2.0, 3.0, 5.0] {
            for tau in [0.0, 0.37, 1.5, 4.2, 11.0] {
                let profile = poisson_profile(&g, p, tau).unwrap();
                let sum = periodized_mellin(&g, p, tau, 1e-12).unwrap();
                worst = worst.max((profile - sum.value).norm());
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let pass = worst <= 1e-10 && secs <= 5.0;
    verdict(4, pass, format!("max residual {worst:.2e} for p in {{2, 3, 5}} ({secs:.2} s)"));
}

#[test]
fn criterion_5_tate_gamma_unitarity() {
    let t = Instant::now();
    let mut places = Vec::new();
    let one = DirichletCharacter::principal(1).unwrap();
    let odd = primitive_characters(4).remove(0);
    let mod9 = primitive_characters(9).into_iter().find(|c| !c.is_real()).unwrap();
    places.push(local_component(&one, Place::Real).unwrap());
    places.push(local_component(&odd, Place::Real).unwrap());
    places.push(local_component(&one, Place::Finite(2)).unwrap());
    places.push(local_component(&mod9, Place::Finite(2)).unwrap());
    places.push(local_component(&mod9, Place::Finite(3)).unwrap());
    let mut worst: f64 = 0.0;
    for local in &places {
        let gamma = tate_gamma(local);
        for k in 0..200 {
            let tau = -100.0 + 200.0 * (k as f64 + 0.5) / 200.0;
            let v = gamma.eval(Complex64::new(0.5, tau)).unwrap();
            worst = worst.max((v.norm() - 1.0).abs());
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let pass = worst <= 1e-10 && secs <= 5.0;
    verdict(
        5,
        pass,
        format!("max ||Γ| − 1| {worst:.2e} on 200 samples at {} places ({secs:.2} s)", places.len()),
    );
}

#[test]
fn criterion_6_positivity() {
    let t = Instant::now();
    let (zeros, zero_time) = zeta_zeros();
    let report = max_admissible_c(&default_eps_grid(), None, Some(zeros)).unwrap();
    let residual = report.z_residual.unwrap();
    let elapsed = t.elapsed().max(*zero_time);
    let pass = report.c > 1.0
        && report.c < SQRT_2
        && report.witness_min >= -1e-9
        && residual <= 1e-6
        && report.kernel.residual <= 1e-6
        && elapsed.as_secs_f64() <= 120.0;
    verdict(
        6,
        pass,
        format!(
            "c = {:.6}, witness min {:.2e}, Z residual {residual:.2e}, kernel residual {:.2e} ({:.1} s)",
            report.c,
            report.witness_min,
            report.kernel.residual,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_7_dirichlet_desk_scale() {
    let t = Instant::now();
    let budget = AccuracyBudget::default();
    let chi = primitive_characters(3).remove(0);
    let zeros = compute_dirichlet_zeros(&chi, 50.0, &budget).unwrap();
    let check = verify_explicit_formula(&bump(0.05, 20.0), &chi, &zeros, None, 1e-4).unwrap();
    let residual = check.residuals[0].value.max(check.residuals[1].value);
    let secs = t.elapsed().as_secs_f64();
    let pass = zeros.count_verified && residual <= 1e-4 && secs <= 120.0;
    verdict(
        7,
        pass,
        format!("χ mod 3, {} zeros to T = 50, residual {residual:.2e} ({secs:.2} s)", zeros.len()),
    );
}

#[test]
fn criterion_8_zero_engine() {
    let t = Instant::now();
    let budget = AccuracyBudget::default();
    let table = import_zeros(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/zeros_first_29.txt")).unwrap();
    let computed = compute_riemann_zeros(100.0, &budget).unwrap();
    let n100 = riemann_count(100.0, &budget).unwrap();
    let worst = computed
        .ordinates()
        .iter()
        .zip(table.ordinates())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let secs = t.elapsed().as_secs_f64();
    let pass = table.len() == 29 && computed.len() == 29 && n100 == 29 && worst <= 1e-6 && secs <= 30.0;
    verdict(
        8,
        pass,
        format!(
            "{} computed vs {} imported, max deviation {worst:.2e}, N(100) = {n100} ({secs:.2} s)",
            computed.len(),
            table.len()
        ),
    );
}
