//! Randomised invariants.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use weilbench::characters::arith::factorize;
use weilbench::characters::{enumerate_characters, local_component, primitive_characters, Angle, Place};
use weilbench::local_terms::{w_real_with_split, MeasureConvention, LOCAL_TOL};
use weilbench::positivity::{alpha, cosine_moment, feasible_amplitude, witness_minimum};
use weilbench::special::{digamma, gamma, hardy_z, hurwitz_zeta, log_gamma, AccuracyBudget};
use weilbench::zeros::riemann_count;
use weilbench::spectral::{multiplier, periodized_mellin, poisson_profile, tate_gamma};
use weilbench::test_functions::{make_bump, Profile, TestFunction};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `z` in `|Re z| ≤ 5`, `|Im z| ≤ 20`, at distance ≥ 0.05 from the integers.
fn off_poles() -> impl Strategy<Value = Complex64> {
    (-5.0..5.0f64, -20.0..20.0f64)
        .prop_filter("near a pole", |&(x, y)| y.abs() > 0.05 || (x - x.round()).abs() > 0.05)
        .prop_map(|(x, y)| c(x, y))
}

fn bump_strategy() -> impl Strategy<Value = TestFunction> {
    (0.3..0.9f64, 1.15..3.0f64).prop_map(|(a, b)| make_bump(a, b, Profile::ExpInverse).unwrap())
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_reflection(z in off_poles()) {
        let one = c(1.0, 0.0);
        // the product is formed from log Γ so it stays finite at |Im z| = 20
        let lg = log_gamma(z).unwrap() + log_gamma(one - z).unwrap();
        let v = lg.exp() * (z * PI).sin() / PI;
        prop_assert!((v - one).norm() <= 1e-10, "z = {z}: {v}");
    }

    #[test]
    fn digamma_recurrence(z in off_poles()) {
        let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - 1.0 / z;
        prop_assert!(d.norm() <= 1e-10, "z = {z}: {d}");
    }

    #[test]
    fn conjugate_symmetry(x in 0.1..5.0f64, y in -30.0..30.0f64, a in 0.05..1.0f64) {
        let z = c(x, y);
        prop_assert!(rel(log_gamma(z.conj()).unwrap(), log_gamma(z).unwrap().conj()) < 1e-12);
        prop_assert!(rel(digamma(z.conj()).unwrap(), digamma(z).unwrap().conj()) < 1e-12);
        prop_assert!(rel(gamma(z.conj()).unwrap(), gamma(z).unwrap().conj()) < 1e-12);
        if (z - 1.0).norm() > 0.1 {
            let b = AccuracyBudget::default();
            let h = hurwitz_zeta(z.conj(), a, &b).unwrap();
            prop_assert!(rel(h, hurwitz_zeta(z, a, &b).unwrap().conj()) < 1e-11);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mellin_cauchy_riemann(g in bump_strategy(), x in -1.0..1.0f64, y in -15.0..15.0f64) {
        let h = 1e-4;
        let f = |s: Complex64| g.mellin_tol(s, 1e-14).unwrap().value;
        let s = c(x, y);
        let dx = (f(s + c(h, 0.0)) - f(s - c(h, 0.0))) / (2.0 * h);
        let dy = (f(s + c(0.0, h)) - f(s - c(0.0, h))) / (2.0 * h);
        // holomorphic: ∂f/∂y = i ∂f/∂x
        prop_assert!((dy - c(0.0, 1.0) * dx).norm() <= 1e-6 * dx.norm().max(1.0));
    }

    #[test]
    fn mellin_of_real_g_is_conjugate_symmetric(g in bump_strategy(), x in -1.0..1.0f64, y in -40.0..40.0f64) {
        let s = c(x, y);
        let a = g.mellin(s.conj()).unwrap().value;
        let b = g.mellin(s).unwrap().value.conj();
        prop_assert!((a - b).norm() <= 1e-13 * b.norm().max(1.0));
    }

    #[test]
    fn poisson_display(g in bump_strategy(), p in prop::sample::select(vec![2.0, 3.0, 5.0, 7.0]), tau in -20.0..20.0f64) {
        let a = poisson_profile(&g, p, tau).unwrap();
        let b = periodized_mellin(&g, p, tau, 1e-12).unwrap();
        prop_assert!((a - b.value).norm() <= 1e-10);
    }

    #[test]
    fn real_term_does_not_depend_on_the_split(g in bump_strategy(), split in 0.2..0.8f64, odd in any::<bool>()) {
        let parity = if odd { -1 } else { 1 };
        let half = w_real_with_split(&g, parity, 0.5, LOCAL_TOL).unwrap();
        let other = w_real_with_split(&g, parity, split, LOCAL_TOL).unwrap();
        prop_assert!((half.value - other.value).norm() <= 1e-9);
    }

    #[test]
    fn cosine_moment_identity(g in bump_strategy(), eps in 0.0..1.0f64) {
        // cosine_moment itself errors when the closed form disagrees
        let m = cosine_moment(&g, eps).unwrap();
        prop_assert!(m.residual <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn character_orthogonality(q in 1u64..80) {
        for chi in enumerate_characters(q) {
            let sum = chi.exact_sum();
            let expected = if chi.is_principal() { weilbench::characters::arith::euler_phi(q) as i64 } else { 0 };
            prop_assert_eq!(sum.as_integer(), Some(expected), "{}", chi);
        }
    }

    #[test]
    fn crt_parts_reassemble(q in 2u64..80, a in 0i64..10_000) {
        for chi in enumerate_characters(q) {
            let mut product = Some(Angle::ONE);
            for (p, _) in factorize(q) {
                let (pf, values) = chi.p_part(p);
                product = match (product, values[a.rem_euclid(pf as i64) as usize]) {
                    (Some(x), Some(y)) => Some(x * y),
                    _ => None,
                };
            }
            prop_assert_eq!(product, chi.value(a), "{} at {}", chi, a);
        }
    }

    #[test]
    fn unramified_components(q in 1u64..60, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        for chi in primitive_characters(q) {
            if q % p == 0 {
                continue;
            }
            let local = local_component(&chi, Place::Finite(p)).unwrap();
            prop_assert_eq!(local.f, 0);
            let v = local.value_at_p.unwrap().to_complex();
            prop_assert!((v.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn measure_conversion_is_exact(x in -1e6..1e6f64, p in prop::sample::select(vec![2u64, 3, 5, 7, 97])) {
        let weil = MeasureConvention::TateUnit.convert(x, MeasureConvention::WeilLogQ, p);
        prop_assert_eq!(weil, x * (p as f64).ln());
    }

    #[test]
    fn tate_gamma_is_unitary(q in 1u64..30, tau in -200.0..200.0f64) {
        for chi in primitive_characters(q) {
            let mut places = vec![Place::Real, Place::Finite(2), Place::Finite(3)];
            places.extend(factorize(q).into_iter().map(|(p, _)| Place::Finite(p)));
            for place in places {
                let v = tate_gamma(&local_component(&chi, place).unwrap()).eval(c(0.5, tau)).unwrap();
                prop_assert!((v.norm() - 1.0).abs() <= 1e-10, "{} at {}: {}", chi, place, v);
            }
        }
    }

    #[test]
    fn real_multiplier_commutes_with_inversion(tau in -100.0..100.0f64, q in prop::sample::select(vec![1u64, 3, 4, 5, 8])) {
        for chi in primitive_characters(q) {
            let m = multiplier(&local_component(&chi, Place::Real).unwrap());
            let a = m.h(-tau).unwrap();
            let b = m.h(tau).unwrap();
            prop_assert!((a - b.conj()).norm() <= 1e-13 * b.norm().max(1.0));
            prop_assert!((a.re - b.re).abs() <= 1e-13 * b.norm().max(1.0));
        }
    }

    #[test]
    fn hardy_z_sign_tracks_the_count(t in 10.0..100.0f64) {
        // Z < 0 below the first zero and changes sign at each simple zero
        let b = AccuracyBudget::default();
        let z = hardy_z(t, &b).unwrap();
        prop_assume!(z.abs() > 1e-6);
        let n = riemann_count(t, &b).unwrap();
        let expected = if n % 2 == 0 { -1.0 } else { 1.0 };
        prop_assert_eq!(z.signum(), expected, "t = {}", t);
    }

    #[test]
    fn alpha_is_even(tau in 0.0..1000.0f64) {
        prop_assert_eq!(alpha(tau).unwrap(), alpha(-tau).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn feasible_witness_is_nonnegative(eps in 0.01..0.3f64, t in 0.0..1.0f64) {
        let f = feasible_amplitude(eps).unwrap();
        if f.feasible() {
            let a = f.a_lo + t * (f.a_hi - f.a_lo);
            let (_, m) = witness_minimum(a, eps);
            prop_assert!(m >= -1e-9, "ε = {eps}, A = {a}: {m}");
        }
    }
}
