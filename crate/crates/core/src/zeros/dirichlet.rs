//! Dirichlet L-functions on the critical line and their low-lying zeros.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::counting::dirichlet_count;
use super::{Provenance, ZeroSet};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::quadrature::brent;
use crate::special::{hurwitz_zeta, log_gamma, AccuracyBudget};

/// Largest modulus accepted by the in-house Dirichlet zero search.
pub const MAX_MODULUS: u64 = 10;
/// Largest height accepted by the in-house Dirichlet zero search.
pub const MAX_HEIGHT: f64 = 50.0;
/// Grid step of the sign-change scan.
pub const GRID_STEP: f64 = 0.05;

/// `L(s, χ) = q^{-s} Σ_{a=1}^{q} χ(a) ζ(s, a/q)`.
pub fn dirichlet_l(chi: &DirichletCharacter, s: Complex64, budget: &AccuracyBudget) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if !chi.is_principal() && (s - one).norm() < NEAR_ONE {
        // the Hurwitz poles cancel; take the mean over a circle around s
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..CIRCLE_POINTS {
            let z = s + Complex64::from_polar(CIRCLE_RADIUS, 2.0 * PI * (k as f64 + 0.5) / CIRCLE_POINTS as f64);
            acc += hurwitz_sum(chi, z, budget)?;
        }
        return Ok(acc / CIRCLE_POINTS as f64);
    }
    hurwitz_sum(chi, s, budget)
}

const NEAR_ONE: f64 = 0.01;
const CIRCLE_RADIUS: f64 = 0.05;
const CIRCLE_POINTS: usize = 32;

fn hurwitz_sum(chi: &DirichletCharacter, s: Complex64, budget: &AccuracyBudget) -> Result<Complex64> {
    let q = chi.modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        let Some(v) = chi.value(a as i64) else { continue };
        acc += v.to_complex() * hurwitz_zeta(s, a as f64 / q as f64, budget)?;
    }
    Ok(acc * (-s * (q as f64).ln()).exp())
}

/// The real-valued rotation `e^{iθ_χ(t)} L(1/2 + it, χ)` of a primitive
/// L-function, with `θ_χ` built from the Gamma factor and the root number.
#[derive(Debug, Clone)]
pub struct DirichletZ {
    chi: DirichletCharacter,
    shift: f64,
    half_root_arg: f64,
}

impl DirichletZ {
    pub fn new(chi: &DirichletCharacter) -> Result<Self> {
        let (q0, _) = chi.conductor();
        if q0 != chi.modulus() {
            return Err(Error::NonPrimitive {
                modulus: chi.modulus(),
                conductor: q0,
            });
        }
        let q = chi.modulus();
        let mut gauss = Complex64::new(0.0, 0.0);
        for a in 1..=q {
            gauss += chi.eval(a as i64) * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / q as f64);
        }
        let a = if chi.is_even() { 0.0 } else { 1.0 };
        let i_a = if chi.is_even() {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        let root = gauss / (i_a * (q as f64).sqrt());
        if (root.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::RootNumberDegeneracy {
                at: 0.0,
                detail: format!("root number {root} is not unimodular"),
            });
        }
        Ok(DirichletZ {
            chi: chi.clone(),
            shift: a,
            half_root_arg: 0.5 * root.arg(),
        })
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.chi
    }

    /// Rotation angle `θ_χ(t)`.
    pub fn theta(&self, t: f64) -> Result<f64> {
        let q = self.chi.modulus() as f64;
        let lg = log_gamma(Complex64::new(0.5 * (0.5 + self.shift), 0.5 * t))?;
        Ok(lg.im + 0.5 * t * (q / PI).ln() - self.half_root_arg)
    }

    /// The rotated value before discarding its (numerically zero) imaginary
    /// part.
    pub fn eval_complex(&self, t: f64, budget: &AccuracyBudget) -> Result<Complex64> {
        let l = dirichlet_l(&self.chi, Complex64::new(0.5, t), budget)?;
        Ok(Complex64::from_polar(1.0, self.theta(t)?) * l)
    }

    /// `e^{iθ_χ(t)} L(1/2 + it, χ)`, real up to rounding.
    pub fn eval(&self, t: f64, budget: &AccuracyBudget) -> Result<f64> {
        let v = self.eval_complex(t, budget)?;
        if v.im.abs() > 1e-8 + 1e-6 * v.norm() {
            return Err(Error::RootNumberDegeneracy {
                at: t,
                detail: format!("rotated value {v} is not real"),
            });
        }
        Ok(v.re)
    }
}

/// `e^{iθ_χ(t)} L(1/2 + it, χ)` for a primitive character.
pub fn rotated_l(chi: &DirichletCharacter, t: f64, budget: &AccuracyBudget) -> Result<Complex64> {
    DirichletZ::new(chi)?.eval_complex(t, budget)
}

/// Zeros `0 < γ ≤ T` of `L(s, χ)` on the critical line, found as sign
/// changes of the rotated function on a uniform grid and refined by Brent's
/// method; the count is checked against the argument principle.
pub fn compute_dirichlet_zeros(chi: &DirichletCharacter, height: f64, budget: &AccuracyBudget) -> Result<ZeroSet> {
    if chi.modulus() > MAX_MODULUS || !(height > 0.0 && height <= MAX_HEIGHT) {
        return Err(Error::InvalidParameter(format!(
            "Dirichlet zero search is limited to q ≤ {MAX_MODULUS} and 0 < T ≤ {MAX_HEIGHT} (got q = {}, T = {height})",
            chi.modulus()
        )));
    }
    if chi.modulus() == 1 {
        if height < 10.0 {
            return ZeroSet::new(chi.id(), Vec::new(), height, Provenance::ComputedRs, true);
        }
        return super::compute_riemann_zeros(height, budget);
    }
    let z = DirichletZ::new(chi)?;
    let expected = dirichlet_count(chi, height, budget)?;
    let mut step = GRID_STEP;
    for _ in 0..5 {
        let n = (height / step).ceil() as usize;
        let grid: Vec<f64> = (0..=n).map(|k| (k as f64 * step).min(height)).collect();
        let values: Vec<f64> = grid.par_iter().map(|&t| z.eval(t, budget)).collect::<Result<_>>()?;
        let brackets: Vec<(f64, f64)> = grid
            .windows(2)
            .zip(values.windows(2))
            .filter(|(_, v)| v[0] * v[1] < 0.0 || (v[1] == 0.0 && v[0] != 0.0))
            .map(|(t, _)| (t[0], t[1]))
            .collect();
        if brackets.len() as i64 == expected {
            let ordinates: Vec<f64> = brackets
                .par_iter()
                .map(|&(a, b)| brent(|t| z.eval(t, budget), a, b, 1e-12))
                .collect::<Result<_>>()?;
            return ZeroSet::new(chi.id(), ordinates, height, Provenance::ComputedDirichlet, true);
        }
        if brackets.len() as i64 > expected {
            return Err(Error::CountMismatch {
                height,
                found: brackets.len(),
                expected,
            });
        }
        step *= 0.5;
    }
    Err(Error::CountMismatch {
        height,
        found: 0,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::primitive_characters;

    fn b() -> AccuracyBudget {
        AccuracyBudget::default()
    }

    #[test]
    fn l_at_one_for_mod_four() {
        // L(1, χ_4) = π/4
        let chi = primitive_characters(4).remove(0);
        let v = dirichlet_l(&chi, Complex64::new(1.0, 0.0), &b()).unwrap();
        assert!((v.re - PI / 4.0).abs() < 1e-12 && v.im.abs() < 1e-14);
    }

    #[test]
    fn rotation_is_real_for_complex_characters() {
        for chi in primitive_characters(5).into_iter().chain(primitive_characters(7)) {
            let z = DirichletZ::new(&chi).unwrap();
            for t in [0.3, 4.0, 17.7, 44.0] {
                let v = z.eval_complex(t, &b()).unwrap();
                assert!(v.im.abs() < 1e-11, "{chi} t = {t}: {v}");
            }
        }
    }

    #[test]
    fn mod_three_zeros_have_small_residuals() {
        let chi = primitive_characters(3).remove(0);
        let set = compute_dirichlet_zeros(&chi, 15.0, &b()).unwrap();
        assert!(set.len() >= 2);
        assert!((set.ordinates()[0] - 8.039_737_155_681_46).abs() < 1e-8);
        for &g in set.ordinates() {
            let l = dirichlet_l(&chi, Complex64::new(0.5, g), &b()).unwrap();
            assert!(l.norm() < 1e-8);
        }
    }

    #[test]
    fn conjugate_character_zeros_are_reflections() {
        // L(s, χ̄) = conj L(s̄, χ): a zero of χ at 1/2 + iγ is a zero of χ̄ at
        // 1/2 − iγ, so the multisets of |γ| over both half-planes coincide
        let chi = primitive_characters(5).into_iter().find(|c| !c.is_real()).unwrap();
        let set = compute_dirichlet_zeros(&chi, 20.0, &b()).unwrap();
        assert!(!set.is_empty());
        for &g in set.ordinates() {
            let v = dirichlet_l(&chi.conj(), Complex64::new(0.5, -g), &b()).unwrap();
            assert!(v.norm() < 1e-8);
        }
    }

    #[test]
    fn principal_delegates_to_zeta() {
        let one = DirichletCharacter::principal(1).unwrap();
        let set = compute_dirichlet_zeros(&one, 30.0, &b()).unwrap();
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn desk_scale_limits() {
        let chi = primitive_characters(11).remove(0);
        assert!(compute_dirichlet_zeros(&chi, 10.0, &b()).is_err());
        let chi = primitive_characters(3).remove(0);
        assert!(compute_dirichlet_zeros(&chi, 60.0, &b()).is_err());
    }
}
