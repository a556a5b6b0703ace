//! The explicit formula as an executable three-way check.

use num_complex::Complex64;

use crate::characters::DirichletCharacter;
use crate::error::Result;
use crate::local_terms::{place_side_sum, PlaceTerm};
use crate::spectral::{spectral_side_sum, zero_side_sum, NormalizationMode};
use crate::test_functions::TestFunction;
use crate::zeros::ZeroSet;

/// Default residual tolerance of a verification run.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-6;

/// A value with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded {
    pub value: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub between: (&'static str, &'static str),
    pub value: f64,
    /// `tol` plus the error bounds of both sides.
    pub budget: f64,
}

impl Residual {
    fn new(between: (&'static str, &'static str), a: Bounded, b: Bounded, tol: f64) -> Self {
        Residual {
            between,
            value: (a.value - b.value).norm(),
            budget: tol + a.error + b.error,
        }
    }

    pub fn pass(&self) -> bool {
        self.value <= self.budget
    }
}

/// All three sides of the explicit formula for one `(χ, g)`.
#[derive(Debug, Clone)]
pub struct ExplicitFormulaCheck {
    pub character: DirichletCharacter,
    pub g_descriptor: String,
    pub zeros_used: usize,
    pub zero_side: Bounded,
    pub place_side: Bounded,
    pub spectral_side: Bounded,
    /// Per-place direct terms, in place order.
    pub place_terms: Vec<PlaceTerm>,
    pub spectral_terms: Vec<PlaceTerm>,
    pub residuals: [Residual; 3],
    pub tol: f64,
}

impl ExplicitFormulaCheck {
    pub fn pass(&self) -> bool {
        self.residuals.iter().all(Residual::pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.value).fold(0.0, f64::max)
    }
}

/// Evaluates zero side, place side and spectral side and compares them
/// pairwise. `conj_zeros` holds the zeros of `L(s, χ̄)` when `χ` is complex.
pub fn verify_explicit_formula(
    g: &TestFunction,
    chi: &DirichletCharacter,
    zeros: &ZeroSet,
    conj_zeros: Option<&ZeroSet>,
    tol: f64,
) -> Result<ExplicitFormulaCheck> {
    let zs = zero_side_sum(g, chi, zeros, conj_zeros, NormalizationMode::Centered, None)?;
    let ps = place_side_sum(g, chi, None)?;
    let ss = spectral_side_sum(g, chi, None, 0.1 * tol)?;
    let zero_side = Bounded {
        value: zs.value,
        error: zs.error(),
    };
    let place_side = Bounded {
        value: ps.value,
        error: ps.error,
    };
    let spectral_side = Bounded {
        value: ss.value,
        error: ss.error,
    };
    let residuals = [
        Residual::new(("zero", "place"), zero_side, place_side, tol),
        Residual::new(("zero", "spectral"), zero_side, spectral_side, tol),
        Residual::new(("place", "spectral"), place_side, spectral_side, tol),
    ];
    Ok(ExplicitFormulaCheck {
        character: chi.clone(),
        g_descriptor: g.descriptor(),
        zeros_used: zs.zeros_used,
        zero_side,
        place_side,
        spectral_side,
        place_terms: ps.terms,
        spectral_terms: ss.terms,
        residuals,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::AccuracyBudget;
    use crate::test_functions::{make_bump, Profile};
    use crate::zeros::compute_first_n;

    #[test]
    fn zeta_closes_with_a_few_hundred_zeros() {
        let zeros = compute_first_n(400, &AccuracyBudget::default()).unwrap();
        let g = make_bump(0.6, 1.7, Profile::ExpInverse).unwrap();
        let one = DirichletCharacter::principal(1).unwrap();
        let check = verify_explicit_formula(&g, &one, &zeros, None, 1e-6).unwrap();
        assert!(check.pass(), "{:?}", check.residuals);
        assert!(check.residuals[2].value < 1e-8);
    }

    #[test]
    fn residual_budget_adds_side_errors() {
        let a = Bounded {
            value: Complex64::new(1.0, 0.0),
            error: 1e-3,
        };
        let b = Bounded {
            value: Complex64::new(1.002, 0.0),
            error: 5e-4,
        };
        let r = Residual::new(("a", "b"), a, b, 1e-6);
        assert!(!r.pass());
        assert!((r.budget - (1e-6 + 1.5e-3)).abs() < 1e-15);
    }
}
