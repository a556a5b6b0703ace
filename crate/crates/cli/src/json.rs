//! JSON report shapes. Field order is fixed by the struct definitions and
//! every float is rounded to 15 significant digits, so identical inputs give
//! byte-identical output.

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use weilbench::local_terms::PlaceTerm;
use weilbench::positivity::{Feasibility, PositivityReport};
use weilbench::report::{Bounded, ExplicitFormulaCheck};
use weilbench::zeros::{ZeroSet, ZeroVerification};

pub const SCHEMA: u32 = 1;

/// A float printed with 15 significant digits; non-finite values become null.
#[derive(Debug, Clone, Copy)]
pub struct Num(pub f64);

pub fn round15(x: f64) -> f64 {
    format!("{x:.14e}").parse().unwrap_or(x)
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(round15(self.0))
        } else {
            s.serialize_none()
        }
    }
}

#[derive(Serialize)]
pub struct ComplexJson {
    pub re: Num,
    pub im: Num,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: Num(z.re), im: Num(z.im) }
    }
}

#[derive(Serialize)]
pub struct BoundedJson {
    pub value: ComplexJson,
    pub error: Num,
}

impl From<Bounded> for BoundedJson {
    fn from(b: Bounded) -> Self {
        BoundedJson {
            value: b.value.into(),
            error: Num(b.error),
        }
    }
}

#[derive(Serialize)]
pub struct PlaceTermJson {
    pub place: String,
    pub method: &'static str,
    pub value: ComplexJson,
    pub error: Num,
}

impl From<&PlaceTerm> for PlaceTermJson {
    fn from(t: &PlaceTerm) -> Self {
        PlaceTermJson {
            place: t.place.to_string(),
            method: match t.method {
                weilbench::local_terms::Method::DirectWeil => "direct_weil",
                weilbench::local_terms::Method::Spectral => "spectral",
            },
            value: t.value.into(),
            error: Num(t.est_error),
        }
    }
}

#[derive(Serialize)]
pub struct ResidualJson {
    pub between: String,
    pub value: Num,
    pub budget: Num,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct ZeroSummary {
    pub character: String,
    pub count: usize,
    pub height: Num,
    pub provenance: &'static str,
    pub count_verified: bool,
}

impl From<&ZeroSet> for ZeroSummary {
    fn from(z: &ZeroSet) -> Self {
        ZeroSummary {
            character: z.character.to_string(),
            count: z.len(),
            height: Num(z.height),
            provenance: z.provenance.as_str(),
            count_verified: z.count_verified,
        }
    }
}

#[derive(Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub command: &'static str,
    pub character: String,
    pub g: String,
    pub zeros: Vec<ZeroSummary>,
    pub tol: Num,
    pub zero_side: BoundedJson,
    pub place_side: BoundedJson,
    pub spectral_side: BoundedJson,
    pub place_terms: Vec<PlaceTermJson>,
    pub spectral_terms: Vec<PlaceTermJson>,
    pub residuals: Vec<ResidualJson>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(check: &ExplicitFormulaCheck, zeros: Vec<ZeroSummary>) -> Self {
        VerificationReport {
            schema: SCHEMA,
            command: "verify",
            character: check.character.id().to_string(),
            g: check.g_descriptor.clone(),
            zeros,
            tol: Num(check.tol),
            zero_side: check.zero_side.into(),
            place_side: check.place_side.into(),
            spectral_side: check.spectral_side.into(),
            place_terms: check.place_terms.iter().map(Into::into).collect(),
            spectral_terms: check.spectral_terms.iter().map(Into::into).collect(),
            residuals: check
                .residuals
                .iter()
                .map(|r| ResidualJson {
                    between: format!("{}-{}", r.between.0, r.between.1),
                    value: Num(r.value),
                    budget: Num(r.budget),
                    pass: r.pass(),
                })
                .collect(),
            pass: check.pass(),
        }
    }
}

#[derive(Serialize)]
pub struct IntervalJson {
    pub lo: Num,
    pub hi: Num,
}

#[derive(Serialize)]
pub struct FeasibilityJson {
    pub schema: u32,
    pub command: &'static str,
    pub epsilon: Num,
    pub c: Num,
    pub feasible: bool,
    pub feasible_a: Option<IntervalJson>,
    pub tau_lo: Option<Num>,
    pub tau_hi: Option<Num>,
    pub certified_to: Num,
    pub witness_a: Option<Num>,
    pub witness_min: Option<Num>,
}

impl FeasibilityJson {
    pub fn new(f: &Feasibility, witness: Option<(f64, f64)>) -> Self {
        FeasibilityJson {
            schema: SCHEMA,
            command: "positivity",
            epsilon: Num(f.epsilon),
            c: Num((0.5 * f.epsilon).exp()),
            feasible: f.feasible(),
            feasible_a: f.interval().map(|(lo, hi)| IntervalJson { lo: Num(lo), hi: Num(hi) }),
            tau_lo: f.tau_lo.map(Num),
            tau_hi: f.tau_hi.map(Num),
            certified_to: Num(f.certified_to),
            witness_a: witness.map(|w| Num(w.0)),
            witness_min: witness.map(|w| Num(w.1)),
        }
    }
}

#[derive(Serialize)]
pub struct ZeroSideJson {
    pub value: Num,
    pub tail_bound: Num,
    pub zeros_used: usize,
}

#[derive(Serialize)]
pub struct KernelJson {
    pub lhs: Num,
    pub rhs: Num,
    pub residual: Num,
    pub auxiliary: Num,
    pub error: Num,
}

#[derive(Serialize)]
pub struct CosineJson {
    pub integral: Num,
    pub closed_form: Num,
    pub residual: Num,
}

#[derive(Serialize)]
pub struct PositivityJson {
    pub schema: u32,
    pub command: &'static str,
    pub g: String,
    /// The sample function lies in `[1/c, c]`, so the cosine moment vanishes.
    pub g_within_admissible: bool,
    pub c: Num,
    pub epsilon: Num,
    pub epsilon_infeasible: Option<Num>,
    pub feasible_a: Option<IntervalJson>,
    pub witness_a: Num,
    pub witness_min: Num,
    pub witness_argmin: Num,
    pub certified_to: Num,
    pub alpha_min: Num,
    pub alpha_argmin: Num,
    pub z_zero_side: Option<ZeroSideJson>,
    pub z_spectral: Num,
    pub z_spectral_error: Num,
    pub z_residual: Option<Num>,
    pub kernel: KernelJson,
    pub cosine_moment: CosineJson,
    pub decomposition_residual: Num,
    pub grid_points: usize,
    pub pass: bool,
}

impl PositivityJson {
    pub fn new(r: &PositivityReport, g_within_admissible: bool, pass: bool) -> Self {
        PositivityJson {
            schema: SCHEMA,
            command: "positivity",
            g: r.g_descriptor.clone(),
            g_within_admissible,
            c: Num(r.c),
            epsilon: Num(r.epsilon),
            epsilon_infeasible: r.epsilon_infeasible.map(Num),
            feasible_a: r.feasible_a.map(|(lo, hi)| IntervalJson { lo: Num(lo), hi: Num(hi) }),
            witness_a: Num(r.witness_a),
            witness_min: Num(r.witness_min),
            witness_argmin: Num(r.witness_argmin),
            certified_to: Num(r.certified_to),
            alpha_min: Num(r.alpha_min),
            alpha_argmin: Num(r.alpha_argmin),
            z_zero_side: r.z_zero_side.map(|z| ZeroSideJson {
                value: Num(z.value),
                tail_bound: Num(z.tail_bound),
                zeros_used: z.zeros_used,
            }),
            z_spectral: Num(r.z_spectral),
            z_spectral_error: Num(r.z_spectral_error),
            z_residual: r.z_residual.map(Num),
            kernel: KernelJson {
                lhs: Num(r.kernel.lhs),
                rhs: Num(r.kernel.rhs),
                residual: Num(r.kernel.residual),
                auxiliary: Num(r.kernel.auxiliary),
                error: Num(r.kernel.error),
            },
            cosine_moment: CosineJson {
                integral: Num(r.cosine.integral),
                closed_form: Num(r.cosine.direct),
                residual: Num(r.cosine.residual),
            },
            decomposition_residual: Num(r.decomposition_residual),
            grid_points: r.grid_points,
            pass,
        }
    }
}

#[derive(Serialize)]
pub struct ZerosJson {
    pub schema: u32,
    pub command: &'static str,
    pub zeros: ZeroSummary,
    pub cache_path: Option<String>,
}

#[derive(Serialize)]
pub struct ZeroVerifyJson {
    pub schema: u32,
    pub command: &'static str,
    pub zeros: ZeroSummary,
    pub max_residual: Num,
    pub worst_ordinate: Option<Num>,
    pub found: usize,
    pub expected: i64,
    pub pass: bool,
}

impl ZeroVerifyJson {
    pub fn new(set: &ZeroSet, v: &ZeroVerification) -> Self {
        ZeroVerifyJson {
            schema: SCHEMA,
            command: "zeros verify",
            zeros: set.into(),
            max_residual: Num(v.max_residual),
            worst_ordinate: v.worst_ordinate.map(Num),
            found: v.found,
            expected: v.expected,
            pass: v.pass,
        }
    }
}
