//! Smooth compactly supported test functions on `(0, ∞)`.
//!
//! Everything is evaluated in log coordinates `x = log u`, where the
//! multiplicative group becomes additive: `G(x) = g(e^x)` and the Mellin
//! transform is the Fourier–Laplace integral `ĝ(s) = ∫ G(x) e^{sx} dx`.
//!
//! Mellin transforms use the trapezoid rule on a uniform grid over the
//! support. Every function built here vanishes to all orders at the support
//! endpoints, so the rule converges faster than any power of the step and
//! the difference between consecutive halvings is a reliable error estimate.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::{Jet, JET_ORDER};

/// Highest derivative order with a stored bound.
pub const MAX_DERIVATIVE: usize = JET_ORDER;

/// Default absolute tolerance for Mellin transforms.
pub const MELLIN_TOL: f64 = 1e-13;

const BASE_INTERVALS: usize = 64;
const MAX_LEVELS: usize = 15;
const BOUND_GRID: usize = 1 << 14;

/// Shape of a bump in log coordinates, as a function of `y ∈ (-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Profile {
    /// `exp(-1/(1 - y²))`; infinitely smooth.
    ExpInverse,
    /// `cos(πy/2)^n`; only `n - 1` continuous derivatives at the endpoints.
    CosinePower { power: u32 },
}

impl Profile {
    fn eval(&self, y: f64) -> f64 {
        if y.abs() >= 1.0 {
            return 0.0;
        }
        match *self {
            Profile::ExpInverse => (-1.0 / (1.0 - y * y)).exp(),
            Profile::CosinePower { power } => (0.5 * std::f64::consts::PI * y).cos().powi(power as i32),
        }
    }

    fn jet(&self, y: Jet) -> Jet {
        match *self {
            Profile::ExpInverse => {
                let one_minus = Jet::constant(1.0) - y * y;
                (-one_minus.recip()).exp()
            }
            Profile::CosinePower { power } => {
                let (_, c) = y.scale(0.5 * std::f64::consts::PI).sin_cos();
                c.powi(power)
            }
        }
    }

    /// Number of derivatives that are bounded in L¹ (including jumps at the
    /// endpoints).
    fn smooth_orders(&self) -> usize {
        match *self {
            Profile::ExpInverse => MAX_DERIVATIVE,
            Profile::CosinePower { power } => (power as usize).saturating_sub(1).min(MAX_DERIVATIVE),
        }
    }
}

/// A Mellin transform value with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinValue {
    pub s: Complex64,
    pub value: Complex64,
    pub quadrature_error: f64,
}

#[derive(Debug)]
enum Kind {
    Bump { profile: Profile, mid: f64, half: f64 },
    Scaled { inner: TestFunction, factor: Complex64 },
    Dilated { inner: TestFunction, lambda: f64 },
    Tau { inner: TestFunction },
    Convolution { left: TestFunction, right: TestFunction },
}

#[derive(Debug)]
struct Inner {
    kind: Kind,
    a: f64,
    b: f64,
    la: f64,
    lb: f64,
    real: bool,
    levels: Vec<OnceLock<Vec<Complex64>>>,
    bounds: Mutex<Vec<(u64, [f64; MAX_DERIVATIVE + 1])>>,
}

/// A smooth function on `(0, ∞)` supported in `[a, b]`.
///
/// Cloning is cheap; clones share the sample caches.
#[derive(Debug, Clone)]
pub struct TestFunction {
    inner: Arc<Inner>,
}

impl TestFunction {
    fn build(kind: Kind, a: f64, b: f64, real: bool) -> Self {
        TestFunction {
            inner: Arc::new(Inner {
                kind,
                a,
                b,
                la: a.ln(),
                lb: b.ln(),
                real,
                levels: (0..MAX_LEVELS).map(|_| OnceLock::new()).collect(),
                bounds: Mutex::new(Vec::new()),
            }),
        }
    }

    /// Support interval `[a, b]`.
    pub fn support(&self) -> (f64, f64) {
        (self.inner.a, self.inner.b)
    }

    /// Support in log coordinates.
    pub fn log_support(&self) -> (f64, f64) {
        (self.inner.la, self.inner.lb)
    }

    /// True when `g` takes real values.
    pub fn is_real(&self) -> bool {
        self.inner.real
    }

    /// `g(u)`.
    pub fn eval(&self, u: f64) -> Complex64 {
        if !(u > self.inner.a && u < self.inner.b) {
            return Complex64::new(0.0, 0.0);
        }
        self.eval_log(u.ln())
    }

    /// `G(x) = g(e^x)`.
    pub fn eval_log(&self, x: f64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        if !(x > self.inner.la && x < self.inner.lb) {
            return zero;
        }
        match &self.inner.kind {
            Kind::Bump { profile, mid, half } => Complex64::new(profile.eval((x - mid) / half), 0.0),
            Kind::Scaled { inner, factor } => inner.eval_log(x) * factor,
            Kind::Dilated { inner, lambda } => inner.eval_log(x - lambda.ln()),
            Kind::Tau { inner } => inner.eval_log(-x).conj() * (-x).exp(),
            Kind::Convolution { left, right } => {
                // (G_l * G_r)(x) = ∫ G_l(x - y) G_r(y) dy
                let (ll, lr) = left.log_support();
                let (rl, rr) = right.log_support();
                let lo = rl.max(x - lr);
                let hi = rr.min(x - ll);
                if hi <= lo {
                    return zero;
                }
                let f = |y: f64| left.eval_log(x - y) * right.eval_log(y);
                trapezoid_vanishing(f, lo, hi, 1e-16).0
            }
        }
    }

    /// Plain-text descriptor; bumps round-trip through [`TestFunction::parse`].
    pub fn descriptor(&self) -> String {
        match &self.inner.kind {
            Kind::Bump { profile, .. } => {
                let (a, b) = self.support();
                match profile {
                    Profile::ExpInverse => format!("exp_inverse:a={a},b={b}"),
                    Profile::CosinePower { power } => format!("cosine_power:a={a},b={b},n={power}"),
                }
            }
            Kind::Scaled { inner, factor } => {
                if factor.im == 0.0 {
                    format!("scale({};{})", factor.re, inner.descriptor())
                } else {
                    format!("scale({}{:+}i;{})", factor.re, factor.im, inner.descriptor())
                }
            }
            Kind::Dilated { inner, lambda } => format!("dilate({lambda};{})", inner.descriptor()),
            Kind::Tau { inner } => format!("tau({})", inner.descriptor()),
            Kind::Convolution { left, right } => {
                format!("conv({};{})", left.descriptor(), right.descriptor())
            }
        }
    }

    /// Parses a bump descriptor such as `exp_inverse:a=0.6,b=1.7` or
    /// `cosine_power:a=0.5,b=2,n=12`.
    pub fn parse(descriptor: &str) -> Result<TestFunction> {
        let bad = |msg: String| Error::InvalidParameter(format!("test function '{descriptor}': {msg}"));
        let (name, params) = descriptor
            .trim()
            .split_once(':')
            .ok_or_else(|| bad("expected 'profile:key=value,...'".into()))?;
        let mut a = None;
        let mut b = None;
        let mut n = None;
        for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got '{item}'")))?;
            let num = |v: &str| v.trim().parse::<f64>().map_err(|_| bad(format!("bad number '{v}'")));
            match k.trim() {
                "a" => a = Some(num(v)?),
                "b" => b = Some(num(v)?),
                "n" | "power" => {
                    n = Some(v.trim().parse::<u32>().map_err(|_| bad(format!("bad power '{v}'")))?)
                }
                other => return Err(bad(format!("unknown key '{other}'"))),
            }
        }
        let a = a.ok_or_else(|| bad("missing a".into()))?;
        let b = b.ok_or_else(|| bad("missing b".into()))?;
        let profile = match name.trim() {
            "exp_inverse" => {
                if n.is_some() {
                    return Err(bad("exp_inverse takes no power".into()));
                }
                Profile::ExpInverse
            }
            "cosine_power" => Profile::CosinePower {
                power: n.ok_or_else(|| bad("cosine_power needs n".into()))?,
            },
            other => return Err(bad(format!("unknown profile '{other}'"))),
        };
        make_bump(a, b, profile)
    }

    /// `c·g`.
    pub fn scaled(&self, factor: Complex64) -> TestFunction {
        let (a, b) = self.support();
        TestFunction::build(
            Kind::Scaled {
                inner: self.clone(),
                factor,
            },
            a,
            b,
            self.is_real() && factor.im == 0.0,
        )
    }

    /// `u ↦ g(u/λ)`, supported on `[λa, λb]`.
    pub fn dilated(&self, lambda: f64) -> Result<TestFunction> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!("dilation factor must be positive, got {lambda}")));
        }
        let (a, b) = self.support();
        Ok(TestFunction::build(
            Kind::Dilated {
                inner: self.clone(),
                lambda,
            },
            lambda * a,
            lambda * b,
            self.is_real(),
        ))
    }

    /// Mellin transform with the default tolerance.
    pub fn mellin(&self, s: Complex64) -> Result<MellinValue> {
        self.mellin_tol(s, MELLIN_TOL)
    }

    /// Mellin transform `ĝ(s) = ∫ g(u) u^{s-1} du` to absolute tolerance `tol`.
    pub fn mellin_tol(&self, s: Complex64, tol: f64) -> Result<MellinValue> {
        let (la, lb) = self.log_support();
        let width = lb - la;
        let needed = width * s.im.abs() / std::f64::consts::PI + BASE_INTERVALS as f64;
        let mut level = 0;
        while level + 1 < MAX_LEVELS && ((BASE_INTERVALS << level) as f64) < needed {
            level += 1;
        }
        let (mut prev, mut mass) = (Complex64::new(0.0, 0.0), 0.0);
        for l in 0..=level {
            let (sum, m) = self.level_sum(l, s);
            prev += sum;
            mass += m;
        }
        let mut h = width / (BASE_INTERVALS << level) as f64;
        let mut estimate = prev * h;
        loop {
            if level + 1 >= MAX_LEVELS {
                return Err(Error::ToleranceNotMet {
                    what: "mellin",
                    estimate: f64::INFINITY,
                    requested: tol,
                });
            }
            level += 1;
            let (sum, m) = self.level_sum(level, s);
            prev += sum;
            mass += m;
            h *= 0.5;
            let next = prev * h;
            let err = (next - estimate).norm();
            let floor = 1e3 * f64::EPSILON * mass * h;
            if !(next.re.is_finite() && next.im.is_finite()) {
                return Err(Error::NonFinite("mellin"));
            }
            if err <= tol.max(floor) {
                return Ok(MellinValue {
                    s,
                    value: next,
                    quadrature_error: err,
                });
            }
            estimate = next;
        }
    }

    /// Sum of `G(x_j) e^{s x_j}` over the points first introduced at `level`,
    /// together with the sum of their moduli.
    fn level_sum(&self, level: usize, s: Complex64) -> (Complex64, f64) {
        let samples = self.level_samples(level);
        let (la, lb) = self.log_support();
        let n = BASE_INTERVALS << level;
        let h = (lb - la) / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        for (i, g) in samples.iter().enumerate() {
            if g.re == 0.0 && g.im == 0.0 {
                continue;
            }
            let j = if level == 0 { i + 1 } else { 2 * i + 1 };
            let x = la + j as f64 * h;
            let term = g * (s * x).exp();
            mass += term.norm();
            acc += term;
        }
        (acc, mass)
    }

    fn level_samples(&self, level: usize) -> &[Complex64] {
        self.inner.levels[level].get_or_init(|| {
            let (la, lb) = self.log_support();
            let n = BASE_INTERVALS << level;
            let h = (lb - la) / n as f64;
            let idx: Vec<usize> = if level == 0 {
                (1..n).collect()
            } else {
                (0..n / 2).map(|i| 2 * i + 1).collect()
            };
            idx.into_iter().map(|j| self.eval_log(la + j as f64 * h)).collect()
        })
    }

    /// `V_m(σ) = ∫ |d^m/dx^m (G(x) e^{σx})| dx` for `m = 0..=8`. Orders that
    /// are not integrable are reported as infinity.
    pub fn derivative_bounds_at(&self, sigma: f64) -> [f64; MAX_DERIVATIVE + 1] {
        let key = sigma.to_bits();
        if let Some((_, v)) = self.inner.bounds.lock().unwrap().iter().find(|(k, _)| *k == key) {
            return *v;
        }
        let v = self.compute_bounds(sigma, BOUND_GRID);
        self.inner.bounds.lock().unwrap().push((key, v));
        v
    }

    /// `V_m` with the weight `e^{x/2}`, i.e. on the critical line.
    pub fn derivative_bounds(&self) -> [f64; MAX_DERIVATIVE + 1] {
        self.derivative_bounds_at(0.5)
    }

    fn compute_bounds(&self, sigma: f64, grid: usize) -> [f64; MAX_DERIVATIVE + 1] {
        match &self.inner.kind {
            Kind::Bump { profile, mid, half } => bump_bounds(*profile, *mid, *half, sigma, grid),
            Kind::Scaled { inner, factor } => inner.derivative_bounds_at(sigma).map(|v| v * factor.norm()),
            Kind::Dilated { inner, lambda } => {
                let k = lambda.powf(sigma);
                inner.derivative_bounds_at(sigma).map(|v| v * k)
            }
            Kind::Tau { inner } => inner.derivative_bounds_at(1.0 - sigma),
            Kind::Convolution { left, right } => {
                // Young: ‖(f * g)^{(m)}‖₁ ≤ ‖f^{(j)}‖₁ ‖g^{(m-j)}‖₁ for any split j
                let l = left.derivative_bounds_at(sigma);
                let r = right.derivative_bounds_at(sigma);
                let mut out = [f64::INFINITY; MAX_DERIVATIVE + 1];
                for (m, slot) in out.iter_mut().enumerate() {
                    for j in 0..=m {
                        *slot = slot.min(l[j] * r[m - j]);
                    }
                }
                out
            }
        }
    }

    /// Bound `|ĝ(σ + iτ)| ≤ min_m V_m(σ)/|τ|^m`.
    pub fn mellin_decay_bound(&self, sigma: f64, tau: f64) -> f64 {
        let v = self.derivative_bounds_at(sigma);
        let t = tau.abs();
        let mut best = v[0];
        let mut power = 1.0;
        for vm in v.iter().skip(1) {
            power *= t;
            best = best.min(vm / power);
        }
        best
    }

    /// `∫ |g(u)|² u^{2σ-1} du`, the squared L² norm of `ĝ` on `Re s = σ`
    /// (with measure `dτ/2π`).
    pub fn weighted_l2_norm_sq(&self, sigma: f64) -> Result<f64> {
        let (la, lb) = self.log_support();
        let f = |x: f64| Complex64::new(self.eval_log(x).norm_sqr() * (2.0 * sigma * x).exp(), 0.0);
        let (v, err) = trapezoid_vanishing(f, la, lb, 1e-15);
        if err > 1e-10 {
            return Err(Error::ToleranceNotMet {
                what: "l2 norm",
                estimate: err,
                requested: 1e-10,
            });
        }
        Ok(v.re)
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn bump_bounds(profile: Profile, mid: f64, half: f64, sigma: f64, grid: usize) -> [f64; MAX_DERIVATIVE + 1] {
    let la = mid - half;
    let h = 2.0 * half / grid as f64;
    let mut acc = [0.0; MAX_DERIVATIVE + 1];
    for j in 1..grid {
        let x = la + j as f64 * h;
        let y = Jet::affine((x - mid) / half, 1.0 / half);
        let weight = Jet::affine(sigma * x, sigma).exp();
        let f = profile.jet(y) * weight;
        for (m, slot) in acc.iter_mut().enumerate() {
            *slot += f.derivative(m).abs();
        }
    }
    let smooth = profile.smooth_orders();
    let mut out = [f64::INFINITY; MAX_DERIVATIVE + 1];
    for m in 0..=smooth {
        out[m] = acc[m] * h;
    }
    out
}

/// Trapezoid rule for an integrand vanishing to high order at both ends,
/// halving the step until consecutive estimates agree to `rel` relative to
/// the integrated modulus. Returns the value and the last difference.
pub(crate) fn trapezoid_vanishing<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, rel: f64) -> (Complex64, f64) {
    let mut n = 16usize;
    let mut h = (b - a) / n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for j in 1..n {
        let v = f(a + j as f64 * h);
        mass += v.norm();
        sum += v;
    }
    let mut estimate = sum * h;
    let mut last = f64::INFINITY;
    for _ in 0..16 {
        let mut add = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let v = f(a + (2 * j + 1) as f64 * 0.5 * h);
            mass += v.norm();
            add += v;
        }
        sum += add;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        last = (next - estimate).norm();
        estimate = next;
        let scale = mass * h;
        if last <= rel.max(4.0 * f64::EPSILON) * scale || scale == 0.0 {
            break;
        }
    }
    (estimate, last)
}

/// Smooth nonnegative bump supported exactly on `[a, b]`; the profile is
/// applied to the affine map of `log u` onto `(-1, 1)`.
pub fn make_bump(a: f64, b: f64, profile: Profile) -> Result<TestFunction> {
    if !(a > 0.0 && a < b && b.is_finite()) {
        return Err(Error::InvalidInterval { a, b });
    }
    if let Profile::CosinePower { power } = profile {
        if power < 2 {
            return Err(Error::InvalidParameter(format!("cosine power must be at least 2, got {power}")));
        }
    }
    let (la, lb) = (a.ln(), b.ln());
    Ok(TestFunction::build(
        Kind::Bump {
            profile,
            mid: 0.5 * (la + lb),
            half: 0.5 * (lb - la),
        },
        a,
        b,
        true,
    ))
}

/// `g^τ(u) = conj(g(1/u)/u)`, supported on `[1/b, 1/a]`.
pub fn tau_involution(g: &TestFunction) -> TestFunction {
    // unwrap a double involution to the original
    if let Kind::Tau { inner } = &g.inner.kind {
        return inner.clone();
    }
    let (a, b) = g.support();
    TestFunction::build(Kind::Tau { inner: g.clone() }, 1.0 / b, 1.0 / a, g.is_real())
}

/// Multiplicative convolution `(g * h)(u) = ∫ g(u/v) h(v) dv/v`.
pub fn mconvolve(g: &TestFunction, h: &TestFunction) -> TestFunction {
    let (ga, gb) = g.support();
    let (ha, hb) = h.support();
    TestFunction::build(
        Kind::Convolution {
            left: g.clone(),
            right: h.clone(),
        },
        ga * ha,
        gb * hb,
        g.is_real() && h.is_real(),
    )
}

/// `k = g * g^τ`, whose Mellin transform on the critical line is `|ĝ|²`.
pub fn autocorrelation(g: &TestFunction) -> TestFunction {
    mconvolve(g, &tau_involution(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std_bump() -> TestFunction {
        make_bump(0.6, 1.7, Profile::ExpInverse).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bump_vanishes_outside_and_peaks_at_log_midpoint() {
        let g = std_bump();
        assert_eq!(g.eval(0.6), c(0.0, 0.0));
        assert_eq!(g.eval(1.7), c(0.0, 0.0));
        assert_eq!(g.eval(0.5), c(0.0, 0.0));
        for k in 1..50 {
            let u = 0.6 + 1.1 * k as f64 / 50.0;
            assert!(g.eval(u).re > 0.0, "u = {u}");
        }
        let mid = (0.6f64 * 1.7).sqrt();
        assert!((g.eval(mid).re - (-1f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn invalid_intervals_are_rejected() {
        assert!(matches!(make_bump(0.0, 1.0, Profile::ExpInverse), Err(Error::InvalidInterval { .. })));
        assert!(matches!(make_bump(2.0, 1.0, Profile::ExpInverse), Err(Error::InvalidInterval { .. })));
        assert!(matches!(make_bump(1.0, f64::INFINITY, Profile::ExpInverse), Err(Error::InvalidInterval { .. })));
    }

    #[test]
    fn descriptor_round_trip() {
        for d in ["exp_inverse:a=0.6,b=1.7", "cosine_power:a=0.5,b=2,n=12"] {
            let g = TestFunction::parse(d).unwrap();
            assert_eq!(g.descriptor(), d);
            assert_eq!(TestFunction::parse(&g.descriptor()).unwrap().descriptor(), d);
        }
        assert!(TestFunction::parse("exp_inverse:a=0.6").is_err());
        assert!(TestFunction::parse("gaussian:a=0.6,b=1").is_err());
        assert!(TestFunction::parse("exp_inverse:a=x,b=1").is_err());
    }

    #[test]
    fn mellin_at_zero_is_positive() {
        let g = std_bump();
        let m = g.mellin(c(0.0, 0.0)).unwrap();
        assert!(m.value.re > 0.0 && m.value.im.abs() < 1e-15);
        assert!(m.quadrature_error <= MELLIN_TOL);
    }

    #[test]
    fn mellin_scaling_under_dilation() {
        let g = std_bump();
        let g2 = g.dilated(2.0).unwrap();
        let s = c(0.5, 1.0);
        let lhs = g2.mellin(s).unwrap().value;
        let rhs = (s * 2f64.ln()).exp() * g.mellin(s).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn mellin_decay_respects_derivative_bound() {
        let g = std_bump();
        let v = g.derivative_bounds();
        let m = g.mellin(c(0.5, 50.0)).unwrap().value.norm();
        assert!(m <= v[2] / 2500.0);
        assert!(m <= g.mellin_decay_bound(0.5, 50.0));
    }

    #[test]
    fn second_derivative_bound_is_grid_stable() {
        let g = std_bump();
        let (la, lb) = g.log_support();
        let (mid, half) = (0.5 * (la + lb), 0.5 * (lb - la));
        let coarse = bump_bounds(Profile::ExpInverse, mid, half, 0.5, BOUND_GRID);
        let fine = bump_bounds(Profile::ExpInverse, mid, half, 0.5, 4 * BOUND_GRID);
        for m in 0..=MAX_DERIVATIVE {
            assert!((coarse[m] / fine[m] - 1.0).abs() < 0.01, "m = {m}");
        }
    }

    #[test]
    fn finite_differences_respect_bounds() {
        // a sup of |F^(m)| is at most V_{m+1}; fourth differences / h^4 approximate F^(4)
        let g = make_bump(0.5, 2.0, Profile::ExpInverse).unwrap();
        let v = g.derivative_bounds_at(0.0);
        let h = 1e-2;
        let mut x = -0.69;
        while x < 0.69 {
            let f = |k: f64| g.eval_log(x + k * h).re;
            let d4 = (f(-2.0) - 4.0 * f(-1.0) + 6.0 * f(0.0) - 4.0 * f(1.0) + f(2.0)) / h.powi(4);
            assert!(d4.abs() <= 1.05 * v[5] + 1e-9, "x = {x}");
            x += 0.01;
        }
    }

    #[test]
    fn tau_involution_properties() {
        let g = std_bump();
        let gt = tau_involution(&g);
        let (a, b) = gt.support();
        assert!((a - 1.0 / 1.7).abs() < 1e-15 && (b - 1.0 / 0.6).abs() < 1e-15);
        let gtt = tau_involution(&gt);
        for k in 1..40 {
            let u = 0.5 + 0.04 * k as f64;
            assert!((gtt.eval(u) - g.eval(u)).norm() < 1e-15);
        }
        let sym = tau_involution(&make_bump(0.5, 2.0, Profile::ExpInverse).unwrap());
        assert_eq!(sym.support(), (0.5, 2.0));
        let s = c(0.5, 1.3);
        let lhs = gt.mellin(s).unwrap().value;
        let rhs = g.mellin(s).unwrap().value.conj();
        assert!((lhs - rhs).norm() < 1e-12);
        let s = c(0.2, -0.9);
        let lhs = gt.mellin(s).unwrap().value;
        let rhs = g.mellin((1.0 - s).conj()).unwrap().value.conj();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn convolution_support_and_mellin_product() {
        let cc = 1.2f64;
        let g = make_bump(1.0 / cc, cc, Profile::ExpInverse).unwrap();
        let k = autocorrelation(&g);
        let (a, b) = k.support();
        assert!((a - 1.0 / (cc * cc)).abs() < 1e-15 && (b - cc * cc).abs() < 1e-15);
        let s = c(0.3, 0.7);
        let direct = k.mellin(s).unwrap().value;
        let product = g.mellin(s).unwrap().value * tau_involution(&g).mellin(s).unwrap().value;
        assert!((direct - product).norm() < 1e-9);
        let s = c(0.5, 2.0);
        let on_line = k.mellin(s).unwrap().value;
        assert!((on_line - g.mellin(s).unwrap().value.norm_sqr()).norm() < 1e-9);
    }

    #[test]
    fn real_functions_have_conjugate_symmetric_transforms() {
        let g = make_bump(0.4, 2.5, Profile::ExpInverse).unwrap();
        for s in [c(0.5, 3.0), c(-0.5, 1.0), c(0.1, 17.0)] {
            let a = g.mellin(s).unwrap().value;
            let b = g.mellin(s.conj()).unwrap().value;
            assert!((a.conj() - b).norm() < 1e-13);
        }
    }

    #[test]
    fn cosine_power_bounds_stop_at_smoothness() {
        let g = make_bump(0.5, 2.0, Profile::CosinePower { power: 4 }).unwrap();
        let v = g.derivative_bounds();
        assert!(v[3].is_finite());
        assert!(v[4].is_infinite());
        assert!(make_bump(0.5, 2.0, Profile::CosinePower { power: 1 }).is_err());
    }
}
