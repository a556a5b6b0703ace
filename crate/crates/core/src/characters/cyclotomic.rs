//! Exact arithmetic with roots of unity.
//!
//! A root of unity is stored as a reduced rational rotation `num/den`
//! (value `e^{2πi·num/den}`). Integer combinations of roots live in
//! `ℤ[x]/(x^n − 1)` and are compared with zero after reduction modulo the
//! cyclotomic polynomial `Φ_n`, which makes character sums exact.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use super::arith::{gcd, lcm};

/// `e^{2πi·num/den}` with `0 ≤ num < den` and `gcd(num, den) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    num: u64,
    den: u64,
}

impl Angle {
    pub const ONE: Angle = Angle { num: 0, den: 1 };

    pub fn new(num: i64, den: u64) -> Angle {
        assert!(den > 0, "angle denominator must be positive");
        let r = num.rem_euclid(den as i64) as u64;
        let g = gcd(r, den);
        if r == 0 {
            Angle::ONE
        } else {
            Angle { num: r / g, den: den / g }
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Order of the root of unity.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn inv(self) -> Angle {
        Angle::new(-(self.num as i64), self.den)
    }

    pub fn pow(self, k: i64) -> Angle {
        let n = (self.num as i128 * k as i128).rem_euclid(self.den as i128) as i64;
        Angle::new(n, self.den)
    }

    pub fn to_complex(self) -> Complex64 {
        if self.num == 0 {
            return Complex64::new(1.0, 0.0);
        }
        // exact values at quarter turns
        if (self.num * 4).is_multiple_of(self.den) { match self.num * 4 / self.den {
            1 => return Complex64::new(0.0, 1.0),
            2 => return Complex64::new(-1.0, 0.0),
            3 => return Complex64::new(0.0, -1.0),
            _ => {}
        } }
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * self.num as f64 / self.den as f64)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2πi·{}/{})", self.num, self.den)
    }
}

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both monic-leading-coefficient polynomials in ascending order
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1];
        quot[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Cyclotomic polynomial `Φ_n` in ascending coefficient order.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = poly_divide_exact(&poly, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

/// An element of `ℤ[ζ_n]`, stored as coefficients on `1, ζ_n, …, ζ_n^{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloSum {
    n: u64,
    coeffs: Vec<i64>,
}

impl CycloSum {
    pub fn zero(n: u64) -> Self {
        CycloSum {
            n,
            coeffs: vec![0; n as usize],
        }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Adds `c·e^{2πi·angle}`; the angle's order must divide `n`.
    pub fn add_root(&mut self, angle: Angle, c: i64) {
        assert!(self.n.is_multiple_of(angle.den()), "root of order {} outside ℤ[ζ_{}]", angle.den(), self.n);
        let k = angle.num() * (self.n / angle.den());
        self.coeffs[k as usize] += c;
    }

    pub fn add_integer(&mut self, c: i64) {
        self.coeffs[0] += c;
    }

    /// Canonical representative modulo `Φ_n` (degree `< φ(n)`).
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.n);
        let deg = phi.len() - 1;
        let mut rem = self.coeffs.clone();
        for i in (deg..rem.len()).rev() {
            let c = rem[i];
            if c != 0 {
                for (j, p) in phi.iter().enumerate() {
                    rem[i - deg + j] -= c * p;
                }
            }
        }
        rem.truncate(deg);
        rem
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    /// The integer this element equals, if it is rational.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        if r.iter().skip(1).all(|&c| c == 0) {
            Some(r.first().copied().unwrap_or(0))
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| Angle::new(k as i64, self.n).to_complex() * c as f64)
            .sum()
    }
}

impl std::ops::Mul for Angle {
    type Output = Angle;

    fn mul(self, other: Angle) -> Angle {
        let d = lcm(self.den, other.den);
        Angle::new((self.num * (d / self.den) + other.num * (d / other.den)) as i64, d)
    }
}
