//! Truncated Taylor series ("jets") for exact high-order derivatives of the
//! bump profiles.

use std::ops::{Add, Mul, Neg, Sub};

/// Highest derivative order tracked.
pub const JET_ORDER: usize = 8;

/// Coefficients `c_k = f^(k)(x0) / k!` for `k ≤ JET_ORDER`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub c: [f64; JET_ORDER + 1],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_ORDER + 1];
        c[0] = v;
        Jet { c }
    }

    /// The affine map `x ↦ value + slope·(x − x0)`.
    pub fn affine(value: f64, slope: f64) -> Self {
        let mut c = [0.0; JET_ORDER + 1];
        c[0] = value;
        c[1] = slope;
        Jet { c }
    }

    /// `m`-th derivative at the expansion point.
    pub fn derivative(&self, m: usize) -> f64 {
        let mut fact = 1.0;
        for k in 2..=m {
            fact *= k as f64;
        }
        self.c[m] * fact
    }

    pub fn scale(self, k: f64) -> Self {
        let mut c = self.c;
        c.iter_mut().for_each(|v| *v *= k);
        Jet { c }
    }

    pub fn exp(self) -> Self {
        let mut b = [0.0; JET_ORDER + 1];
        b[0] = self.c[0].exp();
        for k in 1..=JET_ORDER {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.c[j] * b[k - j];
            }
            b[k] = acc / k as f64;
        }
        Jet { c: b }
    }

    pub fn recip(self) -> Self {
        let mut b = [0.0; JET_ORDER + 1];
        b[0] = 1.0 / self.c[0];
        for k in 1..=JET_ORDER {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += self.c[j] * b[k - j];
            }
            b[k] = -acc * b[0];
        }
        Jet { c: b }
    }

    /// `(sin, cos)` of the jet.
    pub fn sin_cos(self) -> (Self, Self) {
        let mut s = [0.0; JET_ORDER + 1];
        let mut c = [0.0; JET_ORDER + 1];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..=JET_ORDER {
            let (mut as_, mut ac) = (0.0, 0.0);
            for j in 1..=k {
                let ja = j as f64 * self.c[j];
                as_ += ja * c[k - j];
                ac += ja * s[k - j];
            }
            s[k] = as_ / k as f64;
            c[k] = -ac / k as f64;
        }
        (Jet { c: s }, Jet { c })
    }

    pub fn powi(self, n: u32) -> Self {
        let mut out = Jet::constant(1.0);
        for _ in 0..n {
            out = out * self;
        }
        out
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut c = self.c;
        c.iter_mut().zip(rhs.c).for_each(|(a, b)| *a += b);
        Jet { c }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; JET_ORDER + 1];
        for i in 0..=JET_ORDER {
            for j in 0..=(JET_ORDER - i) {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Jet { c }
    }
}
