//! Dirichlet characters, their conductors and their local components at
//! the places of ℚ.
//!
//! Characters mod `q` are indexed lexicographically on their exponent
//! vectors with respect to a fixed list of generators of `(ℤ/qℤ)^×`: primes
//! in increasing order, for `2^e` with `e ≥ 3` the pair `(−1, 5)`, for odd
//! `p^e` the least primitive root, each lifted to `q` by the Chinese
//! remainder theorem (≡ 1 modulo the other prime powers). The first
//! generator is the most significant digit, so index 0 is the principal
//! character.

pub mod arith;
pub mod cyclotomic;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use arith::{crt, euler_phi, factorize, gcd, lcm, mod_pow, primitive_root, valuation};
pub use cyclotomic::{Angle, CycloSum};

/// Exponent applied to the CRT `p`-part of `χ` to obtain the unit values of
/// the local component `χ_p`. The value −1 makes the product of all local
/// components trivial on principal ideles (see `product_formula` tests).
pub const UNIT_EXPONENT: i64 = -1;

/// Identifier `q=<modulus>,index=<k>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharacterId {
    pub modulus: u64,
    pub index: u64,
}

impl CharacterId {
    pub fn principal() -> Self {
        CharacterId { modulus: 1, index: 0 }
    }
}

impl fmt::Display for CharacterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={},index={}", self.modulus, self.index)
    }
}

impl FromStr for CharacterId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("character id '{s}': expected q=<modulus>,index=<k>"));
        let mut modulus = None;
        let mut index = None;
        for part in s.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: u64 = v.trim().parse().map_err(|_| bad())?;
            match k.trim() {
                "q" => modulus = Some(v),
                "index" => index = Some(v),
                _ => return Err(bad()),
            }
        }
        let modulus = modulus.ok_or_else(bad)?;
        if modulus == 0 {
            return Err(bad());
        }
        Ok(CharacterId {
            modulus,
            index: index.ok_or_else(bad)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Generator {
    residue: u64,
    order: u64,
}

fn generators(q: u64) -> Vec<Generator> {
    let factors = factorize(q);
    let lift = |g: u64, pe: u64| -> u64 {
        let rest = q / pe;
        if rest == 1 {
            g % pe
        } else {
            crt(&[(g % pe, pe), (1, rest)])
        }
    };
    let mut out = Vec::new();
    for &(p, e) in &factors {
        let pe = p.pow(e);
        if p == 2 {
            if e >= 2 {
                out.push(Generator {
                    residue: lift(pe - 1, pe),
                    order: 2,
                });
            }
            if e >= 3 {
                out.push(Generator {
                    residue: lift(5, pe),
                    order: pe / 4,
                });
            }
        } else {
            out.push(Generator {
                residue: lift(primitive_root(p, e), pe),
                order: euler_phi(pe),
            });
        }
    }
    out
}

/// Exponent vectors of every unit: `table[a] = Some(k)` with `a = Π g_i^{k_i}`.
fn discrete_logs(q: u64, gens: &[Generator]) -> Vec<Option<Vec<u64>>> {
    let mut table = vec![None; q as usize];
    let total: u64 = gens.iter().map(|g| g.order).product();
    for mut code in 0..total {
        let mut exps = vec![0u64; gens.len()];
        let mut a = 1 % q;
        for (i, g) in gens.iter().enumerate().rev() {
            exps[i] = code % g.order;
            code /= g.order;
            a = a * mod_pow(g.residue, exps[i], q) % q;
        }
        table[a as usize] = Some(exps);
    }
    table
}

/// A Dirichlet character modulo `q`, with exact values on units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    index: u64,
    exponents: Vec<u64>,
    orders: Vec<u64>,
    values: Vec<Option<Angle>>,
}

impl DirichletCharacter {
    fn from_exponents(q: u64, gens: &[Generator], logs: &[Option<Vec<u64>>], exponents: Vec<u64>) -> Self {
        let orders: Vec<u64> = gens.iter().map(|g| g.order).collect();
        let mut index = 0;
        for (e, o) in exponents.iter().zip(&orders) {
            index = index * o + e;
        }
        let den = orders.iter().fold(1, |acc, &o| lcm(acc, o));
        let values = logs
            .iter()
            .map(|entry| {
                entry.as_ref().map(|k| {
                    let num: u64 = k
                        .iter()
                        .zip(&exponents)
                        .zip(&orders)
                        .map(|((k, e), o)| k * e * (den / o))
                        .sum();
                    Angle::new((num % den) as i64, den)
                })
            })
            .collect();
        DirichletCharacter {
            modulus: q,
            index,
            exponents,
            orders,
            values,
        }
    }

    /// Character with a given index.
    pub fn new(q: u64, index: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        let gens = generators(q);
        let phi = euler_phi(q);
        if index >= phi {
            return Err(Error::InvalidParameter(format!(
                "character index {index} out of range for modulus {q} (φ(q) = {phi})"
            )));
        }
        let logs = discrete_logs(q, &gens);
        let mut exps = vec![0u64; gens.len()];
        let mut rest = index;
        for (i, g) in gens.iter().enumerate().rev() {
            exps[i] = rest % g.order;
            rest /= g.order;
        }
        Ok(Self::from_exponents(q, &gens, &logs, exps))
    }

    pub fn from_id(id: CharacterId) -> Result<Self> {
        Self::new(id.modulus, id.index)
    }

    pub fn principal(q: u64) -> Result<Self> {
        Self::new(q, 0)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn id(&self) -> CharacterId {
        CharacterId {
            modulus: self.modulus,
            index: self.index,
        }
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `χ(a)` as an exact root of unity, or `None` when `gcd(a, q) > 1`.
    pub fn value(&self, a: i64) -> Option<Angle> {
        let r = a.rem_euclid(self.modulus as i64) as usize;
        self.values[r]
    }

    /// `χ(a)` as a complex number (0 off the units).
    pub fn eval(&self, a: i64) -> Complex64 {
        self.value(a).map_or(Complex64::new(0.0, 0.0), Angle::to_complex)
    }

    /// `χ(−1) = ±1`.
    pub fn parity(&self) -> i8 {
        match self.value(-1) {
            Some(v) if v.is_one() => 1,
            _ => -1,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    /// All values real (order ≤ 2).
    pub fn is_real(&self) -> bool {
        self.values.iter().flatten().all(|v| v.den() <= 2)
    }

    /// Order of `χ` in the character group.
    pub fn order(&self) -> u64 {
        self.values.iter().flatten().fold(1, |acc, v| lcm(acc, v.den()))
    }

    pub fn conj(&self) -> Self {
        let gens = generators(self.modulus);
        let logs = discrete_logs(self.modulus, &gens);
        let exps = self
            .exponents
            .iter()
            .zip(&self.orders)
            .map(|(e, o)| (o - e) % o)
            .collect();
        Self::from_exponents(self.modulus, &gens, &logs, exps)
    }

    /// Sum `Σ_{a mod q} χ(a)` in exact arithmetic.
    pub fn exact_sum(&self) -> CycloSum {
        let mut s = CycloSum::zero(self.order());
        for v in self.values.iter().flatten() {
            s.add_root(*v, 1);
        }
        s
    }

    /// Conductor `q₀` and the primitive character mod `q₀` inducing `χ`.
    pub fn conductor(&self) -> (u64, DirichletCharacter) {
        let q = self.modulus;
        let mut divisors: Vec<u64> = (1..=q).filter(|d| q.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        for d in divisors {
            let factors_through = (0..q)
                .filter(|&a| a % d == 1 % d)
                .all(|a| self.values[a as usize].is_none_or(|v| v.is_one()));
            if !factors_through {
                continue;
            }
            let gens = generators(d);
            let logs = discrete_logs(d, &gens);
            let exps: Vec<u64> = gens
                .iter()
                .map(|g| {
                    let a = (0..q / d)
                        .map(|k| g.residue + k * d)
                        .find(|&a| gcd(a, q) == 1)
                        .expect("a unit lift exists");
                    let v = self.values[(a % q) as usize].expect("lift is a unit");
                    v.num() * (g.order / v.den())
                })
                .collect();
            let prim = DirichletCharacter::from_exponents(d, &gens, &logs, exps);
            return (d, prim);
        }
        unreachable!("q itself always qualifies")
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor().0 == self.modulus
    }

    /// CRT `p`-part of `χ`: values on residues mod `p^{v_p(q)}`.
    pub fn p_part(&self, p: u64) -> (u64, Vec<Option<Angle>>) {
        let f = valuation(self.modulus, p);
        let pf = p.pow(f);
        let rest = self.modulus / pf;
        let values = (0..pf)
            .map(|b| {
                if gcd(b, pf) != 1 {
                    return None;
                }
                let a = if rest == 1 { b } else { crt(&[(b, pf), (1, rest)]) };
                self.value(a as i64)
            })
            .collect();
        (pf, values)
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.id().fmt(f)
    }
}

/// All `φ(q)` characters mod `q`, in index order.
pub fn enumerate_characters(q: u64) -> Vec<DirichletCharacter> {
    if q == 0 {
        return Vec::new();
    }
    let gens = generators(q);
    let logs = discrete_logs(q, &gens);
    let total: u64 = gens.iter().map(|g| g.order).product();
    (0..total)
        .map(|mut code| {
            let mut exps = vec![0u64; gens.len()];
            for (i, g) in gens.iter().enumerate().rev() {
                exps[i] = code % g.order;
                code /= g.order;
            }
            DirichletCharacter::from_exponents(q, &gens, &logs, exps)
        })
        .collect()
}

/// All primitive characters mod `q`.
pub fn primitive_characters(q: u64) -> Vec<DirichletCharacter> {
    enumerate_characters(q)
        .into_iter()
        .filter(DirichletCharacter::is_primitive)
        .collect()
}

/// A place of ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Finite(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("real"),
            Place::Finite(p) => write!(f, "p={p}"),
        }
    }
}

/// Local component `χ_ν` of the idele class character attached to `χ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCharacter {
    pub place: Place,
    /// `χ(−1)` at the real place.
    pub parity: Option<i8>,
    /// Values on `(ℤ/p^f)^×`, indexed by residue (`None` off the units).
    pub unit_values: Vec<Option<Angle>>,
    /// Value at the uniformizer `p`.
    pub value_at_p: Option<Angle>,
    /// Conductor exponent.
    pub f: u32,
}

impl LocalCharacter {
    pub fn prime(&self) -> Option<u64> {
        match self.place {
            Place::Finite(p) => Some(p),
            Place::Real => None,
        }
    }

    /// `p^f`, the modulus of the unit table.
    pub fn unit_modulus(&self) -> u64 {
        self.unit_values.len() as u64
    }

    /// `χ_p(u)` for a unit `u`, reduced modulo `p^f`.
    pub fn unit_value(&self, u: i64) -> Option<Angle> {
        let m = self.unit_modulus() as i64;
        self.unit_values[u.rem_euclid(m) as usize]
    }

    pub fn is_ramified(&self) -> bool {
        self.f > 0
    }

    /// `χ_p(p^k u)` for a unit `u`.
    pub fn eval(&self, k: i64, u: i64) -> Option<Angle> {
        let at_p = self.value_at_p?;
        Some(at_p.pow(k) * self.unit_value(u)?)
    }
}

/// `v_p(q)` for a character mod `q`.
pub fn conductor_exponent(chi: &DirichletCharacter, p: u64) -> u32 {
    valuation(chi.modulus(), p)
}

/// Local component of a primitive character at a place.
pub fn local_component(chi: &DirichletCharacter, place: Place) -> Result<LocalCharacter> {
    let (q0, _) = chi.conductor();
    if q0 != chi.modulus() {
        return Err(Error::NonPrimitive {
            modulus: chi.modulus(),
            conductor: q0,
        });
    }
    let q = chi.modulus();
    match place {
        Place::Real => Ok(LocalCharacter {
            place,
            parity: Some(chi.parity()),
            unit_values: vec![Some(Angle::ONE)],
            value_at_p: None,
            f: 0,
        }),
        Place::Finite(p) => {
            if !arith::is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
            let f = valuation(q, p);
            if f == 0 {
                return Ok(LocalCharacter {
                    place,
                    parity: None,
                    unit_values: vec![Some(Angle::ONE)],
                    value_at_p: chi.value(p as i64),
                    f: 0,
                });
            }
            let (pf, part) = chi.p_part(p);
            let unit_values = part.into_iter().map(|v| v.map(|a| a.pow(UNIT_EXPONENT))).collect();
            let rest = q / pf;
            // uniformizer: the idele p, seen through the other ramified places
            let a = if rest == 1 { 1 } else { crt(&[(1, pf), (p % rest, rest)]) };
            Ok(LocalCharacter {
                place,
                parity: None,
                unit_values,
                value_at_p: chi.value(a as i64),
                f,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_counts() {
        assert_eq!(enumerate_characters(5).len(), 4);
        let one = enumerate_characters(1);
        assert_eq!(one.len(), 1);
        assert!(one[0].is_principal());
        for q in 1..=60 {
            assert_eq!(enumerate_characters(q).len() as u64, euler_phi(q), "q = {q}");
        }
    }

    #[test]
    fn mod_eight_is_order_two() {
        let chars = enumerate_characters(8);
        assert_eq!(chars.len(), 4);
        assert!(chars.iter().all(|c| c.is_real()));
    }

    #[test]
    fn index_round_trip_and_principal_first() {
        for q in [7u64, 9, 12, 15, 16] {
            for (k, chi) in enumerate_characters(q).into_iter().enumerate() {
                assert_eq!(chi.index(), k as u64);
                assert_eq!(DirichletCharacter::new(q, k as u64).unwrap(), chi);
                assert_eq!(chi.is_principal(), k == 0);
            }
        }
        assert!(DirichletCharacter::new(5, 4).is_err());
    }

    #[test]
    fn multiplicativity() {
        for q in [5u64, 9, 20, 24] {
            for chi in enumerate_characters(q) {
                for a in 0..q as i64 {
                    for b in 0..q as i64 {
                        match (chi.value(a), chi.value(b)) {
                            (Some(x), Some(y)) => assert_eq!(chi.value(a * b), Some(x * y)),
                            _ => assert_eq!(chi.value(a * b), None),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_is_exact() {
        for q in 1..=40 {
            let phi = euler_phi(q) as i64;
            for chi in enumerate_characters(q) {
                let expected = if chi.is_principal() { phi } else { 0 };
                assert_eq!(chi.exact_sum().as_integer(), Some(expected), "{chi}");
            }
        }
    }

    #[test]
    fn conductors() {
        let (q0, prim) = DirichletCharacter::principal(6).unwrap().conductor();
        assert_eq!(q0, 1);
        assert!(prim.is_principal());
        // nontrivial character mod 3 lifted to mod 9: the order-2 character
        let lifted = enumerate_characters(9).into_iter().find(|c| c.order() == 2).unwrap();
        assert_eq!(lifted.conductor().0, 3);
        let sextic = enumerate_characters(9).into_iter().find(|c| c.order() == 6).unwrap();
        assert_eq!(sextic.conductor().0, 9);
        // the primitive part agrees with χ on units
        let (d, prim) = lifted.conductor();
        for a in 0..9i64 {
            if let Some(v) = lifted.value(a) {
                assert_eq!(prim.value(a % d as i64), Some(v));
            }
        }
    }

    #[test]
    fn crt_parts_reassemble() {
        for q in [15u64, 24, 36, 45] {
            for chi in enumerate_characters(q) {
                let parts: Vec<_> = factorize(q).into_iter().map(|(p, _)| chi.p_part(p)).collect();
                for a in 0..q as i64 {
                    let Some(v) = chi.value(a) else { continue };
                    let mut prod = Angle::ONE;
                    for (pf, vals) in &parts {
                        prod = prod * vals[(a as u64 % pf) as usize].unwrap();
                    }
                    assert_eq!(prod, v, "{chi} at {a}");
                }
            }
        }
    }

    #[test]
    fn local_components() {
        let chi5 = primitive_characters(5).into_iter().find(|c| c.order() == 4).unwrap();
        let at3 = local_component(&chi5, Place::Finite(3)).unwrap();
        assert_eq!(at3.f, 0);
        assert_eq!(at3.value_at_p, chi5.value(3));
        assert!((at3.value_at_p.unwrap().to_complex().norm() - 1.0).abs() < 1e-15);

        let chi9 = primitive_characters(9).into_iter().next().unwrap();
        let at3 = local_component(&chi9, Place::Finite(3)).unwrap();
        assert_eq!(at3.f, 2);
        assert!(at3.unit_values.iter().flatten().all(|v| 6 % v.order() == 0));

        let odd = primitive_characters(4).into_iter().next().unwrap();
        assert_eq!(local_component(&odd, Place::Real).unwrap().parity, Some(-1));

        let lifted = enumerate_characters(9).into_iter().find(|c| c.order() == 2).unwrap();
        assert!(matches!(
            local_component(&lifted, Place::Finite(3)),
            Err(Error::NonPrimitive { .. })
        ));
    }

    #[test]
    fn conductor_exponents() {
        let chi8 = primitive_characters(8).into_iter().next().unwrap();
        assert_eq!(conductor_exponent(&chi8, 2), 3);
        let chi9 = primitive_characters(9).into_iter().next().unwrap();
        assert_eq!(conductor_exponent(&chi9, 3), 2);
        let chi5 = primitive_characters(5).into_iter().next().unwrap();
        assert_eq!(conductor_exponent(&chi5, 2), 0);
    }

    fn idele_value(chi: &DirichletCharacter, a: i64) -> Angle {
        // product over all places of χ_ν evaluated on the principal idele a
        let mut prod = Angle::ONE;
        if a < 0 {
            let real = local_component(chi, Place::Real).unwrap();
            if real.parity == Some(-1) {
                prod = prod * Angle::new(1, 2);
            }
        }
        let n = a.unsigned_abs();
        let mut primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
        for (p, _) in factorize(chi.modulus()) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        for p in primes {
            let local = local_component(chi, Place::Finite(p)).unwrap();
            let k = valuation(n, p) as i64;
            let unit = a / (p as i64).pow(k as u32);
            prod = prod * local.eval(k, unit).unwrap();
        }
        prod
    }

    #[test]
    fn product_formula_on_principal_ideles() {
        for q in [3u64, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24] {
            for chi in primitive_characters(q) {
                for a in [-1i64, 2, 3, 5, 7, -11, 12, 30, -45, 49, 60] {
                    assert!(idele_value(&chi, a).is_one(), "{chi} at {a}");
                }
            }
        }
    }

    #[test]
    fn id_parsing() {
        let id: CharacterId = "q=9,index=4".parse().unwrap();
        assert_eq!(id, CharacterId { modulus: 9, index: 4 });
        assert_eq!(id.to_string(), "q=9,index=4");
        assert!("q=0,index=1".parse::<CharacterId>().is_err());
        assert!("q=5".parse::<CharacterId>().is_err());
    }
}
