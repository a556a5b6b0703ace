//! Elementary integer arithmetic.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Prime factorisation as `(p, e)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Exponent of `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n != 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Primes `≤ n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &is)| is)
        .map(|(k, _)| k as u64)
        .collect()
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`).
pub fn mult_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * a % m;
        k += 1;
    }
    k
}

/// Smallest generator of the cyclic group `(ℤ/p^e)^×` for odd `p`.
pub fn primitive_root(p: u64, e: u32) -> u64 {
    let m = p.pow(e);
    let phi = euler_phi(m);
    (2..m)
        .find(|&g| gcd(g, m) == 1 && mult_order(g, m) == phi)
        .unwrap_or(1)
}

/// Solves `x ≡ r_i (mod m_i)` for pairwise coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> u64 {
    let modulus: u64 = residues.iter().map(|&(_, m)| m).product();
    let mut x = 0u128;
    for &(r, m) in residues {
        let big = modulus / m;
        // inverse of big modulo m
        let inv = mod_pow(big % m, euler_phi(m) - 1, m);
        x += r as u128 * big as u128 % modulus as u128 * inv as u128;
        x %= modulus as u128;
    }
    x as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_phi() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(valuation(72, 2), 3);
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieve = primes_up_to(200);
        let naive: Vec<u64> = (2..=200).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, naive);
    }

    #[test]
    fn primitive_roots_generate() {
        for (p, e) in [(3, 1), (3, 2), (5, 2), (7, 1), (11, 1), (13, 1)] {
            let g = primitive_root(p, e);
            let m = p.pow(e);
            assert_eq!(mult_order(g, m), euler_phi(m));
        }
    }

    #[test]
    fn crt_reconstructs() {
        let x = crt(&[(2, 8), (4, 9), (3, 5)]);
        assert_eq!((x % 8, x % 9, x % 5), (2, 4, 3));
    }
}
