//! Zeros of ζ on the critical line.

use rayon::prelude::*;

use super::counting::{riemann_count, zero_count_main};
use super::{Provenance, ZeroSet};
use crate::characters::CharacterId;
use crate::error::{Error, Result};
use crate::quadrature::brent;
use crate::special::riemann_siegel::{riemann_siegel_z_bounded, RS_MAX_HEIGHT};
use crate::special::{gram_point, hardy_z, AccuracyBudget};

/// Grid subdivisions per Gram interval on the first pass.
const INITIAL_SUBDIVISION: usize = 4;
const MAX_SUBDIVISION: usize = 512;
/// Bracket refinement tolerance on ordinates.
pub const ORDINATE_TOL: f64 = 1e-10;

/// Sign of `Z(t)`, from Riemann–Siegel when its remainder bound certifies
/// the sign and from Euler–Maclaurin otherwise.
fn z_sign(t: f64, budget: &AccuracyBudget) -> Result<f64> {
    let rs = riemann_siegel_z_bounded(t)?;
    if rs.value.abs() > rs.bound {
        return Ok(rs.value.signum());
    }
    let v = hardy_z(t, budget)?;
    Ok(if v == 0.0 { 0.0 } else { v.signum() })
}

fn scan_grid(height: f64, sub: usize) -> Result<Vec<f64>> {
    let mut gram = Vec::new();
    let mut n = -1i64;
    loop {
        let g = gram_point(n)?;
        if g >= height {
            break;
        }
        gram.push(g);
        n += 1;
    }
    let mut knots = vec![10.0];
    knots.extend(gram.into_iter().filter(|&g| g > 10.0));
    knots.push(height);
    let mut grid = Vec::with_capacity(knots.len() * sub);
    for w in knots.windows(2) {
        for k in 0..sub {
            grid.push(w[0] + (w[1] - w[0]) * k as f64 / sub as f64);
        }
    }
    grid.push(height);
    Ok(grid)
}

/// All zeros of `Z(t)` in `(0, T]` for `10 ≤ T ≤ 10^4`, bracketed on a
/// subdivided Gram grid, refined to `1e-10` with Euler–Maclaurin
/// evaluations, and checked against `N(T)`; the grid is halved until the
/// count matches.
pub fn compute_riemann_zeros(height: f64, budget: &AccuracyBudget) -> Result<ZeroSet> {
    if !(10.0..=RS_MAX_HEIGHT).contains(&height) {
        return Err(Error::InvalidParameter(format!(
            "Riemann zero computation needs 10 ≤ T ≤ {RS_MAX_HEIGHT}, got {height}"
        )));
    }
    let expected = riemann_count(height, budget)?;
    let mut sub = INITIAL_SUBDIVISION;
    let mut found = 0;
    while sub <= MAX_SUBDIVISION {
        let grid = scan_grid(height, sub)?;
        let signs: Vec<f64> = grid.par_iter().map(|&t| z_sign(t, budget)).collect::<Result<_>>()?;
        let brackets: Vec<(f64, f64)> = grid
            .windows(2)
            .zip(signs.windows(2))
            .filter(|(_, s)| s[0] * s[1] < 0.0 || (s[1] == 0.0 && s[0] != 0.0))
            .map(|(t, _)| (t[0], t[1]))
            .collect();
        found = brackets.len();
        if found as i64 == expected {
            let ordinates: Vec<f64> = brackets
                .par_iter()
                .map(|&(a, b)| brent(|t| hardy_z(t, budget), a, b, ORDINATE_TOL))
                .collect::<Result<_>>()?;
            return ZeroSet::new(CharacterId::principal(), ordinates, height, Provenance::ComputedRs, true);
        }
        if found as i64 > expected {
            break;
        }
        sub *= 2;
    }
    Err(Error::CountMismatch {
        height,
        found,
        expected,
    })
}

/// The first `n` zeros of ζ, with the height bound placed between the
/// `n`-th and `(n+1)`-th ordinate.
pub fn compute_first_n(n: usize, budget: &AccuracyBudget) -> Result<ZeroSet> {
    // invert the smooth counting function, then pad by a few mean spacings
    let (mut lo, mut hi) = (10.0f64, RS_MAX_HEIGHT);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if zero_count_main(1, mid) < n as f64 + 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut height = (hi + 10.0).clamp(20.0, RS_MAX_HEIGHT);
    loop {
        let set = compute_riemann_zeros(height, budget)?;
        if set.len() > n {
            return Ok(set.truncated(n));
        }
        if height >= RS_MAX_HEIGHT {
            return Err(Error::InvalidParameter(format!(
                "{n} zeros exceed the supported height {RS_MAX_HEIGHT}"
            )));
        }
        height = (height * 1.05).min(RS_MAX_HEIGHT);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_three_zeros() {
        let b = AccuracyBudget::default();
        let set = compute_riemann_zeros(30.0, &b).unwrap();
        assert_eq!(set.len(), 3);
        let known = [14.134_725_141_734_693, 21.022_039_638_771_555, 25.010_857_580_145_69];
        for (g, k) in set.ordinates().iter().zip(known) {
            assert!((g - k).abs() < 1e-9);
        }
        assert!(set.count_verified);
    }

    #[test]
    fn counts_match_at_standard_heights() {
        let b = AccuracyBudget::default();
        for (t, n) in [(50.0, 10), (100.0, 29), (500.0, 269)] {
            let set = compute_riemann_zeros(t, &b).unwrap();
            assert_eq!(set.len(), n, "T = {t}");
        }
    }

    #[test]
    fn residuals_are_small() {
        let b = AccuracyBudget::default();
        let set = compute_riemann_zeros(200.0, &b).unwrap();
        for &g in set.ordinates() {
            assert!(hardy_z(g, &b).unwrap().abs() < 1e-7, "γ = {g}");
        }
    }

    #[test]
    fn first_n_truncates_with_gap_height() {
        let b = AccuracyBudget::default();
        let set = compute_first_n(10, &b).unwrap();
        assert_eq!(set.len(), 10);
        assert!(set.height > set.ordinates()[9] && set.height < 52.97);
    }

    #[test]
    fn domain_is_enforced() {
        let b = AccuracyBudget::default();
        assert!(compute_riemann_zeros(5.0, &b).is_err());
        assert!(compute_riemann_zeros(2e4, &b).is_err());
    }
}
