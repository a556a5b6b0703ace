//! Critical zeros: ingestion of zero tables, in-house computation and an
//! on-disk cache.

pub mod counting;
pub mod dirichlet;
pub mod riemann;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::characters::CharacterId;
use crate::error::{Error, Result};

pub use counting::{argument_principle_count, riemann_count, zero_count_upper};
pub use dirichlet::{compute_dirichlet_zeros, dirichlet_l, rotated_l, DirichletZ};
pub use riemann::{compute_first_n, compute_riemann_zeros};

/// Where a zero set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Imported,
    ComputedRs,
    ComputedDirichlet,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Imported => "imported",
            Provenance::ComputedRs => "computed_rs",
            Provenance::ComputedDirichlet => "computed_dirichlet",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "imported" => Ok(Provenance::Imported),
            "computed_rs" => Ok(Provenance::ComputedRs),
            "computed_dirichlet" => Ok(Provenance::ComputedDirichlet),
            other => Err(Error::InvalidParameter(format!("unknown provenance '{other}'"))),
        }
    }
}

/// Ordinates `γ > 0` of critical zeros `1/2 + iγ` of one L-function, up to a
/// height bound.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub character: CharacterId,
    ordinates: Vec<f64>,
    pub height: f64,
    pub provenance: Provenance,
    /// The list is known to contain every zero with `0 < γ ≤ height`.
    pub count_verified: bool,
}

impl ZeroSet {
    /// Validates ascending order and the range `(0, height]`.
    pub fn new(
        character: CharacterId,
        ordinates: Vec<f64>,
        height: f64,
        provenance: Provenance,
        count_verified: bool,
    ) -> Result<Self> {
        if !(height.is_finite() && height >= 0.0) {
            return Err(Error::InvalidParameter(format!("invalid zero height bound {height}")));
        }
        for (i, &g) in ordinates.iter().enumerate() {
            if !(g > 0.0 && g <= height) {
                return Err(Error::InvalidParameter(format!(
                    "ordinate {g} outside (0, {height}]"
                )));
            }
            if i > 0 && g <= ordinates[i - 1] {
                return Err(Error::InvalidParameter(format!(
                    "ordinates not strictly ascending at position {i}"
                )));
            }
        }
        Ok(ZeroSet {
            character,
            ordinates,
            height,
            provenance,
            count_verified,
        })
    }

    /// A set with no zeros, complete up to `height`.
    pub fn empty(character: CharacterId, height: f64) -> Self {
        ZeroSet {
            character,
            ordinates: Vec::new(),
            height,
            provenance: Provenance::Imported,
            count_verified: height == 0.0,
        }
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// First `n` zeros. The height bound moves to the midpoint of the gap
    /// after the last kept zero, so completeness is preserved.
    pub fn truncated(&self, n: usize) -> ZeroSet {
        if n >= self.len() {
            return self.clone();
        }
        let height = if n == 0 {
            0.5 * self.ordinates[0]
        } else {
            0.5 * (self.ordinates[n - 1] + self.ordinates[n])
        };
        ZeroSet {
            character: self.character,
            ordinates: self.ordinates[..n].to_vec(),
            height,
            provenance: self.provenance,
            count_verified: self.count_verified,
        }
    }

    /// Zeros up to height `t` (inclusive).
    pub fn below(&self, t: f64) -> ZeroSet {
        let n = self.ordinates.partition_point(|&g| g <= t);
        ZeroSet {
            character: self.character,
            ordinates: self.ordinates[..n].to_vec(),
            height: t.min(self.height),
            provenance: self.provenance,
            count_verified: self.count_verified,
        }
    }
}

fn parse_ordinate_lines(path: &Path, text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let s = line.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let v: f64 = s.parse().map_err(|_| Error::Parse {
            path: path.to_path_buf(),
            line: line_no,
            message: format!("'{s}' is not a decimal ordinate"),
        })?;
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: line_no,
                message: format!("ordinate {v} must be positive and finite"),
            });
        }
        if let Some(&prev) = out.last() {
            if v <= prev {
                return Err(Error::NonMonotone {
                    path: path.to_path_buf(),
                    line: line_no,
                    value: v,
                });
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Reads a plain zero table: one decimal ordinate per line, ascending.
/// Blank lines and `#` comments are ignored. The result is attributed to
/// ζ and its height bound is the last ordinate.
pub fn import_zeros(path: impl AsRef<Path>) -> Result<ZeroSet> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let ordinates = parse_ordinate_lines(path, &text)?;
    let height = ordinates.last().copied().unwrap_or(0.0);
    ZeroSet::new(CharacterId::principal(), ordinates, height, Provenance::Imported, false)
}

const CACHE_MAGIC: &str = "# weilbench zero cache";

/// Writes the set with a `#` header, atomically (temp file and rename).
pub fn cache_store(set: &ZeroSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut body = String::new();
    body.push_str(CACHE_MAGIC);
    body.push('\n');
    body.push_str(&format!("# character: {}\n", set.character));
    body.push_str(&format!("# height: {}\n", set.height));
    body.push_str(&format!("# provenance: {}\n", set.provenance));
    body.push_str(&format!("# count_verified: {}\n", set.count_verified));
    body.push_str(&format!("# version: {}\n", env!("CARGO_PKG_VERSION")));
    for g in &set.ordinates {
        body.push_str(&format!("{g}\n"));
    }
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file_name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "zeros".into());
    let tmp = path.with_file_name(format!(".{file_name}.tmp-{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        f.write_all(body.as_bytes()).map_err(|e| Error::io(&tmp, e))?;
        f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Loads a cache written by [`cache_store`], refusing a character mismatch.
pub fn cache_load(path: impl AsRef<Path>, expected: CharacterId) -> Result<ZeroSet> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut character = None;
    let mut height = None;
    let mut provenance = None;
    let mut verified = None;
    let mut magic = false;
    for (k, line) in text.lines().enumerate() {
        let Some(rest) = line.strip_prefix('#') else {
            continue;
        };
        if line.trim() == CACHE_MAGIC {
            magic = true;
            continue;
        }
        let Some((key, value)) = rest.split_once(':') else {
            continue;
        };
        let perr = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: k + 1,
            message,
        };
        let value = value.trim();
        match key.trim() {
            "character" => character = Some(value.parse::<CharacterId>().map_err(|e| perr(e.to_string()))?),
            "height" => height = Some(value.parse::<f64>().map_err(|_| perr(format!("bad height '{value}'")))?),
            "provenance" => provenance = Some(value.parse::<Provenance>().map_err(|e| perr(e.to_string()))?),
            "count_verified" => {
                verified = Some(value.parse::<bool>().map_err(|_| perr(format!("bad flag '{value}'")))?)
            }
            _ => {}
        }
    }
    let missing = |what: &str| Error::Parse {
        path: path.to_path_buf(),
        line: 1,
        message: format!("cache header lacks '{what}'"),
    };
    if !magic {
        return Err(missing("weilbench zero cache"));
    }
    let character = character.ok_or_else(|| missing("character"))?;
    if character != expected {
        return Err(Error::CharacterMismatch {
            path: path.to_path_buf(),
            expected: expected.to_string(),
            found: character.to_string(),
        });
    }
    let ordinates = parse_ordinate_lines(path, &text)?;
    ZeroSet::new(
        character,
        ordinates,
        height.ok_or_else(|| missing("height"))?,
        provenance.ok_or_else(|| missing("provenance"))?,
        verified.ok_or_else(|| missing("count_verified"))?,
    )
}

/// Outcome of re-checking a zero set.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroVerification {
    pub max_residual: f64,
    pub worst_ordinate: Option<f64>,
    pub found: usize,
    pub expected: i64,
    pub pass: bool,
}

/// Residual threshold for re-evaluated zeros.
pub const RESIDUAL_THRESHOLD: f64 = 1e-7;

/// Re-evaluates the rotated L-function at every ordinate and recounts
/// zeros up to the height bound by the argument principle.
pub fn verify_zero_set(set: &ZeroSet, budget: &crate::special::AccuracyBudget) -> Result<ZeroVerification> {
    use rayon::prelude::*;
    let chi = crate::characters::DirichletCharacter::from_id(set.character)?;
    let residuals: Vec<f64> = if set.character.modulus == 1 {
        set.ordinates
            .par_iter()
            .map(|&g| crate::special::hardy_z(g, budget).map(f64::abs))
            .collect::<Result<_>>()?
    } else {
        let z = DirichletZ::new(&chi)?;
        set.ordinates
            .par_iter()
            .map(|&g| z.eval(g, budget).map(f64::abs))
            .collect::<Result<_>>()?
    };
    let (mut max_residual, mut worst) = (0.0, None);
    for (r, g) in residuals.iter().zip(&set.ordinates) {
        if *r > max_residual {
            max_residual = *r;
            worst = Some(*g);
        }
    }
    let height = set.height;
    let expected = if set.character.modulus == 1 {
        riemann_count(height.max(1.0), budget)?
    } else {
        counting::dirichlet_count(&chi, height, budget)?
    };
    let pass = max_residual <= RESIDUAL_THRESHOLD && expected == set.len() as i64;
    Ok(ZeroVerification {
        max_residual,
        worst_ordinate: worst,
        found: set.len(),
        expected,
        pass,
    })
}
