//! Run configuration: command-line flags, optionally backed by a plain
//! `key=value` file. Flags win over the file.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Args;
use weilbench::characters::{primitive_characters, DirichletCharacter};
use weilbench::positivity::{default_eps_grid, geometric_grid};
use weilbench::report::DEFAULT_VERIFY_TOL;
use weilbench::test_functions::TestFunction;
use weilbench::{Error, Result};

pub const DEFAULT_G: &str = "exp_inverse:a=0.6,b=1.7";
pub const DEFAULT_N_ZEROS: usize = 2000;
pub const DEFAULT_DIRICHLET_HEIGHT: f64 = 50.0;
pub const DEFAULT_CACHE_DIR: &str = ".weilbench-cache";

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// Modulus of the Dirichlet character (1 is ζ).
    #[arg(long)]
    pub q: Option<u64>,
    /// Index of the character mod q; defaults to the first primitive one.
    #[arg(long = "chi-index")]
    pub chi_index: Option<u64>,
    /// Test function descriptor, e.g. exp_inverse:a=0.6,b=1.7.
    #[arg(long)]
    pub g: Option<String>,
    /// Zero source: a file path, `cache` or `compute`.
    #[arg(long)]
    pub zeros: Option<String>,
    /// Height up to which zeros are used or computed.
    #[arg(long = "T")]
    pub height: Option<f64>,
    /// Number of ζ zeros to use (ignored when --T is given).
    #[arg(long = "n-zeros")]
    pub n_zeros: Option<usize>,
    /// Residual tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Single-ε feasibility mode.
    #[arg(long)]
    pub eps: Option<f64>,
    /// ε grid: `lo:hi:n` (geometric) or a comma-separated list.
    #[arg(long = "eps-grid")]
    pub eps_grid: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Plain-text key=value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Never compute zeros; fail if none are cached or supplied.
    #[arg(long = "no-compute")]
    pub no_compute: bool,
    /// Directory of the zero cache.
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<PathBuf>,
    /// Path of the τ, α(τ) CSV written by `positivity`.
    #[arg(long = "profile-out")]
    pub profile_out: Option<PathBuf>,
}

/// Where zeros come from.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroSource {
    Path(PathBuf),
    Cache,
    Compute,
}

/// Fully resolved configuration with defaults applied and validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub chi: DirichletCharacter,
    pub g: TestFunction,
    pub g_given: bool,
    pub zeros: ZeroSource,
    pub height: Option<f64>,
    pub n_zeros: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub eps: Option<f64>,
    pub eps_grid: Vec<f64>,
    pub jobs: Option<usize>,
    pub no_compute: bool,
    pub cache_dir: PathBuf,
    pub profile_out: Option<PathBuf>,
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

/// Reads `key=value` lines; `#` starts a comment.
pub fn read_config_file(path: &Path) -> Result<HashMap<String, String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let mut map = HashMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line: k + 1,
            message: format!("expected key=value, got '{line}'"),
        })?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: k + 1,
                message: format!("unknown key '{key}'"),
            });
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

const KNOWN_KEYS: [&str; 15] = [
    "q",
    "chi-index",
    "g",
    "zeros",
    "T",
    "n-zeros",
    "tol",
    "out",
    "eps",
    "eps-grid",
    "jobs",
    "no-compute",
    "cache-dir",
    "profile-out",
    "config",
];

fn from_file<T: FromStr>(map: &HashMap<String, String>, key: &str) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| invalid(format!("config key '{key}': cannot parse '{v}'"))),
    }
}

/// Parses `lo:hi:n` or `e1,e2,...`.
pub fn parse_eps_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || invalid(format!("ε grid '{s}': expected lo:hi:n or a comma-separated list"));
    let grid = if let Some((lo, rest)) = s.split_once(':') {
        let (hi, n) = rest.split_once(':').ok_or_else(bad)?;
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if !(lo > 0.0 && hi > lo && n >= 2) {
            return Err(bad());
        }
        geometric_grid(lo, hi, n)
    } else {
        s.split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?
    };
    if grid.is_empty() || grid.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(bad());
    }
    Ok(grid)
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(format!("{name} must be positive, got {v}")))
    }
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<RunConfig> {
        let file = match &flags.config {
            Some(p) => read_config_file(p)?,
            None => HashMap::new(),
        };
        let q = flags.q.map_or_else(|| from_file(&file, "q"), |v| Ok(Some(v)))?.unwrap_or(1);
        if q == 0 {
            return Err(invalid("q must be positive".into()));
        }
        let chi_index = flags
            .chi_index
            .map_or_else(|| from_file::<u64>(&file, "chi-index"), |v| Ok(Some(v)))?;
        let chi = match chi_index {
            Some(k) => DirichletCharacter::new(q, k)?,
            None if q == 1 => DirichletCharacter::principal(1)?,
            None => primitive_characters(q)
                .into_iter()
                .next()
                .ok_or_else(|| invalid(format!("no primitive character mod {q}")))?,
        };
        let g_text = flags.g.clone().or_else(|| file.get("g").cloned());
        let g_given = g_text.is_some();
        let g = TestFunction::parse(g_text.as_deref().unwrap_or(DEFAULT_G))?;
        let zeros = match flags.zeros.clone().or_else(|| file.get("zeros").cloned()).as_deref() {
            None | Some("cache") => ZeroSource::Cache,
            Some("compute") => ZeroSource::Compute,
            Some(path) => ZeroSource::Path(PathBuf::from(path)),
        };
        let height = flags.height.map_or_else(|| from_file(&file, "T"), |v| Ok(Some(v)))?;
        if let Some(t) = height {
            positive("T", t)?;
        }
        let n_zeros = flags
            .n_zeros
            .map_or_else(|| from_file(&file, "n-zeros"), |v| Ok(Some(v)))?
            .unwrap_or(DEFAULT_N_ZEROS);
        let tol = positive(
            "tol",
            flags
                .tol
                .map_or_else(|| from_file(&file, "tol"), |v| Ok(Some(v)))?
                .unwrap_or(DEFAULT_VERIFY_TOL),
        )?;
        let eps = flags.eps.map_or_else(|| from_file(&file, "eps"), |v| Ok(Some(v)))?;
        if let Some(e) = eps {
            positive("eps", e)?;
        }
        let eps_grid = match flags.eps_grid.clone().or_else(|| file.get("eps-grid").cloned()) {
            Some(s) => parse_eps_grid(&s)?,
            None => default_eps_grid(),
        };
        let jobs = flags.jobs.map_or_else(|| from_file(&file, "jobs"), |v| Ok(Some(v)))?;
        if jobs == Some(0) {
            return Err(invalid("jobs must be at least 1".into()));
        }
        let no_compute = flags.no_compute || from_file::<bool>(&file, "no-compute")?.unwrap_or(false);
        if no_compute && zeros == ZeroSource::Compute {
            return Err(invalid("--zeros compute contradicts --no-compute".into()));
        }
        let path_opt = |flag: &Option<PathBuf>, key: &str| flag.clone().or_else(|| file.get(key).map(PathBuf::from));
        let cache_dir = path_opt(&flags.cache_dir, "cache-dir").unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        if cache_dir.exists() && !cache_dir.is_dir() {
            return Err(invalid(format!("cache directory {} is not a directory", cache_dir.display())));
        }
        Ok(RunConfig {
            chi,
            g,
            g_given,
            zeros,
            height,
            n_zeros,
            tol,
            out: path_opt(&flags.out, "out"),
            eps,
            eps_grid,
            jobs,
            no_compute,
            cache_dir,
            profile_out: path_opt(&flags.profile_out, "profile-out"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_fill_unset_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        fs::write(&path, "# verification run\nq = 3\ntol=1e-4  # loose\ng=exp_inverse:a=0.5,b=2\n").unwrap();
        let flags = Flags {
            config: Some(path),
            tol: Some(1e-5),
            ..Flags::default()
        };
        let cfg = RunConfig::resolve(&flags).unwrap();
        assert_eq!(cfg.chi.modulus(), 3);
        assert_eq!(cfg.tol, 1e-5);
        assert_eq!(cfg.g.support(), (0.5, 2.0));
        assert!(cfg.g_given);
    }

    #[test]
    fn rejects_bad_input() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.conf");
        fs::write(&path, "q=3\nfrobnicate=1\n").unwrap();
        let flags = Flags {
            config: Some(path),
            ..Flags::default()
        };
        assert!(matches!(RunConfig::resolve(&flags), Err(Error::Parse { line: 2, .. })));
        let flags = Flags {
            tol: Some(-1.0),
            ..Flags::default()
        };
        assert!(RunConfig::resolve(&flags).is_err());
        let flags = Flags {
            q: Some(9),
            chi_index: Some(1),
            ..Flags::default()
        };
        assert!(RunConfig::resolve(&flags).is_ok());
    }

    #[test]
    fn eps_grid_forms() {
        assert_eq!(parse_eps_grid("0.1,0.2").unwrap(), vec![0.1, 0.2]);
        let g = parse_eps_grid("0.01:0.7:5").unwrap();
        assert_eq!(g.len(), 5);
        assert!(parse_eps_grid("0.7:0.1:5").is_err());
        assert!(parse_eps_grid("x").is_err());
    }
}
