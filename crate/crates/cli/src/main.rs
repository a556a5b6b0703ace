//! `weilbench`: explicit-formula verification, positivity search and zero
//! management from the command line.
//!
//! Exit codes: 0 success, 1 a residual or verification check failed,
//! 2 bad configuration or input, 3 a numerical budget, tail bound or
//! certificate could not be met.

mod config;
mod json;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use weilbench::characters::{CharacterId, DirichletCharacter};
use weilbench::positivity::{alpha_profile_csv, feasible_amplitude, max_admissible_c, witness_minimum};
use weilbench::report::verify_explicit_formula;
use weilbench::special::AccuracyBudget;
use weilbench::zeros::{
    cache_load, cache_store, compute_dirichlet_zeros, compute_first_n, compute_riemann_zeros, import_zeros,
    verify_zero_set, ZeroSet,
};
use weilbench::{Error, Result};

use config::{Flags, RunConfig, ZeroSource, DEFAULT_DIRICHLET_HEIGHT};
use json::{FeasibilityJson, PositivityJson, VerificationReport, ZeroVerifyJson, ZerosJson};

/// α profile written next to the positivity report.
const PROFILE_MAX_TAU: f64 = 100.0;
const PROFILE_STEP: f64 = 0.05;

#[derive(Parser)]
#[command(name = "weilbench", version, about = "Explicit formulae for ζ and Dirichlet L-functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare zero side, place side and spectral side of the explicit formula.
    Verify(Flags),
    /// Search for the largest admissible support radius c.
    Positivity(Flags),
    /// Import, compute or verify zero sets.
    Zeros {
        #[command(subcommand)]
        action: ZerosAction,
    },
}

#[derive(Subcommand)]
enum ZerosAction {
    /// Import a plain ordinate table of ζ into the cache.
    Import {
        /// One ordinate per line, ascending.
        file: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Compute zeros in-house and store them in the cache.
    Compute(Flags),
    /// Re-evaluate a zero set and recount up to its height.
    Verify(Flags),
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn exit_code_for(err: &Error) -> u8 {
    if err.is_input_error() {
        2
    } else {
        3
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli.command);
    eprintln!("wall time {:.2} s", start.elapsed().as_secs_f64());
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Verify(flags) => with_config(&flags, cmd_verify),
        Command::Positivity(flags) => with_config(&flags, cmd_positivity),
        Command::Zeros { action } => match action {
            ZerosAction::Import { file, flags } => with_config(&flags, |cfg| cmd_zeros_import(cfg, &file)),
            ZerosAction::Compute(flags) => with_config(&flags, cmd_zeros_compute),
            ZerosAction::Verify(flags) => with_config(&flags, cmd_zeros_verify),
        },
    }
}

fn with_config(flags: &Flags, f: impl FnOnce(&RunConfig) -> Result<Outcome> + Send) -> Result<Outcome> {
    let cfg = RunConfig::resolve(flags)?;
    match cfg.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("cannot start {n} worker threads: {e}")))?;
            pool.install(|| f(&cfg))
        }
        None => f(&cfg),
    }
}

fn emit<T: Serialize>(cfg: &RunConfig, report: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report).expect("report types serialize");
    text.push('\n');
    match &cfg.out {
        Some(path) => write_file(path, text.as_bytes()),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source: e,
                })
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.to_path_buf(),
            source: e,
        })?;
    }
    fs::write(path, bytes).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn cache_path(cfg: &RunConfig, id: CharacterId) -> PathBuf {
    cfg.cache_dir.join(format!("zeros_q{}_index{}.txt", id.modulus, id.index))
}

const CACHE_MAGIC: &str = "# weilbench zero cache";

/// Reads a zero file: a cache file (recognised by its header) or a plain ζ
/// table.
fn load_zero_file(path: &Path, id: CharacterId) -> Result<ZeroSet> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    if text.lines().next().map(str::trim) == Some(CACHE_MAGIC) {
        return cache_load(path, id);
    }
    let set = import_zeros(path)?;
    if set.character != id {
        return Err(Error::InvalidParameter(format!(
            "{} holds a plain table, which is read as zeros of ζ; character {id} needs a cache file",
            path.display()
        )));
    }
    Ok(set)
}

/// What a run needs: the first `n` zeros of ζ, or all zeros up to a height.
#[derive(Clone, Copy)]
enum Need {
    Count(usize),
    Height(f64),
}

fn need(cfg: &RunConfig, chi: &DirichletCharacter) -> Need {
    match cfg.height {
        Some(t) => Need::Height(t),
        None if chi.modulus() == 1 => Need::Count(cfg.n_zeros),
        None => Need::Height(DEFAULT_DIRICHLET_HEIGHT),
    }
}

fn satisfies(set: &ZeroSet, need: Need) -> bool {
    match need {
        Need::Count(n) => set.len() >= n,
        Need::Height(t) => set.height >= t,
    }
}

fn restrict(set: ZeroSet, need: Need) -> ZeroSet {
    match need {
        Need::Count(n) => set.truncated(n),
        Need::Height(t) => set.below(t),
    }
}

fn compute(chi: &DirichletCharacter, need: Need) -> Result<ZeroSet> {
    let budget = AccuracyBudget::default();
    match (chi.modulus(), need) {
        (1, Need::Count(n)) => compute_first_n(n, &budget),
        (1, Need::Height(t)) => compute_riemann_zeros(t, &budget),
        (_, Need::Height(t)) => compute_dirichlet_zeros(chi, t, &budget),
        (_, Need::Count(_)) => Err(Error::InvalidParameter(
            "Dirichlet zeros are requested by height; pass --T".into(),
        )),
    }
}

/// Zeros of `L(s, χ)` from the configured source.
fn resolve_zeros(cfg: &RunConfig, chi: &DirichletCharacter) -> Result<ZeroSet> {
    let need = need(cfg, chi);
    let cached = cache_path(cfg, chi.id());
    match &cfg.zeros {
        ZeroSource::Path(p) => {
            let set = load_zero_file(p, chi.id())?;
            Ok(restrict(set, need))
        }
        ZeroSource::Cache if cached.exists() => {
            let set = cache_load(&cached, chi.id())?;
            if satisfies(&set, need) {
                return Ok(restrict(set, need));
            }
            if cfg.no_compute {
                return Err(Error::InvalidParameter(format!(
                    "cached zeros in {} do not cover the request and --no-compute is set",
                    cached.display()
                )));
            }
            compute_and_store(cfg, chi, need)
        }
        ZeroSource::Cache if cfg.no_compute => Err(Error::InvalidParameter(format!(
            "no zeros of {} in {} and --no-compute is set; pass --zeros <file> or run `weilbench zeros compute --q {} --chi-index {}`",
            chi.id(),
            cfg.cache_dir.display(),
            chi.modulus(),
            chi.index()
        ))),
        ZeroSource::Cache | ZeroSource::Compute => compute_and_store(cfg, chi, need),
    }
}

fn compute_and_store(cfg: &RunConfig, chi: &DirichletCharacter, need: Need) -> Result<ZeroSet> {
    let set = compute(chi, need)?;
    cache_store(&set, cache_path(cfg, chi.id()))?;
    Ok(set)
}

fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let chi = &cfg.chi;
    let zeros = resolve_zeros(cfg, chi)?;
    let conj = if chi.is_real() {
        None
    } else {
        Some(resolve_zeros(cfg, &chi.conj())?)
    };
    let check = verify_explicit_formula(&cfg.g, chi, &zeros, conj.as_ref(), cfg.tol)?;
    let mut summaries = vec![(&zeros).into()];
    if let Some(c) = &conj {
        summaries.push(c.into());
    }
    emit(cfg, &VerificationReport::new(&check, summaries))?;
    Ok(if check.pass() { Outcome::Pass } else { Outcome::Fail })
}

/// Gates on the identities checked alongside the search.
const KERNEL_GATE: f64 = 1e-6;
const AUXILIARY_GATE: f64 = 1e-8;
const COSINE_GATE: f64 = 1e-8;
const DECOMPOSITION_GATE: f64 = 1e-8;
const WITNESS_GATE: f64 = -1e-9;
const Z_GATE: f64 = 1e-6;

fn cmd_positivity(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.chi.modulus() != 1 {
        return Err(Error::InvalidParameter("positivity is implemented for ζ only (q = 1)".into()));
    }
    if let Some(eps) = cfg.eps {
        let f = feasible_amplitude(eps)?;
        let witness = f.feasible().then(|| {
            let a = f.midpoint();
            (a, witness_minimum(a, eps).1)
        });
        emit(cfg, &FeasibilityJson::new(&f, witness))?;
        return Ok(if f.feasible() { Outcome::Pass } else { Outcome::Fail });
    }
    let zeros = resolve_zeros(cfg, &cfg.chi)?;
    let g = cfg.g_given.then_some(&cfg.g);
    let report = max_admissible_c(&cfg.eps_grid, g, Some(&zeros))?;
    let (a, b) = match g {
        Some(g) => g.support(),
        None => (1.0 / report.c, report.c),
    };
    let within = a >= 1.0 / report.c * (1.0 - 1e-12) && b <= report.c * (1.0 + 1e-12);
    let z_ok = report
        .z_residual
        .zip(report.z_zero_side)
        .is_none_or(|(r, z)| r <= Z_GATE + z.tail_bound + report.z_spectral_error);
    let pass = report.c_in_range()
        && report.witness_min >= WITNESS_GATE
        && report.kernel.residual <= KERNEL_GATE
        && report.kernel.auxiliary <= AUXILIARY_GATE
        && report.cosine.residual <= COSINE_GATE
        && report.decomposition_residual <= DECOMPOSITION_GATE
        && z_ok;
    emit(cfg, &PositivityJson::new(&report, within, pass))?;
    let profile = cfg.profile_out.clone().unwrap_or_else(|| match &cfg.out {
        Some(out) => out.with_extension("alpha.csv"),
        None => PathBuf::from("alpha_profile.csv"),
    });
    write_file(&profile, alpha_profile_csv(PROFILE_MAX_TAU, PROFILE_STEP)?.as_bytes())?;
    Ok(if pass { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_zeros_import(cfg: &RunConfig, file: &Path) -> Result<Outcome> {
    let set = import_zeros(file)?;
    let path = cache_path(cfg, set.character);
    cache_store(&set, &path)?;
    emit(
        cfg,
        &ZerosJson {
            schema: json::SCHEMA,
            command: "zeros import",
            zeros: (&set).into(),
            cache_path: Some(path.display().to_string()),
        },
    )?;
    Ok(Outcome::Pass)
}

fn cmd_zeros_compute(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.no_compute {
        return Err(Error::InvalidParameter("`zeros compute` contradicts --no-compute".into()));
    }
    let set = compute_and_store(cfg, &cfg.chi, need(cfg, &cfg.chi))?;
    emit(
        cfg,
        &ZerosJson {
            schema: json::SCHEMA,
            command: "zeros compute",
            zeros: (&set).into(),
            cache_path: Some(cache_path(cfg, cfg.chi.id()).display().to_string()),
        },
    )?;
    Ok(Outcome::Pass)
}

fn cmd_zeros_verify(cfg: &RunConfig) -> Result<Outcome> {
    let set = match &cfg.zeros {
        ZeroSource::Path(p) => load_zero_file(p, cfg.chi.id())?,
        ZeroSource::Cache => {
            let path = cache_path(cfg, cfg.chi.id());
            if !path.exists() {
                return Err(Error::InvalidParameter(format!(
                    "no cached zeros of {} in {}",
                    cfg.chi.id(),
                    cfg.cache_dir.display()
                )));
            }
            cache_load(&path, cfg.chi.id())?
        }
        ZeroSource::Compute => {
            return Err(Error::InvalidParameter("`zeros verify` needs a file or the cache".into()));
        }
    };
    let v = verify_zero_set(&set, &AccuracyBudget::default())?;
    emit(cfg, &ZeroVerifyJson::new(&set, &v))?;
    Ok(if v.pass { Outcome::Pass } else { Outcome::Fail })
}
