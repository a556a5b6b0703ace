use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the workbench.
///
/// Variants fall into three groups that the command-line front end maps onto
/// distinct exit codes: bad input (`is_input_error`), numerical budgets that
/// could not be met (`is_budget_error`), and everything else.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function}: argument {at} outside the supported domain ({reason})")]
    Domain {
        function: &'static str,
        at: String,
        reason: String,
    },

    #[error("{function}: accuracy budget exceeded (achieved {achieved:.3e}, requested {requested:.3e})")]
    BudgetExceeded {
        function: &'static str,
        achieved: f64,
        requested: f64,
    },

    #[error("{what}: quadrature tolerance not met (estimate {estimate:.3e}, requested {requested:.3e})")]
    ToleranceNotMet {
        what: &'static str,
        estimate: f64,
        requested: f64,
    },

    #[error("{what}: certified tail {bound:.3e} exceeds tolerance {requested:.3e}")]
    TailBound {
        what: &'static str,
        bound: f64,
        requested: f64,
    },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("invalid interval [{a}, {b}]: need 0 < a < b < inf")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("character mod {modulus} is not primitive (conductor {conductor})")]
    NonPrimitive { modulus: u64, conductor: u64 },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: line {line}: ordinate {value} does not exceed its predecessor")]
    NonMonotone {
        path: PathBuf,
        line: usize,
        value: f64,
    },

    #[error("cache {path} holds zeros of character {found}, requested {expected}")]
    CharacterMismatch {
        path: PathBuf,
        expected: String,
        found: String,
    },

    #[error("zero count mismatch up to T = {height}: found {found}, argument principle gives {expected}")]
    CountMismatch {
        height: f64,
        found: usize,
        expected: i64,
    },

    #[error("rotated L-function does not separate from zero near t = {at} ({detail})")]
    RootNumberDegeneracy { at: f64, detail: String },

    #[error("{what}: support [{a}, {b}] too wide ({reason})")]
    SupportTooWide {
        what: &'static str,
        a: f64,
        b: f64,
        reason: &'static str,
    },

    #[error("internal consistency failure in {what}: {detail}")]
    InternalConsistency { what: &'static str, detail: String },

    #[error("positivity certificate failure: {0}")]
    Certificate(String),

    #[error("no feasible epsilon on the supplied grid")]
    NoFeasibleEpsilon,

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Errors caused by malformed or inconsistent user input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInterval { .. }
                | Error::InvalidParameter(_)
                | Error::NonPrimitive { .. }
                | Error::Parse { .. }
                | Error::NonMonotone { .. }
                | Error::CharacterMismatch { .. }
                | Error::SupportTooWide { .. }
                | Error::Domain { .. }
                | Error::Io { .. }
        )
    }

    /// Errors caused by a numerical budget or certificate that could not be met.
    pub fn is_budget_error(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::ToleranceNotMet { .. }
                | Error::TailBound { .. }
                | Error::CountMismatch { .. }
                | Error::RootNumberDegeneracy { .. }
                | Error::Certificate(_)
                | Error::NoFeasibleEpsilon
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
