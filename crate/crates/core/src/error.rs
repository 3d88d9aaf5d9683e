use std::path::PathBuf;

use thiserror::Error;

use crate::panel::CountryCode;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("format error at line {line}: {message}")]
    Format { line: u64, message: String },

    #[error("duplicate observation for ({country}, {year})")]
    DuplicateKey { country: CountryCode, year: i32 },

    #[error("value {value} out of range {expected} at line {line} ({country}, {year})")]
    Range {
        line: u64,
        country: CountryCode,
        year: i32,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid country code {0:?}: expected three letters A-Z")]
    InvalidCountryCode(String),

    #[error("unknown region {0:?}")]
    UnknownRegion(String),

    #[error("panels have no (country, year) pair in common")]
    EmptyIntersection,

    #[error("panels do not share the same (country, year) support")]
    SupportMismatch,

    #[error("no observations for year {0}")]
    MissingYear(i32),

    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("zero variance: higher moments are undefined")]
    ZeroVariance,

    #[error("non-positive value {value} cannot be log-transformed ({context})")]
    LogDomain { value: f64, context: String },

    #[error("regressor has zero spread; slope is undefined")]
    DegenerateDesign,

    #[error("no retained members for {area} in {year}")]
    EmptyRegion { area: String, year: i32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Data,
    Numerical,
    Parameter,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Io { .. }
            | Error::Format { .. }
            | Error::DuplicateKey { .. }
            | Error::Range { .. }
            | Error::InvalidCountryCode(_)
            | Error::UnknownRegion(_)
            | Error::EmptyIntersection
            | Error::SupportMismatch
            | Error::MissingYear(_)
            | Error::EmptyRegion { .. } => ErrorClass::Data,
            Error::InsufficientData { .. }
            | Error::ZeroVariance
            | Error::LogDomain { .. }
            | Error::DegenerateDesign => ErrorClass::Numerical,
            Error::InvalidParameter(_) => ErrorClass::Parameter,
        }
    }
}
