use thiserror::Error;

/// Errors raised by the analytic and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("no bound state: {0}")]
    NoBoundState(String),

    #[error("expansion order {0} not supported (maximum is 3)")]
    UnsupportedOrder(usize),

    #[error("analytic solution requires exponents m=2, k=1 (got m={m}, k={k})")]
    UnsupportedExponents { m: u32, k: u32 },

    #[error("Kummer series pole: c = {0} is a non-positive integer")]
    Pole(f64),

    #[error("|z| = {0} outside the reliable power-series range (|z| <= 50)")]
    Range(f64),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
