use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two families: bad input (`Domain`, `NotInvertible`,
/// `InvalidWindow`, ...) and numeric-integrity failures (`Realness`,
/// `WeilViolation`) which indicate that a computed value broke an identity
/// that must hold exactly in exact arithmetic.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{x} is not invertible modulo {m} (gcd = {gcd})")]
    NotInvertible { x: i64, m: u64, gcd: u64 },

    #[error("invalid residue window: Y = {y}, m = {m} (need 1 <= Y <= m)")]
    InvalidWindow { y: u64, m: u64 },

    #[error("invalid angle window [{alpha}, {beta}] (need 0 <= alpha < beta <= pi)")]
    InvalidAngleWindow { alpha: f64, beta: f64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("pair ({r}, {s}) is degenerate modulo {p}: p divides r*s")]
    DegeneratePair { r: i64, s: i64, p: u64 },

    #[error("resource limit exceeded: {0}")]
    Limit(String),

    #[error("Kloosterman sum modulo {p} has imaginary part {imag:e} above tolerance {tol:e}")]
    Realness { p: u64, imag: f64, tol: f64 },

    #[error("|K| = {value} exceeds the Weil bound 2*sqrt({p}) = {bound}")]
    WeilViolation { value: f64, p: u64, bound: f64 },
}

impl Error {
    /// True for failures that signal broken numerics rather than bad input.
    pub fn is_numeric_integrity(&self) -> bool {
        matches!(self, Error::Realness { .. } | Error::WeilViolation { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
