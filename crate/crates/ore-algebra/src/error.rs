use thiserror::Error;

/// Errors reported by the library's fallible entry points.
///
/// Structural misuse that cannot arise from well-formed user input (mixing
/// elements of different contexts, dimension mismatches in raw arithmetic)
/// panics instead; the parser and the context constructors validate
/// everything user-reachable.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational number from {0:?}")]
    BadRational(String),

    #[error("algebra specification is invalid: {0}")]
    BadAlgebra(String),

    #[error("doubling requires an algebra produced by the doubling chain (conjugation unknown)")]
    NoConjugation,

    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("d/dy requires the identity endomorphism")]
    DerivativeNeedsIdentity,

    #[error("twisted Leibniz rule fails on a sample pair; not a valid sigma-derivation")]
    NotASigmaDerivation,

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error(
        "module basis has {found} elements, above the guaranteed bound {bound}; \
             this indicates an implementation bug or an invalid query"
    )]
    RankBoundExceeded { found: usize, bound: usize },

    #[error("operands do not commute")]
    NotCommuting,

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
