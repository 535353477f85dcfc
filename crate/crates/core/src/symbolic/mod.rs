//! One-sided subshifts of finite type `(Σ_N^+(A), σ_A)`.

mod generator;
mod matrix;
mod scrambled;

pub use generator::{cylinder, sequence_metric, Cylinder, SymbolGenerator, SymbolWord};
pub use matrix::{big_ln, validate_matrix, TransitionMatrix, POWER_ITERATION_CAP};
pub use scrambled::scrambled_pair;

/// Symbols are 1-based, `1..=N`.
pub type Symbol = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("transition matrix needs at least 2 symbols, got {0}")]
    TooSmall(usize),
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row},{col}) is {value}, expected 0 or 1")]
    NotBinary { row: usize, col: usize, value: i64 },
    #[error("row {0} sums to 0")]
    ZeroRow(usize),
    #[error("column {0} sums to 0")]
    ZeroColumn(usize),
    #[error("symbol {symbol} out of range 1..={n}")]
    SymbolOutOfRange { symbol: Symbol, n: usize },
    #[error("transition {from} -> {to} at position {index} is not allowed")]
    NotAdmissible { index: usize, from: Symbol, to: Symbol },
    #[error("empty word")]
    EmptyWord,
    #[error("power iteration did not converge within {0} iterations")]
    NonConvergence(usize),
    #[error("matrix must be irreducible with some row sum >= 2")]
    NotChaoticMatrix,
}
