use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Error type shared by the whole crate.
///
/// Shape mismatches in ordinary arithmetic (`matmul`, `frob_inner`, ...)
/// panic instead, as is usual for dense linear algebra; the variants here
/// cover construction from untrusted data, decomposition failures, and
/// bound applicability.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyShape { rows: usize, cols: usize },

    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {found}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-finite entry at column-major index {index}")]
    NonFinite { index: usize },

    #[error("{op}: matrix must be square, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("unvec: vector of length {len} cannot fill a {rows}x{cols} matrix")]
    VecLength {
        len: usize,
        rows: usize,
        cols: usize,
    },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error(
        "incompatible operand shapes: A is {a_rows}x{a_cols}, B is {b_rows}x{b_cols}, \
         C is {c_rows}x{c_cols} (want A, C m x n and B n x m)"
    )]
    TripleShape {
        a_rows: usize,
        a_cols: usize,
        b_rows: usize,
        b_cols: usize,
        c_rows: usize,
        c_cols: usize,
    },

    #[error("bound {bound} is not applicable: {reason}")]
    NotApplicable {
        bound: &'static str,
        reason: String,
    },
}
