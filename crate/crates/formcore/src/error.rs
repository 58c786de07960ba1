//! Error type shared by the whole engine.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("subgroup is not normal in its parent")]
    NotNormal,

    #[error("{what} {value} exceeds the bound {bound}; set FORMLAB_CAPACITY to raise it")]
    Capacity {
        what: &'static str,
        value: u128,
        bound: u128,
    },

    #[error("the empty class has no residual")]
    EmptyResidual,

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("{0} is undefined")]
    Undefined(&'static str),

    #[error("order {0} is not in the nonabelian simple catalog")]
    UnknownSimpleOrder(u128),

    #[error("class evaluation recursion exceeded depth {0}")]
    DepthExceeded(u8),

    #[error("class expression syntax error at byte {pos}: {msg}")]
    ClassSyntax { pos: usize, msg: String },

    #[error("satellite file error at line {line}: {msg}")]
    SatelliteParse { line: usize, msg: String },

    #[error("operation not supported for satellite kind {0}")]
    UnsupportedKind(String),

    #[error("matrix is not invertible mod {0}")]
    SingularMatrix(u64),

    #[error("module action is inconsistent with the generators: {0}")]
    BadAction(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
