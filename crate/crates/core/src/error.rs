use thiserror::Error;

/// Everything that can go wrong while building groups, tables, or reports.
/// Clone so that errors can be cached alongside lazily built tables.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("malformed group file: {0}")]
    MalformedGroupFile(String),

    #[error("generator row {row} is not a bijection: point {point} appears more than once")]
    NotABijection { row: usize, point: usize },

    #[error("generator row {row} has length {found}, expected degree {expected}")]
    DegreeMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("{what} guard exceeded: limit {limit}, aborted at {at}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        at: usize,
    },

    #[error("element id {0} is out of range")]
    InvalidElementId(u32),

    #[error("the given set is not a subgroup of the parent group")]
    NotASubgroup,

    #[error("subgroup is not normal in its parent")]
    NotNormal,

    #[error("subgroup containment violated: {0}")]
    ContainmentViolation(&'static str),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),

    #[error("invalid parameter for builtin group: {0}")]
    InvalidBuiltinParams(String),

    #[error("character or class function does not belong to the expected group")]
    GroupMismatch,

    #[error("fitting height is only defined for solvable groups")]
    NotSolvable,

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("internal defect: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Guard errors are reported as Skipped outcomes rather than hard failures.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
