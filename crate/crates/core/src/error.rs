use alloc::string::String;

/// Everything that can go wrong inside the library.
///
/// `InternalConsistency` is special: it is raised when a computation
/// contradicts a classical theorem (two decision routes disagree, a Green
/// correspondent is not unique, ...). It always indicates a bug and carries
/// a diagnostic describing the witnesses.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    NotPrime(u64),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("entry {value} is out of range for GF({p})")]
    EntryOutOfRange { value: u64, p: u32 },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order exceeds the configured bound {0}")]
    GroupTooLarge(usize),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("modules live over different groups or characteristics")]
    GroupMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("matrix does not intertwine the actions: {0}")]
    NotIntertwiner(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl Error {
    /// True for failures that falsify a theorem rather than reject input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalConsistency(_))
    }
}
