use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must be nonempty")]
    EmptyCarrier,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("cover relation has a cycle through `{0}` and `{1}`")]
    CyclicCovers(String, String),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("carrier has {size} elements, cap is {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("not a lattice: `{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid fuzzy set: {0}")]
    InvalidFuzzySet(String),
    #[error("subset is not meet-closed with top: {0}")]
    NotMeetClosed(String),
    #[error("requested size {size} outside 1..={max}")]
    SizeOutOfRange { size: usize, max: usize },
    #[error("family is not closed under intersections and X: {0}")]
    FamilyNotClosed(String),
    #[error("sub-poset is not a member of S(L,F)")]
    NotInS,
    #[error("witness verification failed: {0}")]
    WitnessVerificationFailed(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("search space of {size} functions exceeds cap {cap}")]
    SearchSpaceTooLarge { size: String, cap: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: `{token}` is not in the universe")]
    UnknownMember { line: usize, token: String },
    #[error("line {line}: duplicate set")]
    DuplicateSet { line: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid caps `{0}`: expected `lattice_cap,oracle_cap`")]
    InvalidCaps(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
