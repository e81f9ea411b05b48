use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a permutation: images {0:?}")]
    NotABijection(Vec<u32>),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated within a cycle")]
    RepeatedPoint(usize),
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order exceeds the element budget of {budget}")]
    ElementBudgetExceeded { budget: usize },
    #[error("subgroup enumeration exceeds the limit of {limit} subgroups")]
    SubgroupBudgetExceeded { limit: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element {0} does not belong to the group")]
    NotAMember(String),
    #[error("subgroups do not share a parent group")]
    ParentMismatch,
    #[error("kernel is not normal in the numerator")]
    NotNormal,
    #[error("subgroup of order {0} is not a p-subgroup")]
    NotPSubgroup(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pairs belong to different ambient groups or primes")]
    AmbientMismatch,
    #[error("cohomological Cartan matrix is singular; determinant undefined")]
    Singular,
    #[error("internal consistency check `{check}` failed: {detail}")]
    Inconsistent { check: String, detail: String },
    #[error("unknown group spec `{0}`")]
    UnknownSpec(String),
    #[error("malformed group spec `{spec}`: {reason}")]
    MalformedSpec { spec: String, reason: String },
    #[error("group spec `{spec}` has order {order} above the limit {limit}")]
    OrderLimit {
        spec: String,
        order: u128,
        limit: usize,
    },
    #[error("generator file: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn inconsistent(check: &str, detail: impl Into<String>) -> Self {
        Error::Inconsistent {
            check: check.to_string(),
            detail: detail.into(),
        }
    }
}
