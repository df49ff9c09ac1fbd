use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative cost: {0}")]
    NegativeCost(String),
    #[error("invalid cost literal `{0}`")]
    InvalidCost(String),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("variable {var} has an empty domain")]
    EmptyDomain { var: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported pattern: {0}")]
    UnsupportedPattern(String),
    #[error("invalid variable ordering: {0}")]
    InvalidOrdering(String),
    #[error("binary constraint on ({i}, {j}) is not crisp")]
    NotCrisp { i: usize, j: usize },
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("arc {from} -> {to} is not functional")]
    NotFunctional { from: usize, to: usize },
    #[error("inconsistent oracle output: {0}")]
    OracleInconsistency(String),
    #[error("instance does not satisfy the joint-winner property: {0}")]
    JwpPreconditionViolated(String),
    #[error("clique structure violated: {0}")]
    StructureViolated(String),
    #[error("instance is infeasible")]
    Infeasible,
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
    #[error("invalid NOC instance: {0}")]
    InvalidNoc(String),
    #[error("invalid set family: {0}")]
    InvalidFamily(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("callback failed: {0}")]
    Callback(String),
}
