use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },

    #[error("vertices {0:?} are not strictly increasing")]
    NotIncreasing(Vec<u32>),

    #[error("repeated vertex in ordered simplex {0:?}")]
    RepeatedVertex(Vec<u32>),

    #[error("rank {rank} out of range for dimension {dim} on {n} vertices (count {count})")]
    RankOutOfRange {
        rank: usize,
        dim: isize,
        n: u32,
        count: usize,
    },

    #[error("dimension k = {k} out of range for n = {n} (need 1 <= k <= n-1)")]
    DimensionOutOfRange { k: u32, n: u32 },

    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("cochain degree {degree} invalid here: {reason}")]
    InvalidDegree { degree: isize, reason: &'static str },

    #[error("invalid group spec {spec:?}: {reason}")]
    InvalidGroup { spec: String, reason: String },

    #[error("group element {0:?} does not belong to the group")]
    InvalidElement(Vec<u32>),

    #[error("cochains are over different groups, vertex sets or degrees")]
    IncompatibleCochains,

    #[error("search space of {required} states exceeds the cap of {cap}")]
    CapExceeded { required: String, cap: u64 },

    #[error("partition cochain needs (k+1) | n, got n = {n}, k = {k}")]
    Indivisible { n: u32, k: u32 },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("complex file, line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("duplicate face {0:?}")]
    DuplicateFace(Vec<u32>),

    #[error("simplex {0:?} is not a member of the family")]
    NotAMember(Vec<u32>),

    #[error("epsilon {0} outside (0, 1/2]")]
    EpsilonOutOfRange(f64),

    #[error("theta {0} outside (0, 1]")]
    ThetaOutOfRange(f64),

    #[error("n = {n} too small: need n > 2 log(1/eps) + k = {required:.4}")]
    TooFewVertices { n: u32, required: f64 },

    #[error("family violates beta(F) <= (1 - theta) m (n - k): beta = {beta}, bound = {bound:.4}")]
    BetaHypothesis { beta: usize, bound: f64 },

    #[error("no partial dominating set found after {0} attempts")]
    RetriesExhausted(u64),

    #[error("cannot place {m} members: only {available} k-subsets exist")]
    FamilyTooLarge { m: usize, available: usize },
}
