use thiserror::Error;

/// Errors shared by every layer of the crate.
///
/// Variants are grouped roughly by the subsystem that raises them: field
/// construction, polynomial arithmetic, algebra/module validation, Jordan-type
/// scans, homological operations, and the rank-property walk.
#[derive(Debug, Error)]
pub enum Error {
    // field construction and arithmetic
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no primitive {n_prime}-th root of unity in GF({p}^{e})")]
    NoPrimitiveRoot { p: u64, e: u32, n_prime: u64 },
    #[error("division by zero in GF({p}^{e})")]
    DivisionByZero { p: u64, e: u32 },

    // polynomial arithmetic
    #[error("degree/nvars mismatch: {0}")]
    DegreeMismatch(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("gcd of an all-zero family is undefined")]
    AllZero,

    // algebra parameters and quotients
    #[error("bad radical range: {0}")]
    BadRange(String),
    #[error("no diagonal automorphism satisfies the Frobenius identity")]
    InconsistentForm,

    // module representations
    #[error("module validation failed: {0}")]
    Validation(String),
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("algebra mismatch in {0}")]
    AlgebraMismatch(&'static str),
    #[error("automorphism matrix does not preserve the defining relations: {0}")]
    InvalidAutomorphism(String),
    #[error("sampling gave no valid module after {0} attempts")]
    SamplingExhausted(usize),

    // Jordan types
    #[error("rank sequence is not the rank profile of a partition: {0}")]
    NotAPartition(String),
    #[error("scan of {points} projective points exceeds the guard ({guard})")]
    ScanTooLarge { points: u128, guard: u64 },
    #[error("method unavailable: {0}")]
    MethodUnavailable(String),

    // homology
    #[error("dimension {dim} exceeds the size guard ({guard}); raise QCJT_SIZE_GUARD to proceed")]
    SizeGuardExceeded { dim: usize, guard: usize },
    #[error("window of {0} Betti numbers is too short to estimate complexity (need at least 6)")]
    TooFewEntries(usize),
    #[error("module has a free direct summand (free rank {0})")]
    FreeSummand(usize),

    // rank property
    #[error("restriction to k[{axis}] is not one nonprojective block plus a free part: {detail}")]
    NotSingleNonprojective { axis: &'static str, detail: String },
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    // verification harness
    #[error("check failed: {0}")]
    CheckFailed(String),

    // serialization and interface plumbing
    #[error("json: {0}")]
    Json(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
