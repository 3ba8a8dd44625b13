use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {modulus:?} is not an irreducible monic polynomial of degree {degree} over GF({p})")]
    ReducibleModulus {
        p: u32,
        degree: u32,
        modulus: Vec<u32>,
    },
    #[error("unsupported field size {p}^{m}: {reason}")]
    UnsupportedSize { p: u64, m: u32, reason: &'static str },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields or lie outside the field")]
    FieldMismatch,
    #[error("cannot parse {text:?} as a field element: {reason}")]
    Parse { text: String, reason: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("evaluation points must be pairwise distinct")]
    DuplicateEvaluationPoint,
    #[error("matrix is singular")]
    Singular,
    #[error("the code is the zero code")]
    ZeroCode,
    #[error("enumeration needs {required} projective classes but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("monomial scale entries must be nonzero")]
    ZeroScale,
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("subset entries must be pairwise distinct")]
    DuplicateElement,
    #[error("{0}")]
    SpecInvariantViolated(String),
    #[error("the criterion requires k > 3, got k = {0}")]
    KTooSmall(usize),
    #[error("the criterion requires a 3x3 mixing matrix, got {0}x{0}")]
    WrongMixingSize(usize),
    #[error("self-duality requires n + 3 = 2k, got n = {n}, k = {k}")]
    LengthParity { n: usize, k: usize },
    #[error("search limits must be positive")]
    LimitZero,
    #[error("invalid search job: {0}")]
    InvalidJob(String),
}
