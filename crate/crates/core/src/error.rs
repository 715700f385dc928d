use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("mixed fields in one operation")]
    FieldMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is rank-deficient")]
    RankDeficient,
    #[error("not a permutation matrix")]
    NotPermutationMatrix,
    #[error("invalid cycle or one-line notation: {0}")]
    InvalidPermutation(String),
    #[error("zero vector not allowed here")]
    ZeroVector,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("{0} is not a primitive element")]
    NotPrimitive(String),
    #[error("operation requires a prime field")]
    PrimeFieldRequired,
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("code is not MDS: {0}")]
    NotMds(String),
    #[error("vector is not a codeword of the given generator")]
    NotACodeword,
    #[error("vector is not in the affine variety")]
    NotInVariety,
    #[error("no candidate rows found; check the generator and field data")]
    NoCandidates,
    #[error("search exhausted without an admissible permutation")]
    SearchExhausted,
    #[error("error vector weight {got} exceeds the bound {bound}")]
    ErrorTooHeavy { got: usize, bound: usize },
    #[error("no codeword within distance {0} of the received vector")]
    DecodingFailure(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Parse error helper carrying a 1-based line number.
    pub fn parse(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line, msg: msg.into() }
    }
}
