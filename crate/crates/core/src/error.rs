use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("gcd of an all-zero list is undefined")]
    AllZero,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("truncation bounds differ: {left:?} vs {right:?}")]
    BoundsMismatch { left: Vec<u32>, right: Vec<u32> },

    #[error("constant term is not a unit in the coefficient ring")]
    NonUnit,

    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("fiber integral needs v-power >= fiber dimension {fiber_dim}, got {power}")]
    FiberPower { power: u32, fiber_dim: u32 },

    #[error(
        "base tangent contribution not implemented (n = {n} <= max base dimension {max_base})"
    )]
    BaseTangent { n: u32, max_base: u32 },

    #[error("{what} = {value} is outside {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("n = {0} is odd; only even dimensions are supported")]
    OddDimension(u32),

    #[error("{p} does not divide n+1 = {m}")]
    NotADivisor { p: u64, m: u64 },

    #[error("n+1 = {0} is a prime power")]
    PrimePower(u64),

    #[error("s_(k,n) are not coprime for n = {n}: gcd = {gcd}")]
    NotCoprime { n: u32, gcd: BigInt },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("{0} is not representable over the basis")]
    NotRepresentable(BigInt),

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
