use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("prime {n} exceeds the supported maximum {max}")]
    PrimeTooLarge { n: u32, max: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("field context is for n = {expected}, got n = {found}")]
    ContextMismatch { expected: u32, found: u32 },
    #[error("residue {0} is outside 0..n")]
    ResidueOutOfRange(u32),
    #[error("defining set is not a union of cyclotomic cosets: {residue} is in it but {missing} is not")]
    NotCosetUnion { residue: u32, missing: u32 },
    #[error("no binary quadratic residue codes of length {0}: 2 is a nonresidue (n = ±3 mod 8)")]
    NoQuadraticResidueCode(u32),
    #[error("word has bits beyond length {length}")]
    LengthMismatch { length: usize },
    #[error("coordinate {pos} out of range for length {length}")]
    CoordinateOutOfRange { pos: usize, length: usize },
    #[error("length {0} exceeds the 64-coordinate word size")]
    LengthTooLarge(usize),
    #[error("dimension {dimension} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { dimension: usize, cap: usize },
    #[error("minimum distance of the zero code is undefined")]
    ZeroCode,
    #[error("group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("exhaustive spinning needs n <= {max}, got {n}")]
    SpinTooLarge { n: u32, max: u32 },
    #[error("{count} cyclotomic cosets exceed the enumeration cap {cap}")]
    TooManyCosets { count: usize, cap: usize },
    #[error("{subsets} t-subsets exceed the enumeration cap {cap}")]
    TooManySubsets { subsets: u128, cap: u128 },
    #[error("invalid design parameters: {0}")]
    InvalidDesign(String),
    #[error("invalid witness request: {0}")]
    InvalidWitness(String),
    /// A computed object contradicts a proven statement. Never expected.
    #[error("falsification: {0}")]
    Falsified(String),
}
