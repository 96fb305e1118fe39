use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field order {q} exceeds the enumeration bound q <= {bound}")]
    OrderTooLarge { q: u64, bound: u64 },

    #[error("modulus {0:?} is not a monic irreducible polynomial of the right degree")]
    BadModulus(Vec<u32>),

    #[error("element {value} is not a valid encoding for GF({q})")]
    BadElement { value: u32, q: usize },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("rows span the zero subspace")]
    ZeroSpan,

    #[error("matrix is singular")]
    Singular,

    #[error("enumerating {count} subspaces exceeds the bound of {bound}")]
    EnumerationBound { count: u128, bound: u128 },

    #[error("operation needs {needed} characteristic, field has characteristic {p}")]
    Characteristic { needed: &'static str, p: u32 },

    #[error("invariant violated: {name}: {detail}")]
    Invariant { name: &'static str, detail: String },

    #[error("unknown code type {0:?}")]
    UnknownCodeType(String),

    #[error("code type {code_type} is not available for {parity} q")]
    TypeNotAvailable { code_type: String, parity: String },

    #[error("point {0} is excluded: it lies on l or on the line RN")]
    ExcludedPoint(String),

    #[error("a code needs at least two codewords to have a minimum distance")]
    TooFewCodewords,

    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),

    #[error("q = {q} is outside the supported range {range}")]
    OutOfRange { q: u64, range: &'static str },
}

pub(crate) fn invariant(name: &'static str, detail: impl Into<String>) -> Error {
    Error::Invariant {
        name,
        detail: detail.into(),
    }
}

/// Fails with a named invariant violation unless `cond` holds.
pub(crate) fn ensure(cond: bool, name: &'static str, detail: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(invariant(name, detail()))
    }
}
