use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported cover `{0}` (expected Z or GF(p)[x])")]
    UnsupportedCover(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("malformed modulus: {0}")]
    MalformedModulus(String),
    #[error("malformed element `{0}`")]
    MalformedElement(String),
    #[error("element {elem} is not in ring {ring}")]
    NotInRing { elem: String, ring: String },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{ring} is not the quotient of {cover} by ({x})")]
    QuotientMismatch { ring: String, cover: String, x: String },
    #[error("ring {0} is not finite")]
    NotFinite(String),
    #[error("ring {0} is not local")]
    NotLocal(String),
    #[error("matrix does not map relations into relations")]
    IllDefinedMorphism,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0} is unsupported over an infinite cover")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
