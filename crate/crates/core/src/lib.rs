//! Symbolic computation in truncated free Lie rings over the integers and the
//! integers modulo `m`.
//!
//! The crate builds Lyndon bases of free nilpotent Lie rings, parses and
//! evaluates commutator words, forms verbal ideals of identities, and reads
//! nilpotency and solvability data off the resulting relatively free rings.
//! A brute-force backend over finite structure-constant tables serves as an
//! independent check on the symbolic engine.

pub mod coeff;
pub mod experiment;
pub mod freelie;
pub mod linalg;
pub mod oracle;
pub mod ring;
pub mod variety;
pub mod wordlang;

pub use coeff::{Coeff, CoeffDomain};
pub use freelie::{FreeLieContext, LieElement};
pub use ring::LieRing;
pub use wordlang::{CommutatorWord, Identity, WordCombination};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid coefficient domain: {0}")]
    InvalidDomain(String),
    #[error("modulus {0} is composite; elimination requires a prime field")]
    CompositeModulus(u64),
    #[error("operation requires integer coefficients, got {0}")]
    NotIntegers(CoeffDomain),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("elements belong to different contexts")]
    ContextMismatch,
    #[error("degree {degree} is outside 1..={cutoff}")]
    DegreeOutOfRange { degree: usize, cutoff: usize },
    #[error("resource guard: {what} is {requested}, cap is {cap}")]
    ResourceGuard {
        what: String,
        requested: u128,
        cap: u128,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] wordlang::ParseError),
    #[error("unassigned variable `{0}`")]
    UnassignedVariable(String),
    #[error("unsupported identity: {0}")]
    Unsupported(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unknown manifest `{0}`")]
    UnknownManifest(String),
    #[error("unknown claim kind `{0}`")]
    UnknownClaim(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn guard(what: impl Into<String>, requested: u128, cap: u128) -> Self {
        Error::ResourceGuard {
            what: what.into(),
            requested,
            cap,
        }
    }
}
