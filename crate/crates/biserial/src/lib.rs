//! Exact computations for the special biserial algebras that arise as
//! 2-modular blocks with dihedral defect groups.
//!
//! The crate builds the three block presentations (`psl1`, `psl2`, `a7`),
//! enumerates strings and bands, realises string, band and projective
//! modules over GF(2^e), and computes Hom, stable Hom, syzygies and Ext^1.
//! On top of this sit Auslander-Reiten walks, the stable-endomorphism
//! classification sweeps, a verifier for uniserial mod-2 deformation
//! statements, and exact integer checks of the Witt-ring identities.

pub mod arquiver;
pub mod field;
pub mod homology;
pub mod linalg;
pub mod mod2defo;
pub mod par;
pub mod presentations;
pub mod repmod;
pub mod strings;
pub mod wittrings;

use thiserror::Error;

/// Version tag carried by every JSON document this crate emits.
pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("invalid string: {0}")]
    InvalidString(String),
    #[error("not a band: {0}")]
    NotABand(String),
    #[error("band parameter lambda must be nonzero")]
    ZeroLambda,
    #[error("peak/deep precondition violated: {0}")]
    PeakDeepViolation(String),
    #[error("tau involution undefined: {0}")]
    TauUndefined(String),
    #[error("modules live over different fields or presentations")]
    FieldMismatch,
    #[error("projective center: {0}")]
    ProjectiveCenter(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("module is not uniserial")]
    NotUniserial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// 64-bit FNV-1a, used for stable presentation fingerprints in reports.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
