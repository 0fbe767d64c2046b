//! Exact construction and verification of vectorial dual-bent functions over
//! finite fields and of the partial difference sets they induce.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: GF(p^m) arithmetic, traces, quadratic characters, cosets.
//! * [`space`]: vector spaces assembled from field factors.
//! * [`cyclo`]: the ring Z[zeta_p] holding every character sum.
//! * [`spectral`]: Walsh spectra, bentness, duals, dual-bent certificates.
//! * [`constructions`]: explicit vectorial dual-bent families.
//! * [`pds`]: preimage sets, parameter formulas and two PDS verifiers.
//!
//! Nothing uses floating point; every equality is exact.

mod arith;
pub mod constructions;
pub mod cyclo;
pub mod field;
pub mod json;
pub mod limits;
pub mod pds;
pub mod space;
pub mod spectral;

pub use constructions::{ConstructionError, Instance};
pub use cyclo::{CycloError, CyclotomicInt};
pub use field::{CosetSet, FieldDesc, FieldElem, FieldError, Subfield};
pub use limits::Limits;
pub use pds::{PdsError, PdsParams, PreimageSet};
pub use space::{Point, Space, SpaceError};
pub use spectral::{
    BentClassification, DualBentCertificate, PAryFunction, SpectralError, VectorialFunction,
    WalshSpectrum,
};

/// Any error raised by the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Pds(#[from] PdsError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
