//! Exact algebra for torus-surgery constructions of homotopy 4-spheres:
//! free-group words, finitely presented groups, integer matrices, surgery
//! models, T³-bundles over the circle and framed-link homology.

pub mod abelian;
pub mod error;
pub mod fpgroup;
pub mod linalg;
pub mod mapping_torus;
pub mod surgery;
pub mod three_manifold;
pub mod word;

pub use abelian::AbelianInvariants;
pub use error::{CancelFailure, Error, ParseError, Result};
pub use fpgroup::{
    coset_enumerate, quotient_census, tietze_simplify, CensusEntry, EnumerationOutcome, EnumerationStatus,
    Presentation, DEFAULT_BUDGET,
};
pub use linalg::{factor_transvections, smith_normal_form, IntScalar, Matrix, Transvection};
pub use mapping_torus::MappingTorus;
pub use surgery::{SphereModel, Verdict, VerificationReport};
pub use three_manifold::FramedLink;
pub use word::{Generator, Word};

/// Arbitrary-precision integer matrix; the default for every invariant.
pub type IntMatrix = Matrix<num_bigint::BigInt>;
/// Fixed-width matrix for bounded brute-force searches.
pub type SmallMatrix = Matrix<i64>;
