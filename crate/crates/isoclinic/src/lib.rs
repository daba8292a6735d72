//! Canonical angles, isoclinic subspaces, and quantum error correction
//! checks over dense complex matrices.
//!
//! The crate decides the isoclinic property of subspace pairs by four
//! equivalent criteria, verifies the Knill-Laflamme conditions for Kraus
//! error models, extracts the family of isoclinic subspaces every
//! correctable code induces, and computes rank-k numerical ranges of
//! Hermitian matrices. A gallery reproduces the two-qubit bit-flip example
//! with its θ(p, φ) surface and Wong's graph-subspace construction.
//!
//! # Layout
//!
//! - [`matrix`]: the dense [`matrix::ComplexMatrix`] carrier, the
//!   [`matrix::Tolerance`] policy, and the scalar-multiple-of-a-projection
//!   test.
//! - [`factor`]: SVD, Hermitian eigendecomposition, polar partial
//!   isometries, rank-revealing orthonormalization.
//! - [`subspace`]: [`subspace::Subspace`], canonical angles, the four-way
//!   isoclinic check, fixture generators.
//! - [`qec`]: [`qec::ErrorModel`], Knill-Laflamme verification, family
//!   extraction, the converse check for isoclinic pairs.
//! - [`numrange`]: rank-k numerical range intervals and witnesses.
//! - [`gallery`]: the worked examples.
//! - [`io`] / [`cli`]: JSON and CSV boundary, command dispatch.
//!
//! Everything is a pure function over immutable values; all sampling is
//! seeded and deterministic.

pub mod cli;
pub mod error;
pub mod factor;
pub mod gallery;
pub mod io;
pub mod matrix;
pub mod numrange;
pub mod qec;
pub mod subspace;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Tolerance};
pub use subspace::{
    canonical_angles, family_isoclinic_check, isoclinic_check, make_isoclinic_pair, ratio_probe,
    CanonicalAngles, IsoclinicReport, OrthProjection, Subspace,
};
