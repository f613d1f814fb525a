//! Exact computations on hypergraphic zonotopes.
//!
//! A `(d+1)`-uniform hypergraph `H` on `n` vertices is read as a simplicial
//! complex with full `(d-1)`-skeleton. Its zonotope is the Minkowski sum of
//! the segments `[0, ∂e]` over the edges `e`. This crate computes Ehrhart
//! polynomials, volumes and lattice-point counts of these zonotopes from
//! torsion in integral homology, enumerates their faces through sign
//! patterns of coboundaries, and ships brute-force oracles that check all of
//! it independently.
//!
//! The linear-algebra engine in [`exactalg`] is generic over the integer
//! type; the rest of the crate works over [`BigInt`] through the aliases
//! below.

pub mod census;
pub mod complex;
pub mod error;
pub mod exactalg;
pub mod faces;
pub mod homology;
pub mod oracle;

pub use num_bigint::BigInt;

pub use error::{Error, Result};

/// Arbitrary-precision integer matrix.
pub type IntMatrix = exactalg::Matrix<BigInt>;
/// Smith normal form over arbitrary-precision integers.
pub type SnfResult = exactalg::Snf<BigInt>;
/// Reduced fraction of arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

pub use census::{CensusReport, EhrhartPolynomial, ShardSpec};
pub use complex::{Hypergraph, SimplexIndex};
pub use faces::{FaceDescriptor, FaceLattice, Hypertournament, SignPattern};
pub use homology::SubcomplexSelection;
pub use oracle::OracleReport;
