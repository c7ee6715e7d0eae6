//! Exact computations in integral group rings of polycyclic-by-finite groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`lattice`]: integer lattices in Hermite normal form.
//! * [`group`]: finite permutation groups, subgroups, series and quotients.
//! * [`pc`]: power-conjugate presentations and products `F × P`.
//! * [`ring`]: sparse group-ring elements, matrices, traces and Laurent checks.
//! * [`ideal`]: two-sided ideals of `ZG` as lattices, powers and witnesses.
//! * [`certify`]: solubility and idempotent-ideal certificates.

pub mod certify;
pub mod corpus;
pub mod error;
pub mod group;
pub mod ideal;
pub mod lattice;
pub mod parse;
pub mod pc;
pub mod ring;
pub mod scalar;
mod serde_int;

pub use num_bigint::BigInt as Integer;
pub use num_rational::BigRational as Rational;

pub use error::{Error, Result};
pub use group::{FiniteGroup, Permutation, Subgroup};
pub use lattice::{IntVector, LatticeBasis, LatticeIndex};
pub use pc::{PcPresentation, PcWord, ProductDatum};
pub use ring::{GroupDatum, RingElement, RingMatrix};
pub use scalar::Scalar;

/// Integral group-ring element.
pub type ZElement<G> = RingElement<G, Integer>;
/// Rational group-ring element.
pub type QElement<G> = RingElement<G, Rational>;
