//! Exact combinatorics of affine toric varieties and toric surfaces.
//!
//! The crate works with cones in `N ≅ Z^n` and their duals in `M ≅ Z^n`:
//!
//! * [`lattice`]: Smith/Hermite normal forms, subgroup bases, quotients.
//! * [`cone`]: double description, dual cones, faces, predicates.
//! * [`monoid`]: Hilbert bases of `σ^∨ ∩ M`, membership, invariant rings.
//! * [`roots`]: Demazure roots `S_ρ`, root families, kernels of roots.
//! * [`replica`]: monomial derivations and their exponentials `f·u`.
//! * [`iso`]: lattice equivalence of cones and weight monoid comparison.
//! * [`surface`]: smooth complete toric surface fans and corner blow-ups.
//! * [`format`]: the JSON representations shared by the CLI and the web demo.

#![allow(clippy::needless_range_loop)]

pub mod cone;
pub mod error;
pub mod format;
pub mod iso;
pub mod lattice;
pub mod monoid;
pub mod replica;
pub mod roots;
pub mod surface;

pub use cone::Cone;
pub use error::{Result, ToricError};
pub use lattice::{IntMatrix, LatticeMap, LatticePoint, QuotientStructure};
