//! Exact-arithmetic kernel for simplicial homotopy theory and homological
//! algebra over the integers.
//!
//! The crate is organised bottom-up:
//!
//! * [`chain`]: integer matrices, Smith normal form, bounded chain complexes
//!   and the homological algebra built on them (homology, shifts,
//!   truncations, tensor and Hom complexes, truncation towers).
//! * [`simpset`]: finite simplicial sets stored as nondegenerate cells with
//!   faces in degeneracy-word normal form, together with products, smash
//!   products, pushouts along monomorphisms, skeleta, diagonals of
//!   bisimplicial sets, π₀, fundamental groupoids and chains.
//! * [`simpab`]: dimension-truncated simplicial abelian groups: the
//!   Dold–Kan functors, the reduced free functor, the bar construction,
//!   Eilenberg–Zilber maps and horn filling.
//! * [`hconstr`]: the wrapping functor and its counit, skeletal pushout
//!   squares, homotopy pushouts, cylinders and weak-equivalence
//!   certificates.
//! * [`io`], [`suite`] and [`cli`]: file formats, the seeded verification
//!   suite and the command-line surface.

pub mod chain;
pub mod cli;
pub mod delta;
pub mod error;
pub mod hconstr;
pub mod io;
pub mod random;
pub mod simpab;
pub mod simpset;
pub mod suite;

pub use chain::{ChainComplex, ChainMap, HomologyGroup, Int, IntMatrix};
pub use error::{Error, Result};
pub use simpab::SimplicialAbGroup;
pub use simpset::{SimplexRef, SimplicialMap, SimplicialSet};
