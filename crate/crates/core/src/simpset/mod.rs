//! Finite simplicial sets in degeneracy-word normal form.
//!
//! A simplicial set is stored by its nondegenerate cells; every simplex is
//! a [`SimplexRef`]: a descending degeneracy word applied to a cell. Faces
//! of cells are stored in that normal form and all operators reduce back
//! to it, so equality of simplices is syntactic.

pub mod chains;
pub mod groupoid;
pub mod map;
pub mod multi;
pub mod product;
pub mod pushout;
pub mod set;
pub mod standard;

pub use chains::{chain_map, chains, homology_space, normalized_chains};
pub use groupoid::{groupoid_presentation, pi0, pi1_presentation, Components, GroupPresentation, GroupoidPresentation};
pub use map::SimplicialMap;
pub use multi::{diagonal, BisimplicialSet, MultiRef, MultiSimplicialSet};
pub use product::{disjoint_basepoint, disjoint_union, product, smash, suspension, wedge, Product, Smash, Wedge};
pub use pushout::{pushout_inj, quotient, subcomplex, Pushout};
pub use set::{Cell, Operator, SimplexRef, SimplicialSet, SimplicialSetBuilder};
pub use standard::{standard_space, StandardSpace};

use crate::error::Result;

/// `sk_n X` with its inclusion: the sub-simplicial set generated by the
/// nondegenerate cells of dimension ≤ `n`. For `n < 0` this is empty, or
/// the basepoint when `X` is pointed.
pub fn skeleton(x: &SimplicialSet, n: i64) -> Result<SimplicialMap> {
    let base = x.basepoint();
    subcomplex(x, |c| (c.dim as i64) <= n || Some(c) == base)
}
