//! Dimension-truncated, levelwise free simplicial abelian groups.
//!
//! Every group carries its truncation `D`: levels `0..=D` are stored, and
//! outputs are trustworthy up to the degree each operation documents
//! (homotopy groups up to `D − 1`).

pub mod bar;
pub mod dold_kan;
pub mod ez;
pub mod free;
pub mod group;
pub mod horn;

pub use bar::bar_b;
pub use dold_kan::{
    check_kn, check_nk, dold_kan_k, homotopy_groups, kn_comparison, nk_comparison, normalize_n, normalize_with_bases,
    unnormalized_complex,
};
pub use ez::{ez_maps, EZPair};
pub use free::{check_smash_monoidal, free_reduced_z, smash_comparison};
pub use group::SimplicialAbGroup;
pub use horn::horn_filler;
