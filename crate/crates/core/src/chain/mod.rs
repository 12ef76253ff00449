//! Exact integer linear algebra and bounded chain complexes.

pub mod complex;
pub mod homology;
pub mod matrix;
pub mod ops;
pub mod snf;
pub mod tower;

pub use complex::{ChainComplex, ChainMap};
pub use homology::{homology, homology_all, induced_map, is_isomorphism, HomologyGroup, HomologyPresentation};
pub use matrix::{int, Int, IntMatrix};
pub use ops::{
    chain_map, check_quasi_iso, direct_sum, hom_complex, hom_precompose, homotopy_class_group, mapping_cone,
    quasi_iso_report_in, shift, stupid_inclusion, tensor, truncate_good, truncate_good_with_inclusion,
    truncate_stupid, DegreeVerdict, QuasiIsoReport,
};
pub use snf::{invariant_factors, kernel_basis, smith, smith_normal_form, solve, SmithForm};
pub use tower::{sigma_tower_report, TowerReport};
