//! Towers `Hom(σ≤n K, L)` of homotopy classes along stupid truncations.
//!
//! For a bounded `K` the tower is constant from the top degree of `K` on,
//! so it is Mittag-Leffler, `lim¹` vanishes and the limit is the stable
//! value. The report checks this degree by degree with induced maps rather
//! than taking it on faith.

use super::complex::ChainComplex;
use super::homology::HomologyGroup;
use super::ops::{homotopy_class_group, hom_precompose, quasi_iso_report_in, shift, stupid_inclusion, truncate_stupid};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    /// Least `n` from which `σ≤n K = K`.
    pub stabilization_index: i64,
    /// `lim_n H₀Hom(σ≤n K, L)`.
    pub limit_group: HomologyGroup,
    pub lim1_vanishes: bool,
    /// `H₀Hom(K, L)`, computed directly.
    pub hom_full: HomologyGroup,
    /// The restriction `H₀Hom(K, L) → lim` is an isomorphism.
    pub exactness_verified: bool,
    /// `(n, H₀Hom(σ≤n K, L))` for `n` in `min_deg..=max_deg` of `K`.
    pub tower: Vec<(i64, HomologyGroup)>,
}

/// Whether restriction along `σ≤n big → big` is an isomorphism on
/// `H₀Hom(−, L)`.
fn restriction_is_iso(big: &ChainComplex, n: i64, l: &ChainComplex) -> bool {
    let inc = stupid_inclusion(big, n);
    let g = hom_precompose(&inc, l);
    quasi_iso_report_in(&g, [0]).is_quasi_iso()
}

pub fn sigma_tower_report(k: &ChainComplex, l: &ChainComplex) -> TowerReport {
    let lo = k.min_deg();
    let hi = k.max_deg();
    let stabilization_index = k.support().map_or(lo, |(_, top)| top);
    let tower: Vec<(i64, HomologyGroup)> =
        (lo..=hi).map(|n| (n, homotopy_class_group(&truncate_stupid(k, n), l))).collect();
    let limit_group = tower
        .iter()
        .find(|(n, _)| *n == stabilization_index)
        .map(|(_, g)| g.clone())
        .expect("stabilization index lies in the tower range");
    let hom_full = homotopy_class_group(k, l);

    // Transition maps of both towers are isomorphisms from the stabilization
    // index on; this is the Mittag-Leffler witness for lim¹ = 0.
    let l_down = shift(l, -1);
    let lim1_vanishes = (stabilization_index..hi).all(|n| {
        let upper = truncate_stupid(k, n + 1);
        restriction_is_iso(&upper, n, l) && restriction_is_iso(&upper, n, &l_down)
    });

    let exactness_verified = lim1_vanishes && hom_full == limit_group && restriction_is_iso(k, stabilization_index, l);

    TowerReport { stabilization_index, limit_group, lim1_vanishes, hom_full, exactness_verified, tower }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::matrix::IntMatrix;

    #[test]
    fn concentrated_source() {
        let k = ChainComplex::concentrated(0, 1);
        let r = sigma_tower_report(&k, &ChainComplex::concentrated(0, 1));
        assert_eq!(r.stabilization_index, 0);
        assert!(r.lim1_vanishes);
        assert!(r.exactness_verified);
        assert_eq!(r.limit_group, HomologyGroup::free(1));
    }

    #[test]
    fn two_term_source() {
        let k = ChainComplex::two_term(1, IntMatrix::from_i64(1, 1, &[1]));
        let r = sigma_tower_report(&k, &ChainComplex::concentrated(0, 1));
        assert_eq!(r.stabilization_index, 1);
        assert!(r.exactness_verified);
        assert!(r.hom_full.is_zero());
        // σ≤0 K = Z[0] still sees a free class
        assert_eq!(r.tower[0].1, HomologyGroup::free(1));
    }
}
