//! The Dold–Kan functors `N` and `K` and their comparison isomorphisms.

use std::collections::HashMap;

use super::group::SimplicialAbGroup;
use crate::chain::{kernel_basis, solve, truncate_good, ChainComplex, ChainMap, HomologyGroup, IntMatrix};
use crate::delta;
use crate::error::{Error, Result};

/// Normalized (Moore) complex `N_n = ⋂_{i≥1} ker ∂_i` with differential
/// `∂_0`, together with the kernel bases `B_n` (columns in `A_n`).
pub fn normalize_with_bases(a: &SimplicialAbGroup) -> (ChainComplex, Vec<IntMatrix>) {
    let top = a.trunc_dim();
    let mut bases = vec![IntMatrix::identity(a.rank(0))];
    for n in 1..=top {
        let stacked = IntMatrix::vstack_all(&(1..=n).map(|i| a.face(n, i).clone()).collect::<Vec<_>>(), a.rank(n));
        bases.push(kernel_basis(&stacked));
    }
    let ranks: Vec<usize> = bases.iter().map(IntMatrix::cols).collect();
    let mut diffs = vec![IntMatrix::zeros(0, ranks[0])];
    for n in 1..=top {
        let image = a.face(n, 0) * &bases[n];
        diffs.push(solve(&bases[n - 1], &image).expect("∂_0 preserves the Moore complex"));
    }
    (ChainComplex::new(0, ranks, diffs).expect("∂_0∂_0 = ∂_0∂_1 vanishes on N"), bases)
}

/// `N(A)`, trustworthy in degrees `≤ D`.
pub fn normalize_n(a: &SimplicialAbGroup) -> ChainComplex {
    normalize_with_bases(a).0
}

/// Summand layout of `K(C)_n = ⊕_{θ:[n]↠[k]} C_k`: surjections ordered by
/// `k` ascending, then lexicographically.
#[derive(Clone, Debug)]
pub struct KLayout {
    /// Per level: `(θ, k, offset)`.
    pub summands: Vec<Vec<(Vec<usize>, usize, usize)>>,
    pub ranks: Vec<usize>,
}

impl KLayout {
    pub fn new(c: &ChainComplex, trunc: usize) -> Self {
        let mut summands = Vec::new();
        let mut ranks = Vec::new();
        for n in 0..=trunc {
            let mut level = Vec::new();
            let mut off = 0;
            for k in 0..=n {
                for theta in delta::surjections(n, k) {
                    level.push((theta, k, off));
                    off += c.rank(k as i64);
                }
            }
            summands.push(level);
            ranks.push(off);
        }
        KLayout { summands, ranks }
    }

    pub fn offset(&self, n: usize, theta: &[usize]) -> Option<usize> {
        self.summands[n].iter().find(|(t, _, _)| t == theta).map(|(_, _, o)| *o)
    }
}

/// Matrix of `α^*: K(C)_n → K(C)_m`: on the summand `θ`, factor
/// `θα = ετ`; `ε = id` sends it to summand `τ` identically, `ε = δ_0`
/// sends it there by `d`, anything else kills it.
fn k_operator(c: &ChainComplex, layout: &KLayout, alpha: &[usize], n: usize) -> IntMatrix {
    let m = alpha.len() - 1;
    let index: HashMap<&Vec<usize>, usize> = layout.summands[m].iter().map(|(t, _, o)| (t, *o)).collect();
    let mut mat = IntMatrix::zeros(layout.ranks[m], layout.ranks[n]);
    for (theta, k, off) in &layout.summands[n] {
        let (tau, eps) = delta::epi_mono(&delta::compose(theta, alpha));
        let q = eps.len() - 1;
        let block = if q == *k {
            IntMatrix::identity(c.rank(*k as i64))
        } else if q + 1 == *k && eps == (1..=*k).collect::<Vec<_>>() {
            c.d(*k as i64)
        } else {
            continue;
        };
        if block.rows() > 0 && block.cols() > 0 {
            mat.paste(index[&tau], *off, &block);
        }
    }
    mat
}

/// `K(C)` truncated at `D`, after applying `τ≥0`.
pub fn dold_kan_k(c: &ChainComplex, trunc: usize) -> SimplicialAbGroup {
    let c = truncate_good(c, 0);
    let layout = KLayout::new(&c, trunc);
    let face = (0..=trunc)
        .map(|n| (0..if n == 0 { 0 } else { n + 1 }).map(|i| k_operator(&c, &layout, &delta::coface(n, i), n)).collect())
        .collect();
    let degen = (0..trunc).map(|n| (0..=n).map(|j| k_operator(&c, &layout, &delta::codegeneracy(n, j), n)).collect()).collect();
    SimplicialAbGroup::new_unchecked(trunc, layout.ranks.clone(), face, degen).expect("K(C) shapes")
}

/// `C` restricted to degrees `0..=D` (after `τ≥0`), the range recovered by
/// `N(K(C))`.
pub fn dold_kan_window(c: &ChainComplex, trunc: usize) -> ChainComplex {
    let c = truncate_good(c, 0);
    let ranks: Vec<usize> = (0..=trunc as i64).map(|n| c.rank(n)).collect();
    let diffs = (0..=trunc as i64).map(|n| if n == 0 { IntMatrix::zeros(0, c.rank(0)) } else { c.d(n) }).collect();
    ChainComplex::new(0, ranks, diffs).expect("window of a complex")
}

/// The comparison `C → N(K(C))` on degrees `0..=D`: `C_n` is the identity
/// summand of `K(C)_n`, expressed in the kernel basis of `N`.
pub fn nk_comparison(c: &ChainComplex, trunc: usize) -> Result<ChainMap> {
    let window = dold_kan_window(c, trunc);
    let k = dold_kan_k(c, trunc);
    let (n_k, bases) = normalize_with_bases(&k);
    let layout = KLayout::new(&truncate_good(c, 0), trunc);
    let mut comps = Vec::new();
    for n in 0..=trunc {
        let id: Vec<usize> = (0..=n).collect();
        let off = layout.offset(n, &id).expect("identity summand");
        let mut incl = IntMatrix::zeros(layout.ranks[n], window.rank(n as i64));
        if incl.cols() > 0 {
            incl.paste(off, 0, &IntMatrix::identity(window.rank(n as i64)));
        }
        let coords = solve(&bases[n], &incl).ok_or_else(|| Error::Identity(format!("identity summand not normalized in degree {}", n)))?;
        comps.push(coords);
    }
    ChainMap::new(window, n_k, |n| comps[n as usize].clone())
}

/// The comparison `ψ: K(N(A)) → A`, `(θ, x) ↦ θ^* x`, per level.
pub fn kn_comparison(a: &SimplicialAbGroup) -> Result<(SimplicialAbGroup, Vec<IntMatrix>)> {
    let (n_a, bases) = normalize_with_bases(a);
    let kn = dold_kan_k(&n_a, a.trunc_dim());
    let layout = KLayout::new(&n_a, a.trunc_dim());
    let mut psi = Vec::new();
    for n in 0..=a.trunc_dim() {
        let mut m = IntMatrix::zeros(a.rank(n), layout.ranks[n]);
        for (theta, k, off) in &layout.summands[n] {
            if bases[*k].cols() == 0 {
                continue;
            }
            let block = &a.monotone_matrix(theta, *k)? * &bases[*k];
            m.paste(0, *off, &block);
        }
        psi.push(m);
    }
    Ok((kn, psi))
}

/// Whether `C → N(K(C))` is an isomorphism of complexes on `0..=D`.
pub fn check_nk(c: &ChainComplex, trunc: usize) -> Result<bool> {
    let f = nk_comparison(c, trunc)?;
    Ok((0..=trunc as i64).all(|n| {
        let m = f.component(n);
        m.rows() == m.cols() && m.is_unimodular()
    }))
}

/// Whether `ψ: K(N(A)) → A` is a levelwise isomorphism commuting with all
/// faces and degeneracies.
pub fn check_kn(a: &SimplicialAbGroup) -> Result<bool> {
    let (kn, psi) = kn_comparison(a)?;
    let t = a.trunc_dim();
    if kn.ranks() != a.ranks() || !psi.iter().all(|m| m.rows() == m.cols() && m.is_unimodular()) {
        return Ok(false);
    }
    for n in 1..=t {
        for i in 0..=n {
            if a.face(n, i) * &psi[n] != &psi[n - 1] * kn.face(n, i) {
                return Ok(false);
            }
        }
    }
    for n in 0..t {
        for j in 0..=n {
            if a.degen(n, j) * &psi[n] != &psi[n + 1] * kn.degen(n, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Unnormalized complex: `A_n` with `Σ(−1)^i ∂_i`, degrees `0..=D`.
pub fn unnormalized_complex(a: &SimplicialAbGroup) -> ChainComplex {
    let t = a.trunc_dim();
    let ranks = (0..=t).map(|n| a.rank(n)).collect();
    let diffs = (0..=t).map(|n| if n == 0 { IntMatrix::zeros(0, a.rank(0)) } else { a.alternating_face_sum(n) }).collect();
    ChainComplex::new(0, ranks, diffs).expect("alternating face sums square to zero")
}

/// `π_i(A) = H_i(N(A))`, defined for `i ≤ D − 1`.
pub fn homotopy_groups(a: &SimplicialAbGroup, i: i64) -> Result<HomologyGroup> {
    if i < 0 || i >= a.trunc_dim() as i64 {
        return Err(Error::Range(format!("π_{} needs truncation above {}, have D = {}", i, i, a.trunc_dim())));
    }
    Ok(crate::chain::homology(&normalize_n(a), i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology, IntMatrix};

    fn z_at(deg: i64) -> ChainComplex {
        ChainComplex::concentrated(deg, 1)
    }

    #[test]
    fn constant_normalizes_to_degree_zero() {
        let a = SimplicialAbGroup::constant(2, 3);
        let n = normalize_n(&a);
        assert_eq!(n.rank(0), 2);
        assert_eq!((n.rank(1), n.rank(2), n.rank(3)), (0, 0, 0));
    }

    #[test]
    fn k_ranks_count_surjections() {
        let k = dold_kan_k(&z_at(1), 3);
        assert_eq!(k.ranks(), &[0, 1, 2, 3]);
        assert!(k.validate().is_ok());
        let k0 = dold_kan_k(&z_at(0), 3);
        assert_eq!(k0, SimplicialAbGroup::constant(1, 3));
    }

    #[test]
    fn eilenberg_maclane() {
        let k = dold_kan_k(&z_at(2), 4);
        assert_eq!(homotopy_groups(&k, 2).unwrap(), HomologyGroup::free(1));
        for i in [0, 1, 3] {
            assert!(homotopy_groups(&k, i).unwrap().is_zero());
        }
        assert!(matches!(homotopy_groups(&k, 4), Err(Error::Range(_))));
        let u = unnormalized_complex(&k);
        assert_eq!(homology(&u, 2), HomologyGroup::free(1));
    }

    #[test]
    fn round_trips() {
        let c = ChainComplex::new(
            0,
            vec![2, 2, 1],
            vec![IntMatrix::zeros(0, 2), IntMatrix::from_i64(2, 2, &[1, 2, 0, 3]), IntMatrix::zeros(2, 1)],
        )
        .unwrap();
        assert!(check_nk(&c, 3).unwrap());
        let k = dold_kan_k(&c, 3);
        assert!(k.validate().is_ok());
        assert!(check_kn(&k).unwrap());
    }

    #[test]
    fn negative_degrees_truncated() {
        let c = ChainComplex::two_term(0, IntMatrix::from_i64(1, 1, &[2]));
        // Z --2--> Z in degrees 0, −1; τ≥0 keeps ker = 0
        let k = dold_kan_k(&c, 2);
        assert_eq!(k.ranks(), &[0, 0, 0]);
    }
}
