//! The bar construction `BA = Δ B_•(A_•)` for simplicial abelian groups.

use super::group::SimplicialAbGroup;
use crate::chain::IntMatrix;

/// Bar face `∂_i: G^n → G^{n−1}` on coordinates: `∂_0` drops the first,
/// `∂_n` the last, inner faces add neighbours. Returns the destination of
/// each source coordinate.
fn bar_face_target(n: usize, i: usize, src: usize) -> Option<usize> {
    // coordinates are 0-based: g_1 ↔ 0
    if i == 0 {
        src.checked_sub(1)
    } else if i == n {
        (src < n - 1).then_some(src)
    } else if src < i {
        Some(src)
    } else {
        Some(src - 1)
    }
}

/// Bar degeneracy `s_j: G^n → G^{n+1}` inserts `0` after `g_j`.
fn bar_degen_target(j: usize, src: usize) -> usize {
    if src < j {
        src
    } else {
        src + 1
    }
}

/// Diagonal of the bisimplicial group with `(p, q)`-level `A_q^p`. Level
/// `n` is `A_n^n`; the output keeps the truncation `D` of `A`.
pub fn bar_b(a: &SimplicialAbGroup) -> SimplicialAbGroup {
    let t = a.trunc_dim();
    let ranks: Vec<usize> = (0..=t).map(|n| n * a.rank(n)).collect();
    let mut face = vec![Vec::new()];
    for n in 1..=t {
        let (r_src, r_dst) = (a.rank(n), a.rank(n - 1));
        let mut level = Vec::new();
        for i in 0..=n {
            let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
            for src in 0..n {
                if let Some(dst) = bar_face_target(n, i, src) {
                    if r_src > 0 && r_dst > 0 {
                        let cur = m.submatrix(dst * r_dst..(dst + 1) * r_dst, src * r_src..(src + 1) * r_src);
                        m.paste(dst * r_dst, src * r_src, &(&cur + a.face(n, i)));
                    }
                }
            }
            level.push(m);
        }
        face.push(level);
    }
    let mut degen = Vec::new();
    for n in 0..t {
        let (r_src, r_dst) = (a.rank(n), a.rank(n + 1));
        let mut level = Vec::new();
        for j in 0..=n {
            let mut m = IntMatrix::zeros(ranks[n + 1], ranks[n]);
            if r_src > 0 && r_dst > 0 {
                for src in 0..n {
                    m.paste(bar_degen_target(j, src) * r_dst, src * r_src, a.degen(n, j));
                }
            }
            level.push(m);
        }
        degen.push(level);
    }
    SimplicialAbGroup::new_unchecked(t, ranks, face, degen).expect("bar construction shapes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology, HomologyGroup};
    use crate::simpab::dold_kan::normalize_n;

    #[test]
    fn zero_stays_zero() {
        assert_eq!(bar_b(&SimplicialAbGroup::zero(3)), SimplicialAbGroup::zero(3));
    }

    #[test]
    fn classifying_space_of_z() {
        let b = bar_b(&SimplicialAbGroup::constant(1, 4));
        assert!(b.validate().is_ok());
        let n = normalize_n(&b);
        assert!(homology(&n, 0).is_zero());
        assert_eq!(homology(&n, 1), HomologyGroup::free(1));
        assert!(homology(&n, 2).is_zero());
        assert!(homology(&n, 3).is_zero());
    }

    #[test]
    fn iterated_bar() {
        let bb = bar_b(&bar_b(&SimplicialAbGroup::constant(1, 4)));
        assert!(bb.validate().is_ok());
        let n = normalize_n(&bb);
        for i in 0..=3 {
            let want = if i == 2 { HomologyGroup::free(1) } else { HomologyGroup::zero() };
            assert_eq!(homology(&n, i), want);
        }
    }
}
