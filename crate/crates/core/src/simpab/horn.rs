//! Kan filling of horns in simplicial abelian groups.

use super::group::SimplicialAbGroup;
use crate::chain::Int;
use crate::error::{Error, Result};

/// Fills the horn `Λⁿ_k` whose faces are given for `i ≠ k` (`faces` has
/// `n` entries, in index order with `k` skipped). Uses the degeneracy
/// correction `w ← w − s_r∂_r w + s_r x_r` for `r < k`, then
/// `w ← w − s_{r−1}∂_r w + s_{r−1} x_r` for `r = n, …, k+1`.
pub fn horn_filler(a: &SimplicialAbGroup, n: usize, k: usize, faces: &[Vec<Int>]) -> Result<Vec<Int>> {
    if n == 0 || k > n || n > a.trunc_dim() {
        return Err(Error::Parameter(format!("no horn Λ^{}_{} within truncation {}", n, k, a.trunc_dim())));
    }
    if faces.len() != n || faces.iter().any(|f| f.len() != a.rank(n - 1)) {
        return Err(Error::Shape(format!("a Λ^{}_{} horn needs {} faces of rank {}", n, k, n, a.rank(n - 1))));
    }
    let idx: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
    let x = |i: usize| &faces[idx.iter().position(|&j| j == i).expect("face present")];
    // compatibility ∂_i x_j = ∂_{j−1} x_i for i < j, both ≠ k
    if n >= 2 {
        for &j in &idx {
            for &i in idx.iter().filter(|&&i| i < j) {
                if a.face(n - 1, i).mul_vec(x(j)) != a.face(n - 1, j - 1).mul_vec(x(i)) {
                    return Err(Error::Precondition(format!("horn faces violate ∂_{}x_{} = ∂_{}x_{}", i, j, j - 1, i)));
                }
            }
        }
    }
    let mut w = vec![Int::ZERO; a.rank(n)];
    let correct = |w: &mut Vec<Int>, r: usize, s: usize| {
        let back = a.degen(n - 1, s).mul_vec(&a.face(n, r).mul_vec(w));
        let add = a.degen(n - 1, s).mul_vec(x(r));
        for ((wi, b), c) in w.iter_mut().zip(back).zip(add) {
            *wi = &*wi - b + c;
        }
    };
    for r in 0..k {
        correct(&mut w, r, r);
    }
    for r in (k + 1..=n).rev() {
        correct(&mut w, r, r - 1);
    }
    for &i in &idx {
        if a.face(n, i).mul_vec(&w) != *x(i) {
            return Err(Error::Identity(format!("filler misses face {}", i)));
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{int, ChainComplex};
    use crate::simpab::dold_kan::dold_kan_k;

    #[test]
    fn zero_horn() {
        let a = dold_kan_k(&ChainComplex::concentrated(1, 2), 3);
        let faces = vec![vec![Int::ZERO; a.rank(1)]; 2];
        let w = horn_filler(&a, 2, 1, &faces).unwrap();
        assert!(w.iter().all(|v| *v == Int::ZERO));
    }

    #[test]
    fn constant_inner_horn() {
        let a = SimplicialAbGroup::constant(1, 3);
        let w = horn_filler(&a, 2, 1, &[vec![int(5)], vec![int(5)]]).unwrap();
        assert_eq!(w, vec![int(5)]);
        assert!(matches!(horn_filler(&a, 2, 1, &[vec![int(5)], vec![int(4)]]), Err(Error::Precondition(_))));
    }

    #[test]
    fn horns_in_k_of_z1() {
        let a = dold_kan_k(&ChainComplex::concentrated(1, 1), 3);
        // take faces of a known simplex and refill
        let x: Vec<Int> = (0..a.rank(2)).map(|i| int(i as i64 + 2)).collect();
        for k in 0..=2 {
            let faces: Vec<Vec<Int>> = (0..=2).filter(|&i| i != k).map(|i| a.face(2, i).mul_vec(&x)).collect();
            assert!(horn_filler(&a, 2, k, &faces).is_ok());
        }
    }
}
