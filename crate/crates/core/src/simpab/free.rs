//! The reduced free functor `Z̃` and its monoidality on smash products.

use std::collections::HashMap;

use super::group::SimplicialAbGroup;
use crate::chain::{int, IntMatrix};
use crate::error::{Error, Result};
use crate::simpset::{smash, SimplexRef, SimplicialSet};

/// Basis of `Z̃(X)_n`: the `n`-simplices of `X` other than the degenerate
/// basepoint, in [`SimplicialSet::simplices`] order.
pub fn reduced_basis(x: &SimplicialSet, n: usize) -> Vec<SimplexRef> {
    let base = x.base_simplex(n);
    x.simplices(n).into_iter().filter(|s| Some(s) != base.as_ref()).collect()
}

/// `Z̃(X) = Z(X)/Z(*)` truncated at `D`.
pub fn free_reduced_z(x: &SimplicialSet, trunc: usize) -> Result<SimplicialAbGroup> {
    x.require_pointed("the reduced free functor")?;
    let bases: Vec<Vec<SimplexRef>> = (0..=trunc).map(|n| reduced_basis(x, n)).collect();
    let index: Vec<HashMap<&SimplexRef, usize>> =
        bases.iter().map(|b| b.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let matrix = |from: usize, to: usize, op: &dyn Fn(&SimplexRef) -> SimplexRef| {
        let mut m = IntMatrix::zeros(bases[to].len(), bases[from].len());
        for (j, s) in bases[from].iter().enumerate() {
            if let Some(&i) = index[to].get(&op(s)) {
                m.set(i, j, int(1));
            }
        }
        m
    };
    let face = (0..=trunc)
        .map(|n| (0..if n == 0 { 0 } else { n + 1 }).map(|i| matrix(n, n - 1, &|s| x.face_raw(s, i))).collect())
        .collect();
    let degen = (0..trunc)
        .map(|n| (0..=n).map(|j| matrix(n, n + 1, &|s| s.degeneracy(j).expect("index in range"))).collect())
        .collect();
    let ranks = bases.iter().map(Vec::len).collect();
    SimplicialAbGroup::new_unchecked(trunc, ranks, face, degen)
}

/// The canonical map `Z̃(E)⊗Z̃(F) → Z̃(E∧F)`, `e⊗f ↦ e∧f`, per level, with
/// the source and target groups.
pub fn smash_comparison(e: &SimplicialSet, f: &SimplicialSet, trunc: usize) -> Result<(SimplicialAbGroup, SimplicialAbGroup, Vec<IntMatrix>)> {
    let sm = smash(e, f)?;
    let ze = free_reduced_z(e, trunc)?;
    let zf = free_reduced_z(f, trunc)?;
    let zs = free_reduced_z(&sm.object, trunc)?;
    let mut maps = Vec::new();
    for n in 0..=trunc {
        let target: HashMap<SimplexRef, usize> = reduced_basis(&sm.object, n).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        let (be, bf) = (reduced_basis(e, n), reduced_basis(f, n));
        let mut m = IntMatrix::zeros(zs.rank(n), be.len() * bf.len());
        for (a, x) in be.iter().enumerate() {
            for (b, y) in bf.iter().enumerate() {
                let img = sm.pair(x, y);
                let row = target
                    .get(&img)
                    .ok_or_else(|| Error::Identity(format!("smash of non-base simplices collapsed in level {}", n)))?;
                m.set(*row, a * bf.len() + b, int(1));
            }
        }
        maps.push(m);
    }
    Ok((ze.tensor(&zf), zs, maps))
}

/// Whether the canonical map is a levelwise isomorphism commuting with all
/// faces and degeneracies.
pub fn check_smash_monoidal(e: &SimplicialSet, f: &SimplicialSet, trunc: usize) -> Result<bool> {
    let (src, tgt, maps) = smash_comparison(e, f, trunc)?;
    if !maps.iter().all(|m| m.rows() == m.cols() && m.is_unimodular()) {
        return Ok(false);
    }
    for n in 1..=trunc {
        for i in 0..=n {
            if tgt.face(n, i) * &maps[n] != &maps[n - 1] * src.face(n, i) {
                return Ok(false);
            }
        }
    }
    for n in 0..trunc {
        for j in 0..=n {
            if tgt.degen(n, j) * &maps[n] != &maps[n + 1] * src.degen(n, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
