//! Chains and homology of simplicial sets.

use std::collections::HashMap;

use super::map::SimplicialMap;
use super::set::{Cell, SimplexRef, SimplicialSet};
use crate::chain::{homology, int, ChainComplex, ChainMap, HomologyGroup, IntMatrix};
use crate::error::{Error, Result};

/// Basis of the normalized chains in degree `n`: nondegenerate cells,
/// minus the basepoint when reduced.
fn normalized_basis(x: &SimplicialSet, n: usize, reduced: bool) -> Vec<Cell> {
    x.cells(n).filter(|&c| !(reduced && x.basepoint() == Some(c))).collect()
}

/// Normalized chains, reduced iff `reduced`.
pub fn normalized_chains_with(x: &SimplicialSet, reduced: bool) -> ChainComplex {
    let top = x.top_dim().unwrap_or(0);
    let bases: Vec<Vec<Cell>> = (0..=top).map(|n| normalized_basis(x, n, reduced)).collect();
    let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut diffs = vec![IntMatrix::zeros(0, ranks[0])];
    for n in 1..=top {
        let pos: HashMap<Cell, usize> = bases[n - 1].iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        for (j, &c) in bases[n].iter().enumerate() {
            for (i, f) in x.faces_of(c).iter().enumerate() {
                if !f.is_nondegenerate() {
                    continue;
                }
                if let Some(&r) = pos.get(&f.base) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let cur = m.get(r, j).clone();
                    m.set(r, j, cur + int(sign));
                }
            }
        }
        diffs.push(m);
    }
    ChainComplex::new(0, ranks, diffs).expect("simplicial identities give d∘d = 0")
}

/// Unnormalized chains on all simplices of dimension ≤ `cap`.
pub fn unnormalized_chains_with(x: &SimplicialSet, cap: usize, reduced: bool) -> ChainComplex {
    let bases: Vec<Vec<SimplexRef>> = (0..=cap)
        .map(|n| {
            let base = if reduced { x.base_simplex(n) } else { None };
            x.simplices(n).into_iter().filter(|s| Some(s) != base.as_ref()).collect()
        })
        .collect();
    let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut diffs = vec![IntMatrix::zeros(0, ranks[0])];
    for n in 1..=cap {
        let pos: HashMap<&SimplexRef, usize> = bases[n - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        for (j, s) in bases[n].iter().enumerate() {
            for i in 0..=n {
                let f = x.face(s, i).expect("index in range");
                if let Some(&r) = pos.get(&f) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let cur = m.get(r, j).clone();
                    m.set(r, j, cur + int(sign));
                }
            }
        }
        diffs.push(m);
    }
    ChainComplex::new(0, ranks, diffs).expect("simplicial identities give d∘d = 0")
}

/// Chains of `x`, reduced when `x` is pointed. Unnormalized chains need a
/// dimension cap since degenerate simplices exist in every dimension.
pub fn chains(x: &SimplicialSet, normalized: bool, cap: Option<usize>) -> Result<ChainComplex> {
    if normalized {
        Ok(normalized_chains_with(x, x.is_pointed()))
    } else {
        let cap = cap.ok_or_else(|| Error::Parameter("unnormalized chains need a dimension cap".into()))?;
        Ok(unnormalized_chains_with(x, cap, x.is_pointed()))
    }
}

pub fn normalized_chains(x: &SimplicialSet) -> ChainComplex {
    normalized_chains_with(x, x.is_pointed())
}

/// `H_n` of the normalized chains, reduced when `x` is pointed.
pub fn homology_space(x: &SimplicialSet, n: i64) -> HomologyGroup {
    homology(&normalized_chains(x), n)
}

/// Induced map on normalized chains; reduced iff `reduced` (then both ends
/// must be pointed).
pub fn chain_map_with(f: &SimplicialMap, reduced: bool) -> Result<ChainMap> {
    if reduced && (!f.source().is_pointed() || !f.target().is_pointed()) {
        return Err(Error::Precondition("reduced chain map needs pointed source and target".into()));
    }
    let (x, y) = (f.source(), f.target());
    let cx = normalized_chains_with(x, reduced);
    let cy = normalized_chains_with(y, reduced);
    let top = cx.max_deg().max(cy.max_deg());
    let (cx, cy) = (cx.widen(0, top), cy.widen(0, top));
    ChainMap::new(cx.clone(), cy.clone(), |n| {
        let n = n as usize;
        let src = normalized_basis(x, n, reduced);
        let tgt = normalized_basis(y, n, reduced);
        let pos: HashMap<Cell, usize> = tgt.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = IntMatrix::zeros(tgt.len(), src.len());
        for (j, &c) in src.iter().enumerate() {
            let img = f.image(c);
            if img.is_nondegenerate() {
                if let Some(&r) = pos.get(&img.base) {
                    m.set(r, j, int(1));
                }
            }
        }
        m
    })
}

/// Induced map on normalized chains, reduced when both ends are pointed.
pub fn chain_map(f: &SimplicialMap) -> Result<ChainMap> {
    chain_map_with(f, f.source().is_pointed() && f.target().is_pointed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::standard::{standard_space, StandardSpace::*};

    #[test]
    fn simplex_and_spheres() {
        let p = standard_space(Simplex(0)).unwrap();
        assert_eq!(homology_space(&p, 0), HomologyGroup::free(1));
        let b = standard_space(Boundary(2)).unwrap();
        let c = normalized_chains(&b);
        assert_eq!((c.rank(0), c.rank(1)), (3, 3));
        assert_eq!(homology_space(&b, 1), HomologyGroup::free(1));
        let b3 = standard_space(Boundary(3)).unwrap();
        assert_eq!(homology_space(&b3, 0), HomologyGroup::free(1));
        assert!(homology_space(&b3, 1).is_zero());
        assert_eq!(homology_space(&b3, 2), HomologyGroup::free(1));
    }

    #[test]
    fn reduced_sphere() {
        let s2 = standard_space(Sphere(2)).unwrap();
        assert!(homology_space(&s2, 0).is_zero());
        assert_eq!(homology_space(&s2, 2), HomologyGroup::free(1));
    }

    #[test]
    fn normalization_theorem_small() {
        let s1 = standard_space(Sphere(1)).unwrap();
        let u = chains(&s1, false, Some(4)).unwrap();
        for n in 0..4 {
            assert_eq!(homology(&u, n), homology_space(&s1, n));
        }
        assert!(chains(&s1, false, None).is_err());
    }

    #[test]
    fn identity_chain_map() {
        let b = standard_space(Boundary(2)).unwrap();
        let f = chain_map(&SimplicialMap::identity(&b)).unwrap();
        assert!(f.component(1).is_identity());
    }
}
