//! Eilenberg–Zilber: the shuffle and Alexander–Whitney maps between
//! `N(A)⊗N(B)` and `N(A⊗B)`.

use super::dold_kan::normalize_with_bases;
use super::group::SimplicialAbGroup;
use crate::chain::{solve, tensor, truncate_stupid, ChainComplex, ChainMap, IntMatrix};
use crate::delta;
use crate::error::{Error, Result};

/// Shuffle `N(A)⊗N(B) → N(A⊗B)` and Alexander–Whitney back, in degrees
/// `≤ D`. `aw ∘ shuffle = id` holds strictly.
#[derive(Clone, Debug)]
pub struct EZPair {
    pub shuffle: ChainMap,
    pub aw: ChainMap,
}

/// Projection `A_n → N_n` with kernel the degenerate simplices:
/// `(1 − s_0∂_1)⋯(1 − s_{n−1}∂_n)`, rightmost factor first.
pub fn normalizing_projection(a: &SimplicialAbGroup, n: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(a.rank(n));
    for j in (0..n).rev() {
        let step = &IntMatrix::identity(a.rank(n)) - &(a.degen(n - 1, j) * a.face(n, j + 1));
        p = &step * &p;
    }
    p
}

/// All `(p, q)`-shuffles `(μ, ν)` with their signs.
pub fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    let n = p + q;
    delta::subsets(n, p)
        .into_iter()
        .map(|mu| {
            let nu: Vec<usize> = (0..n).filter(|t| !mu.contains(t)).collect();
            let inversions: usize = mu.iter().enumerate().map(|(i, &m)| m - i).sum();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (mu, nu, sign)
        })
        .collect()
}

fn coordinates(basis: &IntMatrix, v: &IntMatrix, what: &str) -> Result<IntMatrix> {
    solve(basis, v).ok_or_else(|| Error::Identity(format!("{} left the normalized complex", what)))
}

pub fn ez_maps(a: &SimplicialAbGroup, b: &SimplicialAbGroup) -> Result<EZPair> {
    let t = a.trunc_dim().min(b.trunc_dim());
    let (a, b) = (a.truncate(t), b.truncate(t));
    let ab = a.tensor(&b);
    let (na, ba) = normalize_with_bases(&a);
    let (nb, bb) = normalize_with_bases(&b);
    let (nab, bab) = normalize_with_bases(&ab);
    let prod: ChainComplex = truncate_stupid(&tensor(&na, &nb), t as i64).widen(0, t as i64);

    let mut sh = Vec::new();
    let mut aw = Vec::new();
    for n in 0..=t {
        let proj = normalizing_projection(&ab, n);
        // shuffle: blocks ordered by p ascending, as in the tensor complex
        let mut blocks = Vec::new();
        for p in 0..=n {
            let q = n - p;
            if ba[p].cols() * bb[q].cols() == 0 {
                continue;
            }
            let mut sum = IntMatrix::zeros(ab.rank(n), ba[p].cols() * bb[q].cols());
            for (mu, nu, sign) in shuffles(p, q) {
                let sa = &a.monotone_matrix(&delta::surjection_from_collapse(n, &nu), p)? * &ba[p];
                let sb = &b.monotone_matrix(&delta::surjection_from_collapse(n, &mu), q)? * &bb[q];
                let term = sa.kronecker(&sb);
                sum = if sign > 0 { &sum + &term } else { &sum - &term };
            }
            blocks.push(coordinates(&bab[n], &(&proj * &sum), "shuffle")?);
        }
        let src_rank = prod.rank(n as i64);
        let mut m = IntMatrix::zeros(nab.rank(n as i64), src_rank);
        let mut off = 0;
        for blk in blocks {
            m.paste(0, off, &blk);
            off += blk.cols();
        }
        sh.push(m);

        // Alexander–Whitney: front p-face ⊗ back q-face
        let mut rows = Vec::new();
        for p in 0..=n {
            let q = n - p;
            if ba[p].cols() * bb[q].cols() == 0 {
                continue;
            }
            let front: Vec<usize> = (0..=p).collect();
            let back: Vec<usize> = (p..=n).collect();
            let fa = a.monotone_matrix(&front, n)?;
            let fb = b.monotone_matrix(&back, n)?;
            let v = &fa.kronecker(&fb) * &bab[n];
            let pa = normalizing_projection(&a, p);
            let pb = normalizing_projection(&b, q);
            let projected = &pa.kronecker(&pb) * &v;
            rows.push(coordinates(&ba[p].kronecker(&bb[q]), &projected, "Alexander–Whitney")?);
        }
        aw.push(IntMatrix::vstack_all(&rows, nab.rank(n as i64)));
    }
    let shuffle = ChainMap::new(prod.clone(), nab.clone(), |n| sh[n as usize].clone())?;
    let aw = ChainMap::new(nab, prod, |n| aw[n as usize].clone())?;
    Ok(EZPair { shuffle, aw })
}

impl EZPair {
    /// Whether `aw ∘ shuffle` is the identity matrix in every degree.
    pub fn strict(&self) -> bool {
        self.shuffle
            .source()
            .degrees()
            .all(|n| (&self.aw.component(n) * &self.shuffle.component(n)).is_identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology, HomologyGroup};
    use crate::simpab::dold_kan::dold_kan_k;
    use crate::simpab::free::free_reduced_z;
    use crate::simpset::{standard_space, StandardSpace::*};

    #[test]
    fn one_one_shuffles() {
        let s = shuffles(1, 1);
        assert_eq!(s, vec![(vec![0], vec![1], 1), (vec![1], vec![0], -1)]);
        assert_eq!(shuffles(2, 1).len(), 3);
    }

    #[test]
    fn projection_kills_degenerates() {
        let a = dold_kan_k(&ChainComplex::concentrated(1, 1), 4);
        for n in 1..=4 {
            let p = normalizing_projection(&a, n);
            assert_eq!(&p * &p, p);
            for j in 0..n {
                assert!((&p * a.degen(n - 1, j)).is_zero());
            }
            for i in 1..=n {
                assert!((a.face(n, i) * &p).is_zero());
            }
        }
    }

    #[test]
    fn circles() {
        let z = free_reduced_z(&standard_space(Sphere(1)).unwrap(), 4).unwrap();
        let ez = ez_maps(&z, &z).unwrap();
        assert!(ez.strict());
        assert_eq!(homology(ez.shuffle.target(), 2), HomologyGroup::free(1));
        assert!(homology(ez.shuffle.target(), 1).is_zero());
    }

    #[test]
    fn degree_zero_identity() {
        let a = SimplicialAbGroup::constant(2, 2);
        let ez = ez_maps(&a, &a).unwrap();
        assert!(ez.shuffle.component(0).is_identity());
        assert!(ez.aw.component(0).is_identity());
    }
}
