//! Seeded instance generators. Every generator draws from a
//! `ChaCha8Rng` seeded with `seed_from_u64`, so a seed fixes the instance
//! stream on every platform.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{int, kernel_basis, ChainComplex, Int, IntMatrix};
use crate::simpab::{dold_kan_k, SimplicialAbGroup};
use crate::simpset::{Cell, SimplexRef, SimplicialSet};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for case `index` of a batch seeded by `seed`.
pub fn case_rng(seed: u64, label: &str, index: usize) -> Rng {
    // FNV-1a over the label keeps streams for different checks apart
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    rng(seed ^ h ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn matrix(rng: &mut Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| int(rng.random_range(-bound..=bound))).collect();
    IntMatrix::from_vec(rows, cols, data).expect("sizes agree")
}

/// Product of random elementary moves and a signed permutation.
pub fn unimodular(rng: &mut Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n == 0 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j {
            continue;
        }
        let c = int(rng.random_range(-2i64..=2));
        // row_i += c·row_j
        for col in 0..n {
            let v = m.get(i, col) + &c * m.get(j, col);
            m.set(i, col, v);
        }
    }
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        for col in 0..n {
            let a = m.get(i, col).clone();
            let b = m.get(j, col).clone();
            m.set(i, col, b);
            m.set(j, col, a);
        }
    }
    for i in 0..n {
        if rng.random_bool(0.5) {
            for col in 0..n {
                let v = -m.get(i, col);
                m.set(i, col, v);
            }
        }
    }
    m
}

/// Shape limits for random complexes.
#[derive(Clone, Copy, Debug)]
pub struct ComplexShape {
    pub max_deg: i64,
    pub max_rank: usize,
    pub bound: i64,
}

impl ComplexShape {
    pub const SMALL: ComplexShape = ComplexShape { max_deg: 3, max_rank: 3, bound: 3 };
}

/// A bounded complex in degrees `0..=top`, `top ≤ max_deg`. Each
/// differential is drawn with columns in the kernel of the one below, so
/// `d∘d = 0` holds by construction; entries stay within `bound`.
pub fn complex(rng: &mut Rng, shape: ComplexShape) -> ChainComplex {
    let top = rng.random_range(0..=shape.max_deg);
    let ranks: Vec<usize> = (0..=top).map(|_| rng.random_range(0..=shape.max_rank)).collect();
    let mut diffs = vec![IntMatrix::zeros(0, ranks[0])];
    for k in 1..ranks.len() {
        let (rows, cols) = (ranks[k - 1], ranks[k]);
        let m = if k == 1 {
            matrix(rng, rows, cols, shape.bound)
        } else {
            let ker = kernel_basis(&diffs[k - 1]);
            let mut m = IntMatrix::zeros(rows, cols);
            for j in 0..cols {
                if ker.cols() == 0 {
                    break;
                }
                for _attempt in 0..4 {
                    let coeffs: Vec<Int> = (0..ker.cols()).map(|_| int(rng.random_range(-1i64..=1))).collect();
                    let col = ker.mul_vec(&coeffs);
                    if col.iter().all(|v| *v <= int(shape.bound) && *v >= int(-shape.bound)) {
                        for (i, v) in col.into_iter().enumerate() {
                            m.set(i, j, v);
                        }
                        break;
                    }
                }
            }
            m
        };
        diffs.push(m);
    }
    ChainComplex::new(0, ranks, diffs).expect("kernel columns give d∘d = 0")
}

/// `K(C)` for a random `C`, in a random unimodular basis on every level.
pub fn group(rng: &mut Rng, shape: ComplexShape, trunc: usize) -> SimplicialAbGroup {
    let c = complex(rng, shape);
    let k = dold_kan_k(&c, trunc);
    let bases: Vec<IntMatrix> = (0..=trunc).map(|n| unimodular(rng, k.rank(n))).collect();
    k.conjugate(&bases).expect("unimodular bases")
}

/// A random element of level `n`.
pub fn element(rng: &mut Rng, a: &SimplicialAbGroup, n: usize, bound: i64) -> Vec<Int> {
    (0..a.rank(n)).map(|_| int(rng.random_range(-bound..=bound))).collect()
}

/// A compatible horn `Λⁿ_k`: the faces `∂_i x`, `i ≠ k`, of a random `x`.
pub fn horn(rng: &mut Rng, a: &SimplicialAbGroup, max_n: usize) -> (usize, usize, Vec<Vec<Int>>) {
    let n = rng.random_range(1..=max_n.min(a.trunc_dim()));
    let k = rng.random_range(0..=n);
    let x = element(rng, a, n, 3);
    let faces = (0..=n).filter(|&i| i != k).map(|i| a.face(n, i).mul_vec(&x)).collect();
    (n, k, faces)
}

/// Size limits for random simplicial sets of dimension ≤ 2.
#[derive(Clone, Copy, Debug)]
pub struct SpaceShape {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
}

impl SpaceShape {
    pub const SMALL: SpaceShape = SpaceShape { vertices: 3, edges: 4, triangles: 3 };
}

/// A simplicial set of dimension ≤ 2: random edges between random
/// vertices (loops allowed), then triangles whose three faces are chosen
/// among the edges (or degenerate vertices) with matching endpoints.
/// Pointed at `v0` when `pointed`.
pub fn space(rng: &mut Rng, shape: SpaceShape, pointed: bool) -> SimplicialSet {
    let mut b = SimplicialSet::builder();
    let nv = rng.random_range(1..=shape.vertices);
    let verts: Vec<Cell> = (0..nv).map(|i| b.add_cell(0, format!("v{}", i), Vec::new()).expect("fresh")).collect();
    let ne = rng.random_range(0..=shape.edges);
    // (source, target, cell)
    let mut edges: Vec<(usize, usize, Cell)> = Vec::new();
    for e in 0..ne {
        let s = rng.random_range(0..nv);
        let t = rng.random_range(0..nv);
        let c = b
            .add_cell(1, format!("e{}", e), vec![SimplexRef::nondeg(verts[t]), SimplexRef::nondeg(verts[s])])
            .expect("fresh");
        edges.push((s, t, c));
    }
    let nt = if ne == 0 { 0 } else { rng.random_range(0..=shape.triangles) };
    let mut made = 0;
    for _attempt in 0..8 * shape.triangles {
        if made == nt {
            break;
        }
        let (a, bb, c) = (rng.random_range(0..nv), rng.random_range(0..nv), rng.random_range(0..nv));
        let mut pick = |s: usize, t: usize| -> Option<SimplexRef> {
            let mut options: Vec<SimplexRef> =
                edges.iter().filter(|e| e.0 == s && e.1 == t).map(|e| SimplexRef::nondeg(e.2)).collect();
            if s == t {
                options.push(SimplexRef::degenerate_vertex(verts[s], 1));
            }
            if options.is_empty() {
                None
            } else {
                Some(options.swap_remove(rng.random_range(0..options.len())))
            }
        };
        let (Some(f0), Some(f1), Some(f2)) = (pick(bb, c), pick(a, c), pick(a, bb)) else {
            continue;
        };
        if [&f0, &f1, &f2].iter().all(|f| !f.is_nondegenerate()) {
            continue;
        }
        b.add_cell(2, format!("t{}", made), vec![f0, f1, f2]).expect("fresh");
        made += 1;
    }
    if pointed {
        b.set_basepoint("v0");
    }
    b.build().expect("faces agree on shared vertices")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexes_are_valid_and_reproducible() {
        for i in 0..50 {
            let a = complex(&mut case_rng(7, "c", i), ComplexShape::SMALL);
            let b = complex(&mut case_rng(7, "c", i), ComplexShape::SMALL);
            assert_eq!(a, b);
            assert!(a.max_deg() <= 3);
        }
    }

    #[test]
    fn unimodular_is_unimodular() {
        let mut r = rng(1);
        for n in 0..6 {
            assert!(unimodular(&mut r, n).is_unimodular());
        }
    }

    #[test]
    fn random_spaces_validate() {
        for i in 0..40 {
            let x = space(&mut case_rng(0, "s", i), SpaceShape::SMALL, i % 2 == 0);
            assert!(x.validate().is_ok());
            assert!(x.top_dim().unwrap_or(0) <= 2);
        }
    }

    #[test]
    fn groups_and_horns() {
        let mut r = rng(3);
        let a = group(&mut r, ComplexShape { max_deg: 2, max_rank: 2, bound: 3 }, 3);
        assert!(a.validate().is_ok());
        let (n, k, faces) = horn(&mut r, &a, 3);
        assert!(k <= n && faces.len() == n);
    }
}
