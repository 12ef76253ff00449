//! Constructions on bounded complexes: shifts, truncations, sums, tensor
//! and Hom complexes, mapping cones and homotopy classes of chain maps.

use super::complex::{ChainComplex, ChainMap};
use super::homology::{homology, induced_map, is_isomorphism, HomologyGroup, HomologyPresentation};
use super::matrix::{Int, IntMatrix};
use super::snf;
use crate::error::{Error, Result};

fn sign(n: i64) -> Int {
    if n.rem_euclid(2) == 0 {
        Int::ONE
    } else {
        -Int::ONE
    }
}

/// `C[p]`: `rank_{C[p]}(n) = rank_C(n − p)` and `d_{C[p]} = (−1)^p d_C`.
pub fn shift(c: &ChainComplex, p: i64) -> ChainComplex {
    let s = sign(p);
    let ranks: Vec<usize> = c.degrees().map(|n| c.rank(n)).collect();
    let diffs = c.degrees().map(|n| c.d(n).scale(&s)).collect();
    ChainComplex::new_unchecked(c.min_deg() + p, ranks, diffs).expect("shift preserves shapes")
}

/// Good truncation `τ≥n C` together with its inclusion into `C`.
pub fn truncate_good_with_inclusion(c: &ChainComplex, n: i64) -> (ChainComplex, ChainMap) {
    if n <= c.min_deg() {
        return (c.clone(), ChainMap::identity(c));
    }
    if n > c.max_deg() {
        let z = ChainComplex::zero_at(n);
        let inc = ChainMap::zero(&z, c);
        return (z, inc);
    }
    let kernel = snf::kernel_basis(&c.d(n));
    let k = kernel.cols();
    let top = c.max_deg();
    let mut ranks = vec![k];
    let mut diffs = vec![IntMatrix::zeros(0, k)];
    for m in n + 1..=top {
        ranks.push(c.rank(m));
        if m == n + 1 {
            let coords = snf::solve(&kernel, &c.d(m)).expect("boundaries lie in the kernel");
            diffs.push(coords);
        } else {
            diffs.push(c.d(m));
        }
    }
    let t = ChainComplex::new_unchecked(n, ranks, diffs).expect("shapes are consistent");
    let inc = ChainMap::new(t.clone(), c.clone(), |m| if m == n { kernel.clone() } else { IntMatrix::identity(c.rank(m)) })
        .expect("kernel inclusion is a chain map");
    (t, inc)
}

/// Good truncation `τ≥n C`: `C` above `n`, `ker d(n)` in degree `n`, zero below.
pub fn truncate_good(c: &ChainComplex, n: i64) -> ChainComplex {
    truncate_good_with_inclusion(c, n).0
}

/// Stupid truncation `σ≤n C`: `C` in degrees `≤ n`, zero above. This is a
/// subcomplex of `C`.
pub fn truncate_stupid(c: &ChainComplex, n: i64) -> ChainComplex {
    if n >= c.max_deg() {
        return c.clone();
    }
    if n < c.min_deg() {
        return ChainComplex::zero_at(c.min_deg());
    }
    let ranks: Vec<usize> = (c.min_deg()..=n).map(|m| c.rank(m)).collect();
    let diffs = (c.min_deg()..=n).map(|m| c.d(m)).collect();
    ChainComplex::new_unchecked(c.min_deg(), ranks, diffs).expect("subcomplex shapes")
}

/// Inclusion `σ≤n C → C`.
pub fn stupid_inclusion(c: &ChainComplex, n: i64) -> ChainMap {
    let s = truncate_stupid(c, n);
    ChainMap::new(s, c.clone(), |m| if m <= n { IntMatrix::identity(c.rank(m)) } else { IntMatrix::zeros(c.rank(m), 0) })
        .expect("stupid truncation is a subcomplex")
}

pub fn direct_sum(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    let lo = a.min_deg().min(b.min_deg());
    let hi = a.max_deg().max(b.max_deg());
    let ranks: Vec<usize> = (lo..=hi).map(|n| a.rank(n) + b.rank(n)).collect();
    let diffs = (lo..=hi).map(|n| a.d(n).block_diag(&b.d(n))).collect();
    ChainComplex::new_unchecked(lo, ranks, diffs).expect("block shapes")
}

/// Offsets of the `(i, n − i)` blocks inside `(A⊗B)_n`, ordered by `i`.
pub(crate) fn tensor_blocks(a: &ChainComplex, b: &ChainComplex, n: i64) -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for i in a.degrees() {
        let j = n - i;
        let size = a.rank(i) * b.rank(j);
        if size > 0 {
            out.push((i, off));
            off += size;
        }
    }
    out
}

/// Graded tensor product with `d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db`. The basis
/// of `(A⊗B)_n` is the concatenation over `i` (ascending) of the Kronecker
/// bases of `A_i ⊗ B_{n−i}`.
pub fn tensor(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    let lo = a.min_deg() + b.min_deg();
    let hi = a.max_deg() + b.max_deg();
    let rank = |n: i64| a.degrees().map(|i| a.rank(i) * b.rank(n - i)).sum::<usize>();
    let ranks: Vec<usize> = (lo..=hi).map(rank).collect();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let mut m = IntMatrix::zeros(rank(n - 1), rank(n));
        let src = tensor_blocks(a, b, n);
        let dst = tensor_blocks(a, b, n - 1);
        let offset_of = |i: i64| dst.iter().find(|(k, _)| *k == i).map(|(_, o)| *o);
        for &(i, off) in &src {
            let j = n - i;
            // da ⊗ b lands in block (i−1, j)
            if let Some(o) = offset_of(i - 1) {
                let blk = a.d(i).kronecker(&IntMatrix::identity(b.rank(j)));
                m.paste(o, off, &blk);
            }
            // (−1)^i a ⊗ db lands in block (i, j−1)
            if let Some(o) = offset_of(i) {
                let blk = IntMatrix::identity(a.rank(i)).kronecker(&b.d(j)).scale(&sign(i));
                m.paste(o, off, &blk);
            }
        }
        diffs.push(m);
    }
    ChainComplex::new_unchecked(lo, ranks, diffs).expect("tensor shapes")
}

/// Layout of `Hom_n(K, L) = ∏_i Hom(K_i, L_{i+n})`: for each `i` with a
/// nonzero block, `(i, offset)`; matrices are flattened row-major.
pub(crate) fn hom_blocks(k: &ChainComplex, l: &ChainComplex, n: i64) -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for i in k.degrees() {
        let size = l.rank(i + n) * k.rank(i);
        if size > 0 {
            out.push((i, off));
            off += size;
        }
    }
    out
}

fn hom_rank(k: &ChainComplex, l: &ChainComplex, n: i64) -> usize {
    k.degrees().map(|i| l.rank(i + n) * k.rank(i)).sum()
}

/// `Hom•(K, L)` with `(df) = d_L∘f − (−1)^n f∘d_K` for `f` of degree `n`.
pub fn hom_complex(k: &ChainComplex, l: &ChainComplex) -> ChainComplex {
    let lo = l.min_deg() - k.max_deg();
    let hi = l.max_deg() - k.min_deg();
    let ranks: Vec<usize> = (lo..=hi).map(|n| hom_rank(k, l, n)).collect();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let mut m = IntMatrix::zeros(hom_rank(k, l, n - 1), hom_rank(k, l, n));
        let src = hom_blocks(k, l, n);
        let dst = hom_blocks(k, l, n - 1);
        let offset_of = |i: i64| dst.iter().find(|(q, _)| *q == i).map(|(_, o)| *o);
        let s = -sign(n);
        for &(i, off) in &src {
            let rows_l = l.rank(i + n);
            let cols_k = k.rank(i);
            let dl = l.d(i + n);
            let dk = k.d(i + 1);
            for r in 0..rows_l {
                for c in 0..cols_k {
                    let col = off + r * cols_k + c;
                    // d_L ∘ E_rc : K_i → L_{i+n−1}
                    if let Some(o) = offset_of(i) {
                        for r2 in 0..dl.rows() {
                            let v = dl.get(r2, r);
                            if !v.is_zero() {
                                m.set(o + r2 * cols_k + c, col, v.clone());
                            }
                        }
                    }
                    // −(−1)^n E_rc ∘ d_K : K_{i+1} → L_{i+n}
                    if let Some(o) = offset_of(i + 1) {
                        let cols_k1 = k.rank(i + 1);
                        for c2 in 0..cols_k1 {
                            let v = dk.get(c, c2);
                            if !v.is_zero() {
                                let idx = o + r * cols_k1 + c2;
                                let cur = m.get(idx, col).clone();
                                m.set(idx, col, cur + &s * v);
                            }
                        }
                    }
                }
            }
        }
        diffs.push(m);
    }
    ChainComplex::new_unchecked(lo, ranks, diffs).expect("hom shapes")
}

/// Precomposition `g^*: Hom•(K, L) → Hom•(K', L)` for a chain map `g: K' → K`.
pub fn hom_precompose(g: &ChainMap, l: &ChainComplex) -> ChainMap {
    let k = g.target();
    let kp = g.source();
    let src = hom_complex(k, l);
    let tgt = hom_complex(kp, l);
    ChainMap::new(src.clone(), tgt.clone(), |n| {
        let mut m = IntMatrix::zeros(tgt.rank(n), src.rank(n));
        let sblocks = hom_blocks(k, l, n);
        let tblocks = hom_blocks(kp, l, n);
        for &(i, soff) in &sblocks {
            let Some(&(_, toff)) = tblocks.iter().find(|(q, _)| *q == i) else { continue };
            let gi = g.component(i);
            let rows_l = l.rank(i + n);
            let cols_k = k.rank(i);
            let cols_kp = kp.rank(i);
            for r in 0..rows_l {
                for c in 0..cols_k {
                    for c2 in 0..cols_kp {
                        let v = gi.get(c, c2);
                        if !v.is_zero() {
                            m.set(toff + r * cols_kp + c2, soff + r * cols_k + c, v.clone());
                        }
                    }
                }
            }
        }
        m
    })
    .expect("precomposition with a chain map is a chain map")
}

/// Chain maps `K → L` modulo chain homotopy: `H₀(Hom•(K, L))`.
pub fn homotopy_class_group(k: &ChainComplex, l: &ChainComplex) -> HomologyGroup {
    homology(&hom_complex(k, l), 0)
}

/// Mapping cone: `cone_n = C_{n−1} ⊕ C'_n`, `d(x, y) = (−dx, f x + dy)`.
pub fn mapping_cone(f: &ChainMap) -> ChainComplex {
    let c = f.source();
    let t = f.target();
    let lo = (c.min_deg() + 1).min(t.min_deg());
    let hi = (c.max_deg() + 1).max(t.max_deg());
    let rank = |n: i64| c.rank(n - 1) + t.rank(n);
    let ranks: Vec<usize> = (lo..=hi).map(rank).collect();
    let diffs = (lo..=hi)
        .map(|n| {
            let mut m = IntMatrix::zeros(rank(n - 1), rank(n));
            let a = c.rank(n - 2);
            m.paste(0, 0, &-&c.d(n - 1));
            m.paste(a, 0, &f.component(n - 1));
            m.paste(a, c.rank(n - 1), &t.d(n));
            m
        })
        .collect();
    ChainComplex::new_unchecked(lo, ranks, diffs).expect("cone shapes")
}

/// Per-degree verdict of [`check_quasi_iso`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: i64,
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    /// Induced map in generator coordinates (target gens × source gens).
    pub induced: IntMatrix,
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub degrees: Vec<DegreeVerdict>,
}

impl QuasiIsoReport {
    pub fn is_quasi_iso(&self) -> bool {
        self.degrees.iter().all(|d| d.iso)
    }
}

/// Per-degree check that `f_*` is an isomorphism on homology, restricted to
/// the given degrees.
pub fn quasi_iso_report_in(f: &ChainMap, degrees: impl IntoIterator<Item = i64>) -> QuasiIsoReport {
    let degrees = degrees
        .into_iter()
        .map(|n| {
            let sp = HomologyPresentation::new(f.source(), n);
            let tp = HomologyPresentation::new(f.target(), n);
            let induced = induced_map(f, n, &sp, &tp);
            let iso = is_isomorphism(&induced, &sp, &tp);
            DegreeVerdict { degree: n, source: sp.group(), target: tp.group(), induced, iso }
        })
        .collect();
    QuasiIsoReport { degrees }
}

/// True iff `f` induces isomorphisms on homology in every degree.
pub fn check_quasi_iso(f: &ChainMap) -> Result<(bool, QuasiIsoReport)> {
    f.validate()?;
    let lo = f.source().min_deg().min(f.target().min_deg());
    let hi = f.source().max_deg().max(f.target().max_deg());
    let report = quasi_iso_report_in(f, lo..=hi);
    Ok((report.is_quasi_iso(), report))
}

/// Builds a chain map from explicit components, checking shapes and
/// commutation.
pub fn chain_map(source: &ChainComplex, target: &ChainComplex, components: &[(i64, IntMatrix)]) -> Result<ChainMap> {
    for (n, m) in components {
        if m.shape() != (target.rank(*n), source.rank(*n)) {
            return Err(Error::Shape(format!("component {} has the wrong shape", n)));
        }
    }
    ChainMap::new(source.clone(), target.clone(), |n| {
        components
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| IntMatrix::zeros(target.rank(n), source.rank(n)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::matrix::int;

    fn times_two() -> ChainComplex {
        ChainComplex::two_term(1, IntMatrix::from_i64(1, 1, &[2]))
    }

    fn z_at(n: i64) -> ChainComplex {
        ChainComplex::concentrated(n, 1)
    }

    #[test]
    fn shift_examples() {
        let c = times_two();
        assert_eq!(shift(&c, 0), c);
        assert_eq!(shift(&shift(&c, 5), -5), c);
        let s = shift(&z_at(0), 3);
        for n in -2..6 {
            assert_eq!(homology(&s, n).free_rank, usize::from(n == 3));
        }
        assert_eq!(shift(&c, 1).d(2), IntMatrix::from_i64(1, 1, &[-2]));
    }

    #[test]
    fn good_truncation_examples() {
        let c = ChainComplex::from_fn(0, 2, &[1, 1, 1], |_| None).unwrap();
        assert_eq!(truncate_good(&c, 0), c);
        let id = ChainComplex::two_term(0, IntMatrix::identity(1));
        assert!(truncate_good(&id, 0).is_zero());
        assert!(truncate_good(&times_two(), 1).is_zero());
    }

    #[test]
    fn stupid_truncation_examples() {
        let c = times_two();
        assert_eq!(truncate_stupid(&c, c.max_deg()), c);
        assert!(truncate_stupid(&c, -1).is_zero());
        let s = truncate_stupid(&c, 0);
        assert_eq!((s.min_deg(), s.max_deg(), s.rank(0)), (0, 0, 1));
        assert!(s.d(0).is_zero());
    }

    #[test]
    fn tensor_examples() {
        let c = times_two();
        assert_eq!(tensor(&c, &z_at(0)), c);
        let t = tensor(&z_at(2), &z_at(3));
        assert_eq!((t.min_deg(), t.max_deg(), t.rank(5)), (5, 5, 1));
        let mm = tensor(&c, &c);
        let z2 = HomologyGroup { free_rank: 0, torsion: vec![int(2)] };
        assert_eq!(homology(&mm, 0), z2);
        assert_eq!(homology(&mm, 1), z2);
        assert!(homology(&mm, 2).is_zero());
    }

    #[test]
    fn hom_examples() {
        let h = hom_complex(&z_at(0), &z_at(0));
        assert_eq!((h.min_deg(), h.max_deg(), h.rank(0)), (0, 0, 1));
        // direct expansion: Hom_0 = Hom(K0, L0), Hom_-1 = Hom(K1, L0),
        // (df)_1 = −(−1)^0 f_0 ∘ d_K = −2 f_0
        let h = hom_complex(&times_two(), &z_at(0));
        assert_eq!(h.rank(0), 1);
        assert_eq!(h.rank(-1), 1);
        assert_eq!(h.d(0), IntMatrix::from_i64(1, 1, &[-2]));
        let sum = direct_sum(&times_two(), &z_at(1));
        let hs = hom_complex(&sum, &z_at(0));
        let ha = hom_complex(&times_two(), &z_at(0));
        let hb = hom_complex(&z_at(1), &z_at(0));
        for n in -3..3 {
            assert_eq!(hs.rank(n), ha.rank(n) + hb.rank(n));
        }
    }

    #[test]
    fn homotopy_classes() {
        assert_eq!(homotopy_class_group(&z_at(0), &z_at(0)), HomologyGroup::free(1));
        assert!(homotopy_class_group(&times_two(), &z_at(0)).is_zero());
        let k = direct_sum(&z_at(0), &z_at(1));
        let l = ChainComplex::from_fn(0, 1, &[1, 1], |_| None).unwrap();
        let single = homotopy_class_group(&k, &l);
        let double = homotopy_class_group(&direct_sum(&k, &k), &l);
        assert_eq!(double, single.sum(&single));
    }

    #[test]
    fn quasi_iso_examples() {
        let c = times_two();
        assert!(check_quasi_iso(&ChainMap::identity(&c)).unwrap().0);
        let z = ChainMap::zero(&c, &c);
        assert!(!check_quasi_iso(&z).unwrap().0);
        let d = ChainComplex::from_fn(-1, 1, &[1, 1, 1], |n| (n == 0).then(|| IntMatrix::from_i64(1, 1, &[3]))).unwrap();
        let (t, inc) = truncate_good_with_inclusion(&d, 0);
        let rep = quasi_iso_report_in(&inc, 0..=1);
        assert!(rep.is_quasi_iso());
        for n in 0..=1 {
            assert_eq!(homology(&t, n), homology(&d, n));
        }
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = times_two();
        let cone = mapping_cone(&ChainMap::identity(&c));
        for n in cone.degrees() {
            assert!(homology(&cone, n).is_zero());
        }
    }
}
