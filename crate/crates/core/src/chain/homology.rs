use std::fmt;

use serde::{Deserialize, Serialize};

use super::complex::{ChainComplex, ChainMap};
use super::matrix::{Int, IntMatrix};
use super::snf::{self, invariant_factors};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k` with
/// `t₁ | t₂ | …` and every `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    #[serde(with = "torsion_serde")]
    pub torsion: Vec<Int>,
}

mod torsion_serde {
    use super::Int;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(t: &[Int], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(t.iter().map(|v| v.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| s.parse::<Int>().map_err(serde::de::Error::custom)).collect()
    }
}

impl HomologyGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonical form from arbitrary cyclic orders: drops units, merges into
    /// the invariant-factor chain. An order of `0` contributes a free summand.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[Int]) -> Self {
        let mut free = free_rank;
        let mut finite = Vec::new();
        for o in orders {
            let a = abs(o);
            if a.is_zero() {
                free += 1;
            } else if !a.is_one() {
                finite.push(a);
            }
        }
        let diag = IntMatrix::diagonal(finite.len(), finite.len(), &finite);
        let torsion = invariant_factors(&diag).into_iter().filter(|v| !v.is_one()).collect();
        HomologyGroup { free_rank: free, torsion }
    }

    /// Cokernel of an integer matrix `Z^cols → Z^rows`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let f = invariant_factors(m);
        let free = m.rows() - f.len();
        HomologyGroup { free_rank: free, torsion: f.into_iter().filter(|v| !v.is_one()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, in canonical form.
    pub fn sum(&self, other: &HomologyGroup) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        Self::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }

    pub fn torsion_i64(&self) -> Vec<i64> {
        self.torsion.iter().map(|t| i64::try_from(t).unwrap_or(i64::MAX)).collect()
    }
}

impl fmt::Display for HomologyGroup {
    /// `0`, `Z`, `Z^r`, `Z/d`, joined with ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

pub(crate) fn abs(v: &Int) -> Int {
    if v.sign() == dashu_int::Sign::Negative {
        -v
    } else {
        v.clone()
    }
}

/// `H_n(C) = ker d(n) / im d(n+1)`. Zero outside the complex.
pub fn homology(c: &ChainComplex, n: i64) -> HomologyGroup {
    let rank = c.rank(n);
    if rank == 0 {
        return HomologyGroup::zero();
    }
    let out = c.d(n);
    let (r, _v, v_inv) = snf::right_reduction(&out);
    let k = rank - r;
    if k == 0 {
        return HomologyGroup::zero();
    }
    let tail: Vec<usize> = (r..rank).collect();
    let coords = &v_inv.select_rows(&tail) * &c.d(n + 1);
    let f = invariant_factors(&coords);
    HomologyGroup { free_rank: k - f.len(), torsion: f.into_iter().filter(|v| !v.is_one()).collect() }
}

/// Homology in every degree of the complex.
pub fn homology_all(c: &ChainComplex) -> Vec<(i64, HomologyGroup)> {
    c.degrees().map(|n| (n, homology(c, n))).collect()
}

/// Homology group with explicit generating cycles and a coordinate map,
/// used to compute induced maps.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    pub degree: i64,
    /// Generating cycles as columns (ambient rank × generator count).
    pub generators: IntMatrix,
    /// `Some(d)` for a `Z/d` generator, `None` for a free one.
    pub orders: Vec<Option<Int>>,
    // kernel coordinates → generator coordinates
    coord_map: IntMatrix,
    // ambient chains → kernel coordinates
    kernel_coords: IntMatrix,
}

impl HomologyPresentation {
    pub fn new(c: &ChainComplex, n: i64) -> Self {
        let rank = c.rank(n);
        let (r, v, v_inv) = snf::right_reduction(&c.d(n));
        let tail: Vec<usize> = (r..rank).collect();
        let kernel = v.select_cols(&tail);
        let kernel_coords = v_inv.select_rows(&tail);
        let rel = &kernel_coords * &c.d(n + 1);
        let s = snf::smith(&rel);
        let k = tail.len();
        let mut picked = Vec::new();
        let mut orders = Vec::new();
        for j in 0..k {
            if j < s.rank {
                let dj = s.d.get(j, j);
                if !dj.is_one() {
                    picked.push(j);
                    orders.push(Some(dj.clone()));
                }
            } else {
                picked.push(j);
                orders.push(None);
            }
        }
        let generators = (&kernel * &s.u_inv).select_cols(&picked);
        let coord_map = s.u.select_rows(&picked);
        HomologyPresentation { degree: n, generators, orders, coord_map, kernel_coords }
    }

    pub fn group(&self) -> HomologyGroup {
        let free = self.orders.iter().filter(|o| o.is_none()).count();
        let torsion = self.orders.iter().flatten().cloned().collect();
        HomologyGroup { free_rank: free, torsion }
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    /// Coordinates of a cycle in terms of the generators, torsion
    /// coordinates reduced into `[0, d)`.
    pub fn coordinates(&self, cycle: &[Int]) -> Vec<Int> {
        let kc = self.kernel_coords.mul_vec(cycle);
        let mut out = self.coord_map.mul_vec(&kc);
        for (x, o) in out.iter_mut().zip(&self.orders) {
            if let Some(d) = o {
                let r = &*x % d;
                *x = if r.sign() == dashu_int::Sign::Negative { r + d } else { r };
            }
        }
        out
    }

    /// Relation matrix of the presentation: `diag(order)` with `0` for free
    /// generators.
    pub fn relations(&self) -> IntMatrix {
        let diag: Vec<Int> = self.orders.iter().map(|o| o.clone().unwrap_or(Int::ZERO)).collect();
        IntMatrix::diagonal(diag.len(), diag.len(), &diag)
    }
}

/// Matrix of `f_*: H_n(source) → H_n(target)` in generator coordinates.
pub fn induced_map(f: &ChainMap, n: i64, src: &HomologyPresentation, tgt: &HomologyPresentation) -> IntMatrix {
    let fm = f.component(n);
    let images = &fm * &src.generators;
    let mut out = IntMatrix::zeros(tgt.generator_count(), src.generator_count());
    for j in 0..src.generator_count() {
        let coords = tgt.coordinates(&images.col(j));
        for (i, v) in coords.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

/// Whether a homomorphism between finitely generated abelian groups, given
/// by its matrix in generator coordinates, is an isomorphism. A surjection
/// between isomorphic finitely generated abelian groups is injective, so it
/// suffices to compare the groups and test surjectivity.
pub fn is_isomorphism(map: &IntMatrix, src: &HomologyPresentation, tgt: &HomologyPresentation) -> bool {
    if src.group() != tgt.group() {
        return false;
    }
    let g = tgt.generator_count();
    if g == 0 {
        return true;
    }
    let span = map.hstack(&tgt.relations());
    let f = invariant_factors(&span);
    f.len() == g && f.iter().all(|v| v.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::matrix::int;

    #[test]
    fn multiplication_by_two() {
        let c = ChainComplex::two_term(1, IntMatrix::from_i64(1, 1, &[2]));
        assert_eq!(homology(&c, 0), HomologyGroup { free_rank: 0, torsion: vec![int(2)] });
        assert!(homology(&c, 1).is_zero());
        assert!(homology(&c, 7).is_zero());
        assert!(homology(&c, -1).is_zero());
    }

    #[test]
    fn zero_differentials_give_ranks() {
        let c = ChainComplex::from_fn(0, 2, &[1, 2, 1], |_| None).unwrap();
        let ranks: Vec<usize> = (0..=2).map(|n| homology(&c, n).free_rank).collect();
        assert_eq!(ranks, vec![1, 2, 1]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(HomologyGroup::zero().to_string(), "0");
        assert_eq!(HomologyGroup::free(1).to_string(), "Z");
        assert_eq!(HomologyGroup::from_cyclic_orders(2, &[int(2), int(3), int(1)]).to_string(), "Z^2 + Z/6");
    }

    #[test]
    fn canonical_torsion() {
        let g = HomologyGroup::from_cyclic_orders(0, &[int(4), int(6)]);
        assert_eq!(g.torsion, vec![int(2), int(12)]);
    }

    #[test]
    fn presentation_coordinates() {
        let c = ChainComplex::two_term(1, IntMatrix::from_i64(1, 1, &[3]));
        let p = HomologyPresentation::new(&c, 0);
        assert_eq!(p.group(), HomologyGroup { free_rank: 0, torsion: vec![int(3)] });
        let gen = p.generators.col(0);
        assert_eq!(p.coordinates(&gen), vec![int(1)]);
    }
}
