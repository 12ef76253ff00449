use std::fmt;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Bounded, homologically graded complex of finitely generated free abelian
/// groups. The differential `d(n)` maps degree `n` to degree `n − 1` and is
/// stored as a `rank(n−1) × rank(n)` matrix.
///
/// Construction checks shapes and `d(n−1)·d(n) = 0`, so every value of this
/// type is a genuine complex.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    min: i64,
    ranks: Vec<usize>,
    // d[k] is the differential out of degree min + k
    d: Vec<IntMatrix>,
}

impl ChainComplex {
    /// `ranks[k]` is the rank in degree `min + k`; `diffs[k]` is the
    /// differential out of that degree. `diffs[0]` must have zero rows.
    pub fn new(min: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(min, ranks, diffs)?;
        c.check_dd()?;
        Ok(c)
    }

    /// Shape-checked construction that skips the `d∘d = 0` test. Only used
    /// where the identity holds by construction or is verified afterwards.
    pub(crate) fn new_unchecked(min: i64, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Shape("a complex needs at least one degree".into()));
        }
        if diffs.len() != ranks.len() {
            return Err(Error::Shape(format!(
                "{} differentials supplied for {} degrees",
                diffs.len(),
                ranks.len()
            )));
        }
        for (k, m) in diffs.iter().enumerate() {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            if m.shape() != (below, ranks[k]) {
                return Err(Error::Shape(format!(
                    "d({}) has shape {}x{}, expected {}x{}",
                    min + k as i64,
                    m.rows(),
                    m.cols(),
                    below,
                    ranks[k]
                )));
            }
        }
        Ok(ChainComplex { min, ranks, d: diffs })
    }

    /// Builds a complex from its ranks in `min..=max` and a differential
    /// lookup; missing differentials are zero.
    pub fn from_fn(min: i64, max: i64, ranks: &[usize], mut d: impl FnMut(i64) -> Option<IntMatrix>) -> Result<Self> {
        if max < min {
            return Err(Error::Parameter(format!("max degree {} below min degree {}", max, min)));
        }
        let len = (max - min + 1) as usize;
        if ranks.len() != len {
            return Err(Error::Shape(format!("{} ranks for {} degrees", ranks.len(), len)));
        }
        let diffs = (0..len)
            .map(|k| {
                let below = if k == 0 { 0 } else { ranks[k - 1] };
                d(min + k as i64).unwrap_or_else(|| IntMatrix::zeros(below, ranks[k]))
            })
            .collect();
        Self::new(min, ranks.to_vec(), diffs)
    }

    pub(crate) fn check_dd(&self) -> Result<()> {
        for k in 1..self.ranks.len() {
            let n = self.min + k as i64;
            if !(&self.d[k - 1] * &self.d[k]).is_zero() {
                return Err(Error::Identity(format!("d({})·d({}) ≠ 0", n - 1, n)));
            }
        }
        Ok(())
    }

    /// The zero complex placed in degree `deg`.
    pub fn zero_at(deg: i64) -> Self {
        ChainComplex { min: deg, ranks: vec![0], d: vec![IntMatrix::zeros(0, 0)] }
    }

    /// `Z^rank` concentrated in a single degree.
    pub fn concentrated(deg: i64, rank: usize) -> Self {
        ChainComplex { min: deg, ranks: vec![rank], d: vec![IntMatrix::zeros(0, rank)] }
    }

    /// Two-term complex `Z^cols --m--> Z^rows` in degrees `deg, deg − 1`.
    pub fn two_term(deg: i64, m: IntMatrix) -> Self {
        let (r, c) = m.shape();
        ChainComplex { min: deg - 1, ranks: vec![r, c], d: vec![IntMatrix::zeros(0, r), m] }
    }

    pub fn min_deg(&self) -> i64 {
        self.min
    }

    pub fn max_deg(&self) -> i64 {
        self.min + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_deg()..=self.max_deg()
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.min || n > self.max_deg() {
            0
        } else {
            self.ranks[(n - self.min) as usize]
        }
    }

    /// Differential out of degree `n` (zero matrix of the right shape
    /// outside the stored range).
    pub fn d(&self, n: i64) -> IntMatrix {
        if n < self.min || n > self.max_deg() {
            IntMatrix::zeros(self.rank(n - 1), self.rank(n))
        } else {
            self.d[(n - self.min) as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// Lowest and highest degrees with nonzero rank, if any.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.degrees().find(|&n| self.rank(n) > 0)?;
        let hi = self.degrees().rev().find(|&n| self.rank(n) > 0)?;
        Some((lo, hi))
    }

    /// Same complex re-indexed over a wider degree range.
    pub fn widen(&self, min: i64, max: i64) -> ChainComplex {
        let min = min.min(self.min);
        let max = max.max(self.max_deg());
        let ranks: Vec<usize> = (min..=max).map(|n| self.rank(n)).collect();
        let d = (min..=max).map(|n| self.d(n)).collect();
        ChainComplex { min, ranks, d }
    }

    /// Euler characteristic Σ (−1)ⁿ rank(n).
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64).sum()
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ChainComplex[{}..={}]", self.min_deg(), self.max_deg())?;
        for n in self.degrees() {
            writeln!(f, "  C{} = Z^{}  d = {}", n, self.rank(n), self.d(n))?;
        }
        Ok(())
    }
}

/// Degreewise matrices commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    // indexed by source degree
    components: Vec<IntMatrix>,
}

impl ChainMap {
    /// `component(n)` must have shape `target.rank(n) × source.rank(n)`.
    pub fn new(source: ChainComplex, target: ChainComplex, mut component: impl FnMut(i64) -> IntMatrix) -> Result<Self> {
        let components: Vec<IntMatrix> = source.degrees().map(&mut component).collect();
        let map = ChainMap { source, target, components };
        map.validate()?;
        Ok(map)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = c.degrees().map(|n| IntMatrix::identity(c.rank(n))).collect();
        ChainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        let components = source.degrees().map(|n| IntMatrix::zeros(target.rank(n), source.rank(n))).collect();
        ChainMap { source: source.clone(), target: target.clone(), components }
    }

    /// Checks component shapes and `target.d(n)·f(n) = f(n−1)·source.d(n)`.
    pub fn validate(&self) -> Result<()> {
        for n in self.source.degrees() {
            let f = self.component(n);
            let want = (self.target.rank(n), self.source.rank(n));
            if f.shape() != want {
                return Err(Error::Shape(format!(
                    "component {} has shape {}x{}, expected {}x{}",
                    n,
                    f.rows(),
                    f.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        for n in self.source.min_deg()..=self.source.max_deg() + 1 {
            let lhs = &self.target.d(n) * &self.component(n);
            let rhs = &self.component(n - 1) * &self.source.d(n);
            if lhs != rhs {
                return Err(Error::Identity(format!("chain map does not commute with d in degree {}", n)));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> IntMatrix {
        if n < self.source.min_deg() || n > self.source.max_deg() {
            IntMatrix::zeros(self.target.rank(n), self.source.rank(n))
        } else {
            self.components[(n - self.source.min_deg()) as usize].clone()
        }
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::Shape("composable chain maps need matching middle complex".into()));
        }
        ChainMap::new(first.source.clone(), self.target.clone(), |n| &self.component(n) * &first.component(n))
    }
}
