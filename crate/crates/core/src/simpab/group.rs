use crate::chain::IntMatrix;
use crate::delta;
use crate::error::{Error, Result};

/// Levelwise free simplicial abelian group truncated at dimension `D`.
/// Elements of level `n` are integer column vectors of length `rank(n)`;
/// structure maps act by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialAbGroup {
    trunc: usize,
    ranks: Vec<usize>,
    // face[n][i]: level n → n−1 (empty for n = 0)
    face: Vec<Vec<IntMatrix>>,
    // degen[n][j]: level n → n+1, for n < D
    degen: Vec<Vec<IntMatrix>>,
}

impl SimplicialAbGroup {
    /// `face[n]` lists `∂_0..∂_n` for every `n ≤ D` (empty at `n = 0`);
    /// `degen[n]` lists `s_0..s_n` for every `n < D`.
    pub fn new(trunc: usize, ranks: Vec<usize>, face: Vec<Vec<IntMatrix>>, degen: Vec<Vec<IntMatrix>>) -> Result<Self> {
        let a = Self::new_unchecked(trunc, ranks, face, degen)?;
        a.validate()?;
        Ok(a)
    }

    pub(crate) fn new_unchecked(trunc: usize, ranks: Vec<usize>, face: Vec<Vec<IntMatrix>>, degen: Vec<Vec<IntMatrix>>) -> Result<Self> {
        if ranks.len() != trunc + 1 || face.len() != trunc + 1 || degen.len() != trunc {
            return Err(Error::Shape(format!("levels 0..={} need matching ranks, faces and degeneracies", trunc)));
        }
        for n in 0..=trunc {
            let want = if n == 0 { 0 } else { n + 1 };
            if face[n].len() != want {
                return Err(Error::Shape(format!("level {} needs {} face maps", n, want)));
            }
            for (i, m) in face[n].iter().enumerate() {
                if m.shape() != (ranks[n - 1], ranks[n]) {
                    return Err(Error::Shape(format!("face ∂_{} on level {} has the wrong shape", i, n)));
                }
            }
            if n < trunc {
                if degen[n].len() != n + 1 {
                    return Err(Error::Shape(format!("level {} needs {} degeneracies", n, n + 1)));
                }
                for (j, m) in degen[n].iter().enumerate() {
                    if m.shape() != (ranks[n + 1], ranks[n]) {
                        return Err(Error::Shape(format!("degeneracy s_{} on level {} has the wrong shape", j, n)));
                    }
                }
            }
        }
        Ok(SimplicialAbGroup { trunc, ranks, face, degen })
    }

    /// Checks every simplicial identity up to dimension `D`.
    pub fn validate(&self) -> Result<()> {
        let fail = |what: String| Err(Error::Identity(what));
        for n in 2..=self.trunc {
            for j in 1..=n {
                for i in 0..j {
                    if &self.face[n - 1][i] * &self.face[n][j] != &self.face[n - 1][j - 1] * &self.face[n][i] {
                        return fail(format!("∂_{}∂_{} = ∂_{}∂_{} on level {}", i, j, j - 1, i, n));
                    }
                }
            }
        }
        for n in 0..self.trunc.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    if &self.degen[n + 1][i] * &self.degen[n][j] != &self.degen[n + 1][j + 1] * &self.degen[n][i] {
                        return fail(format!("s_{}s_{} = s_{}s_{} on level {}", i, j, j + 1, i, n));
                    }
                }
            }
        }
        for n in 0..self.trunc {
            // ∂_i s_j on level n
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = &self.face[n + 1][i] * &self.degen[n][j];
                    let rhs = if i == j || i == j + 1 {
                        IntMatrix::identity(self.ranks[n])
                    } else if i < j {
                        &self.degen[n - 1][j - 1] * &self.face[n][i]
                    } else {
                        &self.degen[n - 1][j] * &self.face[n][i - 1]
                    };
                    if lhs != rhs {
                        return fail(format!("∂_{}s_{} on level {}", i, j, n));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trunc_dim(&self) -> usize {
        self.trunc
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn face(&self, n: usize, i: usize) -> &IntMatrix {
        &self.face[n][i]
    }

    pub fn degen(&self, n: usize, j: usize) -> &IntMatrix {
        &self.degen[n][j]
    }

    /// Constant simplicial group on `Z^rank`.
    pub fn constant(rank: usize, trunc: usize) -> Self {
        let id = IntMatrix::identity(rank);
        let face = (0..=trunc).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect();
        let degen = (0..trunc).map(|n| vec![id.clone(); n + 1]).collect();
        Self::new_unchecked(trunc, vec![rank; trunc + 1], face, degen).expect("constant shapes")
    }

    pub fn zero(trunc: usize) -> Self {
        Self::constant(0, trunc)
    }

    /// The same group with a lower truncation.
    pub fn truncate(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc);
        Self::new_unchecked(t, self.ranks[..=t].to_vec(), self.face[..=t].to_vec(), self.degen[..t].to_vec())
            .expect("prefix of valid data")
    }

    /// Matrix of `α^*: A_n → A_m` for a monotone `α: [m] → [n]`.
    pub fn monotone_matrix(&self, alpha: &[usize], n: usize) -> Result<IntMatrix> {
        let m = alpha.len() - 1;
        if m > self.trunc || n > self.trunc || alpha.iter().any(|&v| v > n) || !delta::is_monotone(alpha) {
            return Err(Error::Range(format!("operator [{}] → [{}] outside the truncation {}", m, n, self.trunc)));
        }
        let (tau, eps) = delta::epi_mono(alpha);
        let mut mat = IntMatrix::identity(self.ranks[n]);
        let mut cur = n;
        for &i in delta::missed(&eps, n).iter().rev() {
            mat = &self.face[cur][i] * &mat;
            cur -= 1;
        }
        for &j in delta::word_of(&tau).iter().rev() {
            mat = &self.degen[cur][j] * &mat;
            cur += 1;
        }
        Ok(mat)
    }

    /// Levelwise tensor product, truncated at the smaller `D`.
    pub fn tensor(&self, other: &SimplicialAbGroup) -> SimplicialAbGroup {
        let t = self.trunc.min(other.trunc);
        let ranks = (0..=t).map(|n| self.ranks[n] * other.ranks[n]).collect();
        let face = (0..=t).map(|n| (0..self.face[n].len()).map(|i| self.face[n][i].kronecker(&other.face[n][i])).collect()).collect();
        let degen = (0..t).map(|n| (0..=n).map(|j| self.degen[n][j].kronecker(&other.degen[n][j])).collect()).collect();
        Self::new_unchecked(t, ranks, face, degen).expect("tensor shapes")
    }

    /// `B⁻¹·A·B` on every structure map, for unimodular level bases `B_n`.
    pub fn conjugate(&self, bases: &[IntMatrix]) -> Result<SimplicialAbGroup> {
        if bases.len() != self.trunc + 1 {
            return Err(Error::Shape("one basis change per level is needed".into()));
        }
        let inv: Vec<IntMatrix> = bases
            .iter()
            .map(|b| crate::chain::snf::unimodular_inverse(b).ok_or_else(|| Error::Parameter("basis change is not unimodular".into())))
            .collect::<Result<_>>()?;
        let face = (0..=self.trunc)
            .map(|n| self.face[n].iter().map(|m| &(&inv[n - 1] * m) * &bases[n]).collect())
            .collect();
        let degen = (0..self.trunc)
            .map(|n| self.degen[n].iter().map(|m| &(&inv[n + 1] * m) * &bases[n]).collect())
            .collect();
        Self::new(self.trunc, self.ranks.clone(), face, degen)
    }

    /// `Σ(−1)^i ∂_i` on level `n ≥ 1`.
    pub fn alternating_face_sum(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rank(n - 1), self.rank(n));
        for (i, f) in self.face[n].iter().enumerate() {
            m = if i % 2 == 0 { &m + f } else { &m - f };
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_is_valid() {
        let a = SimplicialAbGroup::constant(2, 4);
        assert!(a.validate().is_ok());
        let s = delta::surjection_from_collapse(3, &[0, 2]);
        assert!(a.monotone_matrix(&s, 1).unwrap().is_identity());
    }

    #[test]
    fn broken_identity_detected() {
        let mut a = SimplicialAbGroup::constant(1, 2);
        a.face[1][0] = IntMatrix::from_i64(1, 1, &[2]);
        assert!(matches!(a.validate(), Err(Error::Identity(_))));
    }
}
