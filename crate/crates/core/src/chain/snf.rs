//! Smith normal form over the integers.
//!
//! Elimination picks the entry of least absolute value as pivot, clears its
//! row and column by Euclidean steps, and enforces the divisibility chain by
//! folding offending rows into the pivot row. Transform matrices and their
//! inverses are maintained incrementally so that kernels, images and
//! integer solutions can be read off without a separate inversion.

use super::matrix::{Int, IntMatrix};

/// `d = u · m · v` with `u`, `v` unimodular and `d` diagonal, `d₁ | d₂ | …`,
/// all diagonal entries nonnegative. `u_inv` and `v_inv` are the exact
/// inverses of `u` and `v`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Transforms {
    fwd: IntMatrix,
    inv: IntMatrix,
}

struct Calc {
    a: IntMatrix,
    left: Option<Transforms>,
    right: Option<Transforms>,
}

impl Calc {
    fn new(m: &IntMatrix, track_left: bool, track_right: bool) -> Self {
        let (r, c) = m.shape();
        let mk = |n| Transforms { fwd: IntMatrix::identity(n), inv: IntMatrix::identity(n) };
        Calc { a: m.clone(), left: track_left.then(|| mk(r)), right: track_right.then(|| mk(c)) }
    }

    // row[t] += q * row[s]
    fn row_add(&mut self, t: usize, s: usize, q: &Int) {
        self.a.add_row_multiple(t, s, q);
        if let Some(l) = &mut self.left {
            l.fwd.add_row_multiple(t, s, q);
            l.inv.add_col_multiple(s, t, &-q);
        }
    }

    // col[t] += q * col[s]
    fn col_add(&mut self, t: usize, s: usize, q: &Int) {
        self.a.add_col_multiple(t, s, q);
        if let Some(r) = &mut self.right {
            r.fwd.add_col_multiple(t, s, q);
            r.inv.add_row_multiple(s, t, &-q);
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(l) = &mut self.left {
            l.fwd.swap_rows(i, j);
            l.inv.swap_cols(i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(r) = &mut self.right {
            r.fwd.swap_cols(i, j);
            r.inv.swap_rows(i, j);
        }
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(l) = &mut self.left {
            l.fwd.negate_row(i);
            l.inv.negate_col(i);
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (rows, cols) = self.a.shape();
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let abs = if v.sign() == dashu_int::Sign::Negative { -v } else { v.clone() };
                if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                    let one = abs.is_one();
                    best = Some((i, j, abs));
                    if one {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> usize {
        let (rows, cols) = self.a.shape();
        let n = rows.min(cols);
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else {
                    return t;
                };
                self.row_swap(t, pi);
                self.col_swap(t, pj);
                let pivot = self.a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = self.a.get(i, t) / &pivot;
                    self.row_add(i, t, &-q);
                    if !self.a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    if self.a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = self.a.get(t, j) / &pivot;
                    self.col_add(j, t, &-q);
                    if !self.a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(self.a.get(i, j) % &pivot).is_zero()));
                match offender {
                    Some(i) => self.row_add(t, i, &Int::ONE),
                    None => break,
                }
            }
            if self.a.get(t, t).sign() == dashu_int::Sign::Negative {
                self.row_negate(t);
            }
        }
        n
    }
}

fn rank_of_diagonal(d: &IntMatrix) -> usize {
    let n = d.rows().min(d.cols());
    (0..n).take_while(|&i| !d.get(i, i).is_zero()).count()
}

/// Full Smith decomposition with both transforms and their inverses.
pub fn smith(m: &IntMatrix) -> SmithForm {
    let mut calc = Calc::new(m, true, true);
    calc.run();
    let rank = rank_of_diagonal(&calc.a);
    let left = calc.left.expect("tracked");
    let right = calc.right.expect("tracked");
    SmithForm { u: left.fwd, u_inv: left.inv, d: calc.a, v: right.fwd, v_inv: right.inv, rank }
}

/// `(U, D, V)` with `D = U·M·V`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith(m);
    (s.u, s.d, s.v)
}

/// Nonzero invariant factors of `m` (diagonal of its Smith form), computed
/// without tracking transforms.
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    let mut calc = Calc::new(m, false, false);
    calc.run();
    let r = rank_of_diagonal(&calc.a);
    (0..r).map(|i| calc.a.get(i, i).clone()).collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    invariant_factors(m).len()
}

/// Right-side reduction only: returns `(rank, v, v_inv)`; the last
/// `cols - rank` columns of `v` form a saturated basis of the kernel.
pub(crate) fn right_reduction(m: &IntMatrix) -> (usize, IntMatrix, IntMatrix) {
    let mut calc = Calc::new(m, false, true);
    calc.run();
    let r = rank_of_diagonal(&calc.a);
    let right = calc.right.expect("tracked");
    (r, right.fwd, right.inv)
}

/// A basis of `{x : m·x = 0}` as the columns of the returned matrix. The
/// basis spans a saturated sublattice (a direct summand of `Z^cols`).
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (r, v, _) = right_reduction(m);
    let cols: Vec<usize> = (r..m.cols()).collect();
    v.select_cols(&cols)
}

/// A basis of the column space lattice of `m`.
pub fn image_basis(m: &IntMatrix) -> IntMatrix {
    let s = smith(m);
    let mut b = IntMatrix::zeros(m.rows(), s.rank);
    for j in 0..s.rank {
        let dj = s.d.get(j, j);
        for i in 0..m.rows() {
            b.set(i, j, s.u_inv.get(i, j) * dj);
        }
    }
    b
}

/// Integer solution `x` of `a·x = b` (columnwise), if one exists.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve needs matching row counts");
    let s = smith(a);
    let ub = &s.u * b;
    let mut y = IntMatrix::zeros(a.cols(), b.cols());
    for i in 0..ub.rows() {
        for j in 0..b.cols() {
            let v = ub.get(i, j);
            if i < s.rank {
                let d = s.d.get(i, i);
                if !(v % d).is_zero() {
                    return None;
                }
                y.set(i, j, v / d);
            } else if !v.is_zero() {
                return None;
            }
        }
    }
    Some(&s.v * &y)
}

/// Inverse of a unimodular matrix, or `None` when the matrix is not
/// invertible over the integers.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if m.rows() != m.cols() {
        return None;
    }
    solve(m, &IntMatrix::identity(m.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::matrix::int;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!((&s.u * &s.u_inv).is_identity());
        assert!((&s.v * &s.v_inv).is_identity());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(3));
        assert!(s.d.is_identity());
    }

    #[test]
    fn zero_one_by_one() {
        let s = check(&IntMatrix::zeros(1, 1));
        assert_eq!(s.d, IntMatrix::zeros(1, 1));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(s.invariant_factors(), vec![int(2), int(4)]);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) must become diag(1, 6)
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.invariant_factors(), vec![int(1), int(6)]);
    }

    #[test]
    fn empty_shapes() {
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
        assert_eq!(kernel_basis(&IntMatrix::zeros(0, 3)).shape(), (3, 3));
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_i64(1, 3, &[2, 4, 6]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!((&m * &k).is_zero());
        let b = IntMatrix::from_i64(1, 1, &[4]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(&m * &x, b);
        assert!(solve(&m, &IntMatrix::from_i64(1, 1, &[3])).is_none());
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = IntMatrix::from_i64(2, 2, &[2, 1, 3, 2]);
        let inv = unimodular_inverse(&m).unwrap();
        assert!((&m * &inv).is_identity());
        assert!(unimodular_inverse(&IntMatrix::from_i64(1, 1, &[2])).is_none());
    }
}
