use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::delta;
use crate::error::{Error, Result};

/// A nondegenerate cell: dimension and position in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub dim: usize,
    pub index: usize,
}

impl Cell {
    pub fn new(dim: usize, index: usize) -> Self {
        Cell { dim, index }
    }
}

/// A simplex in Eilenberg–Zilber normal form: `s_{i₁}⋯s_{i_k}(base)` with
/// `i₁ > ⋯ > i_k`. The word equals the collapse set of the underlying
/// surjection, listed in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub word: Vec<usize>,
    pub base: Cell,
}

impl SimplexRef {
    pub fn nondeg(base: Cell) -> Self {
        SimplexRef { word: Vec::new(), base }
    }

    /// Checked constructor: the word must be strictly decreasing and fit
    /// the resulting dimension.
    pub fn new(word: Vec<usize>, base: Cell) -> Result<Self> {
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Parameter(format!("degeneracy word {:?} is not strictly decreasing", word)));
        }
        let dim = base.dim + word.len();
        if word.first().is_some_and(|&i| i >= dim) {
            return Err(Error::Parameter(format!("degeneracy index {} out of range in dimension {}", word[0], dim)));
        }
        Ok(SimplexRef { word, base })
    }

    /// `s_{n−1}⋯s_0 v`: the vertex `v` degenerated to dimension `n`.
    pub fn degenerate_vertex(v: Cell, n: usize) -> Self {
        debug_assert_eq!(v.dim, 0);
        SimplexRef { word: (0..n).rev().collect(), base: v }
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.word.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_empty()
    }

    /// The surjection `[dim] ↠ [base.dim]` as a value vector.
    pub fn surjection(&self) -> Vec<usize> {
        let mut c = self.word.clone();
        c.reverse();
        delta::surjection_from_collapse(self.dim(), &c)
    }

    pub fn from_surjection(s: &[usize], base: Cell) -> Self {
        SimplexRef { word: delta::word_of(s), base }
    }

    /// Pullback along a surjection `σ: [m] ↠ [dim]`.
    pub fn degenerate_by(&self, sigma: &[usize]) -> Self {
        let s = delta::compose(&self.surjection(), sigma);
        SimplexRef::from_surjection(&s, self.base)
    }

    /// Degeneracy `s_j`; needs no face data.
    pub fn degeneracy(&self, j: usize) -> Result<Self> {
        let n = self.dim();
        if j > n {
            return Err(Error::Parameter(format!("degeneracy s{} out of range in dimension {}", j, n)));
        }
        Ok(self.degenerate_by(&delta::codegeneracy(n, j)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Face(usize),
    Degeneracy(usize),
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
    basepoint: Option<usize>,
}

/// Finite simplicial set given by nondegenerate cells with faces in normal
/// form. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct SimplicialSet {
    inner: Arc<Inner>,
    lookup: Arc<HashMap<String, Cell>>,
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for SimplicialSet {}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialSet(cells {:?}", self.cell_counts())?;
        if let Some(b) = self.basepoint() {
            write!(f, ", base {}", self.name(b))?;
        }
        write!(f, ")")
    }
}

/// Incremental construction; cells must be added after their faces.
#[derive(Default)]
pub struct SimplicialSetBuilder {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
    lookup: HashMap<String, Cell>,
    basepoint: Option<String>,
}

impl SimplicialSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_cell(&mut self, dim: usize, name: impl Into<String>, faces: Vec<SimplexRef>) -> Result<Cell> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::Parameter(format!("cell name {:?} must be nonempty without whitespace", name)));
        }
        if self.lookup.contains_key(&name) {
            return Err(Error::Parameter(format!("duplicate cell name {}", name)));
        }
        let want = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != want {
            return Err(Error::Shape(format!("cell {} of dimension {} needs {} faces, got {}", name, dim, want, faces.len())));
        }
        for (i, f) in faces.iter().enumerate() {
            if f.dim() + 1 != dim {
                return Err(Error::Shape(format!("face d{} of {} has dimension {}, expected {}", i, name, f.dim(), dim - 1)));
            }
            let known = self.names.get(f.base.dim).is_some_and(|v| f.base.index < v.len());
            if !known {
                return Err(Error::Parameter(format!("face d{} of {} references an unknown cell", i, name)));
            }
        }
        while self.names.len() <= dim {
            self.names.push(Vec::new());
            self.faces.push(Vec::new());
        }
        let cell = Cell::new(dim, self.names[dim].len());
        self.names[dim].push(name.clone());
        self.faces[dim].push(faces);
        self.lookup.insert(name, cell);
        Ok(cell)
    }

    pub fn cell(&self, name: &str) -> Option<Cell> {
        self.lookup.get(name).copied()
    }

    pub fn set_basepoint(&mut self, name: &str) {
        self.basepoint = Some(name.to_string());
    }

    /// Validates the simplicial identities on every stored cell.
    pub fn build(self) -> Result<SimplicialSet> {
        let x = self.build_unchecked()?;
        x.validate()?;
        Ok(x)
    }

    pub(crate) fn build_unchecked(mut self) -> Result<SimplicialSet> {
        while self.names.last().is_some_and(|v| v.is_empty()) {
            self.names.pop();
            self.faces.pop();
        }
        let basepoint = match &self.basepoint {
            None => None,
            Some(b) => match self.lookup.get(b) {
                Some(c) if c.dim == 0 => Some(c.index),
                Some(_) => return Err(Error::Parameter(format!("basepoint {} is not a 0-cell", b))),
                None => return Err(Error::Parameter(format!("basepoint {} is not a cell", b))),
            },
        };
        Ok(SimplicialSet {
            inner: Arc::new(Inner { names: self.names, faces: self.faces, basepoint }),
            lookup: Arc::new(self.lookup),
        })
    }
}

impl SimplicialSet {
    pub fn builder() -> SimplicialSetBuilder {
        SimplicialSetBuilder::new()
    }

    pub fn empty() -> Self {
        SimplicialSetBuilder::new().build_unchecked().expect("empty set")
    }

    pub fn is_pointed(&self) -> bool {
        self.inner.basepoint.is_some()
    }

    pub fn basepoint(&self) -> Option<Cell> {
        self.inner.basepoint.map(|i| Cell::new(0, i))
    }

    pub(crate) fn require_pointed(&self, what: &str) -> Result<Cell> {
        self.basepoint().ok_or_else(|| Error::Precondition(format!("{} needs a pointed simplicial set", what)))
    }

    /// Degenerate basepoint in dimension `n`.
    pub fn base_simplex(&self, n: usize) -> Option<SimplexRef> {
        self.basepoint().map(|b| SimplexRef::degenerate_vertex(b, n))
    }

    /// Highest dimension with a nondegenerate cell.
    pub fn top_dim(&self) -> Option<usize> {
        self.inner.names.len().checked_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.inner.names.get(dim).map_or(0, Vec::len)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.inner.names.iter().map(Vec::len).collect()
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.count(dim)).map(move |i| Cell::new(dim, i))
    }

    pub fn all_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.inner.names.len()).flat_map(move |d| self.cells(d))
    }

    pub fn name(&self, c: Cell) -> &str {
        &self.inner.names[c.dim][c.index]
    }

    pub fn cell(&self, name: &str) -> Option<Cell> {
        self.lookup.get(name).copied()
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.index < self.count(c.dim)
    }

    /// Stored faces of a nondegenerate cell (empty for vertices).
    pub fn faces_of(&self, c: Cell) -> &[SimplexRef] {
        &self.inner.faces[c.dim][c.index]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cell_counts().iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Face `d_i` of an arbitrary simplex, in normal form.
    pub fn face(&self, s: &SimplexRef, i: usize) -> Result<SimplexRef> {
        self.check_ref(s)?;
        let n = s.dim();
        if n == 0 || i > n {
            return Err(Error::Parameter(format!("face d{} out of range in dimension {}", i, n)));
        }
        Ok(self.face_raw(s, i))
    }

    pub fn degeneracy(&self, s: &SimplexRef, j: usize) -> Result<SimplexRef> {
        self.check_ref(s)?;
        s.degeneracy(j)
    }

    pub fn apply_operator(&self, s: &SimplexRef, op: Operator) -> Result<SimplexRef> {
        match op {
            Operator::Face(i) => self.face(s, i),
            Operator::Degeneracy(j) => self.degeneracy(s, j),
        }
    }

    pub(crate) fn check_ref(&self, s: &SimplexRef) -> Result<()> {
        if !self.contains(s.base) {
            return Err(Error::Parameter(format!("simplex references unknown cell {:?}", s.base)));
        }
        SimplexRef::new(s.word.clone(), s.base).map(|_| ())
    }

    /// `d_i` by commuting the face through the degeneracy word: the
    /// composite `θ∘δ_i` factors as `ε∘τ`; `τ` survives as the new word
    /// and `ε` is evaluated on the base cell through stored faces.
    pub(crate) fn face_raw(&self, s: &SimplexRef, i: usize) -> SimplexRef {
        let n = s.dim();
        let f = delta::compose(&s.surjection(), &delta::coface(n, i));
        let (tau, eps) = delta::epi_mono(&f);
        if eps.len() == s.base.dim + 1 {
            return SimplexRef::from_surjection(&tau, s.base);
        }
        self.restrict(s.base, &eps).degenerate_by(&tau)
    }

    /// `α^* s` for a monotone `α: [m] → [dim s]`.
    pub fn apply_monotone(&self, s: &SimplexRef, alpha: &[usize]) -> SimplexRef {
        let f = delta::compose(&s.surjection(), alpha);
        let (tau, eps) = delta::epi_mono(&f);
        self.restrict(s.base, &eps).degenerate_by(&tau)
    }

    /// `ε^* x` for a nondegenerate cell `x` and an injection `ε` into
    /// `[dim x]`.
    pub(crate) fn restrict(&self, x: Cell, eps: &[usize]) -> SimplexRef {
        let missing = delta::missed(eps, x.dim);
        let Some((&last, rest)) = missing.split_last() else {
            return SimplexRef::nondeg(x);
        };
        let mut y = self.faces_of(x)[last].clone();
        for &j in rest.iter().rev() {
            y = self.face_raw(&y, j);
        }
        y
    }

    /// Iterated face to the vertex `k` of a simplex.
    pub fn vertex(&self, s: &SimplexRef, k: usize) -> Cell {
        let v = s.surjection()[k];
        self.restrict(s.base, &[v]).base
    }

    /// Source `d₁` and target `d₀` of an edge.
    pub fn endpoints(&self, s: &SimplexRef) -> (Cell, Cell) {
        (self.vertex(s, 0), self.vertex(s, 1))
    }

    /// Checks `d_i d_j = d_{j−1} d_i` for `i < j` on every cell.
    pub fn validate(&self) -> Result<()> {
        for c in self.all_cells() {
            if c.dim < 2 {
                continue;
            }
            let x = SimplexRef::nondeg(c);
            for j in 0..=c.dim {
                let dj = self.face_raw(&x, j);
                for i in 0..j {
                    let lhs = self.face_raw(&dj, i);
                    let rhs = self.face_raw(&self.face_raw(&x, i), j - 1);
                    if lhs != rhs {
                        return Err(Error::Identity(format!(
                            "d{} d{} = d{} d{} fails on cell {}",
                            i,
                            j,
                            j - 1,
                            i,
                            self.name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// All `n`-simplices: base dimension ascending, cells in declaration
    /// order, collapse sets lexicographic.
    pub fn simplices(&self, n: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for p in 0..=n.min(self.top_dim().unwrap_or(0)) {
            if self.count(p) == 0 {
                continue;
            }
            let subsets = delta::subsets(n, n - p);
            for c in self.cells(p) {
                for s in &subsets {
                    let mut word = s.clone();
                    word.reverse();
                    out.push(SimplexRef { word, base: c });
                }
            }
        }
        out
    }

    /// Renders `s1 s0 v3`, or the bare name for a nondegenerate cell.
    pub fn format_ref(&self, s: &SimplexRef) -> String {
        let mut parts: Vec<String> = s.word.iter().map(|i| format!("s{}", i)).collect();
        parts.push(self.name(s.base).to_string());
        parts.join(" ")
    }

    pub fn parse_ref(&self, text: &str) -> Result<SimplexRef> {
        parse_ref_with(text, |n| self.cell(n))
    }
}

pub(crate) fn parse_ref_with(text: &str, lookup: impl Fn(&str) -> Option<Cell>) -> Result<SimplexRef> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let Some((name, ops)) = tokens.split_last() else {
        return Err(Error::Parse("empty simplex reference".into()));
    };
    let mut word = Vec::with_capacity(ops.len());
    for t in ops {
        let idx = t
            .strip_prefix('s')
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad degeneracy token {:?} in {:?}", t, text)))?;
        word.push(idx);
    }
    let base = lookup(name).ok_or_else(|| Error::Parse(format!("unknown cell {:?} in {:?}", name, text)))?;
    SimplexRef::new(word, base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialSet {
        let mut b = SimplicialSet::builder();
        let v: Vec<Cell> = (0..3).map(|i| b.add_cell(0, format!("v{}", i), vec![]).unwrap()).collect();
        let e = |s: usize, t: usize| vec![SimplexRef::nondeg(v[t]), SimplexRef::nondeg(v[s])];
        let e01 = b.add_cell(1, "e01", e(0, 1)).unwrap();
        let e02 = b.add_cell(1, "e02", e(0, 2)).unwrap();
        let e12 = b.add_cell(1, "e12", e(1, 2)).unwrap();
        b.add_cell(2, "t", vec![SimplexRef::nondeg(e12), SimplexRef::nondeg(e02), SimplexRef::nondeg(e01)]).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn degeneracy_then_face() {
        let x = triangle();
        let v = SimplexRef::nondeg(Cell::new(0, 0));
        let s0v = x.degeneracy(&v, 0).unwrap();
        assert_eq!(s0v.word, vec![0]);
        assert_eq!(x.face(&s0v, 1).unwrap(), v);
        assert_eq!(x.face(&s0v, 0).unwrap(), v);
        let ss = x.degeneracy(&s0v, 0).unwrap();
        assert_eq!(ss.word, vec![1, 0]);
    }

    #[test]
    fn faces_of_degenerate_triangle() {
        let x = triangle();
        let t = SimplexRef::nondeg(Cell::new(2, 0));
        let s1t = x.degeneracy(&t, 1).unwrap();
        assert_eq!(x.face(&s1t, 1).unwrap(), t);
        assert_eq!(x.face(&s1t, 2).unwrap(), t);
        // d0 s1 = s0 d0
        let d0t = x.face(&t, 0).unwrap();
        assert_eq!(x.face(&s1t, 0).unwrap(), d0t.degeneracy(0).unwrap());
        // d3 s1 = s1 d2
        let d2t = x.face(&t, 2).unwrap();
        assert_eq!(x.face(&s1t, 3).unwrap(), d2t.degeneracy(1).unwrap());
    }

    #[test]
    fn vertices_and_endpoints() {
        let x = triangle();
        let t = SimplexRef::nondeg(Cell::new(2, 0));
        let names: Vec<&str> = (0..3).map(|k| x.name(x.vertex(&t, k))).collect();
        assert_eq!(names, vec!["v0", "v1", "v2"]);
        let e02 = SimplexRef::nondeg(Cell::new(1, 1));
        let (s, tt) = x.endpoints(&e02);
        assert_eq!((x.name(s), x.name(tt)), ("v0", "v2"));
    }

    #[test]
    fn bad_identities_rejected() {
        let mut b = SimplicialSet::builder();
        let v0 = b.add_cell(0, "a", vec![]).unwrap();
        let v1 = b.add_cell(0, "b", vec![]).unwrap();
        let e = b.add_cell(1, "e", vec![SimplexRef::nondeg(v1), SimplexRef::nondeg(v0)]).unwrap();
        let s0a = SimplexRef::degenerate_vertex(v0, 1);
        // d0 d1 = d0 d0 forces d0 of the d1-face to match d0 of the d0-face
        b.add_cell(2, "t", vec![SimplexRef::nondeg(e), s0a.clone(), s0a]).unwrap();
        assert!(matches!(b.build(), Err(Error::Identity(_))));
    }

    #[test]
    fn parse_and_format() {
        let x = triangle();
        let s = x.parse_ref("s1 s0 v2").unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(x.format_ref(&s), "s1 s0 v2");
        assert!(x.parse_ref("s0 s1 v2").is_err());
        assert!(x.parse_ref("s0 nope").is_err());
        assert_eq!(x.simplices(2).len(), 3 + 3 * 2 + 1);
    }
}
