//! Finite multisimplicial sets (bisimplicial, trisimplicial, …) and their
//! diagonals.
//!
//! A multisimplex is stored as one degeneracy word per direction applied to
//! a multi-nondegenerate cell; operators in different directions commute,
//! so each direction is handled by the same normal-form calculus as for
//! simplicial sets. Every cell remembers its origin (a cell of the input
//! and one word per input direction), which survives partial diagonals and
//! gives the full diagonal order-independent names.

use std::collections::HashMap;

use super::set::{Cell, SimplexRef, SimplicialSet};
use crate::delta;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiRef {
    /// One descending degeneracy word per direction.
    pub words: Vec<Vec<usize>>,
    pub base: usize,
}

impl MultiRef {
    pub fn nondeg(arity: usize, base: usize) -> Self {
        MultiRef { words: vec![Vec::new(); arity], base }
    }
}

fn surj(word: &[usize], n: usize) -> Vec<usize> {
    let mut c = word.to_vec();
    c.reverse();
    delta::surjection_from_collapse(n, &c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Origin {
    base: usize,
    // one word per original direction
    words: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSimplicialSet {
    arity: usize,
    degrees: Vec<Vec<usize>>,
    names: Vec<String>,
    // faces[cell][direction][i]
    faces: Vec<Vec<Vec<MultiRef>>>,
    basepoint: Option<usize>,
    origins: Vec<Origin>,
    // original directions merged into each current direction
    groups: Vec<Vec<usize>>,
    original_names: Vec<String>,
}

/// Two directions: horizontal (0) and vertical (1).
pub type BisimplicialSet = MultiSimplicialSet;

pub struct MultiBuilder {
    set: MultiSimplicialSet,
    lookup: HashMap<String, usize>,
}

impl MultiBuilder {
    pub fn new(arity: usize) -> Self {
        MultiBuilder {
            set: MultiSimplicialSet {
                arity,
                degrees: Vec::new(),
                names: Vec::new(),
                faces: Vec::new(),
                basepoint: None,
                origins: Vec::new(),
                groups: (0..arity).map(|d| vec![d]).collect(),
                original_names: Vec::new(),
            },
            lookup: HashMap::new(),
        }
    }

    /// `faces[d]` lists the `degree[d] + 1` faces in direction `d` (empty
    /// when `degree[d] = 0`).
    pub fn add_cell(&mut self, degree: Vec<usize>, name: impl Into<String>, faces: Vec<Vec<MultiRef>>) -> Result<usize> {
        let name = name.into();
        let s = &mut self.set;
        if degree.len() != s.arity || faces.len() != s.arity {
            return Err(Error::Shape(format!("cell {} needs data for {} directions", name, s.arity)));
        }
        if self.lookup.contains_key(&name) {
            return Err(Error::Parameter(format!("duplicate cell name {}", name)));
        }
        for d in 0..s.arity {
            let want = if degree[d] == 0 { 0 } else { degree[d] + 1 };
            if faces[d].len() != want {
                return Err(Error::Shape(format!("cell {} needs {} faces in direction {}", name, want, d)));
            }
            for f in &faces[d] {
                if f.base >= s.degrees.len() || f.words.len() != s.arity {
                    return Err(Error::Parameter(format!("face of {} references an unknown cell", name)));
                }
                let fd = s.ref_degree(f);
                let mut expect = degree.clone();
                expect[d] -= 1;
                if fd != expect {
                    return Err(Error::Shape(format!("face of {} in direction {} has degree {:?}, expected {:?}", name, d, fd, expect)));
                }
            }
        }
        let idx = s.degrees.len();
        s.degrees.push(degree);
        s.names.push(name.clone());
        s.original_names.push(name.clone());
        s.faces.push(faces);
        s.origins.push(Origin { base: idx, words: vec![Vec::new(); s.arity] });
        self.lookup.insert(name, idx);
        Ok(idx)
    }

    pub fn set_basepoint(&mut self, cell: usize) {
        self.set.basepoint = Some(cell);
    }

    pub fn build(self) -> Result<MultiSimplicialSet> {
        self.set.validate()?;
        Ok(self.set)
    }
}

impl MultiSimplicialSet {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cell_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, cell: usize) -> &[usize] {
        &self.degrees[cell]
    }

    pub fn name(&self, cell: usize) -> &str {
        &self.names[cell]
    }

    pub fn ref_degree(&self, r: &MultiRef) -> Vec<usize> {
        self.degrees[r.base].iter().zip(&r.words).map(|(d, w)| d + w.len()).collect()
    }

    /// Face `d_i` in direction `dir`.
    pub fn face(&self, s: &MultiRef, dir: usize, i: usize) -> MultiRef {
        let deg = self.ref_degree(s);
        let n = deg[dir];
        let f = delta::compose(&surj(&s.words[dir], n), &delta::coface(n, i));
        let (tau, eps) = delta::epi_mono(&f);
        let p = self.degrees[s.base][dir];
        if eps.len() == p + 1 {
            let mut out = s.clone();
            out.words[dir] = delta::word_of(&tau);
            return out;
        }
        let y = self.restrict(s.base, dir, &eps);
        let ydeg = self.ref_degree(&y);
        let mut out = y.clone();
        for e in 0..self.arity {
            let outer = if e == dir { tau.clone() } else { surj(&s.words[e], deg[e]) };
            out.words[e] = delta::word_of(&delta::compose(&surj(&y.words[e], ydeg[e]), &outer));
        }
        out
    }

    fn restrict(&self, base: usize, dir: usize, eps: &[usize]) -> MultiRef {
        let missing = delta::missed(eps, self.degrees[base][dir]);
        let (&last, rest) = missing.split_last().expect("proper face");
        let mut y = self.faces[base][dir][last].clone();
        for &j in rest.iter().rev() {
            y = self.face(&y, dir, j);
        }
        y
    }

    /// Simplicial identities in each direction and commutation across
    /// directions, on every cell.
    pub fn validate(&self) -> Result<()> {
        for c in 0..self.cell_count() {
            let x = MultiRef::nondeg(self.arity, c);
            let deg = &self.degrees[c];
            for d in 0..self.arity {
                for j in 0..=deg[d] {
                    if deg[d] == 0 {
                        break;
                    }
                    let dj = self.face(&x, d, j);
                    for i in 0..j {
                        if deg[d] < 2 {
                            break;
                        }
                        if self.face(&dj, d, i) != self.face(&self.face(&x, d, i), d, j - 1) {
                            return Err(Error::Identity(format!("d{} d{} = d{} d{} fails in direction {} on {}", i, j, j - 1, i, d, self.names[c])));
                        }
                    }
                    for e in 0..self.arity {
                        if e == d || deg[e] == 0 {
                            continue;
                        }
                        for k in 0..=deg[e] {
                            if self.face(&dj, e, k) != self.face(&self.face(&x, e, k), d, j) {
                                return Err(Error::Identity(format!("faces in directions {} and {} do not commute on {}", d, e, self.names[c])));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn origin_name(&self, o: &Origin) -> String {
        let words: Vec<String> = o.words.iter().map(|w| w.iter().map(|i| format!("s{}", i)).collect::<String>()).collect();
        if words.iter().all(String::is_empty) {
            self.original_names[o.base].clone()
        } else {
            format!("({}){}", words.join("|"), self.original_names[o.base])
        }
    }

    /// Merges directions `a < b` into one (placed at `a`) by taking the
    /// diagonal in those two directions.
    pub fn merge(&self, a: usize, b: usize) -> Result<MultiSimplicialSet> {
        if a >= b || b >= self.arity {
            return Err(Error::Parameter(format!("cannot merge directions {} and {} of a {}-fold object", a, b, self.arity)));
        }
        let arity = self.arity - 1;
        let drop_b = |v: &[Vec<usize>]| -> Vec<Vec<usize>> {
            v.iter().enumerate().filter(|(e, _)| *e != b).map(|(_, w)| w.clone()).collect()
        };
        let mut out = MultiSimplicialSet {
            arity,
            degrees: Vec::new(),
            names: Vec::new(),
            faces: Vec::new(),
            basepoint: None,
            origins: Vec::new(),
            groups: Vec::new(),
            original_names: self.original_names.clone(),
        };
        for (e, g) in self.groups.iter().enumerate() {
            if e == a {
                let mut merged = g.clone();
                merged.extend(self.groups[b].iter().copied());
                merged.sort();
                out.groups.push(merged);
            } else if e != b {
                out.groups.push(g.clone());
            }
        }
        let mut index: HashMap<(usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();

        // normal form of an old multisimplex whose a- and b-degrees agree
        let normalize = |r: &MultiRef, index: &HashMap<(usize, Vec<usize>, Vec<usize>), usize>| -> MultiRef {
            let deg = self.ref_degree(r);
            let n = deg[a];
            let sa = surj(&r.words[a], n);
            let sb = surj(&r.words[b], n);
            let ia = delta::collapse_set(&sa);
            let ib = delta::collapse_set(&sb);
            let common: Vec<usize> = ia.iter().copied().filter(|t| ib.contains(t)).collect();
            let wa = delta::word_of(&delta::factor_through_collapse(&sa, &common));
            let wb = delta::word_of(&delta::factor_through_collapse(&sb, &common));
            let base = index[&(r.base, wa, wb)];
            let mut words = drop_b(&r.words);
            words[a] = common.into_iter().rev().collect();
            MultiRef { words, base }
        };

        // cells sorted by total merged degree so that faces exist first
        let mut todo: Vec<(usize, usize, Vec<usize>, Vec<usize>)> = Vec::new();
        for c in 0..self.cell_count() {
            let (p, q) = (self.degrees[c][a], self.degrees[c][b]);
            for n in p.max(q)..=p + q {
                for i in delta::subsets(n, n - p) {
                    for j in delta::subsets(n, n - q) {
                        if i.iter().any(|t| j.contains(t)) {
                            continue;
                        }
                        todo.push((n, c, i.iter().rev().copied().collect(), j.into_iter().rev().collect()));
                    }
                }
            }
        }
        let merged_degree = |c: usize, n: usize| -> Vec<usize> {
            let mut deg: Vec<usize> = self.degrees[c].iter().enumerate().filter(|(e, _)| *e != b).map(|(_, &d)| d).collect();
            deg[a] = n;
            deg
        };
        todo.sort_by_key(|(n, c, _, _)| (merged_degree(*c, *n).iter().sum::<usize>(), *c));
        for (n, c, wa, wb) in todo {
            let mut words = vec![Vec::new(); self.arity];
            words[a] = wa.clone();
            words[b] = wb.clone();
            let s = MultiRef { words, base: c };
            let sdeg = self.ref_degree(&s);
            let mut faces = Vec::with_capacity(arity);
            for e in 0..self.arity {
                if e == b {
                    continue;
                }
                if e == a {
                    faces.push(if n == 0 { Vec::new() } else { (0..=n).map(|k| normalize(&self.face(&self.face(&s, a, k), b, k), &index)).collect() });
                } else {
                    faces.push(if sdeg[e] == 0 { Vec::new() } else { (0..=sdeg[e]).map(|k| normalize(&self.face(&s, e, k), &index)).collect() });
                }
            }
            let o = &self.origins[c];
            let mut ow = o.words.clone();
            for (dirs, w) in [(&self.groups[a], &wa), (&self.groups[b], &wb)] {
                for &od in dirs {
                    let inner = &ow[od];
                    // the merged cell has dimension n − |w| before degenerating
                    let composed = delta::compose(&surj(inner, n - w.len()), &surj(w, n));
                    ow[od] = delta::word_of(&composed);
                }
            }
            let origin = Origin { base: o.base, words: ow };
            let idx = out.degrees.len();
            out.degrees.push(merged_degree(c, n));
            out.names.push(self.origin_name(&origin));
            out.faces.push(faces);
            out.origins.push(origin);
            if self.basepoint == Some(c) && n == 0 {
                out.basepoint = Some(idx);
            }
            index.insert((c, wa, wb), idx);
        }
        Ok(out)
    }

    /// The full diagonal, merging directions left to right.
    pub fn diagonal(&self) -> Result<SimplicialSet> {
        let mut cur = self.clone();
        while cur.arity > 1 {
            cur = cur.merge(0, 1)?;
        }
        cur.into_simplicial_set()
    }

    fn into_simplicial_set(self) -> Result<SimplicialSet> {
        if self.arity != 1 {
            return Err(Error::Shape("only one-directional objects are simplicial sets".into()));
        }
        let mut order: Vec<usize> = (0..self.cell_count()).collect();
        order.sort_by_key(|&c| (self.degrees[c][0], c));
        let mut b = SimplicialSet::builder();
        let mut cells: Vec<Option<Cell>> = vec![None; self.cell_count()];
        for c in order {
            let faces = self.faces[c]
                .first()
                .map(|fs| {
                    fs.iter()
                        .map(|f| SimplexRef { word: f.words[0].clone(), base: cells[f.base].expect("faces first") })
                        .collect()
                })
                .unwrap_or_default();
            cells[c] = Some(b.add_cell(self.degrees[c][0], self.names[c].clone(), faces)?);
        }
        if let Some(bp) = self.basepoint {
            b.set_basepoint(&self.names[bp]);
        }
        b.build()
    }

    /// Origin of a diagonal cell: the input cell and its degeneracy word in
    /// each input direction. Only meaningful after merging.
    pub fn origin_of_name(&self, name: &str) -> Option<(usize, Vec<Vec<usize>>)> {
        self.names.iter().position(|n| n == name).map(|i| (self.origins[i].base, self.origins[i].words.clone()))
    }
}

/// Diagonal cells of a bisimplicial set together with their origins
/// `(cell, horizontal word, vertical word)`, in the order of the diagonal's
/// cells.
pub fn diagonal_with_origins(b: &BisimplicialSet) -> Result<(SimplicialSet, HashMap<Cell, (usize, Vec<usize>, Vec<usize>)>)> {
    let merged = b.merge(0, 1)?;
    let diag = merged.clone().into_simplicial_set()?;
    let mut map = HashMap::new();
    for c in diag.all_cells() {
        let (base, words) = merged.origin_of_name(diag.name(c)).expect("diagonal cell has an origin");
        map.insert(c, (base, words[0].clone(), words[1].clone()));
    }
    Ok((diag, map))
}

/// Diagonal of a bisimplicial set.
pub fn diagonal(b: &BisimplicialSet) -> Result<SimplicialSet> {
    b.diagonal()
}

/// External product `X ⊠ Y` with `(X ⊠ Y)_{p,q} = X_p × Y_q`.
pub fn external_product(x: &SimplicialSet, y: &SimplicialSet) -> Result<BisimplicialSet> {
    let mut b = MultiBuilder::new(2);
    let mut index: HashMap<(Cell, Cell), usize> = HashMap::new();
    let mut pairs: Vec<(Cell, Cell)> = x.all_cells().flat_map(|a| y.all_cells().map(move |c| (a, c))).collect();
    pairs.sort_by_key(|(a, c)| (a.dim + c.dim, *a, *c));
    for (a, c) in pairs {
        let hf = x
            .faces_of(a)
            .iter()
            .map(|f| MultiRef { words: vec![f.word.clone(), Vec::new()], base: index[&(f.base, c)] })
            .collect();
        let vf = y
            .faces_of(c)
            .iter()
            .map(|f| MultiRef { words: vec![Vec::new(), f.word.clone()], base: index[&(a, f.base)] })
            .collect();
        let idx = b.add_cell(vec![a.dim, c.dim], format!("<{},{}>", x.name(a), y.name(c)), vec![hf, vf])?;
        index.insert((a, c), idx);
    }
    if let (Some(bx), Some(by)) = (x.basepoint(), y.basepoint()) {
        b.set_basepoint(index[&(bx, by)]);
    }
    b.build()
}

/// Bisimplicial set constant in the vertical direction.
pub fn vertically_constant(x: &SimplicialSet) -> Result<BisimplicialSet> {
    let mut b = MultiBuilder::new(2);
    let mut index: HashMap<Cell, usize> = HashMap::new();
    for c in x.all_cells() {
        let hf = x.faces_of(c).iter().map(|f| MultiRef { words: vec![f.word.clone(), Vec::new()], base: index[&f.base] }).collect();
        let idx = b.add_cell(vec![c.dim, 0], x.name(c), vec![hf, Vec::new()])?;
        index.insert(c, idx);
    }
    if let Some(bp) = x.basepoint() {
        b.set_basepoint(index[&bp]);
    }
    b.build()
}

/// `X ⊠ Y ⊠ Z`, a trisimplicial set.
pub fn external_product3(x: &SimplicialSet, y: &SimplicialSet, z: &SimplicialSet) -> Result<MultiSimplicialSet> {
    let mut b = MultiBuilder::new(3);
    let mut index: HashMap<(Cell, Cell, Cell), usize> = HashMap::new();
    let mut triples: Vec<(Cell, Cell, Cell)> = Vec::new();
    for a in x.all_cells() {
        for c in y.all_cells() {
            for e in z.all_cells() {
                triples.push((a, c, e));
            }
        }
    }
    triples.sort_by_key(|(a, c, e)| (a.dim + c.dim + e.dim, *a, *c, *e));
    for (a, c, e) in triples {
        let f0 = x.faces_of(a).iter().map(|f| MultiRef { words: vec![f.word.clone(), vec![], vec![]], base: index[&(f.base, c, e)] }).collect();
        let f1 = y.faces_of(c).iter().map(|f| MultiRef { words: vec![vec![], f.word.clone(), vec![]], base: index[&(a, f.base, e)] }).collect();
        let f2 = z.faces_of(e).iter().map(|f| MultiRef { words: vec![vec![], vec![], f.word.clone()], base: index[&(a, c, f.base)] }).collect();
        let idx = b.add_cell(vec![a.dim, c.dim, e.dim], format!("<{},{},{}>", x.name(a), y.name(c), z.name(e)), vec![f0, f1, f2])?;
        index.insert((a, c, e), idx);
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::product::product;
    use crate::simpset::standard::{standard_space, StandardSpace::*};
    use crate::simpset::SimplicialMap;

    #[test]
    fn constant_diagonal_is_identity() {
        let x = standard_space(Boundary(3)).unwrap();
        let d = diagonal(&vertically_constant(&x).unwrap()).unwrap();
        assert_eq!(d.cell_counts(), x.cell_counts());
        for c in d.all_cells() {
            let name = d.name(c);
            let bare = name.rsplit(')').next().unwrap();
            assert_eq!(x.cell(bare).map(|xc| xc.dim), Some(c.dim));
        }
    }

    #[test]
    fn diagonal_of_external_product_is_product() {
        let x = standard_space(Simplex(1)).unwrap();
        let y = standard_space(Simplex(2)).unwrap();
        let ext = external_product(&x, &y).unwrap();
        let (d, origins) = diagonal_with_origins(&ext).unwrap();
        let p = product(&x, &y).unwrap();
        assert_eq!(d.cell_counts(), p.object.cell_counts());
        let cells: Vec<(Cell, Cell)> = {
            let mut v: Vec<(Cell, Cell)> = x.all_cells().flat_map(|a| y.all_cells().map(move |c| (a, c))).collect();
            v.sort_by_key(|(a, c)| (a.dim + c.dim, *a, *c));
            v
        };
        let iso = SimplicialMap::new(&d, &p.object, |c| {
            let (base, h, v) = &origins[&c];
            let (a, yc) = cells[*base];
            p.pair(&SimplexRef { word: h.clone(), base: a }, &SimplexRef { word: v.clone(), base: yc })
        })
        .unwrap();
        assert!(iso.is_isomorphism());
    }

    #[test]
    fn trisimplicial_diagonals_agree() {
        let x = standard_space(Simplex(1)).unwrap();
        let t = external_product3(&x, &x, &x).unwrap();
        let left = t.merge(0, 1).unwrap().merge(0, 1).unwrap().into_simplicial_set().unwrap();
        let right = t.merge(1, 2).unwrap().merge(0, 1).unwrap().into_simplicial_set().unwrap();
        assert_eq!(left.cell_counts(), right.cell_counts());
        let iso = SimplicialMap::new(&left, &right, |c| SimplexRef::nondeg(right.cell(left.name(c)).unwrap())).unwrap();
        assert!(iso.is_isomorphism());
    }
}
