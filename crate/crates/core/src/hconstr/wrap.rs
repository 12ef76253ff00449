//! The wrapping functor `Wr = ω′ω`: forget degeneracies, then add them
//! back freely.

use std::collections::HashMap;

use crate::chain::{is_isomorphism, induced_map, ChainMap, HomologyPresentation, IntMatrix};
use crate::error::{Error, Result};
use crate::simpset::chains::{chain_map_with, normalized_chains_with, unnormalized_chains_with};
use crate::simpset::standard::{standard_space, unpointed, StandardSpace};
use crate::simpset::{pushout_inj, skeleton, Cell, SimplexRef, SimplicialMap, SimplicialSet};

/// `Wr(X)` truncated at `D` and its counit `a: Wr(X) → X`.
#[derive(Clone, Debug)]
pub struct Wrap {
    pub object: SimplicialSet,
    pub counit: SimplicialMap,
}

/// Nondegenerate `n`-cells of `Wr(X)` are all `n`-simplices of `X`, named
/// by [`wr_name`]. A face of the cell `x` is the cell `∂_i x`: the
/// factorization of `id∘δ_i` has trivial surjective part. For pointed `X`
/// the degenerate basepoint simplices are identified with the basepoint,
/// so their cells are omitted and faces landing there become degenerate.
pub fn wrap(x: &SimplicialSet, trunc: usize) -> Result<Wrap> {
    let base = x.basepoint();
    let mut b = SimplicialSet::builder();
    let mut cell_of: HashMap<SimplexRef, Cell> = HashMap::new();
    let mut images: Vec<Vec<SimplexRef>> = Vec::new();
    for n in 0..=trunc {
        let mut level = Vec::new();
        for s in x.simplices(n) {
            if base.is_some() && n > 0 && s.base == base.expect("pointed") && !s.is_nondegenerate() {
                continue;
            }
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let f = x.face_raw(&s, i);
                        match cell_of.get(&f) {
                            Some(&c) => SimplexRef::nondeg(c),
                            None => SimplexRef::degenerate_vertex(cell_of[&x.base_simplex(0).expect("pointed")], n - 1),
                        }
                    })
                    .collect()
            };
            let c = b.add_cell(n, wr_name(x, &s), faces)?;
            cell_of.insert(s.clone(), c);
            level.push(s);
        }
        images.push(level);
    }
    if let Some(bp) = base {
        b.set_basepoint(x.name(bp));
    }
    let object = b.build_unchecked()?;
    while images.last().is_some_and(Vec::is_empty) && images.len() > object.cell_counts().len() {
        images.pop();
    }
    let counit = SimplicialMap::from_images(&object, x, images)?;
    Ok(Wrap { object, counit })
}

/// Name of the `Wr` cell of a simplex: its normal form with `.` in place
/// of spaces, e.g. `s1.s0.v`.
pub fn wr_name(x: &SimplicialSet, s: &SimplexRef) -> String {
    x.format_ref(s).replace(' ', ".")
}

/// Cell counts of both sides of the skeletal pushout square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonReport {
    pub n: usize,
    pub pushout_counts: Vec<usize>,
    pub skeleton_counts: Vec<usize>,
    pub isomorphic: bool,
}

/// `⊔_x Δᵐ` (or `∂Δᵐ`) over the given labels, with a disjoint basepoint:
/// the pointed set of labels smashed with `(Δᵐ)₊`.
fn labelled_copies(labels: &[String], m: usize, boundary: bool) -> Result<(SimplicialSet, Vec<Vec<(Cell, Vec<usize>)>>)> {
    let model = standard_space(if boundary { StandardSpace::Boundary(m) } else { StandardSpace::Simplex(m) })?;
    let mut b = SimplicialSet::builder();
    b.add_cell(0, "+", Vec::new())?;
    let mut cells = Vec::new();
    for label in labels {
        let mut here: HashMap<Cell, Cell> = HashMap::new();
        let mut list = Vec::new();
        for c in model.all_cells() {
            let faces = model.faces_of(c).iter().map(|f| SimplexRef { word: f.word.clone(), base: here[&f.base] }).collect();
            let new = b.add_cell(c.dim, format!("{}|{}", label, model.name(c)), faces)?;
            here.insert(c, new);
            let verts = (0..=c.dim).map(|k| model.vertex(&SimplexRef::nondeg(c), k).index).collect();
            list.push((new, verts));
        }
        cells.push(list);
    }
    b.set_basepoint("+");
    Ok((b.build()?, cells))
}

/// Checks that `sk_{n+1} Wr(X)` is the pushout of
/// `sk_n Wr(X) ← X_{n+1} ∧ (∂Δ^{n+1})₊ → X_{n+1} ∧ (Δ^{n+1})₊`, where
/// `X_{n+1}` is the pointed set of `(n+1)`-simplices.
pub fn skeleton_pushout_check(x: &SimplicialSet, n: usize, trunc: usize) -> Result<SkeletonReport> {
    x.require_pointed("the skeletal pushout square")?;
    if n + 1 > trunc {
        return Err(Error::Range(format!("skeleton {} needs truncation ≥ {}, have {}", n + 1, n + 1, trunc)));
    }
    let w = wrap(x, trunc)?;
    let wr = &w.object;
    let sk_n = skeleton(wr, n as i64)?;
    let sk_n1 = skeleton(wr, n as i64 + 1)?;
    let m = n + 1;
    let tops: Vec<Cell> = wr.cells(m).collect();
    let labels: Vec<String> = tops.iter().map(|&c| wr.name(c).to_string()).collect();
    let (bdry, bdry_cells) = labelled_copies(&labels, m, true)?;
    let (full, full_cells) = labelled_copies(&labels, m, false)?;

    // the copy of face S of the simplex x goes to the Wr cell of x|_S
    let face_in = |target: &SimplicialSet, top: Cell, verts: &[usize]| -> SimplexRef {
        let s = w.counit.image(top).clone();
        let restricted = x.apply_monotone(&s, verts);
        match target.cell(&wr_name(x, &restricted)) {
            Some(c) => SimplexRef::nondeg(c),
            None => target.base_simplex(verts.len() - 1).expect("pointed"),
        }
    };
    let mut attach_img: HashMap<Cell, SimplexRef> = HashMap::new();
    let mut incl_img: HashMap<Cell, SimplexRef> = HashMap::new();
    for (k, &top) in tops.iter().enumerate() {
        for (c, verts) in &bdry_cells[k] {
            attach_img.insert(*c, face_in(sk_n.source(), top, verts));
            let name = bdry.name(*c);
            incl_img.insert(*c, SimplexRef::nondeg(full.cell(name).expect("boundary inside simplex")));
        }
    }
    let base_of = |t: &SimplicialSet| SimplexRef::nondeg(t.basepoint().expect("pointed"));
    let attach = SimplicialMap::new(&bdry, sk_n.source(), |c| attach_img.get(&c).cloned().unwrap_or_else(|| base_of(sk_n.source())))?;
    let incl = SimplicialMap::new(&bdry, &full, |c| incl_img.get(&c).cloned().unwrap_or_else(|| base_of(&full)))?;
    let p = pushout_inj(&incl, &attach)?;

    let mut top_img: HashMap<Cell, SimplexRef> = HashMap::new();
    for (k, &top) in tops.iter().enumerate() {
        for (c, verts) in &full_cells[k] {
            top_img.insert(*c, face_in(sk_n1.source(), top, verts));
        }
    }
    let hx = SimplicialMap::new(&full, sk_n1.source(), |c| top_img.get(&c).cloned().unwrap_or_else(|| base_of(sk_n1.source())))?;
    let hy = SimplicialMap::new(sk_n.source(), sk_n1.source(), |c| SimplexRef::nondeg(sk_n1.source().cell(sk_n.source().name(c)).expect("skeleta nest")))?;
    let u = p.universal(&hx, &hy)?;
    Ok(SkeletonReport {
        n,
        pushout_counts: p.object.cell_counts(),
        skeleton_counts: sk_n1.source().cell_counts(),
        isomorphic: u.is_isomorphism(),
    })
}

/// The triangle `C(X) → N(Wr X) → N(X)` for unpointed `X`: the first map
/// is the identity on the basis of all simplices, the composite is the
/// normalization projection and must be a quasi-isomorphism below `D`.
pub fn wrap_triangle_check(x: &SimplicialSet, trunc: usize) -> Result<bool> {
    let x = unpointed(x);
    let w = wrap(&x, trunc)?;
    let unnorm = unnormalized_chains_with(&x, trunc, false);
    let nw = normalized_chains_with(&w.object, false);
    // cells of Wr(X) are enumerated exactly as the simplices of X
    for n in 0..=trunc as i64 {
        if unnorm.rank(n) != nw.rank(n) || unnorm.d(n) != nw.d(n) {
            return Ok(false);
        }
    }
    let counit = chain_map_with(&w.counit, false)?;
    let nx = counit.target().clone();
    let projection = ChainMap::new(unnorm.clone(), nx.clone(), |n| {
        let n = n as usize;
        let mut m = IntMatrix::zeros(x.count(n), unnorm.rank(n as i64));
        for (j, s) in x.simplices(n).iter().enumerate() {
            if s.is_nondegenerate() {
                m.set(s.base.index, j, crate::chain::int(1));
            }
        }
        m
    })?;
    for n in 0..=trunc as i64 {
        if counit.component(n) != projection.component(n) {
            return Ok(false);
        }
    }
    for n in 0..trunc as i64 {
        let src = HomologyPresentation::new(&unnorm, n);
        let tgt = HomologyPresentation::new(&nx, n);
        if !is_isomorphism(&induced_map(&projection, n, &src, &tgt), &src, &tgt) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::chains::homology_space;
    use crate::simpset::groupoid::groupoid_presentation;
    use crate::simpset::StandardSpace::*;

    #[test]
    fn wrap_of_point() {
        let p = standard_space(Simplex(0)).unwrap();
        let w = wrap(&p, 4).unwrap();
        assert_eq!(w.object.cell_counts(), vec![1; 5]);
        for i in 0..4 {
            assert_eq!(homology_space(&w.object, i), homology_space(&p, i));
        }
    }

    #[test]
    fn vertices_agree() {
        let s1 = standard_space(Sphere(1)).unwrap();
        let w = wrap(&s1, 3).unwrap();
        assert_eq!(w.object.count(0), s1.count(0));
        assert!(w.counit.validate().is_ok());
        let b2 = standard_space(Boundary(2)).unwrap();
        let w = wrap(&b2, 3).unwrap();
        assert_eq!(w.object.count(0), 3);
        // edges of Wr are all 1-simplices: 3 nondegenerate + 3 degenerate
        assert_eq!(w.object.count(1), 6);
    }

    #[test]
    fn circle_homology() {
        let s1 = standard_space(Sphere(1)).unwrap();
        let w = wrap(&s1, 4).unwrap();
        for i in 0..4 {
            assert_eq!(homology_space(&w.object, i), homology_space(&s1, i), "degree {}", i);
        }
    }

    #[test]
    fn groupoids_match() {
        let b2 = standard_space(Boundary(2)).unwrap();
        let w = wrap(&b2, 3).unwrap();
        let gw = groupoid_presentation(&w.object).transport(&w.counit).canonical();
        assert_eq!(gw, groupoid_presentation(&b2).canonical());
    }

    #[test]
    fn skeletal_squares() {
        let s1 = standard_space(Sphere(1)).unwrap();
        for n in 0..3 {
            let r = skeleton_pushout_check(&s1, n, 4).unwrap();
            assert!(r.isomorphic, "n = {}", n);
            assert_eq!(r.pushout_counts, r.skeleton_counts);
        }
        assert!(matches!(skeleton_pushout_check(&s1, 4, 4), Err(Error::Range(_))));
    }

    #[test]
    fn triangle() {
        let b2 = standard_space(Boundary(2)).unwrap();
        assert!(wrap_triangle_check(&b2, 3).unwrap());
    }
}
