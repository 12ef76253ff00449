//! Pushouts along levelwise monomorphisms.

use std::collections::HashSet;

use super::map::SimplicialMap;
use super::set::{Cell, SimplexRef, SimplicialSet};
use super::standard::{standard_space, StandardSpace};
use crate::error::{Error, Result};

/// `P = X ⊔_A Y` for `f: A ↪ X` and `g: A → Y`, with its coprojections.
/// The cells of `P` are those of `Y` followed by the cells of `X` outside
/// the image of `f`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: SimplicialSet,
    pub from_x: SimplicialMap,
    pub from_y: SimplicialMap,
    f: SimplicialMap,
    g: SimplicialMap,
    // X cell → new P cell (None for cells in the image of f)
    new_cells: Vec<Vec<Option<Cell>>>,
}

pub(crate) fn fresh_name(taken: &HashSet<String>, name: &str) -> String {
    let mut n = name.to_string();
    while taken.contains(&n) {
        n.push('\'');
    }
    n
}

pub fn pushout_inj(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::Shape("pushout legs need a common source".into()));
    }
    if !f.is_injective() {
        return Err(Error::Precondition("pushout leg f is not levelwise injective".into()));
    }
    let x = f.target();
    let y = g.target();
    let a = f.source();
    let dims = x.cell_counts().len();
    let mut preimage: Vec<Vec<Option<Cell>>> = x.cell_counts().iter().map(|&n| vec![None; n]).collect();
    for c in a.all_cells() {
        let t = f.image(c).base;
        preimage[t.dim][t.index] = Some(c);
    }

    let mut b = SimplicialSet::builder();
    let mut taken = HashSet::new();
    for c in y.all_cells() {
        b.add_cell(c.dim, y.name(c), y.faces_of(c).to_vec())?;
        taken.insert(y.name(c).to_string());
    }
    let mut new_cells: Vec<Vec<Option<Cell>>> = x.cell_counts().iter().map(|&n| vec![None; n]).collect();
    let route = |s: &SimplexRef, new_cells: &Vec<Vec<Option<Cell>>>| -> SimplexRef {
        match preimage[s.base.dim][s.base.index] {
            Some(pre) => g.apply(&SimplexRef { word: s.word.clone(), base: pre }),
            None => SimplexRef { word: s.word.clone(), base: new_cells[s.base.dim][s.base.index].expect("faces added first") },
        }
    };
    for d in 0..dims {
        for c in x.cells(d) {
            if preimage[d][c.index].is_some() {
                continue;
            }
            let faces = x.faces_of(c).iter().map(|s| route(s, &new_cells)).collect();
            let name = fresh_name(&taken, x.name(c));
            taken.insert(name.clone());
            new_cells[d][c.index] = Some(b.add_cell(d, name, faces)?);
        }
    }
    if let Some(base) = y.basepoint() {
        b.set_basepoint(y.name(base));
    }
    let object = b.build()?;

    let from_y = SimplicialMap::from_images(
        y,
        &object,
        (0..y.cell_counts().len()).map(|d| y.cells(d).map(SimplexRef::nondeg).collect()).collect(),
    )?;
    let from_x = SimplicialMap::new(x, &object, |c| route(&SimplexRef::nondeg(c), &new_cells))?;
    Ok(Pushout { object, from_x, from_y, f: f.clone(), g: g.clone(), new_cells })
}

impl Pushout {
    /// The induced map `P → Z` from `hx: X → Z` and `hy: Y → Z` with
    /// `hx∘f = hy∘g`.
    pub fn universal(&self, hx: &SimplicialMap, hy: &SimplicialMap) -> Result<SimplicialMap> {
        if hx.source() != self.f.target() || hy.source() != self.g.target() || hx.target() != hy.target() {
            return Err(Error::Shape("cocone maps do not match the pushout diagram".into()));
        }
        if hx.compose_after(&self.f)? != hy.compose_after(&self.g)? {
            return Err(Error::Precondition("cocone maps disagree on the common source".into()));
        }
        let y_counts = self.g.target().cell_counts();
        let mut images: Vec<Vec<SimplexRef>> = Vec::new();
        for d in 0..self.object.cell_counts().len() {
            let mut row: Vec<SimplexRef> = (0..y_counts.get(d).copied().unwrap_or(0))
                .map(|i| hy.image(Cell::new(d, i)).clone())
                .collect();
            let mut extra: Vec<(usize, SimplexRef)> = self
                .new_cells
                .get(d)
                .into_iter()
                .flatten()
                .enumerate()
                .filter_map(|(xi, p)| p.map(|p| (p.index, hx.image(Cell::new(d, xi)).clone())))
                .collect();
            extra.sort_by_key(|(i, _)| *i);
            row.extend(extra.into_iter().map(|(_, s)| s));
            images.push(row);
        }
        SimplicialMap::from_images(&self.object, hx.target(), images)
    }
}

/// `X/A` for a levelwise injection `A ↪ X`, pointed at the collapsed cell.
pub fn quotient(f: &SimplicialMap) -> Result<Pushout> {
    let point = standard_space(StandardSpace::Point)?;
    let collapse = SimplicialMap::constant(f.source(), &point, Cell::new(0, 0))?;
    pushout_inj(f, &collapse)
}

/// Inclusion of a sub-simplicial set given by names of cells (closed under
/// faces) into `x`.
pub fn subcomplex(x: &SimplicialSet, keep: impl Fn(Cell) -> bool) -> Result<SimplicialMap> {
    let mut b = SimplicialSet::builder();
    let mut index: Vec<Vec<Option<Cell>>> = x.cell_counts().iter().map(|&n| vec![None; n]).collect();
    let mut origin = Vec::new();
    for c in x.all_cells() {
        if !keep(c) {
            continue;
        }
        let mut faces = Vec::new();
        for s in x.faces_of(c) {
            let base = index[s.base.dim][s.base.index]
                .ok_or_else(|| Error::Precondition(format!("cell {} has a face outside the subcomplex", x.name(c))))?;
            faces.push(SimplexRef { word: s.word.clone(), base });
        }
        index[c.dim][c.index] = Some(b.add_cell(c.dim, x.name(c), faces)?);
        origin.push(c);
    }
    if let Some(base) = x.basepoint() {
        if index[0][base.index].is_some() {
            b.set_basepoint(x.name(base));
        }
    }
    let sub = b.build_unchecked()?;
    let mut images: Vec<Vec<SimplexRef>> = sub.cell_counts().iter().map(|_| Vec::new()).collect();
    for c in origin {
        images[c.dim].push(SimplexRef::nondeg(c));
    }
    SimplicialMap::from_images(&sub, x, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_mod_boundary() {
        let d2 = standard_space(StandardSpace::Simplex(2)).unwrap();
        let inc = subcomplex(&d2, |c| c.dim < 2).unwrap();
        let q = quotient(&inc).unwrap();
        assert_eq!(q.object.cell_counts(), vec![1, 0, 1]);
        assert!(q.object.is_pointed());
    }

    #[test]
    fn universal_map_factors() {
        let d1 = standard_space(StandardSpace::Simplex(1)).unwrap();
        let ends = subcomplex(&d1, |c| c.dim == 0).unwrap();
        let q = quotient(&ends).unwrap();
        assert_eq!(q.object.cell_counts(), vec![1, 1]);
        let pt = standard_space(StandardSpace::Point).unwrap();
        let hx = SimplicialMap::constant(&d1, &pt, Cell::new(0, 0)).unwrap();
        let hy = SimplicialMap::identity(&pt);
        let u = q.universal(&hx, &hy).unwrap();
        assert_eq!(u.compose_after(&q.from_x).unwrap(), hx);
    }

    #[test]
    fn non_injective_leg_rejected() {
        let d1 = standard_space(StandardSpace::Simplex(1)).unwrap();
        let pt = standard_space(StandardSpace::Point).unwrap();
        let c = SimplicialMap::constant(&d1, &pt, Cell::new(0, 0)).unwrap();
        assert!(matches!(pushout_inj(&c, &c), Err(Error::Precondition(_))));
    }
}
