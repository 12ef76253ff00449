use std::collections::HashSet;

use super::set::{Cell, SimplexRef, SimplicialSet};
use crate::error::{Error, Result};

/// Simplicial map determined by the images of nondegenerate cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialSet,
    target: SimplicialSet,
    images: Vec<Vec<SimplexRef>>,
}

impl SimplicialMap {
    /// Validates dimensions, compatibility with faces and, when both sides
    /// are pointed, preservation of the basepoint.
    pub fn new(source: &SimplicialSet, target: &SimplicialSet, mut image: impl FnMut(Cell) -> SimplexRef) -> Result<Self> {
        let images = (0..source.cell_counts().len())
            .map(|d| source.cells(d).map(&mut image).collect())
            .collect();
        Self::from_images(source, target, images)
    }

    pub fn from_images(source: &SimplicialSet, target: &SimplicialSet, images: Vec<Vec<SimplexRef>>) -> Result<Self> {
        let map = SimplicialMap { source: source.clone(), target: target.clone(), images };
        map.validate()?;
        Ok(map)
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        let images = (0..x.cell_counts().len()).map(|d| x.cells(d).map(SimplexRef::nondeg).collect()).collect();
        SimplicialMap { source: x.clone(), target: x.clone(), images }
    }

    /// The map collapsing everything onto a chosen vertex of the target.
    pub fn constant(source: &SimplicialSet, target: &SimplicialSet, vertex: Cell) -> Result<Self> {
        Self::new(source, target, |c| SimplexRef::degenerate_vertex(vertex, c.dim))
    }

    pub fn validate(&self) -> Result<()> {
        if self.images.len() != self.source.cell_counts().len() {
            return Err(Error::Shape("map images do not cover the source".into()));
        }
        for c in self.source.all_cells() {
            let img = self
                .images
                .get(c.dim)
                .and_then(|v| v.get(c.index))
                .ok_or_else(|| Error::Shape(format!("no image for cell {}", self.source.name(c))))?;
            self.target.check_ref(img)?;
            if img.dim() != c.dim {
                return Err(Error::Shape(format!(
                    "image of {} has dimension {}, expected {}",
                    self.source.name(c),
                    img.dim(),
                    c.dim
                )));
            }
            if c.dim == 0 {
                continue;
            }
            for (i, face) in self.source.faces_of(c).iter().enumerate() {
                if self.target.face_raw(img, i) != self.apply(face) {
                    return Err(Error::Identity(format!(
                        "map does not commute with d{} on cell {}",
                        i,
                        self.source.name(c)
                    )));
                }
            }
        }
        if let (Some(a), Some(b)) = (self.source.basepoint(), self.target.basepoint()) {
            if *self.image(a) != SimplexRef::nondeg(b) {
                return Err(Error::Precondition("map does not preserve the basepoint".into()));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &SimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &SimplicialSet {
        &self.target
    }

    pub fn image(&self, c: Cell) -> &SimplexRef {
        &self.images[c.dim][c.index]
    }

    /// Image of an arbitrary simplex: `f(θ^* x) = θ^* f(x)`.
    pub fn apply(&self, s: &SimplexRef) -> SimplexRef {
        self.image(s.base).degenerate_by(&s.surjection())
    }

    /// `self ∘ first`.
    pub fn compose_after(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if first.target != self.source {
            return Err(Error::Shape("composable maps need a common middle object".into()));
        }
        let images = first.images.iter().map(|v| v.iter().map(|s| self.apply(s)).collect()).collect();
        Ok(SimplicialMap { source: first.source.clone(), target: self.target.clone(), images })
    }

    /// Levelwise injectivity: nondegenerate cells go to distinct
    /// nondegenerate cells (by uniqueness of the normal form this is
    /// equivalent to injectivity on all simplices).
    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.source.all_cells().all(|c| {
            let img = self.image(c);
            img.is_nondegenerate() && seen.insert(img.base)
        })
    }

    /// Bijective on nondegenerate cells in every dimension.
    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.source.cell_counts() == self.target.cell_counts()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<SimplicialMap> {
        if !self.is_isomorphism() {
            return Err(Error::Precondition("only isomorphisms can be inverted".into()));
        }
        let mut images: Vec<Vec<SimplexRef>> =
            self.target.cell_counts().iter().map(|&n| vec![SimplexRef::nondeg(Cell::new(0, 0)); n]).collect();
        for c in self.source.all_cells() {
            let t = self.image(c).base;
            images[t.dim][t.index] = SimplexRef::nondeg(c);
        }
        SimplicialMap::from_images(&self.target, &self.source, images)
    }

    /// Maps on vertices, used for π₀ and groupoid transport.
    pub fn vertex_map(&self) -> Vec<Cell> {
        self.source.cells(0).map(|c| self.image(c).base).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::standard::{standard_space, StandardSpace};

    #[test]
    fn identity_and_collapse() {
        let x = standard_space(StandardSpace::Simplex(2)).unwrap();
        let id = SimplicialMap::identity(&x);
        assert!(id.validate().is_ok());
        assert!(id.is_isomorphism());
        let pt = standard_space(StandardSpace::Simplex(0)).unwrap();
        let c = SimplicialMap::constant(&x, &pt, Cell::new(0, 0)).unwrap();
        assert!(!c.is_injective());
        assert_eq!(c.compose_after(&id).unwrap(), c);
    }

    #[test]
    fn non_simplicial_assignment_rejected() {
        let d1 = standard_space(StandardSpace::Simplex(1)).unwrap();
        let x = standard_space(StandardSpace::Boundary(2)).unwrap();
        // send both vertices of the edge to v0 but the edge to a real edge
        let bad = SimplicialMap::new(&d1, &x, |c| {
            if c.dim == 0 {
                SimplexRef::nondeg(Cell::new(0, 0))
            } else {
                SimplexRef::nondeg(Cell::new(1, 0))
            }
        });
        assert!(matches!(bad, Err(Error::Identity(_))));
    }
}
