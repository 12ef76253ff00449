//! Homotopy pushouts and mapping cylinders of pointed simplicial sets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::simpset::multi::{diagonal_with_origins, MultiBuilder, MultiRef};
use crate::simpset::standard::{standard_space, StandardSpace};
use crate::simpset::{product, pushout_inj, quotient, subcomplex, wedge, BisimplicialSet, Cell, Pushout, SimplexRef, SimplicialMap, SimplicialSet};

/// `K ∧ (Δ¹)₊`, realised as `(K × Δ¹)/(* × Δ¹)`, with its two end
/// inclusions and the collapse to `K`.
#[derive(Clone, Debug)]
pub struct ReducedCylinder {
    pub object: SimplicialSet,
    /// `k ↦ (k, 0)` and `k ↦ (k, 1)`.
    pub ends: [SimplicialMap; 2],
    pub collapse: SimplicialMap,
    quotient: Pushout,
    prod: crate::simpset::Product,
}

impl ReducedCylinder {
    pub fn new(k: &SimplicialSet) -> Result<Self> {
        let bk = k.require_pointed("the reduced cylinder")?;
        let interval = standard_space(StandardSpace::Simplex(1))?;
        let prod = product(k, &interval)?;
        let base_line = subcomplex(&prod.object, |c| {
            let img = prod.proj_x.image(c);
            img.base == bk
        })?;
        let q = quotient(&base_line)?;
        let ends = [0, 1].map(|v| {
            SimplicialMap::new(k, &q.object, |c| {
                let pair = prod.pair(&SimplexRef::nondeg(c), &SimplexRef::degenerate_vertex(Cell::new(0, v), c.dim));
                q.from_x.apply(&pair)
            })
            .expect("end inclusion")
        });
        let collapse = q.universal(&prod.proj_x, &SimplicialMap::constant(q.from_y.source(), k, bk)?)?;
        Ok(ReducedCylinder { object: q.object.clone(), ends, collapse, quotient: q, prod })
    }

    /// Image of the product simplex `(k, t)`.
    pub fn pair(&self, k: &SimplexRef, t: &SimplexRef) -> SimplexRef {
        self.quotient.from_x.apply(&self.prod.pair(k, t))
    }
}

/// A diagram `L ←f− K −g→ M` of pointed simplicial sets.
#[derive(Clone, Debug)]
pub struct PushoutDiagram {
    pub k: SimplicialSet,
    pub l: SimplicialSet,
    pub m: SimplicialSet,
    pub f: SimplicialMap,
    pub g: SimplicialMap,
}

impl PushoutDiagram {
    pub fn new(f: SimplicialMap, g: SimplicialMap) -> Result<Self> {
        if f.source() != g.source() {
            return Err(Error::Shape("both legs must start at K".into()));
        }
        for x in [f.source(), f.target(), g.target()] {
            x.require_pointed("a homotopy pushout")?;
        }
        Ok(PushoutDiagram { k: f.source().clone(), l: f.target().clone(), m: g.target().clone(), f, g })
    }
}

/// `K_Q` with its coprojections from `L` and `M`.
#[derive(Clone, Debug)]
pub struct HomotopyPushout {
    pub object: SimplicialSet,
    pub from_l: SimplicialMap,
    pub from_m: SimplicialMap,
    pub cylinder: ReducedCylinder,
    pushout: Pushout,
    diagram: PushoutDiagram,
}

/// `K_Q`: the pushout of `K∨K → K∧(Δ¹)₊` (the two ends) against
/// `g∨f: K∨K → M∨L`. The end at vertex 0 is glued to `M`, the end at
/// vertex 1 to `L`.
pub fn homotopy_pushout(q: &PushoutDiagram) -> Result<HomotopyPushout> {
    let cyl = ReducedCylinder::new(&q.k)?;
    let kk = wedge(&q.k, &q.k)?;
    let ends = kk.universal(&cyl.ends[0], &cyl.ends[1])?;
    let ml = wedge(&q.m, &q.l)?;
    let legs = kk.universal(&ml.incl_x.compose_after(&q.g)?, &ml.incl_y.compose_after(&q.f)?)?;
    let p = pushout_inj(&ends, &legs)?;
    let from_l = p.from_y.compose_after(&ml.incl_y)?;
    let from_m = p.from_y.compose_after(&ml.incl_x)?;
    Ok(HomotopyPushout { object: p.object.clone(), from_l, from_m, cylinder: cyl, pushout: p, diagram: q.clone() })
}

impl HomotopyPushout {
    /// The comparison `K_Q → N` for a commutative square `l∘f = m∘g`.
    pub fn comparison(&self, l: &SimplicialMap, m: &SimplicialMap) -> Result<SimplicialMap> {
        let d = &self.diagram;
        if l.compose_after(&d.f)? != m.compose_after(&d.g)? {
            return Err(Error::Precondition("the square does not commute".into()));
        }
        let through = l.compose_after(&d.f)?.compose_after(&self.cylinder.collapse)?;
        let ml = wedge(&d.m, &d.l)?;
        let on_ml = ml.universal(m, l)?;
        self.pushout.universal(&through, &on_ml)
    }

    /// Cross-check against the diagonal of the bisimplicial object with
    /// columns `M ∨ K^{∨n} ∨ L`: the explicit map from that diagonal to
    /// `K_Q` must be an isomorphism.
    pub fn bisimplicial_check(&self) -> Result<bool> {
        let (b, kinds) = two_sided_bar(&self.diagram)?;
        let (diag, origins) = diagonal_with_origins(&b)?;
        let edge = SimplexRef::nondeg(Cell::new(1, 0));
        let map = SimplicialMap::new(&diag, &self.object, |c| {
            let (cell, h, v) = &origins[&c];
            let n = c.dim;
            match kinds[*cell] {
                Column::M(x) => self.from_m.apply(&SimplexRef { word: v.clone(), base: x }),
                Column::L(x) => self.from_l.apply(&SimplexRef { word: v.clone(), base: x }),
                Column::K(x) => {
                    let kx = SimplexRef { word: v.clone(), base: x };
                    let t = SimplexRef { word: h.clone(), base: edge.base };
                    debug_assert_eq!(kx.dim(), n);
                    self.pushout.from_x.apply(&self.cylinder.pair(&kx, &t))
                }
            }
        })?;
        Ok(map.is_isomorphism())
    }
}

#[derive(Clone, Copy, Debug)]
enum Column {
    M(Cell),
    L(Cell),
    K(Cell),
}

/// Bi-nondegenerate cells of the two-sided bar object: `M` and `L` at
/// horizontal degree 0 (sharing the basepoint), and each non-base cell of
/// `K` at horizontal degree 1 with `∂^h_0 = f(k)`, `∂^h_1 = g(k)`.
fn two_sided_bar(q: &PushoutDiagram) -> Result<(BisimplicialSet, Vec<Column>)> {
    let mut b = MultiBuilder::new(2);
    let mut kinds = Vec::new();
    let mut m_idx: HashMap<Cell, usize> = HashMap::new();
    let mut l_idx: HashMap<Cell, usize> = HashMap::new();
    let mut k_idx: HashMap<Cell, usize> = HashMap::new();
    let bm = q.m.basepoint().expect("pointed");
    let bl = q.l.basepoint().expect("pointed");
    let bk = q.k.basepoint().expect("pointed");
    let vref = |s: &SimplexRef, idx: &HashMap<Cell, usize>, h: Vec<usize>| MultiRef { words: vec![h, s.word.clone()], base: idx[&s.base] };
    for c in q.m.all_cells() {
        let vf = q.m.faces_of(c).iter().map(|s| vref(s, &m_idx, Vec::new())).collect();
        m_idx.insert(c, b.add_cell(vec![0, c.dim], format!("M:{}", q.m.name(c)), vec![Vec::new(), vf])?);
        kinds.push(Column::M(c));
    }
    b.set_basepoint(m_idx[&bm]);
    l_idx.insert(bl, m_idx[&bm]);
    for c in q.l.all_cells().filter(|&c| c != bl) {
        let vf = q.l.faces_of(c).iter().map(|s| vref(s, &l_idx, Vec::new())).collect();
        l_idx.insert(c, b.add_cell(vec![0, c.dim], format!("L:{}", q.l.name(c)), vec![Vec::new(), vf])?);
        kinds.push(Column::L(c));
    }
    let base_ref = |dim: usize, h: Vec<usize>| MultiRef { words: vec![h, (0..dim).rev().collect()], base: m_idx[&bm] };
    for c in q.k.all_cells().filter(|&c| c != bk) {
        let to_l = q.f.apply(&SimplexRef::nondeg(c));
        let to_m = q.g.apply(&SimplexRef::nondeg(c));
        let hf = vec![vref(&to_l, &l_idx, Vec::new()), vref(&to_m, &m_idx, Vec::new())];
        let vf = q
            .k
            .faces_of(c)
            .iter()
            .map(|s| if s.base == bk { base_ref(c.dim - 1, vec![0]) } else { vref(s, &k_idx, Vec::new()) })
            .collect();
        k_idx.insert(c, b.add_cell(vec![1, c.dim], format!("K:{}", q.k.name(c)), vec![hf, vf])?);
        kinds.push(Column::K(c));
    }
    Ok((b.build()?, kinds))
}

/// `cyl(f)`: the pushout of `K∧(Δ¹)₊ ← K → L` along the end at vertex 1,
/// with `K → cyl(f)` at vertex 0, `L → cyl(f)`, and the retraction onto
/// `L`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub object: SimplicialSet,
    pub from_k: SimplicialMap,
    pub from_l: SimplicialMap,
    pub retraction: SimplicialMap,
}

pub fn cylinder(f: &SimplicialMap) -> Result<Cylinder> {
    f.source().require_pointed("a mapping cylinder")?;
    f.target().require_pointed("a mapping cylinder")?;
    let cyl = ReducedCylinder::new(f.source())?;
    let p = pushout_inj(&cyl.ends[1], f)?;
    let from_k = p.from_x.compose_after(&cyl.ends[0])?;
    let retraction = p.universal(&f.compose_after(&cyl.collapse)?, &SimplicialMap::identity(f.target()))?;
    Ok(Cylinder { object: p.object.clone(), from_k, from_l: p.from_y.clone(), retraction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::HomologyGroup;
    use crate::simpset::chains::homology_space;
    use crate::simpset::StandardSpace::*;

    fn point() -> SimplicialSet {
        standard_space(Point).unwrap()
    }

    #[test]
    fn suspension_of_s0() {
        let s0 = standard_space(Sphere(0)).unwrap();
        let pt = point();
        let c = SimplicialMap::constant(&s0, &pt, Cell::new(0, 0)).unwrap();
        let q = PushoutDiagram::new(c.clone(), c).unwrap();
        let h = homotopy_pushout(&q).unwrap();
        assert!(homology_space(&h.object, 0).is_zero());
        assert_eq!(homology_space(&h.object, 1), HomologyGroup::free(1));
        assert!(h.bisimplicial_check().unwrap());
    }

    #[test]
    fn identity_diagram() {
        let s1 = standard_space(Sphere(1)).unwrap();
        let id = SimplicialMap::identity(&s1);
        let q = PushoutDiagram::new(id.clone(), id.clone()).unwrap();
        let h = homotopy_pushout(&q).unwrap();
        assert_eq!(homology_space(&h.object, 1), HomologyGroup::free(1));
        assert!(homology_space(&h.object, 2).is_zero());
        assert!(h.bisimplicial_check().unwrap());
        let cmp = h.comparison(&id, &id).unwrap();
        assert!(cmp.validate().is_ok());
    }

    #[test]
    fn cylinder_retracts() {
        let s1 = standard_space(Sphere(1)).unwrap();
        let c = cylinder(&SimplicialMap::identity(&s1)).unwrap();
        assert!(c.retraction.compose_after(&c.from_l).unwrap() == SimplicialMap::identity(&s1));
        assert_eq!(homology_space(&c.object, 1), HomologyGroup::free(1));
    }

    #[test]
    fn unpointed_rejected() {
        let d1 = standard_space(Simplex(1)).unwrap();
        let id = SimplicialMap::identity(&d1);
        assert!(matches!(PushoutDiagram::new(id.clone(), id), Err(Error::Precondition(_))));
    }
}
