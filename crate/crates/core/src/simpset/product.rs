//! Products, coproducts and the pointed operations built from them.

use std::collections::{HashMap, HashSet};

use super::map::SimplicialMap;
use super::pushout::{fresh_name, quotient, Pushout};
use super::set::{Cell, SimplexRef, SimplicialSet};
use super::standard::{standard_space, StandardSpace};
use crate::delta;
use crate::error::{Error, Result};

fn word_prefix(word: &[usize]) -> String {
    if word.is_empty() {
        String::new()
    } else {
        let parts: Vec<String> = word.iter().map(|i| format!("s{}", i)).collect();
        format!("{}.", parts.concat())
    }
}

/// Splits off the common degeneracies of a pair of `n`-simplices:
/// returns `(c, a', b')` with `(a, b) = s_c (a', b')` and `a'`, `b'` sharing
/// no degeneracy index.
pub(crate) fn split_common(a: &SimplexRef, b: &SimplexRef) -> (Vec<usize>, SimplexRef, SimplexRef) {
    let sa = a.surjection();
    let sb = b.surjection();
    let ia = delta::collapse_set(&sa);
    let ib = delta::collapse_set(&sb);
    let common: Vec<usize> = ia.iter().copied().filter(|t| ib.contains(t)).collect();
    if common.is_empty() {
        return (common, a.clone(), b.clone());
    }
    let ra = SimplexRef::from_surjection(&delta::factor_through_collapse(&sa, &common), a.base);
    let rb = SimplexRef::from_surjection(&delta::factor_through_collapse(&sb, &common), b.base);
    (common, ra, rb)
}

/// `X × Y` with its projections. Nondegenerate `n`-cells are pairs
/// `(s_I x, s_J y)` with `I ∩ J = ∅`.
#[derive(Clone, Debug)]
pub struct Product {
    pub object: SimplicialSet,
    pub proj_x: SimplicialMap,
    pub proj_y: SimplicialMap,
    index: HashMap<(SimplexRef, SimplexRef), Cell>,
}

pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> Result<Product> {
    let dx = x.top_dim();
    let dy = y.top_dim();
    let mut b = SimplicialSet::builder();
    let mut index: HashMap<(SimplexRef, SimplexRef), Cell> = HashMap::new();
    let mut pairs: Vec<Vec<(SimplexRef, SimplexRef)>> = Vec::new();
    if let (Some(dx), Some(dy)) = (dx, dy) {
        for n in 0..=dx + dy {
            let mut level = Vec::new();
            for p in 0..=n.min(dx) {
                for q in (n - p)..=n.min(dy) {
                    for xc in x.cells(p) {
                        for yc in y.cells(q) {
                            for i in delta::subsets(n, n - p) {
                                for j in delta::subsets(n, n - q) {
                                    if i.iter().any(|t| j.contains(t)) {
                                        continue;
                                    }
                                    let a = SimplexRef { word: i.iter().rev().copied().collect(), base: xc };
                                    let bb = SimplexRef { word: j.iter().rev().copied().collect(), base: yc };
                                    let name = format!(
                                        "<{}{},{}{}>",
                                        word_prefix(&a.word),
                                        x.name(xc),
                                        word_prefix(&bb.word),
                                        y.name(yc)
                                    );
                                    let faces = if n == 0 {
                                        Vec::new()
                                    } else {
                                        (0..=n)
                                            .map(|k| {
                                                let (c, fa, fb) = split_common(&x.face_raw(&a, k), &y.face_raw(&bb, k));
                                                SimplexRef {
                                                    word: c.into_iter().rev().collect(),
                                                    base: index[&(fa, fb)],
                                                }
                                            })
                                            .collect()
                                    };
                                    let cell = b.add_cell(n, name, faces)?;
                                    index.insert((a.clone(), bb.clone()), cell);
                                    level.push((a, bb));
                                }
                            }
                        }
                    }
                }
            }
            pairs.push(level);
        }
    }
    if let (Some(bx), Some(by)) = (x.basepoint(), y.basepoint()) {
        let c = index[&(SimplexRef::nondeg(bx), SimplexRef::nondeg(by))];
        let name = b_name(&pairs, c, x, y);
        b.set_basepoint(&name);
    }
    let object = b.build()?;
    let proj_x = SimplicialMap::from_images(&object, x, pairs.iter().map(|l| l.iter().map(|p| p.0.clone()).collect()).collect())?;
    let proj_y = SimplicialMap::from_images(&object, y, pairs.iter().map(|l| l.iter().map(|p| p.1.clone()).collect()).collect())?;
    Ok(Product { object, proj_x, proj_y, index })
}

fn b_name(pairs: &[Vec<(SimplexRef, SimplexRef)>], c: Cell, x: &SimplicialSet, y: &SimplicialSet) -> String {
    let (a, b) = &pairs[c.dim][c.index];
    format!("<{}{},{}{}>", word_prefix(&a.word), x.name(a.base), word_prefix(&b.word), y.name(b.base))
}

impl Product {
    /// The simplex `(a, b)` of the product, in normal form.
    pub fn pair(&self, a: &SimplexRef, b: &SimplexRef) -> SimplexRef {
        assert_eq!(a.dim(), b.dim(), "paired simplices must share a dimension");
        let (c, ra, rb) = split_common(a, b);
        SimplexRef { word: c.into_iter().rev().collect(), base: self.index[&(ra, rb)] }
    }

    /// `⟨f, g⟩: Z → X × Y`.
    pub fn pairing(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        if f.source() != g.source() {
            return Err(Error::Shape("pairing needs maps with a common source".into()));
        }
        SimplicialMap::new(f.source(), &self.object, |c| self.pair(f.image(c), g.image(c)))
    }
}

/// Binary coproduct with its inclusions; clashing names of the second
/// summand get primes appended.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: SimplicialSet,
    pub incl_a: SimplicialMap,
    pub incl_b: SimplicialMap,
}

/// Glues `y` onto `x`, identifying the cells in `shared` (a partial map
/// from cells of `y` to cells of `x`).
fn glue(x: &SimplicialSet, y: &SimplicialSet, shared: &HashMap<Cell, Cell>, basepoint: Option<String>) -> Result<(SimplicialSet, Vec<Vec<SimplexRef>>, Vec<Vec<SimplexRef>>)> {
    let mut b = SimplicialSet::builder();
    let mut taken = HashSet::new();
    for c in x.all_cells() {
        b.add_cell(c.dim, x.name(c), x.faces_of(c).to_vec())?;
        taken.insert(x.name(c).to_string());
    }
    let mut y_to: Vec<Vec<Option<Cell>>> = y.cell_counts().iter().map(|&n| vec![None; n]).collect();
    for c in y.all_cells() {
        if let Some(t) = shared.get(&c) {
            y_to[c.dim][c.index] = Some(*t);
            continue;
        }
        let faces = y
            .faces_of(c)
            .iter()
            .map(|s| SimplexRef { word: s.word.clone(), base: y_to[s.base.dim][s.base.index].expect("faces first") })
            .collect();
        let name = fresh_name(&taken, y.name(c));
        taken.insert(name.clone());
        y_to[c.dim][c.index] = Some(b.add_cell(c.dim, name, faces)?);
    }
    if let Some(bp) = basepoint {
        b.set_basepoint(&bp);
    }
    let object = b.build_unchecked()?;
    let ia = x.cell_counts().iter().enumerate().map(|(d, &n)| (0..n).map(|i| SimplexRef::nondeg(Cell::new(d, i))).collect()).collect();
    let ib = y_to.iter().map(|v| v.iter().map(|c| SimplexRef::nondeg(c.expect("all mapped"))).collect()).collect();
    Ok((object, ia, ib))
}

pub fn disjoint_union(x: &SimplicialSet, y: &SimplicialSet) -> Result<Coproduct> {
    let (object, ia, ib) = glue(x, y, &HashMap::new(), None)?;
    Ok(Coproduct {
        incl_a: SimplicialMap::from_images(x, &object, ia)?,
        incl_b: SimplicialMap::from_images(y, &object, ib)?,
        object,
    })
}

/// `X₊`: `X` with a disjoint basepoint `+`.
pub fn disjoint_basepoint(x: &SimplicialSet) -> Result<SimplicialSet> {
    let unpointed = super::standard::unpointed(x);
    let mut b = SimplicialSet::builder();
    b.add_cell(0, "+", vec![])?;
    let plus = b.build_unchecked()?;
    let (object, _, ib) = glue(&unpointed, &plus, &HashMap::new(), None)?;
    let name = object.name(ib[0][0].base).to_string();
    super::standard::with_basepoint(&object, &name)
}

/// `X ∨ Y` with its inclusions.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub object: SimplicialSet,
    pub incl_x: SimplicialMap,
    pub incl_y: SimplicialMap,
}

pub fn wedge(x: &SimplicialSet, y: &SimplicialSet) -> Result<Wedge> {
    let bx = x.require_pointed("wedge")?;
    let by = y.require_pointed("wedge")?;
    let shared = HashMap::from([(by, bx)]);
    let (object, ia, ib) = glue(x, y, &shared, Some(x.name(bx).to_string()))?;
    object.validate()?;
    Ok(Wedge {
        incl_x: SimplicialMap::from_images(x, &object, ia)?,
        incl_y: SimplicialMap::from_images(y, &object, ib)?,
        object,
    })
}

impl Wedge {
    /// The map `X ∨ Y → Z` restricting to `fx` and `fy`.
    pub fn universal(&self, fx: &SimplicialMap, fy: &SimplicialMap) -> Result<SimplicialMap> {
        let z = fx.target();
        let mut images: Vec<Vec<Option<SimplexRef>>> = self.object.cell_counts().iter().map(|&n| vec![None; n]).collect();
        for (incl, f) in [(&self.incl_x, fx), (&self.incl_y, fy)] {
            for c in incl.source().all_cells() {
                let t = incl.image(c).base;
                let img = f.image(c).clone();
                if let Some(prev) = &images[t.dim][t.index] {
                    if *prev != img {
                        return Err(Error::Precondition("wedge summand maps disagree on the basepoint".into()));
                    }
                }
                images[t.dim][t.index] = Some(img);
            }
        }
        let images = images.into_iter().map(|v| v.into_iter().map(|s| s.expect("wedge covered")).collect()).collect();
        SimplicialMap::from_images(&self.object, z, images)
    }
}

/// `X ∧ Y = (X × Y)/(X ∨ Y)` with the quotient map from the product.
#[derive(Clone, Debug)]
pub struct Smash {
    pub object: SimplicialSet,
    pub product: Product,
    pub quotient: SimplicialMap,
    pub pushout: Pushout,
}

pub fn smash(x: &SimplicialSet, y: &SimplicialSet) -> Result<Smash> {
    let bx = x.require_pointed("smash")?;
    let by = y.require_pointed("smash")?;
    let prod = product(x, y)?;
    let w = wedge(x, y)?;
    let on_x = SimplicialMap::new(x, &prod.object, |c| prod.pair(&SimplexRef::nondeg(c), &SimplexRef::degenerate_vertex(by, c.dim)))?;
    let on_y = SimplicialMap::new(y, &prod.object, |c| prod.pair(&SimplexRef::degenerate_vertex(bx, c.dim), &SimplexRef::nondeg(c)))?;
    let inc = w.universal(&on_x, &on_y)?;
    let q = quotient(&inc)?;
    Ok(Smash { object: q.object.clone(), quotient: q.from_x.clone(), product: prod, pushout: q })
}

impl Smash {
    /// Image of the product simplex `(a, b)` in the smash product.
    pub fn pair(&self, a: &SimplexRef, b: &SimplexRef) -> SimplexRef {
        self.quotient.apply(&self.product.pair(a, b))
    }
}

/// `ΣⁱX = X ∧ Sⁱ`.
pub fn suspension(x: &SimplicialSet, i: usize) -> Result<SimplicialSet> {
    x.require_pointed("suspension")?;
    Ok(smash(x, &standard_space(StandardSpace::Sphere(i))?)?.object)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::standard::StandardSpace::*;

    fn sp(k: StandardSpace) -> SimplicialSet {
        standard_space(k).unwrap()
    }

    #[test]
    fn square_cells() {
        let p = product(&sp(Simplex(1)), &sp(Simplex(1))).unwrap();
        assert_eq!(p.object.cell_counts(), vec![4, 5, 2]);
        assert_eq!(p.object.euler_characteristic(), 1);
    }

    #[test]
    fn product_with_point() {
        let x = sp(Boundary(2));
        let p = product(&x, &sp(Simplex(0))).unwrap();
        assert_eq!(p.object.cell_counts(), x.cell_counts());
        assert!(p.proj_x.is_isomorphism());
    }

    #[test]
    fn pairing_recovers_projections() {
        let x = sp(Simplex(2));
        let p = product(&x, &x).unwrap();
        let id = SimplicialMap::identity(&x);
        let diag = p.pairing(&id, &id).unwrap();
        assert_eq!(p.proj_x.compose_after(&diag).unwrap(), id);
        assert_eq!(p.proj_y.compose_after(&diag).unwrap(), id);
    }

    #[test]
    fn wedge_counts() {
        let s1 = sp(Sphere(1));
        let w = wedge(&s1, &s1).unwrap();
        assert_eq!(w.object.cell_counts(), vec![1, 2]);
        let x = sp(Sphere(2));
        assert_eq!(wedge(&x, &sp(Point)).unwrap().object, x);
        assert!(matches!(wedge(&sp(Simplex(0)), &x), Err(Error::Precondition(_))));
    }

    #[test]
    fn smash_units() {
        let s1 = sp(Sphere(1));
        let s = smash(&sp(Sphere(0)), &s1).unwrap();
        assert_eq!(s.object.cell_counts(), s1.cell_counts());
        let z = smash(&s1, &sp(Point)).unwrap();
        assert_eq!(z.object.cell_counts(), vec![1]);
        let s11 = smash(&s1, &s1).unwrap();
        assert_eq!(s11.object.cell_counts(), vec![1, 1, 2]);
        assert_eq!(s11.object.euler_characteristic(), 2);
    }

    #[test]
    fn plus_construction() {
        let d1 = disjoint_basepoint(&sp(Simplex(1))).unwrap();
        assert_eq!(d1.cell_counts(), vec![3, 1]);
        assert_eq!(d1.name(d1.basepoint().unwrap()), "+");
    }
}
