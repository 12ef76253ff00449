//! Path components, fundamental groupoids and fundamental groups.

use std::collections::{BTreeMap, VecDeque};

use super::map::SimplicialMap;
use super::set::{Cell, SimplexRef, SimplicialSet};
use crate::chain::{HomologyGroup, IntMatrix};
use crate::error::{Error, Result};

/// Path components: the coequalizer of `d₀, d₁: X₁ ⇉ X₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Component id of every vertex; ids are numbered by first vertex.
    pub of_vertex: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn of_cell(&self, x: &SimplicialSet, c: Cell) -> usize {
        self.of_vertex[x.vertex(&SimplexRef::nondeg(c), 0).index]
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

pub fn pi0(x: &SimplicialSet) -> Components {
    let n = x.count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    for e in x.cells(1) {
        let (s, t) = x.endpoints(&SimplexRef::nondeg(e));
        let (a, b) = (find(&mut parent, s.index), find(&mut parent, t.index));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut of_vertex = Vec::with_capacity(n);
    for v in 0..n {
        let r = find(&mut parent, v);
        let next = ids.len();
        of_vertex.push(*ids.entry(r).or_insert(next));
    }
    Components { count: ids.len(), of_vertex }
}

/// Whether `f` induces a bijection on path components.
pub fn pi0_bijective(f: &SimplicialMap) -> bool {
    let a = pi0(f.source());
    let b = pi0(f.target());
    if a.count != b.count {
        return false;
    }
    let mut image = vec![None; a.count];
    for (v, t) in f.vertex_map().into_iter().enumerate() {
        let tc = b.of_vertex[t.index];
        match image[a.of_vertex[v]] {
            None => image[a.of_vertex[v]] = Some(tc),
            Some(prev) if prev != tc => return false,
            _ => {}
        }
    }
    let mut hit: Vec<usize> = image.into_iter().flatten().collect();
    hit.sort();
    hit.dedup();
    hit.len() == b.count
}

/// An arrow of the fundamental groupoid presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    /// Identity of a vertex.
    Id(usize),
    /// Nondegenerate edge.
    Gen(usize),
}

/// Objects `X₀`, generators the nondegenerate edges, one relation
/// `g(d₁τ) = g(d₀τ)∘g(d₂τ)` per nondegenerate 2-cell `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidPresentation {
    pub objects: usize,
    /// `(edge, source, target)` as vertex indices.
    pub generators: Vec<(usize, usize, usize)>,
    /// `(g(d₁τ), g(d₀τ), g(d₂τ))`.
    pub relations: Vec<(Arrow, Arrow, Arrow)>,
}

fn arrow_of(s: &SimplexRef) -> Arrow {
    if s.is_nondegenerate() {
        Arrow::Gen(s.base.index)
    } else {
        Arrow::Id(s.base.index)
    }
}

pub fn groupoid_presentation(x: &SimplicialSet) -> GroupoidPresentation {
    let generators = x
        .cells(1)
        .map(|e| {
            let (s, t) = x.endpoints(&SimplexRef::nondeg(e));
            (e.index, s.index, t.index)
        })
        .collect();
    let relations = x
        .cells(2)
        .map(|t| {
            let f = x.faces_of(t);
            (arrow_of(&f[1]), arrow_of(&f[0]), arrow_of(&f[2]))
        })
        .collect();
    GroupoidPresentation { objects: x.count(0), generators, relations }
}

impl GroupoidPresentation {
    fn source_of(&self, a: Arrow) -> usize {
        match a {
            Arrow::Id(v) => v,
            Arrow::Gen(g) => self.generators.iter().find(|(e, _, _)| *e == g).map(|t| t.1).expect("known generator"),
        }
    }

    /// Collapses generators forced to be identities (`g = g∘g`, or a
    /// relation with a single non-identity arrow, or `g = g∘h`, `g = h∘g`)
    /// and drops relations that hold trivially.
    pub fn normalized(&self) -> GroupoidPresentation {
        let mut subst: BTreeMap<usize, Arrow> = BTreeMap::new();
        let resolve = |a: Arrow, subst: &BTreeMap<usize, Arrow>| match a {
            Arrow::Gen(g) => subst.get(&g).copied().unwrap_or(a),
            id => id,
        };
        loop {
            let mut changed = false;
            for &(a, b, c) in &self.relations {
                let (a, b, c) = (resolve(a, &subst), resolve(b, &subst), resolve(c, &subst));
                let gens: Vec<Arrow> = [a, b, c].into_iter().filter(|x| matches!(x, Arrow::Gen(_))).collect();
                let collapse = match gens.len() {
                    1 => Some(gens[0]),
                    3 if a == b && b == c => Some(a),
                    2 if a == b => Some(c),
                    2 if a == c => Some(b),
                    _ => None,
                };
                if let Some(Arrow::Gen(g)) = collapse {
                    let v = self.source_of(Arrow::Gen(g));
                    subst.insert(g, Arrow::Id(v));
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let generators = self.generators.iter().copied().filter(|(e, _, _)| !subst.contains_key(e)).collect();
        let mut relations: Vec<(Arrow, Arrow, Arrow)> = self
            .relations
            .iter()
            .map(|&(a, b, c)| (resolve(a, &subst), resolve(b, &subst), resolve(c, &subst)))
            .filter(|&(a, b, c)| {
                let trivial = (a == b && matches!(c, Arrow::Id(_))) || (a == c && matches!(b, Arrow::Id(_)));
                !trivial
            })
            .collect();
        relations.sort();
        relations.dedup();
        GroupoidPresentation { objects: self.objects, generators, relations }
    }

    /// Image under `f`: objects and generators pushed forward, degenerate
    /// images becoming identities. Generators are re-read from the target.
    pub fn transport(&self, f: &SimplicialMap) -> GroupoidPresentation {
        let y = f.target();
        let vmap = f.vertex_map();
        let push = |a: Arrow| -> Arrow {
            match a {
                Arrow::Id(v) => Arrow::Id(vmap[v].index),
                Arrow::Gen(e) => arrow_of(f.image(Cell::new(1, e))),
            }
        };
        let mut generators: Vec<(usize, usize, usize)> = self
            .generators
            .iter()
            .filter_map(|&(e, s, t)| match push(Arrow::Gen(e)) {
                Arrow::Gen(g) => Some((g, vmap[s].index, vmap[t].index)),
                Arrow::Id(_) => None,
            })
            .collect();
        generators.sort();
        generators.dedup();
        let relations = self.relations.iter().map(|&(a, b, c)| (push(a), push(b), push(c))).collect();
        GroupoidPresentation { objects: y.count(0), generators, relations }
    }

    /// Canonical form for comparison: sorted generators and relations.
    pub fn canonical(&self) -> GroupoidPresentation {
        let mut g = self.normalized();
        g.generators.sort();
        g.relations.sort();
        g
    }
}

/// Finitely presented group; a relator is a word of `(generator, power)`
/// letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i64)>>,
}

fn reduce(word: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(word.len());
    for &(g, p) in word {
        if p == 0 {
            continue;
        }
        match out.last_mut() {
            Some((h, q)) if *h == g => {
                *q += p;
                if *q == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, p)),
        }
    }
    out
}

fn cyclic_reduce(word: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut w = reduce(word);
    loop {
        if w.len() >= 2 && w[0].0 == w[w.len() - 1].0 {
            let (g, p) = w.pop().expect("nonempty");
            w[0].1 += p;
            if w[0].1 == 0 {
                w.remove(0);
            }
            let _ = g;
            w = reduce(&w);
        } else {
            return w;
        }
    }
}

fn inverse(word: &[(usize, i64)]) -> Vec<(usize, i64)> {
    word.iter().rev().map(|&(g, p)| (g, -p)).collect()
}

fn power(word: &[(usize, i64)], p: i64) -> Vec<(usize, i64)> {
    let base = if p < 0 { inverse(word) } else { word.to_vec() };
    let mut out = Vec::new();
    for _ in 0..p.unsigned_abs() {
        out.extend(base.iter().copied());
    }
    out
}

impl GroupPresentation {
    pub fn free_reduce(&self) -> GroupPresentation {
        let relators = self.relators.iter().map(|r| reduce(r)).filter(|r| !r.is_empty()).collect();
        GroupPresentation { generators: self.generators.clone(), relators }
    }

    /// `Z^gens / (exponent sums of the relators)`.
    pub fn abelianization(&self) -> HomologyGroup {
        let n = self.generators.len();
        let mut m = IntMatrix::zeros(n, self.relators.len());
        for (j, r) in self.relators.iter().enumerate() {
            for &(g, p) in r {
                let cur = m.get(g, j).clone();
                m.set(g, j, cur + crate::chain::int(p));
            }
        }
        HomologyGroup::cokernel(&m)
    }

    /// Tietze simplification: repeatedly eliminates a generator occurring
    /// exactly once, with exponent ±1, in some relator.
    pub fn simplify(&self) -> GroupPresentation {
        let mut gens: Vec<Option<String>> = self.generators.iter().cloned().map(Some).collect();
        let mut rels: Vec<Vec<(usize, i64)>> = self.relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
        loop {
            rels.sort_by_key(|r| r.len());
            rels.dedup();
            let mut pick = None;
            'search: for (ri, r) in rels.iter().enumerate() {
                for (pos, &(g, p)) in r.iter().enumerate() {
                    if p.abs() == 1 && r.iter().filter(|(h, _)| *h == g).count() == 1 {
                        pick = Some((ri, pos));
                        break 'search;
                    }
                }
            }
            let Some((ri, pos)) = pick else { break };
            let r = rels.remove(ri);
            let (g, p) = r[pos];
            let u = &r[..pos];
            let v = &r[pos + 1..];
            // u g^p v = 1
            let value: Vec<(usize, i64)> = if p == 1 {
                let mut w = inverse(u);
                w.extend(inverse(v));
                w
            } else {
                let mut w = v.to_vec();
                w.extend(u.iter().copied());
                w
            };
            let value = reduce(&value);
            rels = rels
                .into_iter()
                .map(|rel| {
                    let mut out = Vec::new();
                    for &(h, q) in &rel {
                        if h == g {
                            out.extend(power(&value, q));
                        } else {
                            out.push((h, q));
                        }
                    }
                    cyclic_reduce(&out)
                })
                .filter(|r| !r.is_empty())
                .collect();
            gens[g] = None;
        }
        // renumber surviving generators
        let mut new_index = vec![usize::MAX; gens.len()];
        let mut names = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if let Some(name) = g {
                new_index[i] = names.len();
                names.push(name.clone());
            }
        }
        let relators = rels.into_iter().map(|r| r.into_iter().map(|(g, p)| (new_index[g], p)).collect()).collect();
        GroupPresentation { generators: names, relators }
    }

    /// Number of homomorphisms into a finite group, by backtracking over
    /// generator images. `None` when the search space exceeds `budget`.
    pub fn hom_count(&self, group: &FiniteGroup, budget: u64) -> Option<u64> {
        let n = self.generators.len();
        let space = (group.order() as u64).checked_pow(n as u32)?;
        if space > budget {
            return None;
        }
        // relators checked as soon as their last generator is assigned
        let mut by_last: Vec<Vec<&Vec<(usize, i64)>>> = vec![Vec::new(); n.max(1)];
        let mut always = Vec::new();
        for r in &self.relators {
            match r.iter().map(|(g, _)| *g).max() {
                Some(m) => by_last[m].push(r),
                None => always.push(r),
            }
        }
        let mut assign = vec![0usize; n];
        fn go(k: usize, n: usize, assign: &mut [usize], by_last: &[Vec<&Vec<(usize, i64)>>], g: &FiniteGroup) -> u64 {
            if k == n {
                return 1;
            }
            let mut total = 0;
            for e in 0..g.order() {
                assign[k] = e;
                if by_last[k].iter().all(|r| g.evaluate(r, assign) == g.identity()) {
                    total += go(k + 1, n, assign, by_last, g);
                }
            }
            total
        }
        Some(go(0, n, &mut assign, &by_last, group))
    }
}

/// A finite group by multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    fn from_elements<T: Clone + PartialEq>(name: &str, elems: Vec<T>, mul: impl Fn(&T, &T) -> T) -> Self {
        let idx = |t: &T| elems.iter().position(|e| e == t).expect("closed under multiplication");
        let table: Vec<Vec<usize>> = elems.iter().map(|a| elems.iter().map(|b| idx(&mul(a, b))).collect()).collect();
        let identity = (0..elems.len()).find(|&e| (0..elems.len()).all(|a| table[e][a] == a)).expect("identity");
        let inverse = (0..elems.len()).map(|a| (0..elems.len()).find(|&b| table[a][b] == identity).expect("inverse")).collect();
        FiniteGroup { name: name.to_string(), table, inverse, identity }
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_elements(&format!("Z{}", n), (0..n).collect(), |a, b| (a + b) % n)
    }

    pub fn klein() -> Self {
        let e: Vec<(usize, usize)> = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
        Self::from_elements("Z2xZ2", e, |a, b| ((a.0 + b.0) % 2, (a.1 + b.1) % 2))
    }

    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        Self::from_elements("S3", perms, |a, b| [a[b[0]], a[b[1]], a[b[2]]])
    }

    /// Every group of order at most 6, up to isomorphism.
    pub fn all_up_to_six() -> Vec<FiniteGroup> {
        vec![
            Self::cyclic(1),
            Self::cyclic(2),
            Self::cyclic(3),
            Self::cyclic(4),
            Self::klein(),
            Self::cyclic(5),
            Self::cyclic(6),
            Self::symmetric3(),
        ]
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    fn evaluate(&self, word: &[(usize, i64)], assign: &[usize]) -> usize {
        let mut acc = self.identity;
        for &(g, p) in word {
            let base = if p < 0 { self.inverse[assign[g]] } else { assign[g] };
            for _ in 0..p.unsigned_abs() {
                acc = self.mul(acc, base);
            }
        }
        acc
    }
}

/// Homomorphism counts into all groups of each order `1..=6`, summed per
/// order. Orders whose search exceeds the budget are omitted.
pub fn hom_counts(p: &GroupPresentation, budget: u64) -> BTreeMap<usize, u64> {
    let simple = p.simplify();
    let mut out: BTreeMap<usize, u64> = BTreeMap::new();
    let mut skipped = Vec::new();
    for g in FiniteGroup::all_up_to_six() {
        match simple.hom_count(&g, budget) {
            Some(c) => *out.entry(g.order()).or_insert(0) += c,
            None => skipped.push(g.order()),
        }
    }
    for o in skipped {
        out.remove(&o);
    }
    out
}

/// Fundamental group at `base` by contracting a BFS spanning tree of its
/// component. Generators are the non-tree nondegenerate edges; each
/// nondegenerate 2-cell `τ` gives the relator `e(d₂τ)·e(d₀τ)·e(d₁τ)⁻¹`.
pub fn pi1_presentation(x: &SimplicialSet, base: Cell) -> Result<GroupPresentation> {
    if base.dim != 0 || !x.contains(base) {
        return Err(Error::Parameter("base must be a 0-cell of the simplicial set".into()));
    }
    let comps = pi0(x);
    let comp = comps.of_vertex[base.index];
    let edges: Vec<(Cell, Cell, Cell)> = x
        .cells(1)
        .map(|e| {
            let (s, t) = x.endpoints(&SimplexRef::nondeg(e));
            (e, s, t)
        })
        .filter(|(_, s, _)| comps.of_vertex[s.index] == comp)
        .collect();
    let mut in_tree = vec![false; x.count(1)];
    let mut seen = vec![false; x.count(0)];
    seen[base.index] = true;
    let mut queue = VecDeque::from([base.index]);
    while let Some(v) = queue.pop_front() {
        for &(e, s, t) in &edges {
            let other = if s.index == v {
                t.index
            } else if t.index == v {
                s.index
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                in_tree[e.index] = true;
                queue.push_back(other);
            }
        }
    }
    let mut gen_of = vec![None; x.count(1)];
    let mut generators = Vec::new();
    for &(e, _, _) in &edges {
        if !in_tree[e.index] {
            gen_of[e.index] = Some(generators.len());
            generators.push(x.name(e).to_string());
        }
    }
    let letter = |s: &SimplexRef, p: i64| -> Option<(usize, i64)> {
        if !s.is_nondegenerate() {
            return None;
        }
        gen_of[s.base.index].map(|g| (g, p))
    };
    let mut relators = Vec::new();
    for t in x.cells(2) {
        if comps.of_cell(x, t) != comp {
            continue;
        }
        let f = x.faces_of(t);
        let word: Vec<(usize, i64)> = [letter(&f[2], 1), letter(&f[0], 1), letter(&f[1], -1)].into_iter().flatten().collect();
        let word = reduce(&word);
        if !word.is_empty() {
            relators.push(word);
        }
    }
    Ok(GroupPresentation { generators, relators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::standard::{standard_space, StandardSpace::*};

    #[test]
    fn components() {
        assert_eq!(pi0(&standard_space(Sphere(0)).unwrap()).count, 2);
        assert_eq!(pi0(&standard_space(Boundary(2)).unwrap()).count, 1);
    }

    #[test]
    fn groupoid_counts() {
        let g = groupoid_presentation(&standard_space(Simplex(1)).unwrap());
        assert_eq!((g.objects, g.generators.len(), g.relations.len()), (2, 1, 0));
        let g = groupoid_presentation(&standard_space(Boundary(2)).unwrap());
        assert_eq!((g.objects, g.generators.len(), g.relations.len()), (3, 3, 0));
    }

    #[test]
    fn fundamental_groups() {
        let b = standard_space(Boundary(2)).unwrap();
        let p = pi1_presentation(&b, Cell::new(0, 0)).unwrap();
        assert_eq!((p.generators.len(), p.relators.len()), (1, 0));
        assert_eq!(p.abelianization(), HomologyGroup::free(1));
        let d = standard_space(Simplex(2)).unwrap();
        let p = pi1_presentation(&d, Cell::new(0, 0)).unwrap().simplify();
        assert!(p.generators.is_empty());
    }

    #[test]
    fn projective_plane_relator() {
        let mut b = SimplicialSet::builder();
        let v = b.add_cell(0, "v", vec![]).unwrap();
        let a = b.add_cell(1, "a", vec![SimplexRef::nondeg(v), SimplexRef::nondeg(v)]).unwrap();
        b.add_cell(2, "t", vec![SimplexRef::nondeg(a), SimplexRef::degenerate_vertex(v, 1), SimplexRef::nondeg(a)]).unwrap();
        let x = b.build().unwrap();
        let p = pi1_presentation(&x, v).unwrap();
        assert_eq!(p.relators, vec![vec![(0, 2)]]);
        assert_eq!(p.abelianization(), HomologyGroup::from_cyclic_orders(0, &[crate::chain::int(2)]));
        let counts = hom_counts(&p, 1_000_000);
        // Hom(Z/2, G) counts elements of order dividing 2
        assert_eq!(counts[&2], 2);
        assert_eq!(counts[&6], 2 + 4);
    }

    #[test]
    fn tietze_elimination() {
        let p = GroupPresentation { generators: vec!["a".into(), "b".into()], relators: vec![vec![(0, 1), (1, -1)], vec![(1, 3)]] };
        let s = p.simplify();
        assert_eq!(s.generators.len(), 1);
        assert_eq!(s.relators, vec![vec![(0, 3)]]);
        assert_eq!(s.hom_count(&FiniteGroup::cyclic(3), 1000), Some(3));
        assert_eq!(s.hom_count(&FiniteGroup::symmetric3(), 1000), Some(3));
    }

    #[test]
    fn degenerate_edge_is_identity() {
        let mut b = SimplicialSet::builder();
        let v = b.add_cell(0, "v", vec![]).unwrap();
        let g = b.add_cell(1, "g", vec![SimplexRef::nondeg(v), SimplexRef::nondeg(v)]).unwrap();
        let gg = SimplexRef::nondeg(g);
        b.add_cell(2, "t", vec![gg.clone(), gg.clone(), gg]).unwrap();
        let x = b.build().unwrap();
        let n = groupoid_presentation(&x).normalized();
        assert!(n.generators.is_empty());
        assert!(n.relations.is_empty());
    }
}
