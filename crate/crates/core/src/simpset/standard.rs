use std::collections::HashMap;

use super::set::{Cell, SimplexRef, SimplicialSet};
use crate::delta;
use crate::error::{Error, Result};

/// Named finite simplicial sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardSpace {
    /// `Δⁿ`, unpointed.
    Simplex(usize),
    /// `∂Δⁿ`, unpointed.
    Boundary(usize),
    /// `Λⁿ_k`: `∂Δⁿ` without the face opposite vertex `k`.
    Horn(usize, usize),
    /// `Sⁱ = Δⁱ/∂Δⁱ`, pointed, one nondegenerate cell in dimensions `0` and `i`
    /// (two vertices when `i = 0`).
    Sphere(usize),
    /// One pointed vertex.
    Point,
    /// `Δ¹` pointed at vertex 0.
    IntervalPointed,
}

fn face_name(n: usize, verts: &[usize]) -> String {
    let sep = if n < 10 { "" } else { "_" };
    let body: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
    format!("v{}", body.join(sep))
}

/// Sub-simplicial set of `Δⁿ` spanned by the faces accepted by `keep`
/// (which must be closed under taking faces).
fn simplicial_complex(n: usize, keep: impl Fn(&[usize]) -> bool) -> Result<SimplicialSet> {
    let mut b = SimplicialSet::builder();
    let mut index: HashMap<Vec<usize>, Cell> = HashMap::new();
    for k in 0..=n {
        for verts in delta::subsets(n + 1, k + 1) {
            if !keep(&verts) {
                continue;
            }
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let mut f = verts.clone();
                        f.remove(i);
                        SimplexRef::nondeg(index[&f])
                    })
                    .collect()
            };
            let c = b.add_cell(k, face_name(n, &verts), faces)?;
            index.insert(verts, c);
        }
    }
    b.build()
}

pub fn standard_space(kind: StandardSpace) -> Result<SimplicialSet> {
    match kind {
        StandardSpace::Simplex(n) => simplicial_complex(n, |_| true),
        StandardSpace::Boundary(n) => simplicial_complex(n, |v| v.len() <= n),
        StandardSpace::Horn(n, k) => {
            if k > n || n == 0 {
                return Err(Error::Parameter(format!("horn ({}, {}) needs 0 ≤ k ≤ n and n ≥ 1", n, k)));
            }
            simplicial_complex(n, |v| v.len() < n || (v.len() == n && v.contains(&k)))
        }
        StandardSpace::Sphere(i) => {
            let mut b = SimplicialSet::builder();
            let base = b.add_cell(0, "*", vec![])?;
            let faces = if i == 0 { Vec::new() } else { vec![SimplexRef::degenerate_vertex(base, i - 1); i + 1] };
            b.add_cell(i, "x", faces)?;
            b.set_basepoint("*");
            b.build()
        }
        StandardSpace::Point => {
            let mut b = SimplicialSet::builder();
            b.add_cell(0, "*", vec![])?;
            b.set_basepoint("*");
            b.build()
        }
        StandardSpace::IntervalPointed => {
            let d1 = simplicial_complex(1, |_| true)?;
            with_basepoint(&d1, "v0")
        }
    }
}

/// Same simplicial set with a chosen basepoint.
pub fn with_basepoint(x: &SimplicialSet, name: &str) -> Result<SimplicialSet> {
    let mut b = SimplicialSet::builder();
    for c in x.all_cells() {
        b.add_cell(c.dim, x.name(c), x.faces_of(c).to_vec())?;
    }
    b.set_basepoint(name);
    b.build_unchecked()
}

/// Same simplicial set with the basepoint forgotten.
pub fn unpointed(x: &SimplicialSet) -> SimplicialSet {
    let mut b = SimplicialSet::builder();
    for c in x.all_cells() {
        b.add_cell(c.dim, x.name(c), x.faces_of(c).to_vec()).expect("copy of a valid set");
    }
    b.build_unchecked().expect("copy of a valid set")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_counts() {
        assert_eq!(standard_space(StandardSpace::Boundary(1)).unwrap().cell_counts(), vec![2]);
        assert_eq!(standard_space(StandardSpace::Horn(2, 1)).unwrap().cell_counts(), vec![3, 2]);
        assert_eq!(standard_space(StandardSpace::Simplex(3)).unwrap().cell_counts(), vec![4, 6, 4, 1]);
        assert_eq!(standard_space(StandardSpace::Boundary(3)).unwrap().cell_counts(), vec![4, 6, 4]);
        assert!(standard_space(StandardSpace::Horn(2, 3)).is_err());
        assert!(standard_space(StandardSpace::Boundary(0)).unwrap().top_dim().is_none());
    }

    #[test]
    fn horn_misses_opposite_face() {
        let h = standard_space(StandardSpace::Horn(2, 1)).unwrap();
        assert!(h.cell("v01").is_some());
        assert!(h.cell("v12").is_some());
        assert!(h.cell("v02").is_none());
    }

    #[test]
    fn circle() {
        let s1 = standard_space(StandardSpace::Sphere(1)).unwrap();
        assert_eq!(s1.cell_counts(), vec![1, 1]);
        let base = s1.basepoint().unwrap();
        for f in s1.faces_of(Cell::new(1, 0)) {
            assert_eq!(*f, SimplexRef::nondeg(base));
        }
        let s0 = standard_space(StandardSpace::Sphere(0)).unwrap();
        assert_eq!(s0.cell_counts(), vec![2]);
        assert!(standard_space(StandardSpace::Sphere(3)).unwrap().validate().is_ok());
    }
}
