//! Evidence that a map of simplicial sets is a weak equivalence: π₀,
//! homology in a range, and fundamental-group data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chain::{homology, mapping_cone, quasi_iso_report_in};
use crate::error::{Error, Result};
use crate::simpset::chains::chain_map_with;
use crate::simpset::groupoid::{groupoid_presentation, hom_counts, pi0, pi0_bijective, pi1_presentation};
use crate::simpset::{Cell, SimplicialMap, SimplicialSet};

/// Search budget for homomorphism counting (assignments per group).
pub const HOM_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupoidMatch {
    /// Normalized groupoid presentations coincide after transport.
    Equal,
    /// Presentations differ but π₁ abelianizes isomorphically on every
    /// component.
    Abelianized,
    /// No comparison was possible (π₀ already fails).
    Skipped,
    /// Abelianized fundamental groups differ.
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeqCertificate {
    pub pass: bool,
    pub pi0: bool,
    pub homology: BTreeMap<u32, bool>,
    pub groupoid: GroupoidMatch,
    /// Order → (homomorphism count from the source's π₁, from the
    /// target's), summed over components and over groups of that order.
    pub quotients: BTreeMap<u32, [u64; 2]>,
}

impl WeqCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

fn component_reps(x: &SimplicialSet) -> Vec<Cell> {
    let comps = pi0(x);
    let mut reps = vec![None; comps.count];
    for (v, &c) in comps.of_vertex.iter().enumerate() {
        reps[c].get_or_insert(Cell::new(0, v));
    }
    reps.into_iter().map(|r| r.expect("nonempty component")).collect()
}

fn summed_counts(x: &SimplicialSet, reps: &[Cell]) -> Result<BTreeMap<usize, u64>> {
    let mut total: BTreeMap<usize, u64> = BTreeMap::new();
    let mut seen: Option<Vec<usize>> = None;
    for &r in reps {
        let counts = hom_counts(&pi1_presentation(x, r)?, HOM_BUDGET);
        let orders: Vec<usize> = counts.keys().copied().collect();
        seen = Some(match seen {
            None => orders,
            Some(prev) => prev.into_iter().filter(|o| orders.contains(o)).collect(),
        });
        for (o, c) in counts {
            *total.entry(o).or_insert(0) += c;
        }
    }
    let keep = seen.unwrap_or_else(|| (1..=6).collect());
    total.retain(|o, _| keep.contains(o));
    Ok(total)
}

/// Builds the certificate for `f: X → Y` on degrees `0..=range`.
pub fn weq_certificate(f: &SimplicialMap, range: u32) -> Result<WeqCertificate> {
    let (x, y) = (f.source(), f.target());
    let pi0_ok = pi0_bijective(f);
    let cm = chain_map_with(f, false)?;
    let cone = mapping_cone(&cm);
    let report = quasi_iso_report_in(&cm, 0..=range as i64);
    let homology_flags: BTreeMap<u32, bool> = report
        .degrees
        .iter()
        .map(|v| (v.degree as u32, v.iso && homology(&cone, v.degree).is_zero()))
        .collect();

    let (groupoid, quotients) = if !pi0_ok {
        (GroupoidMatch::Skipped, BTreeMap::new())
    } else {
        let gx = groupoid_presentation(x).transport(f).canonical();
        let gy = groupoid_presentation(y).canonical();
        let reps = component_reps(x);
        let vmap = f.vertex_map();
        let target_reps: Vec<Cell> = reps.iter().map(|r| vmap[r.index]).collect();
        let groupoid = if gx == gy {
            GroupoidMatch::Equal
        } else {
            let mut same = true;
            for (r, t) in reps.iter().zip(&target_reps) {
                if pi1_presentation(x, *r)?.abelianization() != pi1_presentation(y, *t)?.abelianization() {
                    same = false;
                }
            }
            if same {
                GroupoidMatch::Abelianized
            } else {
                GroupoidMatch::Mismatch
            }
        };
        let cx = summed_counts(x, &reps)?;
        let cy = summed_counts(y, &target_reps)?;
        let quotients = cx
            .iter()
            .filter_map(|(o, a)| cy.get(o).map(|b| (*o as u32, [*a, *b])))
            .collect();
        (groupoid, quotients)
    };
    let pass = pi0_ok
        && homology_flags.values().all(|&b| b)
        && groupoid != GroupoidMatch::Mismatch
        && quotients.values().all(|[a, b]| a == b);
    Ok(WeqCertificate { pass, pi0: pi0_ok, homology: homology_flags, groupoid, quotients })
}

/// Rejects an unusable range before any work.
pub fn check_range(range: i64) -> Result<u32> {
    u32::try_from(range).map_err(|_| Error::Parameter(format!("range must be nonnegative, got {}", range)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hconstr::wrap::wrap;
    use crate::simpset::standard::{standard_space, StandardSpace::*};

    #[test]
    fn identity_passes() {
        let b = standard_space(Boundary(3)).unwrap();
        let c = weq_certificate(&SimplicialMap::identity(&b), 3).unwrap();
        assert!(c.pass);
        assert_eq!(c.groupoid, GroupoidMatch::Equal);
        assert_eq!(c.quotients[&1], [1, 1]);
    }

    #[test]
    fn contractible_collapse() {
        let d2 = standard_space(Simplex(2)).unwrap();
        let pt = standard_space(Simplex(0)).unwrap();
        let f = SimplicialMap::constant(&d2, &pt, Cell::new(0, 0)).unwrap();
        assert!(weq_certificate(&f, 3).unwrap().pass);
    }

    #[test]
    fn circle_counit() {
        let s1 = standard_space(Sphere(1)).unwrap();
        let w = wrap(&s1, 4).unwrap();
        let c = weq_certificate(&w.counit, 3).unwrap();
        assert!(c.pass, "{:?}", c);
        assert_eq!(c.groupoid, GroupoidMatch::Equal);
        // Hom(Z, G) = |G|: orders 2,3,5 have one group each
        assert_eq!(c.quotients[&5], [5, 5]);
    }

    #[test]
    fn circle_to_point_fails() {
        let s1 = standard_space(Sphere(1)).unwrap();
        let pt = standard_space(Point).unwrap();
        let f = SimplicialMap::constant(&s1, &pt, Cell::new(0, 0)).unwrap();
        let c = weq_certificate(&f, 2).unwrap();
        assert!(!c.pass);
        assert!(c.homology[&0]);
        assert!(!c.homology[&1]);
    }

    #[test]
    fn json_schema() {
        let b = standard_space(Boundary(2)).unwrap();
        let c = weq_certificate(&SimplicialMap::identity(&b), 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(v["groupoid"], "equal");
        assert_eq!(v["homology"]["1"], true);
        assert!(v["quotients"]["2"].is_array());
    }
}
