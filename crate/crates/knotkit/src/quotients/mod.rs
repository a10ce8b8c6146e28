//! Finite-quotient fingerprints: homomorphism and epimorphism counts into
//! a fixed catalog of finite groups. Equal groups have equal fingerprints,
//! so a differing entry is a proof of non-isomorphism; the converse search
//! is a semi-decision and is always run under an order bound.

pub mod catalog;
pub mod homcount;

use serde::{Deserialize, Serialize};

pub use catalog::{catalog_group, catalog_up_to, Family, FiniteGroup};
pub use homcount::{count_homs, HomCount, SearchCeilingExceeded, DEFAULT_CEILING};

use crate::fpgroups::GroupPresentation;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FingerprintEntry {
    pub group: String,
    pub order: usize,
    /// `None` when the hom search exceeded its ceiling; such entries are
    /// excluded from comparisons.
    pub hom: Option<u64>,
    pub epi: Option<u64>,
}

/// Hom/epi counts into every catalog group up to an order bound, in
/// canonical catalog order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuotientFingerprint {
    pub bound: usize,
    pub entries: Vec<FingerprintEntry>,
}

impl QuotientFingerprint {
    /// First entry name where both fingerprints are known and differ.
    pub fn first_difference(&self, other: &QuotientFingerprint) -> Option<String> {
        for (a, b) in self.entries.iter().zip(&other.entries) {
            debug_assert_eq!(a.group, b.group);
            if let (Some(h1), Some(h2), Some(e1), Some(e2)) = (a.hom, b.hom, a.epi, b.epi) {
                if h1 != h2 || e1 != e2 {
                    return Some(a.group.clone());
                }
            }
        }
        None
    }
}

/// Computes the fingerprint of a presented group up to `order_bound`.
pub fn fingerprint(
    p: &GroupPresentation,
    order_bound: usize,
    ceiling: u128,
) -> QuotientFingerprint {
    assert!(order_bound >= 2);
    let entries = catalog_up_to(order_bound)
        .iter()
        .map(|g| {
            let counts = count_homs(p, g, ceiling).ok();
            FingerprintEntry {
                group: g.name.clone(),
                order: g.order,
                hom: counts.map(|c| c.homs),
                epi: counts.map(|c| c.epis),
            }
        })
        .collect();
    QuotientFingerprint {
        bound: order_bound,
        entries,
    }
}

/// Witness of a fingerprint separation: the first catalog group where the
/// two groups' counts differ.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Separation {
    pub group: String,
    pub order: usize,
    pub counts1: (u64, u64),
    pub counts2: (u64, u64),
}

/// Walks the catalog in schedule order (ascending order, dihedral groups
/// first within an order) and returns the first group whose hom/epi counts
/// differ between the two presentations, or `None` within the bound.
/// Entries whose search exceeds the ceiling are skipped, so a returned
/// separation is never a false positive.
pub fn first_distinguishing_group(
    p1: &GroupPresentation,
    p2: &GroupPresentation,
    order_bound: usize,
    ceiling: u128,
) -> Option<Separation> {
    for g in catalog_up_to(order_bound) {
        let (Ok(c1), Ok(c2)) = (count_homs(p1, &g, ceiling), count_homs(p2, &g, ceiling)) else {
            continue;
        };
        if c1 != c2 {
            return Some(Separation {
                group: g.name.clone(),
                order: g.order,
                counts1: (c1.homs, c1.epis),
                counts2: (c2.homs, c2.epis),
            });
        }
    }
    None
}

/// Re-runs the counts behind a separation witness; used to check reported
/// witnesses independently of the search that produced them.
pub fn verify_separation(
    p1: &GroupPresentation,
    p2: &GroupPresentation,
    sep: &Separation,
    ceiling: u128,
) -> bool {
    let Some(g) = catalog_group(&sep.group) else {
        return false;
    };
    let (Ok(c1), Ok(c2)) = (count_homs(p1, &g, ceiling), count_homs(p2, &g, ceiling)) else {
        return false;
    };
    (c1.homs, c1.epis) == sep.counts1 && (c2.homs, c2.epis) == sep.counts2 && c1 != c2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::samples;
    use crate::fpgroups::{simplify, wirtinger, DEFAULT_EFFORT};

    #[test]
    fn trefoil_vs_figure_eight_separated_at_order_six() {
        let t = simplify(&wirtinger(&samples::trefoil()), DEFAULT_EFFORT);
        let f = simplify(&wirtinger(&samples::figure_eight()), DEFAULT_EFFORT);
        let sep = first_distinguishing_group(&t, &f, 24, DEFAULT_CEILING).unwrap();
        assert_eq!(sep.order, 6);
        assert_eq!(sep.group, "D6"); // the order-6 dihedral group, aka S3
        assert_eq!(sep.counts1, (12, 6));
        assert_eq!(sep.counts2, (6, 0));
        assert!(verify_separation(&t, &f, &sep, DEFAULT_CEILING));
    }

    #[test]
    fn trefoil_vs_unknot_separated_at_order_six() {
        let t = simplify(&wirtinger(&samples::trefoil()), DEFAULT_EFFORT);
        let u = wirtinger(&crate::diagram::LinkDiagram::unknot());
        let sep = first_distinguishing_group(&t, &u, 6, DEFAULT_CEILING).unwrap();
        assert_eq!((sep.group.as_str(), sep.order), ("D6", 6));
    }

    #[test]
    fn same_presentation_never_separates() {
        let t = simplify(&wirtinger(&samples::trefoil()), DEFAULT_EFFORT);
        assert!(first_distinguishing_group(&t, &t, 16, DEFAULT_CEILING).is_none());
    }

    #[test]
    fn unknot_fingerprint_counts() {
        let u = wirtinger(&crate::diagram::LinkDiagram::unknot());
        let fp = fingerprint(&u, 6, DEFAULT_CEILING);
        // |Hom(Z, G)| = |G|; epimorphisms exist only onto cyclic groups,
        // phi(n) of them
        assert!(fp.entries.iter().all(|e| e.hom == Some(e.order as u64)));
        for e in &fp.entries {
            let expected = if e.group.starts_with('Z') {
                let n = e.order;
                (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64
            } else {
                0
            };
            assert_eq!(e.epi, Some(expected), "epi count into {}", e.group);
        }
    }

    #[test]
    fn fingerprint_json_is_stable() {
        let t = simplify(&wirtinger(&samples::trefoil()), DEFAULT_EFFORT);
        let fp = fingerprint(&t, 6, DEFAULT_CEILING);
        let s1 = serde_json::to_string(&fp).unwrap();
        let s2 = serde_json::to_string(&fingerprint(&t, 6, DEFAULT_CEILING)).unwrap();
        assert_eq!(s1, s2);
        assert!(s1.contains("\"group\":\"D6\""));
    }
}
