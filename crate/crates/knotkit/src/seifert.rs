//! Seifert invariants over the 2-sphere, homeomorphism tests, and the
//! upper-triangular normalization of torus gluing matrices.
//!
//! A fibration is recorded as the list of exceptional-fiber fractions
//! (0,0; b1/a1, ..., bn/an). Two such fibrations with at least three
//! exceptional fibers describe homeomorphic manifolds iff for some unit
//! eps the Euler numbers satisfy e = eps e' and the multisets of mod-1
//! residues match after scaling by eps.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Frac = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error("fewer than three exceptional fibers; use the lens space tests")]
    DegenerateFibration,
    #[error("intersection number {0} is not in {{1,2,3,4,6}}")]
    UnsupportedIntersectionNumber(i64),
    #[error("matrix lower-left entry {0} does not realize intersection number {1}")]
    IntersectionMismatch(i64, i64),
    #[error("matrix determinant {0} is not a unit")]
    NotUnimodular(i64),
}

/// Seifert invariants of a closed orientable fibration over the sphere.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeifertInvariants {
    pub pairs: Vec<Frac>,
}

impl SeifertInvariants {
    pub fn new(pairs: Vec<Frac>) -> Self {
        SeifertInvariants { pairs }
    }

    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        SeifertInvariants::new(pairs.iter().map(|&(n, d)| Frac::new(n, d)).collect())
    }

    /// Euler number: the exact sum of the fiber fractions.
    pub fn euler_number(&self) -> Frac {
        self.pairs.iter().sum()
    }

    /// Fibers with nonintegral fraction, the exceptional ones.
    pub fn exceptional(&self) -> impl Iterator<Item = &Frac> {
        self.pairs.iter().filter(|f| !f.is_integer())
    }

    /// Order of the first homology: |prod(denominators) * euler|, `None`
    /// when the Euler number vanishes (then the homology is infinite).
    pub fn homology_order(&self) -> Option<u64> {
        let e = self.euler_number();
        if e == Frac::new(0, 1) {
            return None;
        }
        let denoms: i64 = self.pairs.iter().map(|f| *f.denom()).product();
        let v = e * Frac::new(denoms, 1);
        assert!(v.is_integer());
        Some(v.to_integer().unsigned_abs())
    }

    pub fn negated(&self) -> SeifertInvariants {
        SeifertInvariants::new(self.pairs.iter().map(|f| -f).collect())
    }
}

impl std::fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(0,0;")?;
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {}/{}", p.numer(), p.denom())?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SfsComparison {
    OrientPreserving,
    OrientReversing,
    NotHomeo,
}

fn residues_mod_one(s: &SeifertInvariants, negate: bool) -> Vec<Frac> {
    let mut v: Vec<Frac> = s
        .exceptional()
        .map(|f| {
            let f = if negate { -*f } else { *f };
            f - f.floor()
        })
        .collect();
    v.sort();
    v
}

/// Fibration-level homeomorphism comparison for fibrations over the sphere
/// with at least three exceptional fibers.
pub fn sfs_equivalent(
    s1: &SeifertInvariants,
    s2: &SeifertInvariants,
) -> Result<SfsComparison, SeifertError> {
    if s1.exceptional().count() < 3 || s2.exceptional().count() < 3 {
        return Err(SeifertError::DegenerateFibration);
    }
    let preserved = s1.euler_number() == s2.euler_number()
        && residues_mod_one(s1, false) == residues_mod_one(s2, false);
    if preserved {
        return Ok(SfsComparison::OrientPreserving);
    }
    let reversed = s1.euler_number() == -s2.euler_number()
        && residues_mod_one(s1, false) == residues_mod_one(s2, true);
    if reversed {
        return Ok(SfsComparison::OrientReversing);
    }
    Ok(SfsComparison::NotHomeo)
}

/// An element of GL2(Z) written row-major.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GluingMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GluingMatrix {
    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &GluingMatrix) -> GluingMatrix {
        GluingMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// An upper-triangular unit (x z; 0 y) with x, y in {+1,-1}.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct UpperUnit {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl UpperUnit {
    pub fn matrix(&self) -> GluingMatrix {
        GluingMatrix {
            a: self.x,
            b: self.z,
            c: 0,
            d: self.y,
        }
    }
}

/// Normalizes a gluing matrix with |c| = n in {1,2,3,4,6} into (1 0; n 1)
/// by upper-triangular units: returns (q1, q2) with q2 * m * q1 = (1 0; n 1),
/// integer-exact. When both signs satisfy x2 a = 1 mod n, x2 = +1 is chosen.
pub fn normalize_gluing(m: &GluingMatrix, n: i64) -> Result<(UpperUnit, UpperUnit), SeifertError> {
    if ![1, 2, 3, 4, 6].contains(&n) {
        return Err(SeifertError::UnsupportedIntersectionNumber(n));
    }
    let det = m.det();
    if det.abs() != 1 {
        return Err(SeifertError::NotUnimodular(det));
    }
    if m.c.abs() != n {
        return Err(SeifertError::IntersectionMismatch(m.c, n));
    }
    // gcd(a, n) = 1 and the units mod n are exactly {+-1} for these n
    let x2 = if (m.a - 1).rem_euclid(n) == 0 { 1 } else { -1 };
    debug_assert_eq!((x2 * m.a - 1).rem_euclid(n), 0);
    let y2 = n / m.c;
    let y1 = y2 * x2 * det;
    let z1 = (1 - y1 * y2 * m.d) / n;
    let z2 = y2 * (1 - x2 * m.a) / n;
    let q1 = UpperUnit { x: 1, y: y1, z: z1 };
    let q2 = UpperUnit {
        x: x2,
        y: y2,
        z: z2,
    };
    let product = q2.matrix().mul(m).mul(&q1.matrix());
    debug_assert_eq!(
        product,
        GluingMatrix {
            a: 1,
            b: 0,
            c: n,
            d: 1
        }
    );
    Ok((q1, q2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sfs(pairs: &[(i64, i64)]) -> SeifertInvariants {
        SeifertInvariants::from_ints(pairs)
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(
            sfs(&[(-1, 2), (1, 3), (1, 5)]).euler_number(),
            Frac::new(1, 30)
        );
        assert_eq!(
            sfs(&[(1, 2), (-1, 4), (-1, 4)]).euler_number(),
            Frac::new(0, 1)
        );
        assert_eq!(sfs(&[]).euler_number(), Frac::new(0, 1));
        assert_eq!(
            sfs(&[(1, 2), (1, 3)]).negated().euler_number(),
            -sfs(&[(1, 2), (1, 3)]).euler_number()
        );
    }

    #[test]
    fn homology_orders() {
        assert_eq!(sfs(&[(-1, 2), (1, 3), (1, 5)]).homology_order(), Some(1));
        assert_eq!(sfs(&[(2, 3), (-1, 3), (-1, 3)]).homology_order(), None);
        assert_eq!(sfs(&[(-1, 2), (1, 2), (1, 3)]).homology_order(), Some(4));
    }

    #[test]
    fn sfs_comparisons() {
        let s = sfs(&[(2, 3), (-1, 3), (-1, 3)]);
        assert_eq!(
            sfs_equivalent(&s, &s).unwrap(),
            SfsComparison::OrientPreserving
        );
        let m = s.negated();
        assert_eq!(
            sfs_equivalent(&s, &m).unwrap(),
            SfsComparison::OrientReversing
        );
        let a = sfs(&[(1, 2), (1, 3), (1, 5)]);
        let b = sfs(&[(1, 2), (1, 3), (2, 5)]);
        assert_eq!(sfs_equivalent(&a, &b).unwrap(), SfsComparison::NotHomeo);
        // shifting a fiber by an integer while fixing the sum is a
        // different manifold; fixing both residues and sum is equality
        let c = sfs(&[(3, 2), (-2, 3), (1, 4)]);
        let c2 = sfs(&[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(c.euler_number(), c2.euler_number());
        assert_eq!(
            sfs_equivalent(&c, &c2).unwrap(),
            SfsComparison::OrientPreserving
        );
        assert_eq!(
            sfs_equivalent(&sfs(&[(1, 2), (1, 3)]), &a).unwrap_err(),
            SeifertError::DegenerateFibration
        );
    }

    #[test]
    fn symmetric_comparison() {
        let a = sfs(&[(-1, 2), (1, 3), (1, 5)]);
        let b = a.negated();
        assert_eq!(
            sfs_equivalent(&a, &b).unwrap(),
            sfs_equivalent(&b, &a).unwrap()
        );
    }

    #[test]
    fn gluing_identity_case() {
        let m = GluingMatrix {
            a: 1,
            b: 0,
            c: 3,
            d: 1,
        };
        let (q1, q2) = normalize_gluing(&m, 3).unwrap();
        assert_eq!(q1, UpperUnit { x: 1, y: 1, z: 0 });
        assert_eq!(q2, UpperUnit { x: 1, y: 1, z: 0 });
    }

    #[test]
    fn gluing_worked_example() {
        let m = GluingMatrix {
            a: 2,
            b: 1,
            c: 3,
            d: 2,
        };
        let (q1, q2) = normalize_gluing(&m, 3).unwrap();
        assert_eq!(q2, UpperUnit { x: -1, y: 1, z: 1 });
        assert_eq!(q1, UpperUnit { x: 1, y: -1, z: 1 });
        let prod = q2.matrix().mul(&m).mul(&q1.matrix());
        assert_eq!(
            prod,
            GluingMatrix {
                a: 1,
                b: 0,
                c: 3,
                d: 1
            }
        );
    }

    #[test]
    fn gluing_n_one() {
        let m = GluingMatrix {
            a: 0,
            b: 1,
            c: 1,
            d: 0,
        };
        let (q1, q2) = normalize_gluing(&m, 1).unwrap();
        let prod = q2.matrix().mul(&m).mul(&q1.matrix());
        assert_eq!(
            prod,
            GluingMatrix {
                a: 1,
                b: 0,
                c: 1,
                d: 1
            }
        );
    }

    #[test]
    fn gluing_rejections() {
        let m = GluingMatrix {
            a: 2,
            b: 1,
            c: 3,
            d: 2,
        };
        assert_eq!(
            normalize_gluing(&m, 5).unwrap_err(),
            SeifertError::UnsupportedIntersectionNumber(5)
        );
        assert_eq!(
            normalize_gluing(&m, 2).unwrap_err(),
            SeifertError::IntersectionMismatch(3, 2)
        );
        let bad = GluingMatrix {
            a: 2,
            b: 2,
            c: 2,
            d: 2,
        };
        assert_eq!(
            normalize_gluing(&bad, 2).unwrap_err(),
            SeifertError::NotUnimodular(0)
        );
    }
}
