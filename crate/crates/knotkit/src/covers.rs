//! Branched and unbranched cyclic covers of link exteriors at the
//! presentation level.
//!
//! The balanced double cover is the kernel of the map sending every
//! meridian to 1 mod 2; the r-fold cyclic cover of a knot exterior is the
//! kernel of the meridian map mod r. Both are presented through
//! Reidemeister-Schreier rewriting of the coset action. Branched covers
//! adjoin, per boundary component, the rewriting of the meridian power
//! that bounds the filling disk: the meridian commutes with its own power,
//! so the lifted slope is well defined up to conjugacy in the kernel.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fpgroups::{
    coset_enumeration, reidemeister_schreier, simplify, smith_normal_form, AbelianInvariants,
    CosetTable, GroupPresentation, IntMat, Word, DEFAULT_EFFORT,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("cyclic covers require a one-component source")]
    MultiComponentCyclic,
    #[error("meridian marks are required")]
    MissingMeridians,
    #[error("source abelianization is not free on the meridian classes")]
    BadAbelianization,
    #[error("cover degree must be at least 2")]
    DegreeTooSmall,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoverKind {
    /// Double cover of the exterior sending every meridian to 1 mod 2.
    Balanced2,
    /// r-fold cyclic cover of a knot exterior.
    Cyclic(u32),
    /// Double branched cover of the sphere along the link.
    Branched2,
    /// r-fold cyclic branched cover along a knot.
    BranchedCyclic(u32),
}

impl CoverKind {
    fn degree(&self) -> u32 {
        match *self {
            CoverKind::Balanced2 | CoverKind::Branched2 => 2,
            CoverKind::Cyclic(r) | CoverKind::BranchedCyclic(r) => r,
        }
    }

    fn branched(&self) -> bool {
        matches!(self, CoverKind::Branched2 | CoverKind::BranchedCyclic(_))
    }

    fn knots_only(&self) -> bool {
        matches!(self, CoverKind::Cyclic(_) | CoverKind::BranchedCyclic(_))
    }

    pub fn parse(kind: &str, r: Option<u32>) -> Option<CoverKind> {
        match (kind, r) {
            ("balanced2", _) => Some(CoverKind::Balanced2),
            ("branched2", _) => Some(CoverKind::Branched2),
            ("cyclic", Some(r)) => Some(CoverKind::Cyclic(r)),
            ("branched-cyclic", Some(r)) => Some(CoverKind::BranchedCyclic(r)),
            _ => None,
        }
    }
}

/// Exact inverse of a unimodular integer matrix via the adjugate.
fn unimodular_inverse(m: &IntMat) -> Option<IntMat> {
    let n = m.rows;
    assert_eq!(n, m.cols);
    fn det(m: &IntMat, rows: &[usize], cols: &[usize]) -> BigInt {
        if rows.is_empty() {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        let rest: Vec<usize> = rows[1..].to_vec();
        for (idx, &c) in cols.iter().enumerate() {
            let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &m[(rows[0], c)] * det(m, &rest, &sub);
            if idx % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
    let all: Vec<usize> = (0..n).collect();
    let d = det(m, &all, &all);
    if d.abs() != BigInt::one() {
        return None;
    }
    let mut inv = IntMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let cof = det(m, &rows, &cols);
            let sign = if (i + j) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            inv[(i, j)] = sign * cof * &d; // d = +-1, multiplying divides
        }
    }
    Some(inv)
}

/// The meridian-sum homomorphism onto Z/r: every generator's image, derived
/// from its homology class written in the meridian basis.
fn meridian_sum_map(p: &GroupPresentation, r: u32) -> Result<Vec<u32>, CoverError> {
    let ms = p.meridians.as_ref().ok_or(CoverError::MissingMeridians)?;
    let n = ms.len();
    let smith = smith_normal_form(&p.exponent_matrix(), true);
    let v = smith.right.expect("requested transform");
    if !smith.d.iter().all(|d| d.is_one()) {
        return Err(CoverError::BadAbelianization);
    }
    let free_cols: Vec<usize> = (smith.rank..p.generators).collect();
    if free_cols.len() != n {
        return Err(CoverError::BadAbelianization);
    }
    // homology coordinates of a word: sum of generator rows of V
    let coords = |w: &Word| -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); n];
        for k in 1..=p.generators as u32 {
            let e = w.exponent_sum(k);
            if e != 0 {
                for (idx, &col) in free_cols.iter().enumerate() {
                    acc[idx] += BigInt::from(e) * &v[(k as usize - 1, col)];
                }
            }
        }
        acc
    };
    // meridian coordinate matrix must be a basis
    let mut mmat = IntMat::zero(n, n);
    for (i, m) in ms.iter().enumerate() {
        for (j, c) in coords(m).into_iter().enumerate() {
            mmat[(i, j)] = c;
        }
    }
    let minv = unimodular_inverse(&mmat).ok_or(CoverError::BadAbelianization)?;
    // sigma(g) = sum of meridian-basis coordinates of g, mod r
    let rr = BigInt::from(r);
    let mut images = Vec::with_capacity(p.generators);
    for k in 1..=p.generators as u32 {
        let c = coords(&Word::gen(k as i32));
        let mut total = BigInt::zero();
        for i in 0..n {
            for (j, cj) in c.iter().enumerate() {
                total += &minv[(i, j)] * cj;
            }
        }
        let val = ((total % &rr) + &rr) % &rr;
        images.push(u32::try_from(&val).expect("residue fits"));
    }
    Ok(images)
}

/// Presentation of the requested cover. Meridian marks of the result are
/// the lifted meridians (the rewritten boundary slopes).
pub fn cover_group(
    p: &GroupPresentation,
    kind: CoverKind,
) -> Result<GroupPresentation, CoverError> {
    let r = kind.degree();
    if r < 2 {
        return Err(CoverError::DegreeTooSmall);
    }
    let ms = p.meridians.as_ref().ok_or(CoverError::MissingMeridians)?;
    if kind.knots_only() && ms.len() != 1 {
        return Err(CoverError::MultiComponentCyclic);
    }
    let p = simplify(p, DEFAULT_EFFORT);
    let sigma = meridian_sum_map(&p, r)?;

    // coset table of the kernel: cosets are the residues mod r
    let images: Vec<Vec<u32>> = (0..r)
        .map(|c| sigma.iter().map(|&s| (c + s) % r).collect())
        .collect();
    let table = CosetTable::from_action(p.generators, &images);
    let data = reidemeister_schreier(&p, &table).expect("cyclic table is consistent");

    let meridians = p.meridians.as_ref().expect("checked above");
    let lifted: Vec<Word> = meridians
        .iter()
        .map(|m| data.rewrite_from(&m.pow(r as i32), 0))
        .collect();

    let mut relators = data.presentation.relators.clone();
    if kind.branched() {
        relators.extend(lifted.iter().cloned());
    }
    let cover =
        GroupPresentation::new(data.presentation.generators, relators).with_meridians(lifted);
    Ok(simplify(&cover, DEFAULT_EFFORT))
}

/// Integral homology of the requested cover.
pub fn cover_homology(
    p: &GroupPresentation,
    kind: CoverKind,
) -> Result<AbelianInvariants, CoverError> {
    Ok(cover_group(p, kind)?.abelian_invariants())
}

/// Enumerates the order of the orbifold quotient obtained by adjoining
/// meridian r-th powers, up to `limit` cosets; `None` when the limit is
/// hit.
pub fn orbifold_order(p: &GroupPresentation, r: u32, limit: usize) -> Option<usize> {
    let o = p.orbifold_quotient(r).ok()?;
    coset_enumeration(&o, &[], limit)
        .closed()
        .map(|t| t.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{samples, LinkDiagram};
    use crate::fpgroups::wirtinger;
    use crate::twobridge::{tb_diagram, SchubertForm};
    use num_bigint::BigInt;

    fn torsion(inv: &AbelianInvariants) -> Vec<u64> {
        inv.torsion_u64()
    }

    #[test]
    fn branched_double_cover_of_unknot_is_trivial() {
        let p = wirtinger(&LinkDiagram::unknot());
        let h = cover_homology(&p, CoverKind::Branched2).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn branched_double_covers_of_two_bridge_links_are_lens_spaces() {
        for (a, b) in [(3, 1), (5, 3), (7, 3), (8, 3)] {
            let s = SchubertForm::new(a, b).unwrap();
            let p = wirtinger(&tb_diagram(&s));
            let h = cover_homology(&p, CoverKind::Branched2).unwrap();
            assert_eq!(h.free_rank, 0, "b({a},{b})");
            assert_eq!(torsion(&h), vec![a as u64], "b({a},{b})");
        }
    }

    #[test]
    fn trefoil_cyclic_branched_covers() {
        let p = wirtinger(&samples::trefoil());
        let h2 = cover_homology(&p, CoverKind::BranchedCyclic(2)).unwrap();
        assert_eq!((h2.free_rank, torsion(&h2)), (0, vec![3]));
        let h3 = cover_homology(&p, CoverKind::BranchedCyclic(3)).unwrap();
        assert_eq!((h3.free_rank, torsion(&h3)), (0, vec![2, 2]));
    }

    #[test]
    fn figure_eight_branched_double_cover() {
        let p = wirtinger(&samples::figure_eight());
        let h = cover_homology(&p, CoverKind::BranchedCyclic(2)).unwrap();
        assert_eq!((h.free_rank, torsion(&h)), (0, vec![5]));
        // agrees with the balanced double cover filled along both slopes
        let h2 = cover_homology(&p, CoverKind::Branched2).unwrap();
        assert_eq!(torsion(&h2), vec![5]);
    }

    #[test]
    fn balanced_cover_of_hopf_link() {
        // the Hopf exterior is T^2 x I; its double cover is again T^2 x I
        let p = wirtinger(&samples::hopf());
        let h = cover_homology(&p, CoverKind::Balanced2).unwrap();
        assert_eq!(h.free_rank, 2);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn unbranched_cyclic_cover_of_trefoil() {
        // C_2 of a knot exterior: H_1 = Z + torsion of the branched cover
        let p = wirtinger(&samples::trefoil());
        let h = cover_homology(&p, CoverKind::Cyclic(2)).unwrap();
        assert_eq!(h.free_rank, 1);
        assert_eq!(torsion(&h), vec![3]);
    }

    #[test]
    fn cyclic_covers_reject_links() {
        let p = wirtinger(&samples::hopf());
        assert_eq!(
            cover_group(&p, CoverKind::Cyclic(2)).unwrap_err(),
            CoverError::MultiComponentCyclic
        );
    }

    #[test]
    fn meridians_required() {
        let p = GroupPresentation::new(1, vec![]);
        assert_eq!(
            cover_group(&p, CoverKind::Branched2).unwrap_err(),
            CoverError::MissingMeridians
        );
    }

    #[test]
    fn dihedral_orbifold_orders() {
        // pi-orbifold groups of two-bridge links are dihedral of order
        // 2 alpha, for knots and links alike
        for (a, b) in [(3, 1), (5, 3), (2, 1), (4, 1), (8, 3)] {
            let s = SchubertForm::new(a, b).unwrap();
            let p = wirtinger(&tb_diagram(&s));
            assert_eq!(
                orbifold_order(&p, 2, 10_000),
                Some(2 * a as usize),
                "b({a},{b})"
            );
        }
    }

    #[test]
    fn unimodular_inverse_works() {
        let m = IntMat::from_rows(vec![vec![2, 1], vec![1, 1]]);
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv[(0, 0)], BigInt::from(1));
        assert_eq!(inv[(0, 1)], BigInt::from(-1));
        assert_eq!(inv[(1, 0)], BigInt::from(-1));
        assert_eq!(inv[(1, 1)], BigInt::from(2));
        let sing = IntMat::from_rows(vec![vec![2, 0], vec![0, 1]]);
        assert!(unimodular_inverse(&sing).is_none());
    }
}
