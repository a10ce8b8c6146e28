//! Montesinos normal forms M(p1/q1, ..., pn/qn).
//!
//! A form is a list of nonzero reduced fractions; with two or more tangles
//! no fraction is an integer (integral tangles merge into a neighbor).
//! Classification for length >= 2: equal length, equal fraction sum, and
//! matching mod-1 residue sequences up to cyclic rotation and reversal.
//! The double branched cover is the Seifert fibration over the sphere with
//! the same fraction list.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::LinkDiagram;
use crate::seifert::{Frac, SeifertInvariants};
use crate::tangle::tangle_closure;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MontesinosError {
    #[error("infinite tangle slope: the link splits as a connected sum")]
    InfinitySlope,
    #[error("no tangles left after normalization")]
    EmptyForm,
    #[error("too few tangles for this classification; route through the Schubert form routines")]
    TooFewTangles,
    #[error("operation requires a graph-manifold form")]
    NotGraphType,
    #[error("cannot parse `{0}` as a Montesinos form")]
    Parse(String),
}

/// A validated Montesinos form.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MontesinosForm {
    tangles: Vec<Frac>,
}

impl MontesinosForm {
    /// Normalizes a fraction list: zero slopes are dropped, integral
    /// tangles merge into their right neighbor (the last one into its left
    /// neighbor), infinite slopes are rejected.
    pub fn normalize(fractions: &[(i64, i64)]) -> Result<Self, MontesinosError> {
        if fractions.iter().any(|&(_, q)| q == 0) {
            return Err(MontesinosError::InfinitySlope);
        }
        let mut fr: Vec<Frac> = fractions
            .iter()
            .map(|&(p, q)| Frac::new(p, q))
            .filter(|f| *f != Frac::new(0, 1))
            .collect();
        // merge integral tangles while the list has company for them
        loop {
            let Some(i) = fr.iter().position(|f| f.is_integer()) else {
                break;
            };
            if fr.len() == 1 {
                break;
            }
            let v = fr.remove(i);
            let j = if i < fr.len() { i } else { i - 1 };
            fr[j] += v;
            fr.retain(|f| *f != Frac::new(0, 1));
            if fr.is_empty() {
                return Err(MontesinosError::EmptyForm);
            }
        }
        if fr.is_empty() {
            return Err(MontesinosError::EmptyForm);
        }
        Ok(MontesinosForm { tangles: fr })
    }

    pub fn tangles(&self) -> &[Frac] {
        &self.tangles
    }

    pub fn len(&self) -> usize {
        self.tangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tangles.is_empty()
    }

    pub fn sum(&self) -> Frac {
        self.tangles.iter().sum()
    }

    /// Text form `M(3/2,-2/3,1/4)`; integer entries may omit the slash.
    pub fn parse(text: &str) -> Result<Self, MontesinosError> {
        let t = text.trim();
        let inner = t
            .strip_prefix("M(")
            .or_else(|| t.strip_prefix("m("))
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| MontesinosError::Parse(text.into()))?;
        let mut fractions = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            let (p, q) = match part.split_once('/') {
                Some((a, b)) => (
                    a.trim()
                        .parse()
                        .map_err(|_| MontesinosError::Parse(text.into()))?,
                    b.trim()
                        .parse()
                        .map_err(|_| MontesinosError::Parse(text.into()))?,
                ),
                None => (
                    part.parse()
                        .map_err(|_| MontesinosError::Parse(text.into()))?,
                    1,
                ),
            };
            fractions.push((p, q));
        }
        MontesinosForm::normalize(&fractions)
    }
}

impl std::fmt::Display for MontesinosForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M(")?;
        for (i, t) in self.tangles.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if t.is_integer() {
                write!(f, "{}", t.numer())?;
            } else {
                write!(f, "{}/{}", t.numer(), t.denom())?;
            }
        }
        write!(f, ")")
    }
}

/// Mirror image: every fraction negates.
pub fn mont_mirror(f: &MontesinosForm) -> MontesinosForm {
    MontesinosForm {
        tangles: f.tangles.iter().map(|t| -t).collect(),
    }
}

fn residue(f: Frac) -> Frac {
    f - f.floor()
}

/// Isotopy decision for unoriented Montesinos links with at least two
/// tangles each: equal lengths, equal sums, and residue sequences matching
/// under some rotation or reversed rotation.
pub fn mont_equivalent(f1: &MontesinosForm, f2: &MontesinosForm) -> Result<bool, MontesinosError> {
    if f1.len() < 2 || f2.len() < 2 {
        return Err(MontesinosError::TooFewTangles);
    }
    if f1.len() != f2.len() || f1.sum() != f2.sum() {
        return Ok(false);
    }
    let r1: Vec<Frac> = f1.tangles.iter().map(|&t| residue(t)).collect();
    let r2: Vec<Frac> = f2.tangles.iter().map(|&t| residue(t)).collect();
    let n = r1.len();
    for rev in [false, true] {
        let seq: Vec<Frac> = if rev {
            r2.iter().rev().copied().collect()
        } else {
            r2.clone()
        };
        for s in 0..n {
            if (0..n).all(|i| r1[i] == seq[(i + s) % n]) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GeomType {
    Hyperbolic,
    Seifert,
    Graph,
}

fn fixed_forms(list: &[&[(i64, i64)]]) -> Vec<MontesinosForm> {
    list.iter()
        .map(|f| MontesinosForm::normalize(f).unwrap())
        .collect()
}

fn matches_up_to_mirror(f: &MontesinosForm, target: &MontesinosForm) -> bool {
    if f.len() != target.len() {
        return false;
    }
    mont_equivalent(f, target).unwrap_or(false)
        || mont_equivalent(&mont_mirror(f), target).unwrap_or(false)
}

/// The four exceptional graph-manifold forms.
fn graph_forms() -> Vec<MontesinosForm> {
    fixed_forms(&[
        &[(2, 3), (-1, 3), (-1, 3)],
        &[(1, 2), (-1, 4), (-1, 4)],
        &[(1, 2), (-1, 3), (-1, 6)],
        &[(1, 2), (1, 2), (-1, 2), (-1, 2)],
    ])
}

/// The sporadic Seifert forms; the family M(-1/2, 1/2, 1/p) is tested
/// separately through its sum.
fn seifert_sporadic_forms() -> Vec<MontesinosForm> {
    fixed_forms(&[
        &[(-1, 2), (1, 3), (1, 3)],
        &[(-1, 2), (1, 3), (1, 4)],
        &[(-1, 2), (1, 3), (1, 5)],
    ])
}

fn in_seifert_family(f: &MontesinosForm) -> bool {
    // M(-1/2, 1/2, 1/p), p != 0: sum 1/p, residues {1/2, 1/2, 1/p mod 1}
    if f.len() != 3 {
        return false;
    }
    let s = f.sum();
    if *s.numer() != 1 && *s.numer() != -1 {
        return false;
    }
    if s == Frac::new(0, 1) {
        return false;
    }
    let mut r: Vec<Frac> = f.tangles.iter().map(|&t| residue(t)).collect();
    r.sort();
    let mut expect = vec![Frac::new(1, 2), Frac::new(1, 2), residue(s)];
    expect.sort();
    r == expect
}

/// Geometric type of a Montesinos link with at least three tangles.
pub fn mont_geom_type(f: &MontesinosForm) -> Result<GeomType, MontesinosError> {
    if f.len() < 3 {
        return Err(MontesinosError::TooFewTangles);
    }
    for g in graph_forms() {
        if matches_up_to_mirror(f, &g) {
            return Ok(GeomType::Graph);
        }
    }
    for s in seifert_sporadic_forms() {
        if matches_up_to_mirror(f, &s) {
            return Ok(GeomType::Seifert);
        }
    }
    if in_seifert_family(f) || in_seifert_family(&mont_mirror(f)) {
        return Ok(GeomType::Seifert);
    }
    Ok(GeomType::Hyperbolic)
}

/// The double branched cover: the Seifert fibration over the sphere whose
/// fraction list is the form's tangle list.
pub fn mont_double_cover(f: &MontesinosForm) -> SeifertInvariants {
    SeifertInvariants::new(f.tangles.clone())
}

/// Geometric intersection number of the two JSJ fibers of the exceptional
/// graph-manifold exteriors: 3 for the M(2/3,-1/3,-1/3) class, 1 for the
/// other three.
pub fn fiber_intersection_number(f: &MontesinosForm) -> Result<i64, MontesinosError> {
    let gf = graph_forms();
    if matches_up_to_mirror(f, &gf[0]) {
        return Ok(3);
    }
    if gf[1..].iter().any(|g| matches_up_to_mirror(f, g)) {
        return Ok(1);
    }
    Err(MontesinosError::NotGraphType)
}

/// Diagram: numerator closure of the left-to-right tangle sum.
pub fn mont_diagram(f: &MontesinosForm) -> LinkDiagram {
    let slopes: Vec<(i64, i64)> = f.tangles.iter().map(|t| (*t.numer(), *t.denom())).collect();
    tangle_closure(&slopes).expect("Montesinos diagrams are valid")
}
