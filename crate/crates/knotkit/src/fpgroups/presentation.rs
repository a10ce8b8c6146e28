//! Finitely presented groups, Wirtinger presentations, and orbifold
//! quotients.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::abelian::{cokernel_invariants, AbelianInvariants, IntMat};
use super::words::Word;
use crate::diagram::LinkDiagram;
use num_bigint::BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator index out of range in relator")]
    GeneratorOutOfRange,
    #[error("meridian marks are required for this operation")]
    MissingMeridians,
    #[error("meridian mark count does not match component count")]
    MeridianCountMismatch,
}

/// A finite presentation: `generators` free generators, `relators` as freely
/// reduced words, and optional meridian class marks (one per link component
/// when the presentation arose from a diagram).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
    pub meridians: Option<Vec<Word>>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Self {
        let g = GroupPresentation {
            generators,
            relators,
            meridians: None,
        };
        g.assert_valid();
        g
    }

    pub fn with_meridians(mut self, meridians: Vec<Word>) -> Self {
        self.meridians = Some(meridians);
        self.assert_valid();
        self
    }

    fn assert_valid(&self) {
        let ok = |w: &Word| w.max_gen() as usize <= self.generators;
        assert!(self.relators.iter().all(ok), "relator out of range");
        if let Some(ms) = &self.meridians {
            assert!(ms.iter().all(ok), "meridian mark out of range");
        }
    }

    /// Free group on `n` generators.
    pub fn free(n: usize) -> Self {
        GroupPresentation::new(n, Vec::new())
    }

    /// Relator exponent-sum matrix: one row per relator, one column per
    /// generator.
    pub fn exponent_matrix(&self) -> IntMat {
        let mut m = IntMat::zero(self.relators.len(), self.generators);
        for (i, r) in self.relators.iter().enumerate() {
            for k in 1..=self.generators {
                m[(i, k - 1)] = BigInt::from(r.exponent_sum(k as u32));
            }
        }
        m
    }

    /// Invariant factors of the abelianization.
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        cokernel_invariants(&self.exponent_matrix())
    }

    /// Adjoins the r-th power of every marked meridian, the presentation of
    /// the quotient by the normal closure of the meridian r-th powers.
    pub fn orbifold_quotient(&self, r: u32) -> Result<GroupPresentation, PresentationError> {
        assert!(r >= 2, "cone order must be at least 2");
        let Some(ms) = &self.meridians else {
            return Err(PresentationError::MissingMeridians);
        };
        let mut relators = self.relators.clone();
        for m in ms {
            relators.push(m.pow(r as i32));
        }
        Ok(GroupPresentation {
            generators: self.generators,
            relators,
            meridians: self.meridians.clone(),
        })
    }

    /// Total relator length, the secondary component of the Tietze score.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }
}

impl std::fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "< x1..x{} |", self.generators)?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {r}")?;
        }
        write!(f, " >")
    }
}

/// Parses the presentation text format: a `gens: n` header line followed
/// by `rel: <word>` and optional `meridian: <word>` lines, with words in
/// the `x3^-1 x1 x3 x2^-1` token syntax.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, String> {
    let mut generators: Option<usize> = None;
    let mut relators = Vec::new();
    let mut meridians = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("gens:") {
            generators = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| format!("bad generator count `{rest}`"))?,
            );
        } else if let Some(rest) = line.strip_prefix("rel:") {
            relators.push(super::words::parse_word(rest)?);
        } else if let Some(rest) = line.strip_prefix("meridian:") {
            meridians.push(super::words::parse_word(rest)?);
        } else {
            return Err(format!("unrecognized line `{line}`"));
        }
    }
    let generators = generators.ok_or("missing `gens:` line")?;
    let max = relators
        .iter()
        .chain(&meridians)
        .map(|w| w.max_gen())
        .max()
        .unwrap_or(0);
    if max as usize > generators {
        return Err(format!(
            "word mentions generator x{max} beyond gens: {generators}"
        ));
    }
    let mut p = GroupPresentation::new(generators, relators);
    if !meridians.is_empty() {
        p.meridians = Some(meridians);
    }
    Ok(p)
}

/// Wirtinger presentation of the diagram's link group: one generator per
/// over-strand (and per crossing-free circle), one conjugation relator per
/// crossing, meridian marks set to one strand generator per component.
pub fn wirtinger(d: &LinkDiagram) -> GroupPresentation {
    let arc_count = d.arc_count() as usize;
    // merge arcs joined by an over-passage
    let mut parent: Vec<usize> = (0..=arc_count).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
            r
        } else {
            x
        }
    }
    for x in d.crossings() {
        let a = find(&mut parent, x.over_in() as usize);
        let b = find(&mut parent, x.over_out() as usize);
        parent[a.max(b)] = a.min(b);
    }
    // generator index per class, ordered by least member
    let mut gen_of = vec![0usize; arc_count + 1];
    let mut next = 0usize;
    for a in 1..=arc_count {
        if find(&mut parent, a) == a {
            next += 1;
            gen_of[a] = next;
        }
    }
    for a in 1..=arc_count {
        let r = find(&mut parent, a);
        gen_of[a] = gen_of[r];
    }
    let circle_gens = d.circles() as usize;
    let generators = next + circle_gens;

    let mut relators = Vec::with_capacity(d.crossing_count());
    for x in d.crossings() {
        let xin = gen_of[x.under_in() as usize] as i32;
        let zout = gen_of[x.under_out() as usize] as i32;
        let y = gen_of[x.over_in() as usize] as i32;
        let e = x.sign as i32;
        // z = y^e x y^-e
        relators.push(Word::from_letters([-zout, e * y, xin, -e * y]));
    }

    let mut meridians = Vec::new();
    for cyc in d.crossed_components() {
        meridians.push(Word::gen(gen_of[cyc[0] as usize] as i32));
    }
    for k in 0..circle_gens {
        meridians.push(Word::gen((next + k + 1) as i32));
    }

    GroupPresentation::new(generators, relators).with_meridians(meridians)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::samples;
    use num_bigint::BigInt;

    #[test]
    fn unknot_group_is_free_of_rank_one() {
        let p = wirtinger(&LinkDiagram::unknot());
        assert_eq!(p.generators, 1);
        assert!(p.relators.is_empty());
        let inv = p.abelian_invariants();
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion.is_empty());
    }

    #[test]
    fn trefoil_wirtinger_shape() {
        let p = wirtinger(&samples::trefoil());
        assert_eq!(p.generators, 3);
        assert_eq!(p.relators.len(), 3);
        let inv = p.abelian_invariants();
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion.is_empty());
    }

    #[test]
    fn hopf_abelianization_is_z2() {
        let p = wirtinger(&samples::hopf());
        let inv = p.abelian_invariants();
        assert_eq!(inv.free_rank, 2);
        assert!(inv.torsion.is_empty());
        assert_eq!(p.meridians.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn link_groups_abelianize_freely() {
        for d in [
            samples::hopf(),
            samples::trefoil(),
            samples::figure_eight(),
            LinkDiagram::unlink(3),
        ] {
            let p = wirtinger(&d);
            let inv = p.abelian_invariants();
            assert_eq!(inv.free_rank, d.component_count());
            assert!(inv.torsion.is_empty());
        }
    }

    #[test]
    fn unknot_orbifold_quotient_is_cyclic() {
        let p = wirtinger(&LinkDiagram::unknot());
        let o = p.orbifold_quotient(5).unwrap();
        let inv = o.abelian_invariants();
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion, vec![BigInt::from(5)]);
    }

    #[test]
    fn orbifold_needs_meridians() {
        let p = GroupPresentation::new(1, vec![]);
        assert_eq!(
            p.orbifold_quotient(2).unwrap_err(),
            PresentationError::MissingMeridians
        );
    }

    #[test]
    fn text_format_round_trip() {
        let text = "gens: 2\nrel: x1 x2 x1 x2^-1 x1^-1 x2^-1\nmeridian: x1\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.generators, 2);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.meridians.as_ref().map(|m| m.len()), Some(1));
        // JSON equivalent with integer arrays
        let j = serde_json::to_string(&p).unwrap();
        assert!(j.contains("[1,2,1,-2,-1,-2]"));
        let back: GroupPresentation = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
        assert!(parse_presentation("rel: x1").is_err());
        assert!(parse_presentation("gens: 1\nrel: x2").is_err());
    }
}
