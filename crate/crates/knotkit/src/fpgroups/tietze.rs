//! Budgeted Tietze simplification.
//!
//! The transformation set is: free and cyclic reduction, duplicate-relator
//! removal, elimination of a generator occurring exactly once in some
//! relator, and replacement of long common subwords between relators. The
//! score `(generator count, total relator length)` never increases
//! lexicographically, which also guarantees termination; `effort` caps the
//! number of passes.

use super::presentation::GroupPresentation;
use super::words::Word;

pub const DEFAULT_EFFORT: u32 = 400;

/// Canonical representative of a relator up to cyclic rotation and
/// inversion, used to spot duplicates.
fn cyclic_normal(w: &Word) -> Word {
    let w = w.cyclically_reduced();
    let mut best: Option<Word> = None;
    for cand in [w.clone(), w.inverse()] {
        let letters = cand.letters();
        let n = letters.len();
        for s in 0..n.max(1) {
            let rot = Word::from_letters((0..n).map(|i| letters[(s + i) % n]).collect::<Vec<_>>());
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_else(Word::identity)
}

pub fn simplify(p: &GroupPresentation, effort: u32) -> GroupPresentation {
    let mut gens = p.generators;
    let mut relators = p.relators.clone();
    let mut meridians = p.meridians.clone();

    for _ in 0..effort.max(1) {
        let mut changed = false;

        // cyclic reduction, empties, duplicates
        for r in relators.iter_mut() {
            let c = r.cyclically_reduced();
            if c != *r {
                *r = c;
                changed = true;
            }
        }
        let before = relators.len();
        let mut seen = std::collections::HashSet::new();
        relators.retain(|r| !r.is_empty() && seen.insert(cyclic_normal(r)));
        if relators.len() != before {
            changed = true;
        }

        // eliminate a generator occurring exactly once in some relator;
        // shortest relator first, then smallest generator
        let mut candidate: Option<(usize, u32)> = None;
        for (ri, r) in relators.iter().enumerate() {
            for k in 1..=gens as u32 {
                if r.occurrences(k) == 1
                    && candidate.is_none_or(|(bi, bk)| (relators[bi].len(), bk) > (r.len(), k))
                {
                    candidate = Some((ri, k));
                }
            }
        }
        if let Some((ri, k)) = candidate {
            let r = relators[ri].clone();
            let pos = r
                .letters()
                .iter()
                .position(|l| l.unsigned_abs() == k)
                .unwrap();
            let sign = r.letters()[pos].signum();
            let u = Word::from_letters(r.letters()[..pos].to_vec());
            let v = Word::from_letters(r.letters()[pos + 1..].to_vec());
            // r = u g^sign v = 1  =>  g^sign = u^-1 v^-1
            let mut expr = u.inverse().concat(&v.inverse());
            if sign < 0 {
                expr = expr.inverse();
            }
            relators.remove(ri);
            let relabel: Vec<u32> = (1..=gens as u32)
                .map(|g| match g.cmp(&k) {
                    std::cmp::Ordering::Less => g,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => g - 1,
                })
                .collect();
            let rewrite = |w: &Word| w.substitute(k, &expr).relabel(&relabel);
            relators = relators.iter().map(rewrite).collect();
            if let Some(ms) = meridians.as_mut() {
                *ms = ms.iter().map(rewrite).collect();
            }
            gens -= 1;
            changed = true;
        }

        // common-subword shortening: if more than half of relator u appears
        // in relator v, swap it for the shorter complement
        'outer: for ui in 0..relators.len() {
            for vi in 0..relators.len() {
                if ui == vi || relators[ui].len() < 2 || relators[ui].len() > relators[vi].len() {
                    continue;
                }
                if let Some(nv) = shorten_with(&relators[vi], &relators[ui]) {
                    relators[vi] = nv;
                    changed = true;
                    break 'outer;
                }
            }
        }

        if !changed {
            break;
        }
    }

    let mut out = GroupPresentation::new(gens, relators);
    out.meridians = meridians;
    out
}

/// Tries to shorten `v` using relator `u`: finds a cyclic subword `x` of
/// `u` or `u^-1` with `2|x| > |u|` occurring in `v` and replaces it by the
/// inverse of the complementary subword.
fn shorten_with(v: &Word, u: &Word) -> Option<Word> {
    let n = u.len();
    let vl = v.letters();
    for base in [u.clone(), u.inverse()] {
        let letters = base.letters().to_vec();
        for take in (n / 2 + 1..=n.min(v.len())).rev() {
            for start in 0..n {
                let x: Vec<i32> = (0..take).map(|i| letters[(start + i) % n]).collect();
                // complement y with x*y a rotation of u: y = rest
                let y: Vec<i32> = (take..n).map(|i| letters[(start + i) % n]).collect();
                // scan v for x
                if take > vl.len() {
                    continue;
                }
                for off in 0..=vl.len() - take {
                    if vl[off..off + take] == x[..] {
                        let mut out = Vec::new();
                        out.extend_from_slice(&vl[..off]);
                        out.extend(y.iter().rev().map(|l| -l));
                        out.extend_from_slice(&vl[off + take..]);
                        let w = Word::from_letters(out);
                        if w.len() < v.len() {
                            return Some(w);
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dead_generator_elimination() {
        // < x, y | y > -> < x | >
        let p = GroupPresentation::new(2, vec![Word::gen(2)]);
        let s = simplify(&p, DEFAULT_EFFORT);
        assert_eq!(s.generators, 1);
        assert!(s.relators.is_empty());
    }

    #[test]
    fn trefoil_wirtinger_reduces_to_two_generators() {
        let p = crate::fpgroups::wirtinger(&crate::diagram::samples::trefoil());
        let s = simplify(&p, DEFAULT_EFFORT);
        assert!(s.generators <= 2, "got {} generators", s.generators);
        assert_eq!(s.abelian_invariants(), p.abelian_invariants());
        assert_eq!(s.meridians.as_ref().map(|m| m.len()), Some(1));
    }

    #[test]
    fn minimal_presentation_keeps_score() {
        // braid relator xyx = yxy, already short
        let p = GroupPresentation::new(2, vec![Word::from_letters([1, 2, 1, -2, -1, -2])]);
        let s = simplify(&p, DEFAULT_EFFORT);
        assert!(s.generators <= 2);
        assert!(s.total_length() <= p.total_length());
        assert_eq!(s.abelian_invariants(), p.abelian_invariants());
    }

    #[test]
    fn score_never_increases() {
        let p = crate::fpgroups::wirtinger(&crate::diagram::samples::figure_eight());
        let s = simplify(&p, DEFAULT_EFFORT);
        assert!(
            (s.generators, s.total_length()) <= (p.generators, p.total_length()),
            "score went up"
        );
        assert_eq!(s.abelian_invariants(), p.abelian_invariants());
    }
}
