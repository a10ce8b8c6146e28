//! Todd–Coxeter coset enumeration.
//!
//! The strategy is deterministic relator-based filling: cosets are scanned
//! in creation order, every relator is scanned and filled at every live
//! coset, and remaining undefined entries are filled lowest-first, so the
//! resulting table is reproducible. Hitting the coset limit yields
//! `Exhausted`, which says nothing about the index being infinite.

use super::presentation::GroupPresentation;
use super::words::Word;

const UNDEF: u32 = u32::MAX;

/// A closed coset table: a transitive permutation action of the generators
/// on `index` cosets, consistent with all relators, with coset 0 fixed by
/// the subgroup generators it was built from.
#[derive(Clone, Debug)]
pub struct CosetTable {
    index: usize,
    gens: usize,
    /// `action[coset][2k]` is the image under generator `k+1`,
    /// `action[coset][2k+1]` under its inverse.
    action: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    /// Builds a table directly from a generator action (images of each
    /// coset under the positive generators). Used for covers, where the
    /// action comes from a homomorphism onto a finite cyclic group.
    pub fn from_action(gens: usize, images: &[Vec<u32>]) -> CosetTable {
        let index = images.len();
        let mut action = vec![vec![UNDEF; 2 * gens]; index];
        for (c, row) in images.iter().enumerate() {
            assert_eq!(row.len(), gens);
            for (k, &img) in row.iter().enumerate() {
                assert!((img as usize) < index, "image out of range");
                action[c][2 * k] = img;
                action[img as usize][2 * k + 1] = c as u32;
            }
        }
        assert!(
            action.iter().all(|r| r.iter().all(|&v| v != UNDEF)),
            "generator action is not a permutation"
        );
        CosetTable {
            index,
            gens,
            action,
        }
    }

    pub fn act(&self, coset: u32, letter: i32) -> u32 {
        let k = letter.unsigned_abs() as usize - 1;
        let col = if letter > 0 { 2 * k } else { 2 * k + 1 };
        self.action[coset as usize][col]
    }

    pub fn trace(&self, start: u32, w: &Word) -> u32 {
        w.letters().iter().fold(start, |c, &l| self.act(c, l))
    }

    /// Checks the table against a presentation: every relator must act
    /// trivially everywhere.
    pub fn consistent_with(&self, p: &GroupPresentation) -> bool {
        self.gens == p.generators
            && (0..self.index as u32).all(|c| p.relators.iter().all(|r| self.trace(c, r) == c))
    }
}

/// Outcome of an enumeration: a closed table or the limit marker.
#[derive(Debug)]
pub enum Enumeration {
    Closed(CosetTable),
    Exhausted { limit: usize },
}

impl Enumeration {
    pub fn closed(self) -> Option<CosetTable> {
        match self {
            Enumeration::Closed(t) => Some(t),
            Enumeration::Exhausted { .. } => None,
        }
    }
}

struct Machine {
    table: Vec<Vec<u32>>, // [coset][col]
    rep: Vec<u32>,        // union-find for coincidences
    live: usize,
    cols: usize,
    limit: usize,
}

impl Machine {
    fn new(gens: usize, limit: usize) -> Self {
        Machine {
            table: vec![vec![UNDEF; 2 * gens]],
            rep: vec![0],
            live: 1,
            cols: 2 * gens,
            limit,
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.rep[x as usize] != x {
            let up = self.rep[self.rep[x as usize] as usize];
            self.rep[x as usize] = up;
            x = up;
        }
        x
    }

    fn define(&mut self, coset: u32, col: usize) -> Option<u32> {
        if self.table.len() >= self.limit {
            return None;
        }
        let new = self.table.len() as u32;
        self.table.push(vec![UNDEF; self.cols]);
        self.rep.push(new);
        self.live += 1;
        self.set(coset, col, new);
        Some(new)
    }

    fn set(&mut self, a: u32, col: usize, b: u32) {
        self.table[a as usize][col] = b;
        self.table[b as usize][col ^ 1] = a;
    }

    fn get(&mut self, a: u32, col: usize) -> u32 {
        let v = self.table[a as usize][col];
        if v == UNDEF {
            UNDEF
        } else {
            let r = self.find(v);
            self.table[a as usize][col] = r;
            r
        }
    }

    fn col_of(letter: i32) -> usize {
        let k = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            2 * k
        } else {
            2 * k + 1
        }
    }

    /// Merges coset classes and migrates table data.
    fn coincide(&mut self, a: u32, b: u32) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.rep[kill as usize] = keep;
            self.live -= 1;
            for col in 0..self.cols {
                let v = self.table[kill as usize][col];
                if v == UNDEF {
                    continue;
                }
                self.table[kill as usize][col] = UNDEF;
                let v = self.find(v);
                // stale references to kill elsewhere normalize lazily
                // through find() on every read
                let cur = self.get(keep, col);
                if cur == UNDEF {
                    self.set(keep, col, v);
                } else if cur != v {
                    queue.push((cur, v));
                }
            }
        }
    }

    /// Scans `w` from `start` and fills undefined steps with new cosets;
    /// returns false when the limit blocks a definition.
    fn scan_and_fill(&mut self, start: u32, w: &Word) -> bool {
        let letters = w.letters();
        if letters.is_empty() {
            return true;
        }
        loop {
            let start = self.find(start);
            // forward
            let mut f = start;
            let mut fi = 0;
            while fi < letters.len() {
                let next = self.get(f, Self::col_of(letters[fi]));
                if next == UNDEF {
                    break;
                }
                f = next;
                fi += 1;
            }
            if fi == letters.len() {
                if f != start {
                    self.coincide(f, start);
                }
                return true;
            }
            // backward
            let mut b = start;
            let mut bi = letters.len();
            while bi > fi {
                let prev = self.get(b, Self::col_of(-letters[bi - 1]));
                if prev == UNDEF {
                    break;
                }
                b = prev;
                bi -= 1;
            }
            if bi == fi {
                // full scan met with a gap of zero: forced coincidence
                self.coincide(f, b);
                return true;
            }
            if bi == fi + 1 {
                // deduction closes the scan
                self.set(f, Self::col_of(letters[fi]), b);
                return true;
            }
            // fill one entry and rescan
            if self.define(f, Self::col_of(letters[fi])).is_none() {
                return false;
            }
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `p`, up to `limit` defined cosets.
pub fn coset_enumeration(p: &GroupPresentation, subgroup: &[Word], limit: usize) -> Enumeration {
    assert!(limit >= 1);
    if p.generators == 0 {
        return Enumeration::Closed(CosetTable {
            index: 1,
            gens: 0,
            action: vec![vec![]],
        });
    }
    let mut m = Machine::new(p.generators, limit);
    for w in subgroup {
        if !m.scan_and_fill(0, w) {
            return Enumeration::Exhausted { limit };
        }
    }
    let mut coset = 0u32;
    loop {
        if coset as usize >= m.table.len() {
            break;
        }
        if m.find(coset) == coset {
            for r in &p.relators {
                if !m.scan_and_fill(coset, r) {
                    return Enumeration::Exhausted { limit };
                }
                if m.find(coset) != coset {
                    break; // this coset died during processing
                }
            }
            // fill any remaining undefined entries of this row
            if m.find(coset) == coset {
                for col in 0..m.cols {
                    if m.find(coset) != coset {
                        break;
                    }
                    if m.get(coset, col) == UNDEF && m.define(coset, col).is_none() {
                        return Enumeration::Exhausted { limit };
                    }
                }
            }
        }
        coset += 1;
    }

    // compress to live cosets
    let mut label = vec![UNDEF; m.table.len()];
    let mut index = 0usize;
    for c in 0..m.table.len() as u32 {
        if m.find(c) == c {
            label[c as usize] = index as u32;
            index += 1;
        }
    }
    let mut action = vec![vec![UNDEF; m.cols]; index];
    for c in 0..m.table.len() as u32 {
        if m.find(c) != c {
            continue;
        }
        for col in 0..m.cols {
            let v = m.get(c, col);
            assert!(v != UNDEF, "table closed with undefined entry");
            action[label[c as usize] as usize][col] = label[v as usize];
        }
    }
    let table = CosetTable {
        index,
        gens: p.generators,
        action,
    };
    debug_assert!(table.consistent_with(p));
    Enumeration::Closed(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: i32) -> GroupPresentation {
        GroupPresentation::new(1, vec![Word::gen(1).pow(n)])
    }

    #[test]
    fn cyclic_five_has_five_cosets() {
        let t = coset_enumeration(&cyclic(5), &[], 100).closed().unwrap();
        assert_eq!(t.index(), 5);
    }

    #[test]
    fn whole_group_subgroup_gives_index_one() {
        let p = GroupPresentation::free(2);
        let t = coset_enumeration(&p, &[Word::gen(1), Word::gen(2)], 100)
            .closed()
            .unwrap();
        assert_eq!(t.index(), 1);
    }

    #[test]
    fn free_group_exhausts() {
        let p = GroupPresentation::free(2);
        match coset_enumeration(&p, &[], 50) {
            Enumeration::Exhausted { limit } => assert_eq!(limit, 50),
            Enumeration::Closed(_) => panic!("free group has infinite index"),
        }
    }

    #[test]
    fn symmetric_group_from_presentation() {
        // S3 = < a, b | a^2, b^2, (ab)^3 >
        let a = Word::gen(1);
        let b = Word::gen(2);
        let p = GroupPresentation::new(2, vec![a.pow(2), b.pow(2), a.concat(&b).pow(3)]);
        let t = coset_enumeration(&p, &[], 100).closed().unwrap();
        assert_eq!(t.index(), 6);
        // index of <a> is 3
        let t2 = coset_enumeration(&p, &[a], 100).closed().unwrap();
        assert_eq!(t2.index(), 3);
    }

    #[test]
    fn trefoil_orbifold_order_six() {
        let p = crate::fpgroups::wirtinger(&crate::diagram::samples::trefoil());
        let o = p.orbifold_quotient(2).unwrap();
        let t = coset_enumeration(&o, &[], 500).closed().unwrap();
        assert_eq!(t.index(), 6);
    }

    #[test]
    fn index_is_independent_of_sufficient_limit() {
        let p = crate::fpgroups::wirtinger(&crate::diagram::samples::trefoil());
        let o = p.orbifold_quotient(2).unwrap();
        for limit in [60, 200, 5000] {
            assert_eq!(
                coset_enumeration(&o, &[], limit).closed().unwrap().index(),
                6
            );
        }
    }

    #[test]
    fn quaternion_group() {
        // Q8 = < a, b | a^4, a^2 b^-2, b^-1 a b a >
        let a = Word::gen(1);
        let b = Word::gen(2);
        let p = GroupPresentation::new(
            2,
            vec![
                a.pow(4),
                a.pow(2).concat(&b.pow(-2)),
                b.inverse().concat(&a).concat(&b).concat(&a),
            ],
        );
        let t = coset_enumeration(&p, &[], 200).closed().unwrap();
        assert_eq!(t.index(), 8);
    }
}
