//! Reidemeister–Schreier subgroup presentations.
//!
//! Given a closed coset table for a subgroup H of the group presented by
//! `p`, this computes a presentation of H on Schreier generators: one
//! generator per non-tree (coset, generator) pair, one relator per
//! (coset, relator of p) pair. Arbitrary elements of H can be rewritten
//! into the Schreier generators, which is how meridian lifts are produced.

use thiserror::Error;

use super::cosets::CosetTable;
use super::presentation::GroupPresentation;
use super::words::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchreierError {
    #[error("coset table is inconsistent with the presentation")]
    InconsistentTable,
}

/// The subgroup presentation plus the rewriting data needed to express
/// further subgroup elements in its generators.
#[derive(Debug)]
pub struct SchreierData {
    pub presentation: GroupPresentation,
    table: CosetTable,
    /// Schreier generator index (1-based) of each (coset, generator) pair;
    /// 0 marks a tree edge, whose Schreier generator is trivial.
    gen_index: Vec<Vec<u32>>,
}

impl SchreierData {
    /// Rewrites a word tracing from the given coset into the Schreier
    /// generators. The result is a subgroup element only when the trace
    /// returns to the start coset; the caller is responsible for that.
    pub fn rewrite_from(&self, w: &Word, start: u32) -> Word {
        let mut out = Word::identity();
        let mut c = start;
        for &l in w.letters() {
            let k = l.unsigned_abs() as usize - 1;
            if l > 0 {
                let idx = self.gen_index[c as usize][k];
                if idx != 0 {
                    out.push(idx as i32);
                }
                c = self.table.act(c, l);
            } else {
                let dst = self.table.act(c, l);
                let idx = self.gen_index[dst as usize][k];
                if idx != 0 {
                    out.push(-(idx as i32));
                }
                c = dst;
            }
        }
        out
    }
}

/// Computes the Reidemeister–Schreier presentation of the subgroup with the
/// given closed coset table.
pub fn reidemeister_schreier(
    p: &GroupPresentation,
    table: &CosetTable,
) -> Result<SchreierData, SchreierError> {
    if !table.consistent_with(p) {
        return Err(SchreierError::InconsistentTable);
    }
    let n = table.index();
    let g = p.generators;

    // breadth-first Schreier tree from coset 0, columns in generator order
    let mut tree_edge = vec![vec![false; g]; n];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut queue = std::collections::VecDeque::from([0u32]);
    let mut bfs = Vec::new();
    while let Some(c) = queue.pop_front() {
        bfs.push(c);
        for k in 1..=g as i32 {
            for letter in [k, -k] {
                let d = table.act(c, letter);
                if !visited[d as usize] {
                    visited[d as usize] = true;
                    // the tree edge is stored on its positive-direction source
                    if letter > 0 {
                        tree_edge[c as usize][k as usize - 1] = true;
                    } else {
                        tree_edge[d as usize][k as usize - 1] = true;
                    }
                    queue.push_back(d);
                }
            }
        }
    }
    if bfs.len() != n {
        return Err(SchreierError::InconsistentTable);
    }

    let mut gen_index = vec![vec![0u32; g]; n];
    let mut next = 0u32;
    for c in 0..n {
        for k in 0..g {
            if !tree_edge[c][k] {
                next += 1;
                gen_index[c][k] = next;
            }
        }
    }

    let data = SchreierData {
        presentation: GroupPresentation::free(next as usize),
        table: table.clone(),
        gen_index,
    };

    let mut relators = Vec::new();
    for c in 0..n as u32 {
        for r in &p.relators {
            let w = data.rewrite_from(r, c);
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    Ok(SchreierData {
        presentation: GroupPresentation::new(next as usize, relators),
        table: data.table,
        gen_index: data.gen_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroups::cosets::coset_enumeration;

    #[test]
    fn index_three_subgroup_of_z() {
        // Z = <x|>, subgroup <x^3>: the table is the 3-cycle
        let p = GroupPresentation::free(1);
        let t = CosetTable::from_action(1, &[vec![1], vec![2], vec![0]]);
        let s = reidemeister_schreier(&p, &t).unwrap();
        // Schreier bound: 3*1 - 2 = 1 generator, no relators
        assert_eq!(s.presentation.generators, 1);
        assert!(s.presentation.relators.is_empty());
        // x^3 rewrites to the single generator (up to sign)
        let w = s.rewrite_from(&Word::gen(1).pow(3), 0);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn index_one_recovers_the_group() {
        let p = GroupPresentation::new(2, vec![Word::from_letters([1, 2, 1, -2, -1, -2])]);
        let t = coset_enumeration(&p, &[Word::gen(1), Word::gen(2)], 10)
            .closed()
            .unwrap();
        assert_eq!(t.index(), 1);
        let s = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(s.presentation.generators, 2);
        assert_eq!(s.presentation.abelian_invariants(), p.abelian_invariants());
    }

    #[test]
    fn schreier_generator_count_bound() {
        // trefoil group, index-2 subgroup from the mod-2 abelianization
        let p = crate::fpgroups::wirtinger(&crate::diagram::samples::trefoil());
        let n = p.generators;
        let images: Vec<Vec<u32>> = (0..2u32).map(|c| vec![(c + 1) % 2; n]).collect();
        let t = CosetTable::from_action(n, &images);
        let s = reidemeister_schreier(&p, &t).unwrap();
        assert_eq!(s.presentation.generators, 2 * n - 1);
        assert_eq!(s.presentation.relators.len(), 2 * p.relators.len());
    }

    #[test]
    fn inconsistent_table_rejected() {
        let p = GroupPresentation::new(1, vec![Word::gen(1).pow(2)]);
        let t = CosetTable::from_action(1, &[vec![1], vec![2], vec![0]]);
        assert_eq!(
            reidemeister_schreier(&p, &t).unwrap_err(),
            SchreierError::InconsistentTable
        );
    }
}
