//! Exhaustive homomorphism counting by backtracking over generator images.
//!
//! Counts are exact. The first generator ranges over conjugacy class
//! representatives only, each weighted by its class size: conjugating a
//! homomorphism by a fixed group element is a bijection on homomorphisms
//! that moves the first image around its class and preserves surjectivity,
//! so the weighted count equals the plain count.

use thiserror::Error;

use super::catalog::FiniteGroup;
use crate::fpgroups::{GroupPresentation, Word};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("search ceiling exceeded: {estimate} > {ceiling}")]
pub struct SearchCeilingExceeded {
    pub estimate: u128,
    pub ceiling: u128,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HomCount {
    pub homs: u64,
    pub epis: u64,
}

pub const DEFAULT_CEILING: u128 = 200_000_000;

fn eval(word: &Word, images: &[u16], g: &FiniteGroup) -> u16 {
    let mut acc = g.identity;
    for &l in word.letters() {
        let img = images[l.unsigned_abs() as usize - 1];
        let x = if l > 0 { img } else { g.inverse(img) };
        acc = g.mul(acc, x);
    }
    acc
}

/// Exact homomorphism and epimorphism counts from the presented group into
/// `g`.
pub fn count_homs(
    p: &GroupPresentation,
    g: &FiniteGroup,
    ceiling: u128,
) -> Result<HomCount, SearchCeilingExceeded> {
    let n = p.generators;
    if n == 0 {
        return Ok(HomCount {
            homs: 1,
            epis: u64::from(g.order == 1),
        });
    }
    let estimate =
        (g.classes().len() as u128).saturating_mul((g.order as u128).saturating_pow(n as u32 - 1));
    if estimate > ceiling {
        return Err(SearchCeilingExceeded { estimate, ceiling });
    }

    // relators become checkable once all their generators have images
    let mut check_at: Vec<Vec<&Word>> = vec![Vec::new(); n + 1];
    for r in &p.relators {
        check_at[r.max_gen() as usize].push(r);
    }

    let mut images = vec![0u16; n];
    let mut homs = 0u64;
    let mut epis = 0u64;

    fn descend(
        level: usize,
        n: usize,
        g: &FiniteGroup,
        check_at: &[Vec<&Word>],
        images: &mut Vec<u16>,
        weight: u64,
        homs: &mut u64,
        epis: &mut u64,
    ) {
        if level == n {
            *homs += weight;
            if g.generated_order(images) == g.order {
                *epis += weight;
            }
            return;
        }
        let candidates: Vec<(u16, u64)> = if level == 0 {
            g.classes().to_vec()
        } else {
            (0..g.order as u16).map(|e| (e, 1)).collect()
        };
        for (img, w) in candidates {
            images[level] = img;
            if check_at[level + 1]
                .iter()
                .all(|r| eval(r, images, g) == g.identity)
            {
                descend(level + 1, n, g, check_at, images, weight * w, homs, epis);
            }
        }
    }

    descend(0, n, g, &check_at, &mut images, 1, &mut homs, &mut epis);
    Ok(HomCount { homs, epis })
}
