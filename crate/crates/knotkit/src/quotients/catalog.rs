//! The catalog of finite groups used for quotient fingerprints.
//!
//! Groups are realized as permutation groups and closed into an explicit
//! element list with a multiplication table. The catalog holds cyclic
//! groups Z/n (n <= 30), dihedral groups of order 2n (n <= 30), symmetric
//! groups up to S6, alternating groups up to A6, and PSL(2,q) for prime
//! powers q <= 13. Within one order, dihedral groups come first in the
//! schedule; the remaining family order is cyclic, symmetric, alternating,
//! PSL.

use std::collections::HashMap;

type Perm = Vec<u8>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a*b)(x) = a(b(x))
    b.iter().map(|&x| a[x as usize]).collect()
}

fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Family {
    Dihedral,
    Cyclic,
    Symmetric,
    Alternating,
    PslTwo,
}

/// A finite permutation group with its multiplication table.
pub struct FiniteGroup {
    pub name: String,
    pub family: Family,
    pub param: usize,
    pub order: usize,
    degree: usize,
    elements: Vec<Perm>,
    mult: Vec<u16>,
    inv: Vec<u16>,
    pub identity: u16,
    /// (representative, class size) per conjugacy class
    classes: Vec<(u16, u64)>,
}

impl FiniteGroup {
    fn from_generators(name: String, family: Family, param: usize, gens: Vec<Perm>) -> Self {
        let degree = gens.first().map_or(1, |g| g.len());
        assert!(gens.iter().all(|g| g.len() == degree));
        let id = identity(degree);
        let mut index: HashMap<Perm, u16> = HashMap::new();
        let mut elements = vec![id.clone()];
        index.insert(id, 0);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in &gens {
                let p = compose(g, &elements[i]);
                if !index.contains_key(&p) {
                    let k = elements.len() as u16;
                    index.insert(p.clone(), k);
                    elements.push(p);
                    frontier.push(k as usize);
                }
            }
        }
        // sort for a stable element order, identity stays locatable
        elements.sort();
        let index: HashMap<Perm, u16> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u16))
            .collect();
        let order = elements.len();
        let mut mult = vec![0u16; order * order];
        for i in 0..order {
            for j in 0..order {
                mult[i * order + j] = index[&compose(&elements[i], &elements[j])];
            }
        }
        let identity_idx = index[&identity(degree)];
        let mut inv = vec![0u16; order];
        for i in 0..order {
            for j in 0..order {
                if mult[i * order + j] == identity_idx {
                    inv[i] = j as u16;
                    break;
                }
            }
        }
        // conjugacy classes
        let mut class_of = vec![u16::MAX; order];
        let mut classes = Vec::new();
        for e in 0..order as u16 {
            if class_of[e as usize] != u16::MAX {
                continue;
            }
            let cid = classes.len() as u16;
            let mut orbit = vec![e];
            class_of[e as usize] = cid;
            let mut stack = vec![e];
            while let Some(x) = stack.pop() {
                for g in 0..order as u16 {
                    let y = mult[mult[g as usize * order + x as usize] as usize * order
                        + inv[g as usize] as usize];
                    if class_of[y as usize] == u16::MAX {
                        class_of[y as usize] = cid;
                        orbit.push(y);
                        stack.push(y);
                    }
                }
            }
            classes.push((e, orbit.len() as u64));
        }
        FiniteGroup {
            name,
            family,
            param,
            order,
            degree,
            elements,
            mult,
            inv,
            identity: identity_idx,
            classes,
        }
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mult[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inverse(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn classes(&self) -> &[(u16, u64)] {
        &self.classes
    }

    pub fn element(&self, i: u16) -> &[u8] {
        &self.elements[i as usize]
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Size of the subgroup generated by the given elements, with early
    /// exit once it is forced to be the whole group.
    pub fn generated_order(&self, gens: &[u16]) -> usize {
        let mut seen = vec![false; self.order];
        seen[self.identity as usize] = true;
        let mut members = vec![self.identity];
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                    frontier.push(y);
                    if members.len() * 2 > self.order {
                        return self.order; // only the whole group exceeds half
                    }
                }
            }
        }
        members.len()
    }
}

fn cyclic(n: usize) -> FiniteGroup {
    let mut rot = identity(n);
    rot.rotate_left(1);
    FiniteGroup::from_generators(format!("Z{n}"), Family::Cyclic, n, vec![rot])
}

fn dihedral(n: usize) -> FiniteGroup {
    // order 2n acting on n points
    let mut rot = identity(n);
    rot.rotate_left(1);
    let refl: Perm = (0..n as u8).map(|i| ((n as u8) - i) % n as u8).collect();
    FiniteGroup::from_generators(format!("D{}", 2 * n), Family::Dihedral, n, vec![rot, refl])
}

fn symmetric(n: usize) -> FiniteGroup {
    let mut cycle = identity(n);
    cycle.rotate_left(1);
    let mut swap = identity(n);
    swap.swap(0, 1);
    FiniteGroup::from_generators(format!("S{n}"), Family::Symmetric, n, vec![cycle, swap])
}

fn alternating(n: usize) -> FiniteGroup {
    let mut three = identity(n);
    three[0] = 1;
    three[1] = 2;
    three[2] = 0;
    let big: Perm = if n % 2 == 1 {
        let mut c = identity(n);
        c.rotate_left(1);
        c
    } else {
        // fix 0, cycle the rest
        let mut c = identity(n);
        c[1..].rotate_left(1);
        c
    };
    FiniteGroup::from_generators(format!("A{n}"), Family::Alternating, n, vec![three, big])
}

/// Arithmetic tables of a small finite field of order q = p^k.
struct Gf {
    q: usize,
    add: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>, // inv[0] unused
}

impl Gf {
    fn new(q: usize) -> Gf {
        let (p, modulus): (usize, &[u8]) = match q {
            2 | 3 | 5 | 7 | 11 | 13 => (q, &[]),
            4 => (2, &[1, 1, 1]),    // x^2 + x + 1
            8 => (2, &[1, 1, 0, 1]), // x^3 + x + 1
            9 => (3, &[1, 0, 1]),    // x^2 + 1
            _ => panic!("unsupported field order {q}"),
        };
        let k = if modulus.is_empty() {
            1
        } else {
            modulus.len() - 1
        };
        let digits = |mut x: usize| -> Vec<u8> {
            let mut v = vec![0u8; k];
            for d in v.iter_mut() {
                *d = (x % p) as u8;
                x /= p;
            }
            v
        };
        let undigits =
            |v: &[u8]| -> usize { v.iter().rev().fold(0usize, |acc, &d| acc * p + d as usize) };
        let add_poly = |a: &[u8], b: &[u8]| -> Vec<u8> {
            a.iter()
                .zip(b)
                .map(|(&x, &y)| ((x as usize + y as usize) % p) as u8)
                .collect()
        };
        let mul_poly = |a: &[u8], b: &[u8]| -> Vec<u8> {
            // schoolbook product then reduction by the modulus
            let mut prod = vec![0usize; 2 * k];
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] += x as usize * y as usize;
                }
            }
            for c in prod.iter_mut() {
                *c %= p;
            }
            if k == 1 {
                return vec![(prod[0] % p) as u8];
            }
            // modulus is monic of degree k
            for d in (k..2 * k).rev() {
                let c = prod[d] % p;
                if c == 0 {
                    continue;
                }
                prod[d] = 0;
                for (i, &m) in modulus.iter().enumerate().take(k) {
                    let idx = d - k + i;
                    prod[idx] = (prod[idx] + (p - 1) * c * m as usize) % p;
                }
            }
            (0..k).map(|i| (prod[i] % p) as u8).collect()
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = undigits(&add_poly(&digits(a), &digits(b))) as u8;
                mul[a * q + b] = undigits(&mul_poly(&digits(a), &digits(b))) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if a != 0 && mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        Gf { q, add, neg, inv }
    }
}

fn psl2(q: usize) -> FiniteGroup {
    let f = Gf::new(q);
    let inf = q as u8; // the point at infinity of the projective line
    let p = match q {
        4 | 8 => 2,
        9 => 3,
        _ => q,
    };
    // translations by every basis element of the field over its prime
    // subfield; together with the inversion these generate the group
    let mut gens: Vec<Perm> = Vec::new();
    let mut basis = 1usize;
    while basis < q {
        let t: Perm = (0..=q as u8)
            .map(|x| {
                if x == inf {
                    inf
                } else {
                    f.add[x as usize * f.q + basis]
                }
            })
            .collect();
        gens.push(t);
        basis *= p;
    }
    // s: x -> -1/x
    let s: Perm = (0..=q as u8)
        .map(|x| {
            if x == inf {
                0
            } else if x == 0 {
                inf
            } else {
                f.neg[f.inv[x as usize] as usize]
            }
        })
        .collect();
    gens.push(s);
    FiniteGroup::from_generators(format!("PSL2_{q}"), Family::PslTwo, q, gens)
}

/// Every catalog group of order at most `order_bound`, in canonical
/// schedule order: ascending order, dihedral first within an order, then
/// cyclic, symmetric, alternating, PSL(2,q), ties broken by parameter.
pub fn catalog_up_to(order_bound: usize) -> Vec<FiniteGroup> {
    let mut specs: Vec<(usize, Family, usize)> = Vec::new();
    for n in 2..=30 {
        specs.push((n, Family::Cyclic, n));
    }
    for n in 3..=30 {
        specs.push((2 * n, Family::Dihedral, n));
    }
    for n in 3..=6 {
        let order: usize = (1..=n).product();
        specs.push((order, Family::Symmetric, n));
    }
    for n in 4..=6 {
        let order: usize = (1..=n).product::<usize>() / 2;
        specs.push((order, Family::Alternating, n));
    }
    for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13] {
        let order = q * (q * q - 1) / if q % 2 == 0 { 1 } else { 2 };
        specs.push((order, Family::PslTwo, q));
    }
    specs.retain(|&(o, _, _)| o <= order_bound);
    specs.sort();
    specs
        .into_iter()
        .map(|(_, fam, n)| match fam {
            Family::Cyclic => cyclic(n),
            Family::Dihedral => dihedral(n),
            Family::Symmetric => symmetric(n),
            Family::Alternating => alternating(n),
            Family::PslTwo => psl2(n),
        })
        .collect()
}

/// Looks up one catalog group by its canonical name, e.g. `S3` or `D14`.
pub fn catalog_group(name: &str) -> Option<FiniteGroup> {
    let (fam, rest) = if let Some(r) = name.strip_prefix("PSL2_") {
        (Family::PslTwo, r)
    } else {
        let (head, rest) = name.split_at(1);
        let fam = match head {
            "Z" => Family::Cyclic,
            "D" => Family::Dihedral,
            "S" => Family::Symmetric,
            "A" => Family::Alternating,
            _ => return None,
        };
        (fam, rest)
    };
    let n: usize = rest.parse().ok()?;
    let g = match fam {
        Family::Cyclic if (2..=30).contains(&n) => cyclic(n),
        Family::Dihedral if n % 2 == 0 && (3..=30).contains(&(n / 2)) => dihedral(n / 2),
        Family::Symmetric if (3..=6).contains(&n) => symmetric(n),
        Family::Alternating if (4..=6).contains(&n) => alternating(n),
        Family::PslTwo if [2, 3, 4, 5, 7, 8, 9, 11, 13].contains(&n) => psl2(n),
        _ => return None,
    };
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_are_right() {
        assert_eq!(cyclic(7).order, 7);
        assert_eq!(dihedral(5).order, 10);
        assert_eq!(symmetric(4).order, 24);
        assert_eq!(alternating(5).order, 60);
        for (q, expect) in [
            (2, 6),
            (3, 12),
            (4, 60),
            (5, 60),
            (7, 168),
            (8, 504),
            (9, 360),
            (11, 660),
            (13, 1092),
        ] {
            assert_eq!(psl2(q).order, expect, "PSL(2,{q})");
        }
    }

    #[test]
    fn class_sizes_sum_to_order() {
        for g in [symmetric(4), dihedral(6), psl2(7)] {
            let total: u64 = g.classes().iter().map(|&(_, s)| s).sum();
            assert_eq!(total, g.order as u64);
        }
        // S3 has classes of sizes 1, 2, 3
        let mut sizes: Vec<u64> = symmetric(3).classes().iter().map(|&(_, s)| s).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn schedule_is_order_sorted_with_dihedral_first() {
        let cat = catalog_up_to(12);
        let orders: Vec<usize> = cat.iter().map(|g| g.order).collect();
        let mut sorted = orders.clone();
        sorted.sort();
        assert_eq!(orders, sorted);
        // at order 6 the dihedral D6 precedes Z6 and S3
        let at6: Vec<&str> = cat
            .iter()
            .filter(|g| g.order == 6)
            .map(|g| g.name.as_str())
            .collect();
        assert_eq!(at6, vec!["D6", "Z6", "S3", "PSL2_2"]);
    }

    #[test]
    fn generated_order_detects_proper_subgroups() {
        let s3 = symmetric(3);
        // a 3-cycle generates A3
        let three = s3
            .classes()
            .iter()
            .map(|&(r, _)| r)
            .find(|&r| {
                let p = s3.element(r);
                p != s3.element(s3.identity) && s3.mul(r, r) != s3.identity
            })
            .unwrap();
        assert_eq!(s3.generated_order(&[three]), 3);
        assert_eq!(s3.generated_order(&[]), 1);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(catalog_group("S3").unwrap().order, 6);
        assert_eq!(catalog_group("D14").unwrap().order, 14);
        assert_eq!(catalog_group("PSL2_7").unwrap().order, 168);
        assert!(catalog_group("D13").is_none());
        assert!(catalog_group("Q8").is_none());
    }
}
