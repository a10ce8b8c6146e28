//! Rational tangles and their numerator closures as PD diagrams.
//!
//! A rational tangle of slope p/q is built from an odd-length twist digit
//! list d1, d2, ... with p/q = d_k + 1/(d_{k-1} + ... + 1/d_1): odd
//! positions are horizontal twists on the tangle's right side, even
//! positions vertical twists at the bottom. All digits share the sign of
//! the slope, so the tangle diagrams are alternating and the crossing count
//! is the digit magnitude sum. Montesinos diagrams are numerator closures
//! of left-to-right sums of such tangles; two-bridge diagrams are the
//! single-tangle case.

use crate::diagram::{DiagramError, LinkDiagram};

/// Twist digits realizing slope p/q (q > 0, p nonzero), innermost first,
/// odd length, all of the slope's sign.
pub fn twist_digits(p: i64, q: i64) -> Vec<i64> {
    assert!(q != 0 && p != 0, "slope must be a nonzero finite fraction");
    let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
    let neg = p < 0;
    let (mut a, mut b) = (p.unsigned_abs(), q.unsigned_abs());
    // outer-first continued fraction with floor quotients
    let mut outer = Vec::new();
    loop {
        outer.push(a / b);
        let r = a % b;
        if r == 0 {
            break;
        }
        a = b;
        b = r;
    }
    let mut d: Vec<u64> = outer.into_iter().rev().collect();
    if d.len() % 2 == 0 {
        if d[0] >= 2 {
            let first = d[0];
            d[0] = first - 1;
            d.insert(0, 1);
        } else {
            // [.., b, 1] equals [.., b+1]
            let merged = d[1] + 1;
            d.remove(0);
            d[0] = merged;
        }
    }
    d.into_iter()
        .map(|x| if neg { -(x as i64) } else { x as i64 })
        .collect()
}

/// Slope realized by a digit list, as a reduced fraction; used to
/// cross-check the expansion.
pub fn digits_slope(digits: &[i64]) -> (i64, i64) {
    let (mut p, mut q) = (0i64, 1i64);
    for (i, &d) in digits.iter().enumerate() {
        if i % 2 == 0 {
            // horizontal: f -> f + d
            p += d * q;
        } else {
            // vertical: f -> 1/(d + 1/f) = p/(d p + q)
            q += d * p;
        }
    }
    let g = num_integer::gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
    let (mut p, mut q) = (p / g, q / g);
    if q < 0 {
        p = -p;
        q = -q;
    }
    (p, q)
}

/// Open ends of a tangle under construction.
#[derive(Clone, Copy, Debug)]
struct Ends {
    nw: u32,
    ne: u32,
    sw: u32,
    se: u32,
}

/// Crossing under construction: counterclockwise edge ids plus which
/// opposite pair is the under strand (0 = (ccw0, ccw2), 1 = (ccw1, ccw3)).
struct SemiCrossing {
    ccw: [u32; 4],
    under_pair: u8,
}

struct Assembler {
    xs: Vec<SemiCrossing>,
    parent: Vec<u32>,
    circles: u32,
}

impl Assembler {
    fn new() -> Self {
        Assembler {
            xs: Vec::new(),
            parent: vec![0],
            circles: 0,
        }
    }

    fn fresh(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn find(&mut self, x: u32) -> u32 {
        if self.parent[x as usize] != x {
            let r = self.find(self.parent[x as usize]);
            self.parent[x as usize] = r;
            r
        } else {
            x
        }
    }

    fn join(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }

    fn zero_tangle(&mut self) -> Ends {
        let top = self.fresh();
        let bot = self.fresh();
        Ends {
            nw: top,
            ne: top,
            sw: bot,
            se: bot,
        }
    }

    /// Horizontal twist at the right side; positive sign keeps same-sign
    /// digit tangles alternating.
    fn twist_right(&mut self, t: &mut Ends, sign: i64) {
        let ne2 = self.fresh();
        let se2 = self.fresh();
        // ccw: [ne'(45 deg), ne(135), se(225), se'(315)]
        self.xs.push(SemiCrossing {
            ccw: [ne2, t.ne, t.se, se2],
            under_pair: if sign > 0 { 1 } else { 0 },
        });
        t.ne = ne2;
        t.se = se2;
    }

    /// Vertical twist at the bottom.
    fn twist_bottom(&mut self, t: &mut Ends, sign: i64) {
        let sw2 = self.fresh();
        let se2 = self.fresh();
        // ccw: [se(45 deg), sw(135), sw'(225), se'(315)]
        self.xs.push(SemiCrossing {
            ccw: [t.se, t.sw, sw2, se2],
            under_pair: if sign > 0 { 1 } else { 0 },
        });
        t.sw = sw2;
        t.se = se2;
    }

    fn rational_tangle(&mut self, digits: &[i64]) -> Ends {
        let mut t = self.zero_tangle();
        for (i, &d) in digits.iter().enumerate() {
            for _ in 0..d.unsigned_abs() {
                if i % 2 == 0 {
                    self.twist_right(&mut t, d.signum());
                } else {
                    self.twist_bottom(&mut t, d.signum());
                }
            }
        }
        t
    }

    fn sum(&mut self, a: Ends, b: Ends) -> Ends {
        self.join(a.ne, b.nw);
        self.join(a.se, b.sw);
        Ends {
            nw: a.nw,
            ne: b.ne,
            sw: a.sw,
            se: b.se,
        }
    }

    fn numerator_close(&mut self, t: Ends) {
        self.join(t.nw, t.ne);
        self.join(t.sw, t.se);
    }

    /// Resolves edge classes, orients every component by a deterministic
    /// traversal, and emits the validated diagram.
    fn build(mut self) -> Result<LinkDiagram, DiagramError> {
        let n = self.xs.len();
        // resolve edge classes in the crossing lists
        for i in 0..n {
            for p in 0..4 {
                let e = self.xs[i].ccw[p];
                self.xs[i].ccw[p] = self.find(e);
            }
        }
        // occurrences per class
        let mut occ: std::collections::HashMap<u32, Vec<(u32, u8)>> =
            std::collections::HashMap::new();
        for (i, x) in self.xs.iter().enumerate() {
            for (p, &e) in x.ccw.iter().enumerate() {
                occ.entry(e).or_default().push((i as u32, p as u8));
            }
        }
        // classes with no occurrences are crossing-free circles
        let mut roots: Vec<u32> = (1..self.parent.len() as u32)
            .filter(|&e| self.find(e) == e)
            .collect();
        roots.sort();
        for &r in &roots {
            match occ.get(&r).map(|v| v.len()) {
                None => self.circles += 1,
                Some(2) => {}
                Some(k) => {
                    return Err(DiagramError::Structure(format!(
                        "tangle edge with {k} ends"
                    )))
                }
            }
        }

        // orient components: walk strands, marking incoming slots
        let mut incoming = vec![[false; 4]; n];
        let mut visited: std::collections::HashSet<(u32, u8)> = std::collections::HashSet::new();
        let arcs: Vec<u32> = roots
            .iter()
            .copied()
            .filter(|r| occ.contains_key(r))
            .collect();
        for &start in &arcs {
            let slots = &occ[&start];
            if visited.contains(&slots[0]) || visited.contains(&slots[1]) {
                continue;
            }
            // walk the component entering `start` at its first slot
            let mut entering = slots[0];
            loop {
                if !visited.insert(entering) {
                    break;
                }
                incoming[entering.0 as usize][entering.1 as usize] = true;
                let exit = (entering.0, (entering.1 + 2) % 4);
                visited.insert(exit);
                let next_edge = self.xs[exit.0 as usize].ccw[exit.1 as usize];
                let pair = &occ[&next_edge];
                entering = if pair[0] == exit { pair[1] } else { pair[0] };
            }
        }

        // rotate each crossing so the under-in port comes first
        let mut tuples = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for (i, x) in self.xs.iter().enumerate() {
            let under_ports = if x.under_pair == 0 { [0u8, 2] } else { [1, 3] };
            let under_in = *under_ports
                .iter()
                .find(|&&p| incoming[i][p as usize])
                .expect("one under port is incoming");
            let u = under_in as usize;
            tuples.push([
                x.ccw[u],
                x.ccw[(u + 1) % 4],
                x.ccw[(u + 2) % 4],
                x.ccw[(u + 3) % 4],
            ]);
            let over_in_rel = if incoming[i][(u + 3) % 4] { 3u8 } else { 1 };
            signs.push(if over_in_rel == 3 { 1 } else { -1 });
        }
        // compact edge ids to 1..=2n in first-appearance order
        let mut relabel: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut next = 1u32;
        for t in tuples.iter_mut() {
            for e in t.iter_mut() {
                let id = *relabel.entry(*e).or_insert_with(|| {
                    let v = next;
                    next += 1;
                    v
                });
                *e = id;
            }
        }
        LinkDiagram::from_pd_signed(tuples, signs, self.circles)
    }
}

/// Diagram of the numerator closure of the left-to-right sum of rational
/// tangles with the given slopes.
pub fn tangle_closure(slopes: &[(i64, i64)]) -> Result<LinkDiagram, DiagramError> {
    assert!(!slopes.is_empty());
    let mut asm = Assembler::new();
    let mut acc: Option<Ends> = None;
    for &(p, q) in slopes {
        let digits = twist_digits(p, q);
        debug_assert_eq!(digits_slope(&digits), {
            let g = num_integer::gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
            let (p, q) = (p / g, q / g);
            if q < 0 {
                (-p, -q)
            } else {
                (p, q)
            }
        });
        let t = asm.rational_tangle(&digits);
        acc = Some(match acc {
            None => t,
            Some(prev) => asm.sum(prev, t),
        });
    }
    asm.numerator_close(acc.unwrap());
    asm.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::samples;

    #[test]
    fn digit_expansions_hit_their_slopes() {
        for (p, q) in [
            (3, 1),
            (5, 3),
            (8, 3),
            (7, 3),
            (1, 3),
            (2, 3),
            (-5, 3),
            (13, 5),
            (1, 2),
            (-1, 2),
            (9, 5),
            (11, 3),
        ] {
            let d = twist_digits(p, q);
            assert_eq!(d.len() % 2, 1, "odd digit count for {p}/{q}");
            assert_eq!(digits_slope(&d), (p, q), "digits {d:?}");
            assert!(d.iter().all(|&x| x.signum() != -(p.signum())));
        }
    }

    #[test]
    fn crossing_count_is_digit_sum() {
        for (p, q) in [(3, 1), (5, 3), (8, 3), (7, 3)] {
            let d = twist_digits(p, q);
            let total: u64 = d.iter().map(|x| x.unsigned_abs()).sum();
            let diag = tangle_closure(&[(p, q)]).unwrap();
            assert_eq!(diag.crossing_count() as u64, total);
        }
    }

    #[test]
    fn trefoil_and_hopf_from_closures() {
        let t = tangle_closure(&[(3, 1)]).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.writhe().abs(), 3);
        // fingerprint-level identification happens in the twobridge tests
        let h = tangle_closure(&[(2, 1)]).unwrap();
        assert_eq!(h.crossing_count(), 2);
        assert_eq!(h.component_count(), 2);
        assert_eq!(h.linking_matrix()[0][1].abs(), 1);
        let _ = samples::hopf();
    }

    #[test]
    fn component_parity_follows_torsion() {
        for (p, q) in [(3, 1), (5, 3), (7, 3), (9, 5), (11, 3)] {
            assert_eq!(tangle_closure(&[(p, q)]).unwrap().component_count(), 1);
        }
        for (p, q) in [(2, 1), (4, 1), (8, 3), (10, 3)] {
            assert_eq!(tangle_closure(&[(p, q)]).unwrap().component_count(), 2);
        }
    }

    #[test]
    fn figure_eight_closure_is_alternating_four_crossings() {
        let d = tangle_closure(&[(5, 3)]).unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn whitehead_link_has_zero_linking() {
        let d = tangle_closure(&[(8, 3)]).unwrap();
        assert_eq!(d.crossing_count(), 5);
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.linking_matrix(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn mirror_slope_gives_mirror_diagram() {
        let d = tangle_closure(&[(3, 1)]).unwrap();
        let m = tangle_closure(&[(-3, 1)]).unwrap();
        assert!(m.equivalent_diagram(&d.mirror()));
    }
}
