//! Oriented link diagrams as planar diagram (PD) codes.
//!
//! Conventions, used consistently everywhere:
//!
//! * A crossing is a 4-tuple `(a, b, c, d)` of arc labels listed
//!   counterclockwise starting from the incoming under-strand. The under
//!   strand runs `a -> c`; the over strand occupies `b` and `d`.
//! * The crossing sign is `+1` when the over strand enters at `d` (so the
//!   frame (over direction, under direction) is positively oriented), `-1`
//!   when it enters at `b`.
//! * Arc labels run `1..=2*crossings`; every arc appears exactly twice,
//!   once incoming and once outgoing.
//! * Crossing-free unknot components are tracked by a separate counter and
//!   carry no arcs.
//!
//! Diagram equality is canonical-form equality: arcs are relabeled along
//! each component, components taken in every order, and the
//! lexicographically least sorted crossing list wins.

mod faces;
mod moves;
mod parse;

pub use faces::{Face, FaceSet, Slot};
pub use moves::{apply_move, apply_move_traced, enumerate_moves, MoveError, ReidemeisterMove};
pub use parse::{parse_diagram, DiagramFormat, DiagramJson};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("structure error: {0}")]
    Structure(String),
}

/// One crossing of a PD code. `arcs` is the tuple `(a, b, c, d)` described
/// at module level; `sign` is derived from the strand orientations and
/// cached here.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn under_in(&self) -> u32 {
        self.arcs[0]
    }
    pub fn under_out(&self) -> u32 {
        self.arcs[2]
    }
    pub fn over_in(&self) -> u32 {
        if self.sign > 0 {
            self.arcs[3]
        } else {
            self.arcs[1]
        }
    }
    pub fn over_out(&self) -> u32 {
        if self.sign > 0 {
            self.arcs[1]
        } else {
            self.arcs[3]
        }
    }
}

/// An oriented link diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    arc_count: u32,
    /// Crossing-free unknot components.
    circles: u32,
    /// Arc cycles of the crossed components, in traversal order.
    components: Vec<Vec<u32>>,
    /// Per-component direction flags relative to the stored traversal;
    /// always +1 on a freshly validated diagram.
    orientations: Vec<i8>,
}

impl LinkDiagram {
    /// The crossing-free unknot.
    pub fn unknot() -> Self {
        LinkDiagram::from_pd(Vec::new(), 1).expect("unknot is valid")
    }

    /// Unlink of `n` crossing-free circles.
    pub fn unlink(n: u32) -> Self {
        LinkDiagram::from_pd(Vec::new(), n).expect("unlink is valid")
    }

    /// Builds and validates a diagram from raw PD tuples plus a number of
    /// crossing-free circles. Over-strand directions are derived from the
    /// under-strand anchors; components passing only over other strands get
    /// a deterministic default direction.
    pub fn from_pd(tuples: Vec<[u32; 4]>, circles: u32) -> Result<Self, DiagramError> {
        Self::build(tuples, circles, None)
    }

    /// As [`from_pd`](Self::from_pd) but with prescribed crossing signs,
    /// which pin the direction of components that never pass under.
    pub fn from_pd_signed(
        tuples: Vec<[u32; 4]>,
        signs: Vec<i8>,
        circles: u32,
    ) -> Result<Self, DiagramError> {
        Self::build(tuples, circles, Some(signs))
    }

    fn build(
        tuples: Vec<[u32; 4]>,
        circles: u32,
        signs: Option<Vec<i8>>,
    ) -> Result<Self, DiagramError> {
        let n = tuples.len();
        if n == 0 && circles == 0 {
            return Err(DiagramError::Structure("diagram has no components".into()));
        }
        if let Some(s) = &signs {
            if s.len() != n {
                return Err(DiagramError::Structure("sign list length mismatch".into()));
            }
        }
        let arc_count = (2 * n) as u32;

        // census: every label in 1..=2n appears exactly twice
        let mut occ: Vec<Vec<(usize, u8)>> = vec![Vec::new(); arc_count as usize + 1];
        for (ci, t) in tuples.iter().enumerate() {
            for (pi, &a) in t.iter().enumerate() {
                if a == 0 || a > arc_count {
                    return Err(DiagramError::Structure(format!(
                        "arc label {a} out of range 1..={arc_count}"
                    )));
                }
                occ[a as usize].push((ci, pi as u8));
            }
        }
        for (a, slots) in occ.iter().enumerate().skip(1) {
            if slots.len() != 2 {
                return Err(DiagramError::Structure(format!(
                    "arc {a} appears {} times, expected 2",
                    slots.len()
                )));
            }
        }

        // resolve over-strand directions: slot status true = incoming.
        // under slots are fixed; over slots propagate through arcs and the
        // opposite-parity constraint within each crossing.
        let mut status: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
        for ci in 0..n {
            status[ci][0] = Some(true);
            status[ci][2] = Some(false);
            if let Some(s) = &signs {
                // sign +1 <=> over strand enters at slot 3
                match s[ci] {
                    1 => {
                        status[ci][3] = Some(true);
                        status[ci][1] = Some(false);
                    }
                    -1 => {
                        status[ci][1] = Some(true);
                        status[ci][3] = Some(false);
                    }
                    v => {
                        return Err(DiagramError::Structure(format!(
                            "invalid crossing sign {v}"
                        )))
                    }
                }
            }
        }
        loop {
            let mut progress = false;
            let mut conflict = false;
            let set = |st: &mut Vec<[Option<bool>; 4]>,
                       ci: usize,
                       pi: usize,
                       v: bool,
                       progress: &mut bool,
                       conflict: &mut bool| {
                match st[ci][pi] {
                    None => {
                        st[ci][pi] = Some(v);
                        *progress = true;
                    }
                    Some(old) if old != v => *conflict = true,
                    _ => {}
                }
            };
            for a in 1..=arc_count as usize {
                let [(c1, p1), (c2, p2)] = [occ[a][0], occ[a][1]];
                if let Some(v) = status[c1][p1 as usize] {
                    set(
                        &mut status,
                        c2,
                        p2 as usize,
                        !v,
                        &mut progress,
                        &mut conflict,
                    );
                }
                if let Some(v) = status[c2][p2 as usize] {
                    set(
                        &mut status,
                        c1,
                        p1 as usize,
                        !v,
                        &mut progress,
                        &mut conflict,
                    );
                }
            }
            for ci in 0..n {
                if let Some(v) = status[ci][1] {
                    set(&mut status, ci, 3, !v, &mut progress, &mut conflict);
                }
                if let Some(v) = status[ci][3] {
                    set(&mut status, ci, 1, !v, &mut progress, &mut conflict);
                }
            }
            if conflict {
                return Err(DiagramError::Structure(
                    "inconsistent strand orientations".into(),
                ));
            }
            if !progress {
                // default rule for components never passing under: the over
                // strand of the lowest such undetermined crossing runs d -> b
                if let Some(ci) = (0..n).find(|&ci| status[ci][1].is_none()) {
                    status[ci][3] = Some(true);
                    status[ci][1] = Some(false);
                } else {
                    break;
                }
            }
        }

        // cache signs and verify against any provided ones
        let mut crossings = Vec::with_capacity(n);
        for (ci, t) in tuples.iter().enumerate() {
            let sign = if status[ci][3] == Some(true) { 1 } else { -1 };
            if let Some(s) = &signs {
                if s[ci] != sign {
                    return Err(DiagramError::Structure(format!(
                        "cached sign of crossing {ci} disagrees with orientations"
                    )));
                }
            }
            crossings.push(Crossing { arcs: *t, sign });
        }

        // successor map: arc -> next arc along the strand
        let mut next = vec![0u32; arc_count as usize + 1];
        for x in &crossings {
            next[x.under_in() as usize] = x.under_out();
            next[x.over_in() as usize] = x.over_out();
        }
        // trace components
        let mut seen = vec![false; arc_count as usize + 1];
        let mut components = Vec::new();
        for start in 1..=arc_count {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut a = start;
            loop {
                if seen[a as usize] {
                    return Err(DiagramError::Structure(
                        "arc traversal is not a disjoint union of cycles".into(),
                    ));
                }
                seen[a as usize] = true;
                cycle.push(a);
                a = next[a as usize];
                if a == start {
                    break;
                }
            }
            components.push(cycle);
        }

        let total_components = components.len() + circles as usize;
        let d = LinkDiagram {
            crossings,
            arc_count,
            circles,
            orientations: vec![1; total_components],
            components,
        };
        d.check_planar()?;
        Ok(d)
    }

    /// Rotation-system planarity: each connected crossed piece must satisfy
    /// V - E + F = 2.
    fn check_planar(&self) -> Result<(), DiagramError> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        // connected pieces of the 4-valent graph
        let n = self.crossings.len();
        let mut piece = vec![usize::MAX; n];
        let mut arc_home = vec![usize::MAX; self.arc_count as usize + 1];
        let mut count = 0;
        for ci in 0..n {
            if piece[ci] != usize::MAX {
                continue;
            }
            let id = count;
            count += 1;
            let mut stack = vec![ci];
            piece[ci] = id;
            while let Some(c) = stack.pop() {
                for &a in &self.crossings[c].arcs {
                    arc_home[a as usize] = id;
                }
                for (cj, x) in self.crossings.iter().enumerate() {
                    if piece[cj] == usize::MAX
                        && x.arcs.iter().any(|a| self.crossings[c].arcs.contains(a))
                    {
                        piece[cj] = id;
                        stack.push(cj);
                    }
                }
            }
        }
        let faces = FaceSet::new(self);
        let mut v = vec![0i64; count];
        let mut f = vec![0i64; count];
        for ci in 0..n {
            v[piece[ci]] += 1;
        }
        for face in faces.iter() {
            f[piece[face.slots[0].crossing as usize]] += 1;
        }
        for p in 0..count {
            let e = 2 * v[p];
            if v[p] - e + f[p] != 2 {
                return Err(DiagramError::Structure(
                    "rotation system is not planar".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        self.arc_count
    }

    pub fn circles(&self) -> u32 {
        self.circles
    }

    /// Arc cycles of crossed components.
    pub fn crossed_components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len() + self.circles as usize
    }

    pub fn orientations(&self) -> &[i8] {
        &self.orientations
    }

    /// Writhe: sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    /// Component index of an arc (crossed components come first, then circles).
    pub fn component_of(&self, arc: u32) -> usize {
        self.components
            .iter()
            .position(|c| c.contains(&arc))
            .expect("arc belongs to a component")
    }

    /// Mirror image: over and under strands swap at every crossing, all
    /// signs negate, component structure and orientations are unchanged.
    pub fn mirror(&self) -> LinkDiagram {
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.arcs;
                if x.sign > 0 {
                    // new under-in is the old over-in at d
                    [d, a, b, c]
                } else {
                    [b, c, d, a]
                }
            })
            .collect();
        let signs = self.crossings.iter().map(|x| -x.sign).collect();
        LinkDiagram::from_pd_signed(tuples, signs, self.circles)
            .expect("mirror of a valid diagram is valid")
    }

    /// Linking matrix: `lk[i][j]` is half the signed count of crossings
    /// between components `i` and `j`; the diagonal is zero by convention.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let k = self.component_count();
        let mut twice = vec![vec![0i64; k]; k];
        for x in &self.crossings {
            let i = self.component_of(x.under_in());
            let j = self.component_of(x.over_in());
            if i != j {
                twice[i][j] += x.sign as i64;
                twice[j][i] += x.sign as i64;
            }
        }
        for row in &mut twice {
            for v in row.iter_mut() {
                debug_assert!(*v % 2 == 0, "inter-component crossings pair up");
                *v /= 2;
            }
        }
        twice
    }

    /// Canonical form together with the arc relabeling that produced it.
    /// Labels are assigned consecutively along each component cycle; all
    /// component orders and cycle starting points are tried and the
    /// lexicographically least sorted crossing list wins.
    pub fn canonical(&self) -> (LinkDiagram, Vec<u32>) {
        if self.crossings.is_empty() {
            return (self.clone(), vec![0; self.arc_count as usize + 1]);
        }
        let k = self.components.len();
        let mut order: Vec<usize> = (0..k).collect();
        let mut best: Option<(Vec<(u32, [u32; 4])>, Vec<u32>)> = None;

        // iterate permutations in lexicographic order (k is tiny)
        let mut perms = Vec::new();
        permutations(&mut order, 0, &mut perms);
        for perm in &perms {
            // choices of starting arc per component
            let sizes: Vec<usize> = perm.iter().map(|&c| self.components[c].len()).collect();
            let mut choice = vec![0usize; k];
            loop {
                let mut map = vec![0u32; self.arc_count as usize + 1];
                let mut label = 1u32;
                for (pos, &c) in perm.iter().enumerate() {
                    let cyc = &self.components[c];
                    let start = choice[pos];
                    for i in 0..cyc.len() {
                        map[cyc[(start + i) % cyc.len()] as usize] = label;
                        label += 1;
                    }
                }
                let mut tupled: Vec<(u32, [u32; 4])> = self
                    .crossings
                    .iter()
                    .map(|x| {
                        let t = [
                            map[x.arcs[0] as usize],
                            map[x.arcs[1] as usize],
                            map[x.arcs[2] as usize],
                            map[x.arcs[3] as usize],
                        ];
                        (t[0], t)
                    })
                    .collect();
                tupled.sort();
                if best.as_ref().is_none_or(|(b, _)| tupled < *b) {
                    best = Some((tupled, map));
                }
                // advance the mixed-radix choice counter
                let mut i = 0;
                loop {
                    if i == k {
                        break;
                    }
                    choice[i] += 1;
                    if choice[i] < sizes[i] {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
        let (tupled, map) = best.unwrap();
        let tuples: Vec<[u32; 4]> = tupled.iter().map(|(_, t)| *t).collect();
        let signs: Vec<i8> = {
            // signs travel with tuples; recompute pairing by locating each
            // relabeled tuple's source sign
            let mut signed: Vec<([u32; 4], i8)> = self
                .crossings
                .iter()
                .map(|x| {
                    (
                        [
                            map[x.arcs[0] as usize],
                            map[x.arcs[1] as usize],
                            map[x.arcs[2] as usize],
                            map[x.arcs[3] as usize],
                        ],
                        x.sign,
                    )
                })
                .collect();
            signed.sort();
            signed.iter().map(|(_, s)| *s).collect()
        };
        let d = LinkDiagram::from_pd_signed(tuples, signs, self.circles)
            .expect("canonical relabeling preserves validity");
        (d, map)
    }

    /// Stable key identifying the diagram up to canonical relabeling.
    pub fn canonical_key(&self) -> Vec<u32> {
        let (c, _) = self.canonical();
        let mut key = vec![c.arc_count, c.circles];
        for x in &c.crossings {
            key.extend_from_slice(&x.arcs);
            key.push(if x.sign > 0 { 1 } else { 0 });
        }
        key
    }

    /// Structural equality after canonical relabeling.
    pub fn equivalent_diagram(&self, other: &LinkDiagram) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    // lexicographic order: choose each remaining item in sorted order
    let mut rest: Vec<usize> = items[k..].to_vec();
    rest.sort_unstable();
    for &r in &rest {
        let pos = items[k..].iter().position(|&x| x == r).unwrap() + k;
        items.swap(k, pos);
        permutations(items, k + 1, out);
        items.swap(k, pos);
    }
}

/// Standard toy diagrams used across the test suites.
pub mod samples {
    use super::LinkDiagram;

    /// Positive Hopf link, two crossings.
    pub fn hopf() -> LinkDiagram {
        LinkDiagram::from_pd(vec![[1, 3, 2, 4], [3, 1, 4, 2]], 0).unwrap()
    }

    /// Right-handed trefoil, three positive crossings.
    pub fn trefoil() -> LinkDiagram {
        LinkDiagram::from_pd(vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], 0).unwrap()
    }

    /// Figure-eight knot, four crossings.
    pub fn figure_eight() -> LinkDiagram {
        LinkDiagram::from_pd(
            vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]],
            0,
        )
        .unwrap()
    }
}
