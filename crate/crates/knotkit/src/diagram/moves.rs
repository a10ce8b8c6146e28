//! Reidemeister moves: enumeration and application.
//!
//! Move sites reference the labels of the diagram they were enumerated on;
//! applying a move returns the canonical form of the result, so replaying a
//! move sequence means canonicalizing the start diagram and folding.
//!
//! Local surgeries are performed on a scratch representation that keeps,
//! per crossing, the counterclockwise arc list plus the incoming under- and
//! over-ports, so strand directions survive the rewiring. Every result is
//! re-validated (including the planarity check) before being returned.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::faces::{FaceSet, Slot};
use super::{Crossing, LinkDiagram};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
}

/// A Reidemeister move site. `R1Add`, `R1AddCircle` and `R2Add` grow the
/// diagram, `R1Remove` and `R2Remove` shrink it, `R3` slides a strand.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Hash)]
pub enum ReidemeisterMove {
    /// Kink on `arc` near its incoming end; the loop sits left or right of
    /// the strand direction, and `positive` fixes the new crossing sign.
    R1Add {
        arc: u32,
        loop_left: bool,
        positive: bool,
    },
    /// Kink on a crossing-free circle. `flip` selects the side; both sides
    /// of a bare circle produce the same diagram.
    R1AddCircle { positive: bool, flip: bool },
    /// Remove the kink at this crossing.
    R1Remove { crossing: u32 },
    /// Poke the arc at slot `over` across their common face, passing over
    /// the arc at slot `under`.
    R2Add { over: (u32, u8), under: (u32, u8) },
    /// Remove the bigon spanned by these two crossings.
    R2Remove { a: u32, b: u32 },
    /// Slide across the triangle face whose walk starts at this slot of the
    /// moving edge (the edge passing entirely over or entirely under).
    R3 { crossing: u32, pos: u8 },
}

impl ReidemeisterMove {
    /// Crossing-count change caused by this move.
    pub fn delta(&self) -> i64 {
        match self {
            ReidemeisterMove::R1Add { .. } | ReidemeisterMove::R1AddCircle { .. } => 1,
            ReidemeisterMove::R1Remove { .. } => -1,
            ReidemeisterMove::R2Add { .. } => 2,
            ReidemeisterMove::R2Remove { .. } => -2,
            ReidemeisterMove::R3 { .. } => 0,
        }
    }

    fn inverse_kind(&self) -> u8 {
        match self {
            ReidemeisterMove::R1Add { .. } | ReidemeisterMove::R1AddCircle { .. } => 0, // R1Remove
            ReidemeisterMove::R1Remove { .. } => 1, // R1Add / R1AddCircle
            ReidemeisterMove::R2Add { .. } => 2,    // R2Remove
            ReidemeisterMove::R2Remove { .. } => 3, // R2Add
            ReidemeisterMove::R3 { .. } => 4,
        }
    }
}

/// Scratch crossing: counterclockwise arc list plus incoming ports.
#[derive(Clone, Copy, Debug)]
struct ProtoX {
    ccw: [u32; 4],
    under_in: u8,
    over_in: u8,
}

impl ProtoX {
    fn from_crossing(x: &Crossing) -> Self {
        ProtoX {
            ccw: x.arcs,
            under_in: 0,
            over_in: if x.sign > 0 { 3 } else { 1 },
        }
    }

    fn ports_of(&self, arc: u32) -> Vec<u8> {
        (0..4u8).filter(|&p| self.ccw[p as usize] == arc).collect()
    }

    /// Is `port` on the over strand?
    fn is_over_port(&self, port: u8) -> bool {
        port % 2 == self.over_in % 2
    }

    fn is_in_port(&self, port: u8) -> bool {
        port == self.under_in || port == self.over_in
    }
}

struct Proto {
    xs: Vec<Option<ProtoX>>,
    circles: u32,
    next_arc: u32,
}

impl Proto {
    fn from_diagram(d: &LinkDiagram) -> Self {
        Proto {
            xs: d
                .crossings()
                .iter()
                .map(|x| Some(ProtoX::from_crossing(x)))
                .collect(),
            circles: d.circles(),
            next_arc: d.arc_count() + 1,
        }
    }

    fn fresh_arc(&mut self) -> u32 {
        let a = self.next_arc;
        self.next_arc += 1;
        a
    }

    /// The slot at which `arc` is incoming, searching live crossings.
    fn in_slot(&self, arc: u32) -> Option<(usize, u8)> {
        for (ci, x) in self.xs.iter().enumerate() {
            let Some(x) = x else { continue };
            for p in 0..4u8 {
                if x.ccw[p as usize] == arc && x.is_in_port(p) {
                    return Some((ci, p));
                }
            }
        }
        None
    }

    fn to_diagram(&self) -> Result<LinkDiagram, MoveError> {
        let mut tuples = Vec::new();
        let mut signs = Vec::new();
        let mut relabel: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut next = 1u32;
        for x in self.xs.iter().flatten() {
            let u = x.under_in as usize;
            let rot = [
                x.ccw[u],
                x.ccw[(u + 1) % 4],
                x.ccw[(u + 2) % 4],
                x.ccw[(u + 3) % 4],
            ];
            let mut t = [0u32; 4];
            for (i, &a) in rot.iter().enumerate() {
                let id = *relabel.entry(a).or_insert_with(|| {
                    let v = next;
                    next += 1;
                    v
                });
                t[i] = id;
            }
            tuples.push(t);
            let rel = (4 + x.over_in - x.under_in) % 4;
            signs.push(if rel == 3 { 1 } else { -1 });
        }
        LinkDiagram::from_pd_signed(tuples, signs, self.circles).map_err(|e| {
            MoveError::PatternMismatch(format!("surgery produced invalid diagram: {e}"))
        })
    }
}

fn slot_arc(d: &LinkDiagram, s: Slot) -> u32 {
    d.crossings()[s.crossing as usize].arcs[s.pos as usize]
}

/// Applies `m` to `d` and returns the canonical form of the result.
pub fn apply_move(d: &LinkDiagram, m: &ReidemeisterMove) -> Result<LinkDiagram, MoveError> {
    let raw = apply_raw(d, m)?;
    Ok(raw.canonical().0)
}

/// Applies `m` and also reports the inverse move, valid on the returned
/// (canonical) diagram. The inverse is found by checking the finitely many
/// candidate sites of the inverse kind.
pub fn apply_move_traced(
    d: &LinkDiagram,
    m: &ReidemeisterMove,
) -> Result<(LinkDiagram, ReidemeisterMove), MoveError> {
    let after = apply_move(d, m)?;
    let key = d.canonical_key();
    let bound = d.crossing_count() as u32 + 2;
    let kind = m.inverse_kind();
    for cand in enumerate_moves(&after, bound) {
        let matches_kind = match kind {
            0 => matches!(cand, ReidemeisterMove::R1Remove { .. }),
            1 => matches!(
                cand,
                ReidemeisterMove::R1Add { .. } | ReidemeisterMove::R1AddCircle { .. }
            ),
            2 => matches!(cand, ReidemeisterMove::R2Remove { .. }),
            3 => matches!(cand, ReidemeisterMove::R2Add { .. }),
            _ => matches!(cand, ReidemeisterMove::R3 { .. }),
        };
        if !matches_kind {
            continue;
        }
        if let Ok(back) = apply_move(&after, &cand) {
            if back.canonical_key() == key {
                return Ok((after, cand));
            }
        }
    }
    unreachable!("inverse move must exist in the move set");
}

fn apply_raw(d: &LinkDiagram, m: &ReidemeisterMove) -> Result<LinkDiagram, MoveError> {
    match *m {
        ReidemeisterMove::R1Add {
            arc,
            loop_left,
            positive,
        } => r1_add(d, arc, loop_left, positive),
        ReidemeisterMove::R1AddCircle { positive, .. } => r1_add_circle(d, positive),
        ReidemeisterMove::R1Remove { crossing } => r1_remove(d, crossing),
        ReidemeisterMove::R2Add { over, under } => r2_add(d, over, under),
        ReidemeisterMove::R2Remove { a, b } => r2_remove(d, a, b),
        ReidemeisterMove::R3 { crossing, pos } => r3(d, crossing, pos),
    }
}

fn r1_add(
    d: &LinkDiagram,
    arc: u32,
    loop_left: bool,
    positive: bool,
) -> Result<LinkDiagram, MoveError> {
    if arc == 0 || arc > d.arc_count() {
        return Err(MoveError::PatternMismatch(format!("no arc {arc}")));
    }
    let mut p = Proto::from_diagram(d);
    let (ci, pi) = p.in_slot(arc).expect("every arc has an incoming end");
    let loop_arc = p.fresh_arc();
    let stub = p.fresh_arc();
    // strand enters at the W port heading east; the loop leaves east and
    // re-enters north (left) or south (right); the stub continues to the
    // original crossing.
    let x = if loop_left {
        // ccw [E=loop out, N=loop in, W=arc in, S=stub out]
        ProtoX {
            ccw: [loop_arc, loop_arc, arc, stub],
            under_in: if positive { 2 } else { 1 },
            over_in: if positive { 1 } else { 2 },
        }
    } else {
        // ccw [E=loop out, N=stub out, W=arc in, S=loop in]
        ProtoX {
            ccw: [loop_arc, stub, arc, loop_arc],
            under_in: if positive { 3 } else { 2 },
            over_in: if positive { 2 } else { 3 },
        }
    };
    p.xs.push(Some(x));
    p.xs[ci].as_mut().unwrap().ccw[pi as usize] = stub;
    p.to_diagram()
}

fn r1_add_circle(d: &LinkDiagram, positive: bool) -> Result<LinkDiagram, MoveError> {
    if d.circles() == 0 {
        return Err(MoveError::PatternMismatch("no crossing-free circle".into()));
    }
    let mut p = Proto::from_diagram(d);
    p.circles -= 1;
    let a = p.fresh_arc();
    let b = p.fresh_arc();
    // one-crossing kink: (a, a, b, b) is the positive one
    let x = if positive {
        ProtoX {
            ccw: [a, a, b, b],
            under_in: 0,
            over_in: 3,
        }
    } else {
        ProtoX {
            ccw: [a, b, b, a],
            under_in: 0,
            over_in: 1,
        }
    };
    p.xs.push(Some(x));
    p.to_diagram()
}

fn r1_remove(d: &LinkDiagram, crossing: u32) -> Result<LinkDiagram, MoveError> {
    let ci = crossing as usize;
    if ci >= d.crossing_count() {
        return Err(MoveError::PatternMismatch(format!(
            "no crossing {crossing}"
        )));
    }
    let mut p = Proto::from_diagram(d);
    let x = p.xs[ci].unwrap();
    let Some(pl) = (0..4u8).find(|&q| x.ccw[q as usize] == x.ccw[((q + 1) % 4) as usize]) else {
        return Err(MoveError::PatternMismatch(
            "crossing carries no kink loop".into(),
        ));
    };
    let u = x.ccw[((pl + 2) % 4) as usize];
    let v = x.ccw[((pl + 3) % 4) as usize];
    p.xs[ci] = None;
    if u == v {
        p.circles += 1;
    } else {
        // splice: replace v by u at v's remaining slot
        let mut replaced = false;
        for y in p.xs.iter_mut().flatten() {
            for q in 0..4 {
                if y.ccw[q] == v {
                    y.ccw[q] = u;
                    replaced = true;
                }
            }
        }
        debug_assert!(replaced);
    }
    p.to_diagram()
}

fn r2_add(d: &LinkDiagram, over: (u32, u8), under: (u32, u8)) -> Result<LinkDiagram, MoveError> {
    let faces = FaceSet::new(d);
    let s_e = Slot::new(over.0, over.1);
    let s_f = Slot::new(under.0, under.1);
    if s_e.crossing as usize >= d.crossing_count()
        || s_f.crossing as usize >= d.crossing_count()
        || s_e.pos > 3
        || s_f.pos > 3
    {
        return Err(MoveError::PatternMismatch("slot out of range".into()));
    }
    if faces.face_index(s_e) != faces.face_index(s_f) {
        return Err(MoveError::PatternMismatch(
            "slots are not on a common face".into(),
        ));
    }
    let e = slot_arc(d, s_e);
    let f = slot_arc(d, s_f);
    if e == f {
        return Err(MoveError::PatternMismatch(
            "poke requires two distinct arcs".into(),
        ));
    }
    let mate_e = faces.mate(s_e, d);
    let mate_f = faces.mate(s_f, d);

    let mut p = Proto::from_diagram(d);
    let e_m = p.fresh_arc();
    let f_m = p.fresh_arc();
    let m_e = p.fresh_arc();
    let m_f = p.fresh_arc();

    // e directed away from s_e?
    let e_leaves_s = !p.xs[s_e.crossing as usize].unwrap().is_in_port(s_e.pos);
    let f_leaves_s = !p.xs[s_f.crossing as usize].unwrap().is_in_port(s_f.pos);

    // n1 ccw [E=m_e, N=f_s, W=e_m, S=m_f]; n2 ccw [E=m_e, N=m_f, W=e_s, S=f_m]
    let n1_ccw = [m_e, f, e_m, m_f];
    let n2_ccw = [m_e, m_f, e, f_m];
    // incoming ports of the e strand
    let (e_in_n1, e_in_n2) = if e_leaves_s { (0u8, 2u8) } else { (2u8, 0u8) };
    // incoming ports of the f strand
    let (f_in_n1, f_in_n2) = if f_leaves_s { (1u8, 1u8) } else { (3u8, 3u8) };
    let n1 = ProtoX {
        ccw: n1_ccw,
        under_in: f_in_n1,
        over_in: e_in_n1,
    };
    let n2 = ProtoX {
        ccw: n2_ccw,
        under_in: f_in_n2,
        over_in: e_in_n2,
    };
    p.xs.push(Some(n1));
    p.xs.push(Some(n2));
    p.xs[mate_e.crossing as usize].as_mut().unwrap().ccw[mate_e.pos as usize] = e_m;
    p.xs[mate_f.crossing as usize].as_mut().unwrap().ccw[mate_f.pos as usize] = f_m;
    p.to_diagram()
}

fn r2_remove(d: &LinkDiagram, a: u32, b: u32) -> Result<LinkDiagram, MoveError> {
    if a == b || a as usize >= d.crossing_count() || b as usize >= d.crossing_count() {
        return Err(MoveError::PatternMismatch("bad crossing pair".into()));
    }
    let faces = FaceSet::new(d);
    let bigon = faces.iter().find(|face| {
        face.len() == 2 && {
            let cs = [face.slots[0].crossing, face.slots[1].crossing];
            (cs == [a, b] || cs == [b, a])
                && slot_arc(d, face.slots[0]) != slot_arc(d, face.slots[1])
        }
    });
    let Some(bigon) = bigon else {
        return Err(MoveError::PatternMismatch(
            "crossings do not span a bigon".into(),
        ));
    };
    let s1 = bigon.slots[0];
    let s2 = bigon.slots[1];
    let u = slot_arc(d, s1);
    let w = slot_arc(d, s2);
    // one arc over at both ends, the other under at both
    let over_at = |arc: u32, ci: u32| -> bool {
        let x = &d.crossings()[ci as usize];
        let px = ProtoX::from_crossing(x);
        px.ports_of(arc).iter().all(|&q| px.is_over_port(q))
    };
    let under_at = |arc: u32, ci: u32| -> bool {
        let x = &d.crossings()[ci as usize];
        let px = ProtoX::from_crossing(x);
        px.ports_of(arc).iter().all(|&q| !px.is_over_port(q))
    };
    let pattern_ok = (over_at(u, a) && over_at(u, b) && under_at(w, a) && under_at(w, b))
        || (under_at(u, a) && under_at(u, b) && over_at(w, a) && over_at(w, b));
    if !pattern_ok {
        return Err(MoveError::PatternMismatch(
            "bigon strands are not a poke".into(),
        ));
    }

    let mut p = Proto::from_diagram(d);
    // external continuation arcs of the two strands
    let mut splices = Vec::new();
    for arc in [u, w] {
        let mut ends = Vec::new();
        for ci in [a, b] {
            let x = p.xs[ci as usize].unwrap();
            for q in x.ports_of(arc) {
                ends.push(x.ccw[((q + 2) % 4) as usize]);
            }
        }
        assert_eq!(ends.len(), 2);
        splices.push((ends[0], ends[1]));
    }
    p.xs[a as usize] = None;
    p.xs[b as usize] = None;

    // union-find over the spliced arcs
    let mut uf: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    fn find(uf: &mut std::collections::HashMap<u32, u32>, x: u32) -> u32 {
        let p = *uf.entry(x).or_insert(x);
        if p == x {
            x
        } else {
            let r = find(uf, p);
            uf.insert(x, r);
            r
        }
    }
    for &(x, y) in &splices {
        let rx = find(&mut uf, x);
        let ry = find(&mut uf, y);
        if rx != ry {
            uf.insert(rx.max(ry), rx.min(ry));
        }
    }
    // rewrite remaining slots; classes with no remaining slots close up
    let members: Vec<u32> = uf.keys().copied().collect();
    let mut class_slots: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    for y in p.xs.iter_mut().flatten() {
        for q in 0..4 {
            let arc = y.ccw[q];
            if uf.contains_key(&arc) {
                let r = find(&mut uf, arc);
                y.ccw[q] = r;
                *class_slots.entry(r).or_insert(0) += 1;
            }
        }
    }
    let mut roots: Vec<u32> = members
        .iter()
        .map(|&m| find(&mut uf, m))
        .collect::<std::collections::HashSet<_>>()
        .into_iter()
        .collect();
    roots.sort();
    for r in roots {
        let n = class_slots.get(&r).copied().unwrap_or(0);
        match n {
            0 => p.circles += 1,
            2 => {}
            k => panic!("splice left arc class with {k} slots"),
        }
    }
    p.to_diagram()
}

fn r3(d: &LinkDiagram, crossing: u32, pos: u8) -> Result<LinkDiagram, MoveError> {
    if crossing as usize >= d.crossing_count() || pos > 3 {
        return Err(MoveError::PatternMismatch("slot out of range".into()));
    }
    let faces = FaceSet::new(d);
    let s = Slot::new(crossing, pos);
    let face = faces.face_of(s);
    if face.len() != 3 {
        return Err(MoveError::PatternMismatch("face is not a triangle".into()));
    }
    // walk order starting at s
    let i = face.slots.iter().position(|&x| x == s).unwrap();
    let t = face.slots[(i + 1) % 3];
    let w = face.slots[(i + 2) % 3];
    let (cy, cx, cz) = (s.crossing, t.crossing, w.crossing);
    if cy == cx || cy == cz || cx == cz {
        return Err(MoveError::PatternMismatch(
            "triangle corners are not distinct".into(),
        ));
    }
    let e = slot_arc(d, s);
    let f = slot_arc(d, t);
    let g = slot_arc(d, w);

    let mate_s = faces.mate(s, d); // e's end at cx
    let mate_t = faces.mate(t, d); // f's end at cz
    let mate_w = faces.mate(w, d); // g's end at cy
    debug_assert_eq!(mate_s.crossing, cx);
    debug_assert_eq!(mate_t.crossing, cz);
    debug_assert_eq!(mate_w.crossing, cy);

    let px_y = ProtoX::from_crossing(&d.crossings()[cy as usize]);
    let px_x = ProtoX::from_crossing(&d.crossings()[cx as usize]);
    let px_z = ProtoX::from_crossing(&d.crossings()[cz as usize]);

    // the moving edge must pass entirely over or entirely under
    let e_over_y = px_y.is_over_port(s.pos);
    let e_over_x = px_x.is_over_port(mate_s.pos);
    if e_over_y != e_over_x {
        return Err(MoveError::PatternMismatch(
            "moving edge is neither all-over nor all-under".into(),
        ));
    }

    // externals: opposite ports of the triangle edges
    let a_l = px_y.ccw[((s.pos + 2) % 4) as usize];
    let c_t = px_y.ccw[((mate_w.pos + 2) % 4) as usize];
    let a_r = px_x.ccw[((mate_s.pos + 2) % 4) as usize];
    let b_r = px_x.ccw[((t.pos + 2) % 4) as usize];
    let b_l = px_z.ccw[((mate_t.pos + 2) % 4) as usize];
    let c_b = px_z.ccw[((w.pos + 2) % 4) as usize];

    // directions
    let a_towards_x = px_x.is_in_port(mate_s.pos); // strand A runs y -> x
    let b_towards_x = px_x.is_in_port(t.pos); // strand B runs z -> x
    let c_towards_y = px_y.is_in_port(mate_w.pos); // strand C runs z -> y

    // over/under carried per strand pair
    let a_over_b = e_over_x;
    let a_over_c = e_over_y;
    let b_over_c = px_z.is_over_port(mate_t.pos);

    // rebuilt crossings:
    // z~: ccw [b_R, c_T, f, g]; strands B=(0,2), C=(1,3)
    let zb_in: u8 = if b_towards_x { 2 } else { 0 }; // B arrives via f else via b_R
    let zc_in: u8 = if c_towards_y { 3 } else { 1 };
    let z_new = ProtoX {
        ccw: [b_r, c_t, f, g],
        under_in: if b_over_c { zc_in } else { zb_in },
        over_in: if b_over_c { zb_in } else { zc_in },
    };
    // x~: ccw [f, a_L, b_L, e]; strands B=(0,2), A=(1,3)
    let xa_in: u8 = if a_towards_x { 1 } else { 3 };
    let xb_in: u8 = if b_towards_x { 2 } else { 0 };
    let x_new = ProtoX {
        ccw: [f, a_l, b_l, e],
        under_in: if a_over_b { xb_in } else { xa_in },
        over_in: if a_over_b { xa_in } else { xb_in },
    };
    // y~: ccw [g, e, c_B, a_R]; strands C=(0,2), A=(1,3)
    let ya_in: u8 = if a_towards_x { 1 } else { 3 };
    let yc_in: u8 = if c_towards_y { 2 } else { 0 };
    let y_new = ProtoX {
        ccw: [g, e, c_b, a_r],
        under_in: if a_over_c { yc_in } else { ya_in },
        over_in: if a_over_c { ya_in } else { yc_in },
    };

    let mut p = Proto::from_diagram(d);
    p.xs[cz as usize] = Some(z_new);
    p.xs[cx as usize] = Some(x_new);
    p.xs[cy as usize] = Some(y_new);
    p.to_diagram()
}

/// All applicable moves whose result has at most `max_crossings` crossings,
/// in a fixed deterministic order: reductions, slides, then additions.
pub fn enumerate_moves(d: &LinkDiagram, max_crossings: u32) -> Vec<ReidemeisterMove> {
    let mut out = Vec::new();
    let c = d.crossing_count() as i64;
    let fits = |delta: i64| c + delta >= 0 && c + delta <= max_crossings as i64;

    let faces = if d.crossing_count() > 0 {
        Some(FaceSet::new(d))
    } else {
        None
    };

    // R1 removals
    if fits(-1) {
        for (ci, x) in d.crossings().iter().enumerate() {
            if (0..4).any(|q| x.arcs[q] == x.arcs[(q + 1) % 4]) {
                out.push(ReidemeisterMove::R1Remove {
                    crossing: ci as u32,
                });
            }
        }
    }
    // R2 removals
    if fits(-2) {
        if let Some(fs) = &faces {
            let mut seen = std::collections::HashSet::new();
            for face in fs.iter() {
                if face.len() != 2 {
                    continue;
                }
                let (s1, s2) = (face.slots[0], face.slots[1]);
                if s1.crossing == s2.crossing || slot_arc(d, s1) == slot_arc(d, s2) {
                    continue;
                }
                let key = (s1.crossing.min(s2.crossing), s1.crossing.max(s2.crossing));
                if !seen.insert(key) {
                    continue;
                }
                let m = ReidemeisterMove::R2Remove { a: key.0, b: key.1 };
                if apply_raw(d, &m).is_ok() {
                    out.push(m);
                }
            }
        }
    }
    // R3 slides
    if let Some(fs) = &faces {
        for face in fs.iter() {
            if face.len() != 3 {
                continue;
            }
            let cs: Vec<u32> = face.slots.iter().map(|s| s.crossing).collect();
            if cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2] {
                continue;
            }
            for &s in &face.slots {
                let px = ProtoX::from_crossing(&d.crossings()[s.crossing as usize]);
                let m = fs.mate(s, d);
                let px2 = ProtoX::from_crossing(&d.crossings()[m.crossing as usize]);
                if px.is_over_port(s.pos) == px2.is_over_port(m.pos) {
                    out.push(ReidemeisterMove::R3 {
                        crossing: s.crossing,
                        pos: s.pos,
                    });
                }
            }
        }
    }
    // R1 additions
    if fits(1) {
        for arc in 1..=d.arc_count() {
            for loop_left in [true, false] {
                for positive in [true, false] {
                    out.push(ReidemeisterMove::R1Add {
                        arc,
                        loop_left,
                        positive,
                    });
                }
            }
        }
        if d.circles() > 0 {
            for positive in [true, false] {
                for flip in [false, true] {
                    out.push(ReidemeisterMove::R1AddCircle { positive, flip });
                }
            }
        }
    }
    // R2 additions
    if fits(2) {
        if let Some(fs) = &faces {
            for face in fs.iter() {
                for &se in &face.slots {
                    for &sf in &face.slots {
                        if se == sf || slot_arc(d, se) == slot_arc(d, sf) {
                            continue;
                        }
                        out.push(ReidemeisterMove::R2Add {
                            over: (se.crossing, se.pos),
                            under: (sf.crossing, sf.pos),
                        });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::samples;

    #[test]
    fn kink_then_unkink_is_identity() {
        let d = samples::trefoil().canonical().0;
        for arc in 1..=d.arc_count() {
            for left in [true, false] {
                for pos in [true, false] {
                    let m = ReidemeisterMove::R1Add {
                        arc,
                        loop_left: left,
                        positive: pos,
                    };
                    let (kinked, inv) = apply_move_traced(&d, &m).unwrap();
                    assert_eq!(kinked.crossing_count(), 4);
                    let back = apply_move(&kinked, &inv).unwrap();
                    assert!(back.equivalent_diagram(&d));
                }
            }
        }
    }

    #[test]
    fn circle_kinks() {
        let u = LinkDiagram::unknot();
        let moves = enumerate_moves(&u, 1);
        assert_eq!(moves.len(), 4);
        assert!(moves
            .iter()
            .all(|m| matches!(m, ReidemeisterMove::R1AddCircle { .. })));
        let pos = apply_move(&u, &moves[0]).unwrap();
        assert_eq!(pos.crossing_count(), 1);
        assert_eq!(pos.circles(), 0);
        // and back
        let back = apply_move(&pos, &ReidemeisterMove::R1Remove { crossing: 0 }).unwrap();
        assert_eq!(back.crossing_count(), 0);
        assert_eq!(back.circles(), 1);
    }

    #[test]
    fn poke_then_unpoke_is_identity() {
        let d = samples::trefoil().canonical().0;
        let moves = enumerate_moves(&d, 5);
        let mut tried = 0;
        for m in &moves {
            if let ReidemeisterMove::R2Add { .. } = m {
                let (poked, inv) = apply_move_traced(&d, m).unwrap();
                assert_eq!(poked.crossing_count(), 5);
                let back = apply_move(&poked, &inv).unwrap();
                assert!(back.equivalent_diagram(&d), "failed for {m:?}");
                tried += 1;
            }
        }
        assert!(tried > 0);
    }

    #[test]
    fn trefoil_move_census() {
        // the alternating trefoil has no kinks, no poke bigons, and no
        // coherent triangles
        let d = samples::trefoil().canonical().0;
        let moves = enumerate_moves(&d, 3);
        assert!(moves
            .iter()
            .all(|m| !matches!(m, ReidemeisterMove::R1Remove { .. })));
        assert!(moves
            .iter()
            .all(|m| !matches!(m, ReidemeisterMove::R2Remove { .. })));
        assert!(moves
            .iter()
            .all(|m| !matches!(m, ReidemeisterMove::R3 { .. })));
        // bound 3 excludes all additions on a 3-crossing diagram
        assert!(moves.is_empty());
    }

    #[test]
    fn r3_exists_after_poke_and_preserves_count() {
        // poking the trefoil produces coherent triangles somewhere
        let d = samples::trefoil().canonical().0;
        let mut found = false;
        for m in enumerate_moves(&d, 5) {
            if !matches!(m, ReidemeisterMove::R2Add { .. }) {
                continue;
            }
            let poked = apply_move(&d, &m).unwrap();
            for m3 in enumerate_moves(&poked, 5) {
                if let ReidemeisterMove::R3 { .. } = m3 {
                    let slid = apply_move(&poked, &m3).unwrap();
                    assert_eq!(slid.crossing_count(), poked.crossing_count());
                    assert_eq!(slid.component_count(), poked.component_count());
                    found = true;
                }
            }
        }
        assert!(found, "no R3 site found on any poked trefoil");
    }

    #[test]
    fn moves_preserve_component_count_and_linking() {
        let d = samples::hopf().canonical().0;
        let lk = d.linking_matrix();
        for m in enumerate_moves(&d, 4) {
            let e = apply_move(&d, &m).unwrap();
            assert_eq!(e.component_count(), d.component_count(), "{m:?}");
            assert_eq!(e.linking_matrix(), lk, "{m:?}");
        }
    }

    #[test]
    fn pattern_mismatches_are_reported() {
        let d = samples::trefoil().canonical().0;
        // no kinks on the alternating trefoil
        assert!(matches!(
            apply_move(&d, &ReidemeisterMove::R1Remove { crossing: 0 }),
            Err(MoveError::PatternMismatch(_))
        ));
        // slots on different faces cannot poke
        assert!(apply_move(
            &d,
            &ReidemeisterMove::R2Add {
                over: (0, 0),
                under: (0, 2)
            }
        )
        .is_err());
        // R3 needs a triangle
        assert!(matches!(
            apply_move(
                &d,
                &ReidemeisterMove::R3 {
                    crossing: 0,
                    pos: 0
                }
            ),
            Err(MoveError::PatternMismatch(_))
        ));
        // no circles to kink
        assert!(apply_move(
            &d,
            &ReidemeisterMove::R1AddCircle {
                positive: true,
                flip: false
            }
        )
        .is_err());
    }

    #[test]
    fn negative_bound_never_errors() {
        let d = samples::trefoil();
        assert!(enumerate_moves(&d, 0).is_empty());
    }
}
