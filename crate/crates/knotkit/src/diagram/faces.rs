//! Faces of the planar rotation system underlying a diagram.
//!
//! Each crossing carries its four arc ends in counterclockwise order, so the
//! diagram is a rotation system. A face is an orbit of the walk rule
//! "traverse the arc to its other end, then turn to the next slot
//! counterclockwise"; the face interior lies on the right of the walk, and
//! the walk corner at a crossing spans the counterclockwise-consecutive
//! slot pair (arrival, departure).

use super::LinkDiagram;

/// One arc end: position `pos` (0..4) at a crossing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Slot {
    pub crossing: u32,
    pub pos: u8,
}

impl Slot {
    pub fn new(crossing: u32, pos: u8) -> Self {
        Slot { crossing, pos }
    }
}

#[derive(Clone, Debug)]
pub struct Face {
    /// Slots in walk order; the walk traverses the slot's arc away from it.
    pub slots: Vec<Slot>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

pub struct FaceSet {
    faces: Vec<Face>,
    /// face index of every slot, indexed `[crossing][pos]`
    face_of: Vec<[usize; 4]>,
    /// both slots of every arc, indexed by arc label
    arc_slots: Vec<[Slot; 2]>,
}

impl FaceSet {
    pub fn new(d: &LinkDiagram) -> Self {
        let n = d.crossings().len();
        let mut arc_slots: Vec<Vec<Slot>> = vec![Vec::new(); d.arc_count() as usize + 1];
        for (ci, x) in d.crossings().iter().enumerate() {
            for (pi, &a) in x.arcs.iter().enumerate() {
                arc_slots[a as usize].push(Slot::new(ci as u32, pi as u8));
            }
        }
        let arc_slots: Vec<[Slot; 2]> = arc_slots
            .into_iter()
            .map(|v| {
                if v.len() == 2 {
                    [v[0], v[1]]
                } else {
                    // arc 0 placeholder; validated diagrams have no others
                    [Slot::new(0, 0), Slot::new(0, 0)]
                }
            })
            .collect();

        let mate = |s: Slot| -> Slot {
            let a = d.crossings()[s.crossing as usize].arcs[s.pos as usize] as usize;
            let [u, v] = arc_slots[a];
            if u == s {
                v
            } else {
                u
            }
        };

        let mut face_of = vec![[usize::MAX; 4]; n];
        let mut faces = Vec::new();
        for ci in 0..n {
            for pi in 0..4 {
                if face_of[ci][pi] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let start = Slot::new(ci as u32, pi as u8);
                let mut slots = Vec::new();
                let mut s = start;
                loop {
                    face_of[s.crossing as usize][s.pos as usize] = id;
                    slots.push(s);
                    let m = mate(s);
                    s = Slot::new(m.crossing, (m.pos + 1) % 4);
                    if s == start {
                        break;
                    }
                }
                faces.push(Face { slots });
            }
        }
        FaceSet {
            faces,
            face_of,
            arc_slots,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of(&self, s: Slot) -> &Face {
        &self.faces[self.face_of[s.crossing as usize][s.pos as usize]]
    }

    pub fn face_index(&self, s: Slot) -> usize {
        self.face_of[s.crossing as usize][s.pos as usize]
    }

    pub fn slots_of_arc(&self, arc: u32) -> [Slot; 2] {
        self.arc_slots[arc as usize]
    }

    pub fn mate(&self, s: Slot, d: &LinkDiagram) -> Slot {
        let a = d.crossings()[s.crossing as usize].arcs[s.pos as usize];
        let [u, v] = self.arc_slots[a as usize];
        if u == s {
            v
        } else {
            u
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::samples;

    #[test]
    fn hopf_has_four_faces() {
        let d = samples::hopf();
        let f = FaceSet::new(&d);
        assert_eq!(f.face_count(), 4);
        assert!(f.iter().all(|face| face.len() == 2));
    }

    #[test]
    fn trefoil_has_five_faces() {
        let d = samples::trefoil();
        let f = FaceSet::new(&d);
        assert_eq!(f.face_count(), 5);
        let mut sizes: Vec<usize> = f.iter().map(|x| x.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn kink_monogon() {
        let d = crate::diagram::LinkDiagram::from_pd(vec![[1, 1, 2, 2]], 0).unwrap();
        let f = FaceSet::new(&d);
        assert_eq!(f.face_count(), 3);
        let mut sizes: Vec<usize> = f.iter().map(|x| x.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2]);
    }
}
