//! Diagram input and output.
//!
//! Two text formats are accepted:
//!
//! * PD: a bracket list of crossing tuples, `[[1,3,2,4],[3,1,4,2]]`, or the
//!   JSON object form `{"format":"pd","crossings":[[...]],"orientations":
//!   [...],"components":k}`. The object form can carry crossing-free
//!   circles (`components` exceeding the traced count) and `-1` orientation
//!   flags, which reverse the corresponding component.
//! * Gauss (knots only): tokens `O<k><sign>` / `U<k><sign>` along the knot,
//!   e.g. `O1+ U2+ O3+ U1+ O2+ U3+`.

use serde::{Deserialize, Serialize};

use super::{DiagramError, LinkDiagram};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiagramFormat {
    Pd,
    Gauss,
}

/// JSON file schema for diagrams.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DiagramJson {
    pub format: String,
    pub crossings: Vec<[u32; 4]>,
    pub orientations: Vec<i8>,
    pub components: usize,
}

pub fn parse_diagram(text: &str, format: DiagramFormat) -> Result<LinkDiagram, DiagramError> {
    match format {
        DiagramFormat::Pd => parse_pd(text),
        DiagramFormat::Gauss => parse_gauss(text),
    }
}

fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let j: DiagramJson = serde_json::from_str(trimmed)
            .map_err(|e| DiagramError::Syntax(format!("bad diagram JSON: {e}")))?;
        return LinkDiagram::from_json(&j);
    }
    let tuples: Vec<[u32; 4]> = serde_json::from_str(trimmed)
        .map_err(|e| DiagramError::Syntax(format!("bad PD code: {e}")))?;
    if tuples.is_empty() {
        // bare empty list denotes the unknot
        return Ok(LinkDiagram::unknot());
    }
    LinkDiagram::from_pd(tuples, 0)
}

fn parse_gauss(text: &str) -> Result<LinkDiagram, DiagramError> {
    struct Event {
        over: bool,
        crossing: usize,
        positive: bool,
    }
    let mut events = Vec::new();
    for tok in text.split_whitespace() {
        let bytes = tok.as_bytes();
        if bytes.len() < 3 {
            return Err(DiagramError::Syntax(format!("bad Gauss token `{tok}`")));
        }
        let over = match bytes[0] {
            b'O' | b'o' => true,
            b'U' | b'u' => false,
            _ => return Err(DiagramError::Syntax(format!("bad Gauss token `{tok}`"))),
        };
        let positive = match bytes[bytes.len() - 1] {
            b'+' => true,
            b'-' => false,
            _ => return Err(DiagramError::Syntax(format!("missing sign in `{tok}`"))),
        };
        let num: usize = tok[1..tok.len() - 1]
            .parse()
            .map_err(|_| DiagramError::Syntax(format!("bad crossing number in `{tok}`")))?;
        if num == 0 {
            return Err(DiagramError::Syntax("crossing numbers are 1-based".into()));
        }
        events.push(Event {
            over,
            crossing: num - 1,
            positive,
        });
    }
    if events.is_empty() {
        return Ok(LinkDiagram::unknot());
    }
    if events.len() % 2 != 0 {
        return Err(DiagramError::Structure("odd Gauss code length".into()));
    }
    let n = events.len() / 2;

    // arc i+1 runs from event i to event i+1 (cyclically); the arc coming
    // into event i is i (1-based, wrapping), the arc leaving is i+1.
    let arc_in = |i: usize| -> u32 {
        if i == 0 {
            events.len() as u32
        } else {
            i as u32
        }
    };
    let arc_out = |i: usize| -> u32 { i as u32 + 1 };

    let mut under: Vec<Option<(u32, u32, bool)>> = vec![None; n];
    let mut over: Vec<Option<(u32, u32, bool)>> = vec![None; n];
    for (i, e) in events.iter().enumerate() {
        if e.crossing >= n {
            return Err(DiagramError::Structure(format!(
                "crossing {} out of range",
                e.crossing + 1
            )));
        }
        let entry = (arc_in(i), arc_out(i), e.positive);
        let slot = if e.over {
            &mut over[e.crossing]
        } else {
            &mut under[e.crossing]
        };
        if slot.is_some() {
            return Err(DiagramError::Structure(format!(
                "crossing {} visited twice as {}",
                e.crossing + 1,
                if e.over { "over" } else { "under" }
            )));
        }
        *slot = Some(entry);
    }

    let mut tuples = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    for k in 0..n {
        let (u_in, u_out, s1) = under[k].ok_or_else(|| {
            DiagramError::Structure(format!("crossing {} has no under pass", k + 1))
        })?;
        let (o_in, o_out, s2) = over[k].ok_or_else(|| {
            DiagramError::Structure(format!("crossing {} has no over pass", k + 1))
        })?;
        if s1 != s2 {
            return Err(DiagramError::Structure(format!(
                "crossing {} has conflicting signs",
                k + 1
            )));
        }
        if s1 {
            tuples.push([u_in, o_out, u_out, o_in]);
            signs.push(1);
        } else {
            tuples.push([u_in, o_in, u_out, o_out]);
            signs.push(-1);
        }
    }
    let d = LinkDiagram::from_pd_signed(tuples, signs, 0)?;
    if d.component_count() != 1 {
        return Err(DiagramError::Structure(
            "Gauss code did not trace a single knot".into(),
        ));
    }
    Ok(d)
}

impl LinkDiagram {
    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            format: "pd".into(),
            crossings: self.crossings().iter().map(|x| x.arcs).collect(),
            orientations: self.orientations().to_vec(),
            components: self.component_count(),
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<LinkDiagram, DiagramError> {
        if j.format != "pd" {
            return Err(DiagramError::Syntax(format!(
                "unsupported diagram format `{}`",
                j.format
            )));
        }
        let traced =
            LinkDiagram::from_pd(j.crossings.clone(), 0).map(|d| d.crossed_components().len());
        let crossed = match (&j.crossings[..], traced) {
            ([], _) => 0,
            (_, Ok(k)) => k,
            (_, Err(e)) => return Err(e),
        };
        if j.components < crossed {
            return Err(DiagramError::Structure(
                "component count below traced components".into(),
            ));
        }
        let circles = (j.components - crossed) as u32;
        if j.components == 0 {
            return Err(DiagramError::Structure("diagram has no components".into()));
        }
        let d = LinkDiagram::from_pd(j.crossings.clone(), circles)?;
        if j.orientations.len() != d.component_count() {
            return Err(DiagramError::Structure(
                "orientation flag count mismatch".into(),
            ));
        }
        let reversed: Vec<usize> = j
            .orientations
            .iter()
            .enumerate()
            .filter_map(|(i, &o)| match o {
                1 => None,
                -1 => Some(i),
                _ => Some(usize::MAX),
            })
            .collect();
        if reversed.contains(&usize::MAX) {
            return Err(DiagramError::Structure(
                "orientation flags must be +1 or -1".into(),
            ));
        }
        if reversed.is_empty() {
            Ok(d)
        } else {
            d.reverse_components(&reversed)
        }
    }

    /// Reverses the orientation of the listed components (indices into the
    /// crossed-components-then-circles order). Reversing a circle is a
    /// no-op.
    pub fn reverse_components(&self, comps: &[usize]) -> Result<LinkDiagram, DiagramError> {
        let crossed = self.crossed_components().len();
        let flip: Vec<bool> = (0..crossed).map(|i| comps.contains(&i)).collect();
        let mut tuples = Vec::new();
        let mut signs = Vec::new();
        for x in self.crossings() {
            let under_rev = flip[self.component_of(x.under_in())];
            let over_rev = flip[self.component_of(x.over_in())];
            let [a, b, c, d] = x.arcs;
            let (tuple, sign) = match (under_rev, over_rev, x.sign > 0) {
                (false, false, s) => ([a, b, c, d], if s { 1 } else { -1 }),
                // reversing the under strand: new under-in is old under-out
                (true, false, s) => ([c, d, a, b], if s { -1 } else { 1 }),
                // reversing the over strand flips only the sign
                (false, true, s) => ([a, b, c, d], if s { -1 } else { 1 }),
                (true, true, s) => ([c, d, a, b], if s { 1 } else { -1 }),
            };
            tuples.push(tuple);
            signs.push(sign);
        }
        LinkDiagram::from_pd_signed(tuples, signs, self.circles())
    }

    /// Serializes the canonical form; parsing this text reproduces the
    /// canonical form bit-exactly.
    pub fn serialize_canonical(&self) -> String {
        let (c, _) = self.canonical();
        serde_json::to_string(&c.to_json()).expect("diagram serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::samples;

    #[test]
    fn pd_text_round_trip() {
        let d = parse_diagram("[[1,3,2,4],[3,1,4,2]]", DiagramFormat::Pd).unwrap();
        assert_eq!(d.component_count(), 2);
        let text = d.serialize_canonical();
        let back = parse_diagram(&text, DiagramFormat::Pd).unwrap();
        assert!(back.equivalent_diagram(&d));
        assert_eq!(back.serialize_canonical(), text);
    }

    #[test]
    fn empty_pd_is_unknot() {
        let d = parse_diagram("[]", DiagramFormat::Pd).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn json_unknot_via_components() {
        let d = parse_diagram(
            r#"{"format":"pd","crossings":[],"orientations":[1],"components":1}"#,
            DiagramFormat::Pd,
        )
        .unwrap();
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn gauss_trefoil() {
        let d = parse_diagram("O1+ U2+ O3+ U1+ O2+ U3+", DiagramFormat::Gauss).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.crossing_count(), 3);
        assert!(d.equivalent_diagram(&samples::trefoil()));
    }

    #[test]
    fn gauss_rejects_bad_codes() {
        assert!(parse_diagram("O1+ U1+ O1+", DiagramFormat::Gauss).is_err());
        assert!(parse_diagram("O1+ O1+", DiagramFormat::Gauss).is_err());
        assert!(parse_diagram("O1+ U2+ O2+ U1-", DiagramFormat::Gauss).is_err());
    }

    #[test]
    fn reversal_flips_linking_number() {
        let d = samples::hopf();
        let r = d.reverse_components(&[0]).unwrap();
        assert_eq!(r.linking_matrix()[0][1], -1);
        let rr = r.reverse_components(&[0]).unwrap();
        assert!(rr.equivalent_diagram(&d));
    }
}
