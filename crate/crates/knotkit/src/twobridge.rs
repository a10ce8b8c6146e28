//! Schubert normal forms b(alpha, beta) of two-bridge links.
//!
//! Forms are classified by modular arithmetic: b(a,b) and b(a',b') are
//! isotopic as unoriented links iff a = a' and b' = b^{+-1} mod a, and as
//! oriented links iff the congruence holds mod 2a. The double branched
//! cover is the lens space L(alpha, beta).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::LinkDiagram;
use crate::tangle::tangle_closure;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwoBridgeError {
    #[error("invalid Schubert form b({0},{1}): need alpha >= 2, beta odd, -alpha < beta < alpha, coprime")]
    InvalidForm(i64, i64),
    #[error("b({0},{1}) is a knot, not a two-component link")]
    NotALink(i64, i64),
    #[error("cannot parse `{0}` as a Schubert form")]
    Parse(String),
}

/// Schubert normal form b(alpha, beta): alpha >= 2, beta odd and coprime to
/// alpha, -alpha < beta < alpha. A knot when alpha is odd, a two-component
/// link when alpha is even.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SchubertForm {
    pub alpha: i64,
    pub beta: i64,
}

impl SchubertForm {
    pub fn new(alpha: i64, beta: i64) -> Result<Self, TwoBridgeError> {
        let valid = alpha >= 2
            && beta.rem_euclid(2) == 1
            && -alpha < beta
            && beta < alpha
            && num_integer::gcd(alpha, beta.abs()) == 1;
        if !valid {
            return Err(TwoBridgeError::InvalidForm(alpha, beta));
        }
        Ok(SchubertForm { alpha, beta })
    }

    pub fn is_knot(&self) -> bool {
        self.alpha % 2 == 1
    }

    pub fn components(&self) -> usize {
        if self.is_knot() {
            1
        } else {
            2
        }
    }

    /// Text form `b(8,3)`. An out-of-range crossing number is reduced mod
    /// 2*alpha into (-alpha, alpha), which preserves the oriented class.
    pub fn parse(text: &str) -> Result<Self, TwoBridgeError> {
        let t = text.trim();
        let inner = t
            .strip_prefix("b(")
            .or_else(|| t.strip_prefix("B("))
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| TwoBridgeError::Parse(text.into()))?;
        let mut parts = inner.splitn(2, ',');
        let alpha: i64 = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| TwoBridgeError::Parse(text.into()))?;
        let beta: i64 = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| TwoBridgeError::Parse(text.into()))?;
        if alpha >= 2 {
            let mut b = beta.rem_euclid(2 * alpha);
            if b >= alpha {
                b -= 2 * alpha;
            }
            SchubertForm::new(alpha, b)
        } else {
            SchubertForm::new(alpha, beta)
        }
    }
}

impl std::fmt::Display for SchubertForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "b({},{})", self.alpha, self.beta)
    }
}

fn mod_inverse(b: i64, m: i64) -> Option<i64> {
    // extended Euclid
    let (mut r0, mut r1) = (m, b.rem_euclid(m));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m))
}

/// Isotopy decision for Schubert forms, oriented or unoriented.
pub fn tb_equivalent(s1: &SchubertForm, s2: &SchubertForm, oriented: bool) -> bool {
    if s1.alpha != s2.alpha {
        return false;
    }
    let m = if oriented { 2 * s1.alpha } else { s1.alpha };
    let b1 = s1.beta.rem_euclid(m);
    let b2 = s2.beta.rem_euclid(m);
    if b1 == b2 {
        return true;
    }
    match mod_inverse(s1.beta, m) {
        Some(inv) => inv == b2,
        None => false,
    }
}

/// Mirror image, b(alpha, -beta).
pub fn tb_mirror(s: &SchubertForm) -> SchubertForm {
    SchubertForm::new(s.alpha, -s.beta).expect("mirror of a valid form is valid")
}

/// Is the form isotopic to its mirror image as an unoriented link?
pub fn tb_amphichiral(s: &SchubertForm) -> bool {
    tb_equivalent(s, &tb_mirror(s), false)
}

/// Reverses the orientation of one component of a two-component form,
/// switching b(alpha, beta) to b(alpha, beta -+ alpha).
pub fn tb_reverse_component(s: &SchubertForm) -> Result<SchubertForm, TwoBridgeError> {
    if s.is_knot() {
        return Err(TwoBridgeError::NotALink(s.alpha, s.beta));
    }
    let shifted = if s.beta > 0 {
        s.beta - s.alpha
    } else {
        s.beta + s.alpha
    };
    SchubertForm::new(s.alpha, shifted)
}

/// An oriented lens space L(p,q), with L(1,0) the 3-sphere.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Option<LensSpace> {
        (p >= 1 && (0..p.max(1)).contains(&q) && num_integer::gcd(p, q) == 1)
            .then_some(LensSpace { p, q })
    }
}

impl std::fmt::Display for LensSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// The double branched cover of b(alpha,beta) is the lens space
/// L(alpha, beta mod alpha).
pub fn tb_double_cover(s: &SchubertForm) -> LensSpace {
    LensSpace::new(s.alpha, s.beta.rem_euclid(s.alpha)).expect("valid form covers a lens space")
}

/// Classical lens space homeomorphism test: oriented iff p = p' and
/// q' = q^{+-1} mod p; unoriented also allows q' = -q^{+-1}.
pub fn lens_equivalent(l1: &LensSpace, l2: &LensSpace, oriented: bool) -> bool {
    if l1.p != l2.p {
        return false;
    }
    let p = l1.p;
    let matches = |a: i64, b: i64| a.rem_euclid(p) == b.rem_euclid(p);
    let inv = mod_inverse(l1.q, p);
    let direct = matches(l1.q, l2.q) || inv.is_some_and(|i| matches(i, l2.q));
    if direct {
        return true;
    }
    if oriented {
        return false;
    }
    matches(-l1.q, l2.q) || inv.is_some_and(|i| matches(-i, l2.q))
}

/// Geometric type of a two-bridge link per its classification: the torus
/// links are exactly the b(n, +-1) classes, everything else is hyperbolic.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum TbGeomType {
    Seifert,
    Hyperbolic,
}

pub fn tb_geom_type(s: &SchubertForm) -> TbGeomType {
    let b = s.beta.rem_euclid(s.alpha);
    if b == 1 || b == s.alpha - 1 {
        TbGeomType::Seifert
    } else {
        TbGeomType::Hyperbolic
    }
}

/// Standard diagram: the numerator closure of the rational tangle of slope
/// alpha/beta, built from the deterministic twist expansion.
pub fn tb_diagram(s: &SchubertForm) -> LinkDiagram {
    tangle_closure(&[(s.alpha, s.beta)]).expect("Schubert diagrams are valid")
}
