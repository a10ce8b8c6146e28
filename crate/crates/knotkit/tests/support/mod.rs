//! Shared test support: a seeded Reidemeister scrambler and an independent
//! Fox-calculus oracle for branched-cover homology orders.
//!
//! The oracle computes the Alexander polynomial from the Wirtinger
//! presentation by Fox derivatives and a polynomial minor determinant, then
//! evaluates branched cyclic cover homology orders as the resultant with
//! 1 + t + ... + t^{r-1}. None of this shares code with the production
//! Reidemeister-Schreier / Smith-normal-form path it cross-checks.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use knotkit::diagram::{apply_move, enumerate_moves, LinkDiagram, ReidemeisterMove};
use knotkit::fpgroups::wirtinger;

/// Applies `count` random moves within the crossing bound, deterministically
/// from the seed; returns the scrambled diagram and the moves taken.
pub fn scramble(
    d: &LinkDiagram,
    seed: u64,
    count: usize,
    max_crossings: u32,
) -> (LinkDiagram, Vec<ReidemeisterMove>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.canonical().0;
    let mut taken = Vec::new();
    for _ in 0..count {
        let moves = enumerate_moves(&cur, max_crossings);
        if moves.is_empty() {
            break;
        }
        let m = moves[rng.gen_range(0..moves.len())];
        cur = apply_move(&cur, &m).expect("enumerated move applies");
        taken.push(m);
    }
    (cur, taken)
}

// ---------------------------------------------------------------------
// dense integer polynomials

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: i64) -> Poly {
        Poly::from_vec(vec![BigInt::from(c)])
    }

    pub fn monomial(c: i64, deg: usize) -> Poly {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = BigInt::from(c);
        Poly::from_vec(v)
    }

    fn from_vec(mut v: Vec<BigInt>) -> Poly {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Poly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        Poly::from_vec(v)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_vec(v)
    }

    /// Exact division; panics on a nonzero remainder (Bareiss guarantees
    /// exactness where this is used).
    pub fn div_exact(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Poly::zero();
        }
        let mut rem = self.0.clone();
        let dd = d.degree();
        let lead = d.0[dd].clone();
        assert!(self.degree() >= dd);
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd] / &lead;
            assert_eq!(&c * &lead, rem[k + dd], "inexact division");
            q[k] = c.clone();
            for i in 0..=dd {
                let sub = &c * &d.0[i];
                rem[k + i] -= sub;
            }
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
        Poly::from_vec(q)
    }

    pub fn eval_int(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

/// Fraction-free Bareiss determinant of a square polynomial matrix.
pub fn poly_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(1);
    }
    let mut sign = 1i64;
    let mut prev = Poly::constant(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = m[i][j].mul(&m[k][k]);
                let t2 = m[i][k].mul(&m[k][j]);
                m[i][j] = t1.sub(&t2).div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
        for row in m.iter_mut().take(n).skip(k + 1) {
            row[k] = Poly::zero();
        }
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Sylvester resultant of two integer polynomials.
pub fn resultant(f: &Poly, g: &Poly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let (n, m) = (f.degree(), g.degree());
    if n == 0 {
        return num_traits::pow::pow(f.0[0].clone(), m);
    }
    if m == 0 {
        return num_traits::pow::pow(g.0[0].clone(), n);
    }
    let size = n + m;
    let mut s = vec![vec![Poly::zero(); size]; size];
    for i in 0..m {
        for (j, c) in f.0.iter().enumerate() {
            s[i][i + (n - j)] = Poly::from_vec(vec![c.clone()]);
        }
    }
    for i in 0..n {
        for (j, c) in g.0.iter().enumerate() {
            s[m + i][i + (m - j)] = Poly::from_vec(vec![c.clone()]);
        }
    }
    let det = poly_det(s);
    if det.is_zero() {
        BigInt::zero()
    } else {
        det.0[0].clone()
    }
}

/// Alexander polynomial of a knot diagram via Fox calculus on the
/// Wirtinger presentation (defined up to sign and powers of t, which the
/// resultant use below is insensitive to).
pub fn alexander_polynomial(d: &LinkDiagram) -> Poly {
    assert_eq!(d.component_count(), 1, "oracle handles knots");
    let p = wirtinger(d);
    let n = p.generators;
    if n == 1 {
        return Poly::constant(1);
    }
    let t = Poly::monomial(1, 1);
    let tinv_scale = |deg: i64, poly: &Poly| -> (i64, Poly) {
        // represent t^deg * poly with deg possibly negative by tracking a
        // global shift; callers normalize at the end
        (deg, poly.clone())
    };
    let _ = tinv_scale;

    // Fox derivative of a word with every generator abelianizing to t.
    // To avoid Laurent bookkeeping, multiply each relator derivative by a
    // power of t making all entries polynomial: derivatives of w have
    // exponents bounded below by -|w|.
    let fox_row = |w: &knotkit::fpgroups::Word| -> Vec<Poly> {
        let shift = w.len(); // t^shift clears denominators
        let mut row = vec![Poly::zero(); n];
        let mut exp: i64 = shift as i64; // current t-power prefix
        for &l in w.letters() {
            let k = l.unsigned_abs() as usize - 1;
            if l > 0 {
                // d(u x) = du + phi(u) dx
                row[k] = row[k].add(&Poly::monomial(1, exp as usize));
                exp += 1;
            } else {
                // d(u x^-1) = du - phi(u x^-1) dx
                exp -= 1;
                row[k] = row[k].sub(&Poly::monomial(1, exp as usize));
            }
        }
        row
    };
    let _ = &t;

    // delete the last relator and the last generator column
    let rows: Vec<Vec<Poly>> = p
        .relators
        .iter()
        .take(n - 1)
        .map(|r| fox_row(r)[..n - 1].to_vec())
        .collect();
    assert_eq!(rows.len(), n - 1);
    let det = poly_det(rows);
    assert!(!det.is_zero(), "Alexander determinant vanished");
    // strip the content t^k
    let first_nonzero = det.0.iter().position(|c| !c.is_zero()).unwrap();
    Poly::from_vec(det.0[first_nonzero..].to_vec())
}

/// Order of H_1 of the r-fold branched cyclic cover per the oracle:
/// |resultant(Delta, 1 + t + ... + t^{r-1})|; `None` means infinite.
pub fn branched_cyclic_order(delta: &Poly, r: u32) -> Option<BigInt> {
    let cyc = Poly::from_vec(vec![BigInt::one(); r as usize]);
    let res = resultant(delta, &cyc);
    if res.is_zero() {
        None
    } else {
        Some(res.abs())
    }
}
