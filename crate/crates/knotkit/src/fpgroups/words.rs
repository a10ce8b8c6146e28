//! Freely reduced words over a free group basis.
//!
//! A word is a sequence of nonzero signed indices: `k` stands for the k-th
//! generator, `-k` for its inverse (1-based). Words are kept freely reduced
//! at all times so that equal group elements of the free group compare equal.

use std::fmt;

/// A freely reduced word. The inner representation is never left unreduced.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Single-generator word `x_k` (or its inverse for negative `k`).
    pub fn gen(k: i32) -> Self {
        assert!(k != 0, "generator index must be nonzero");
        Word(vec![k])
    }

    /// Builds a word from raw letters, applying free reduction.
    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends one letter, cancelling against the tail if possible.
    pub fn push(&mut self, letter: i32) {
        assert!(letter != 0, "generator index must be nonzero");
        if self.0.last() == Some(&-letter) {
            self.0.pop();
        } else {
            self.0.push(letter);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in other.letters() {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Conjugate `self^g = g^-1 self g`.
    pub fn conjugate(&self, g: &Word) -> Word {
        g.inverse().concat(self).concat(g)
    }

    /// Removes matching inverse letters from the two ends.
    pub fn cyclically_reduced(&self) -> Word {
        let mut v = self.0.clone();
        while v.len() >= 2 && v[0] == -v[v.len() - 1] {
            v.pop();
            v.remove(0);
        }
        Word(v)
    }

    /// Largest generator index mentioned, 0 for the identity.
    pub fn max_gen(&self) -> u32 {
        self.0.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    /// Exponent sum of generator `k` (1-based).
    pub fn exponent_sum(&self, k: u32) -> i64 {
        self.0
            .iter()
            .map(|&l| {
                if l.unsigned_abs() == k {
                    l.signum() as i64
                } else {
                    0
                }
            })
            .sum()
    }

    /// Number of occurrences of generator `k`, counting either sign.
    pub fn occurrences(&self, k: u32) -> usize {
        self.0.iter().filter(|l| l.unsigned_abs() == k).count()
    }

    /// Replaces every occurrence of generator `k` by `repl` (and of its
    /// inverse by `repl^-1`), reducing the result.
    pub fn substitute(&self, k: u32, repl: &Word) -> Word {
        let mut w = Word::identity();
        let inv = repl.inverse();
        for &l in &self.0 {
            if l.unsigned_abs() == k {
                let r = if l > 0 { repl } else { &inv };
                for &m in r.letters() {
                    w.push(m);
                }
            } else {
                w.push(l);
            }
        }
        w
    }

    /// Renames generators through `map`, where `map[k-1]` is the new 1-based
    /// index of old generator `k`. Entries must be nonzero.
    pub fn relabel(&self, map: &[u32]) -> Word {
        Word::from_letters(self.0.iter().map(|&l| {
            let new = map[(l.unsigned_abs() - 1) as usize] as i32;
            debug_assert!(new != 0);
            if l > 0 {
                new
            } else {
                -new
            }
        }))
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        <[i32] as serde::Serialize>::serialize(self.letters(), s)
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let letters = Vec::<i32>::deserialize(d)?;
        if letters.contains(&0) {
            return Err(serde::de::Error::custom("word letters must be nonzero"));
        }
        Ok(Word::from_letters(letters))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &l in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

/// Parses the textual form produced by `Display`: whitespace-separated
/// tokens `x3` or `x3^-1`; the bare token `1` denotes the identity.
pub fn parse_word(text: &str) -> Result<Word, String> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let body = tok
            .strip_prefix('x')
            .ok_or_else(|| format!("bad word token `{tok}`"))?;
        let (idx, sign) = match body.split_once('^') {
            Some((i, "-1")) => (i, -1),
            Some((i, "1")) => (i, 1),
            Some(_) => return Err(format!("bad exponent in `{tok}`")),
            None => (body, 1),
        };
        let k: i32 = idx.parse().map_err(|_| format!("bad index in `{tok}`"))?;
        if k <= 0 {
            return Err(format!("generator index must be positive in `{tok}`"));
        }
        letters.push(k * sign);
    }
    Ok(Word::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_letters([1, 2, -2, -1, 3]);
        assert_eq!(w.letters(), &[3]);
        assert!(Word::from_letters([1, -1]).is_empty());
    }

    #[test]
    fn inverse_concat() {
        let w = Word::from_letters([1, 2, -3]);
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.inverse().letters(), &[3, -2, -1]);
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::from_letters([1, 2, 3, -1]);
        assert_eq!(w.cyclically_reduced().letters(), &[2, 3]);
    }

    #[test]
    fn substitution_reduces() {
        // replace x2 by x1^-1 in x1 x2 -> empty
        let w = Word::from_letters([1, 2]);
        let s = w.substitute(2, &Word::from_letters([-1]));
        assert!(s.is_empty());
    }

    #[test]
    fn parse_round_trip() {
        let w = Word::from_letters([3, -1, 3, 2]);
        let back = parse_word(&w.to_string()).unwrap();
        assert_eq!(w, back);
        assert_eq!(parse_word("1").unwrap(), Word::identity());
    }
}
