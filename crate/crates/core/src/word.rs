//! Letters and freely reduced words in the generators `a_1..a_g`.
//!
//! Text syntax: whitespace-separated tokens `a3` (positive) and `A3`
//! (inverse). The empty word prints as `1`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator `a_i` or its inverse, stored as `+i` / `-i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(i16);

impl Letter {
    pub fn new(index: usize, positive: bool) -> Letter {
        assert!(
            index >= 1 && index < i16::MAX as usize,
            "generator index {index}"
        );
        let v = index as i16;
        Letter(if positive { v } else { -v })
    }

    pub fn pos(index: usize) -> Letter {
        Letter::new(index, true)
    }

    pub fn neg(index: usize) -> Letter {
        Letter::new(index, false)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// +1 or -1.
    #[inline]
    pub fn sign(self) -> i64 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    #[inline]
    pub fn raw(self) -> i16 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "a{}", self.index())
        } else {
            write!(f, "A{}", self.index())
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        let mut chars = s.chars();
        let positive = match chars.next() {
            Some('a') => true,
            Some('A') => false,
            _ => return Err(Error::Parse(format!("bad letter `{s}`"))),
        };
        let idx: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad letter `{s}`")))?;
        if idx == 0 {
            return Err(Error::Parse(format!(
                "generator index must be positive in `{s}`"
            )));
        }
        Ok(Letter::new(idx, positive))
    }
}

/// Freely reduced word. Construction always reduces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn empty() -> GroupWord {
        GroupWord(Vec::new())
    }

    /// Free reduction without any genus check.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> GroupWord {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last == l.inverse() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        GroupWord(out)
    }

    pub fn letter(l: Letter) -> GroupWord {
        GroupWord(vec![l])
    }

    /// Builds a word from signed indices (`-3` is `A3`).
    pub fn from_ints(ints: &[i32]) -> GroupWord {
        GroupWord::from_letters(
            ints.iter()
                .map(|&i| Letter::new(i.unsigned_abs() as usize, i > 0)),
        )
    }

    pub(crate) fn from_reduced_unchecked(letters: Vec<Letter>) -> GroupWord {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inverse()));
        GroupWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::empty();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &GroupWord) -> GroupWord {
        &(self * other) * &self.inverse()
    }

    /// Exponent sums per generator (length `g`).
    pub fn exponent_sums(&self, g: usize) -> Vec<i64> {
        let mut v = vec![0i64; g];
        for l in &self.0 {
            v[l.index() - 1] += l.sign();
        }
        v
    }

    /// Free cyclic reduction. Returns `(c, u)` with `self = c u c^-1`.
    pub fn cyclically_reduce(&self) -> (GroupWord, GroupWord) {
        let w = &self.0;
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo] == w[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        (GroupWord(w[..lo].to_vec()), GroupWord(w[lo..hi].to_vec()))
    }

    /// Cyclic rotation `u[k..] u[..k]` of a cyclically reduced word.
    pub fn rotate(&self, k: usize) -> GroupWord {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        GroupWord::from_letters(v)
    }

    /// Substitutes `images[i-1]` for `a_i` (and its inverse for `A_i`).
    pub fn substitute(&self, images: &[GroupWord], inverses: &[GroupWord]) -> GroupWord {
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.0 {
            let piece = if l.is_positive() {
                &images[l.index() - 1]
            } else {
                &inverses[l.index() - 1]
            };
            for &x in piece.letters() {
                match out.last() {
                    Some(&last) if last == x.inverse() => {
                        out.pop();
                    }
                    _ => out.push(x),
                }
            }
        }
        GroupWord(out)
    }
}

/// Checks every index is in `1..=g` and freely reduces.
pub fn free_reduce(letters: &[Letter], g: usize) -> Result<GroupWord> {
    if let Some(bad) = letters.iter().find(|l| l.index() > g) {
        return Err(Error::IndexOutOfRange {
            index: bad.index(),
            genus: g,
        });
    }
    Ok(GroupWord::from_letters(letters.iter().copied()))
}

impl Mul for &GroupWord {
    type Output = GroupWord;

    fn mul(self, rhs: &GroupWord) -> GroupWord {
        let mut out = self.0.clone();
        for &x in &rhs.0 {
            match out.last() {
                Some(&last) if last == x.inverse() => {
                    out.pop();
                }
                _ => out.push(x),
            }
        }
        GroupWord(out)
    }
}

impl Mul for GroupWord {
    type Output = GroupWord;

    fn mul(self, rhs: GroupWord) -> GroupWord {
        &self * &rhs
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupWord> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(GroupWord::empty());
        }
        let letters = t
            .split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupWord::from_letters(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn free_reduction_examples() {
        assert_eq!(w("a1 A1 a2"), w("a2"));
        assert_eq!(free_reduce(&[], 4).unwrap(), GroupWord::empty());
        assert_eq!(w("a1 a2 A2 a1"), w("a1 a1"));
        assert_eq!(w("a1 a2 A2 a1").len(), 2);
    }

    #[test]
    fn out_of_range_letter_rejected() {
        let e = free_reduce(&[Letter::pos(5)], 4).unwrap_err();
        assert!(matches!(e, Error::IndexOutOfRange { index: 5, genus: 4 }));
    }

    #[test]
    fn text_roundtrip() {
        let x = w("a1 A3 a2 a2");
        assert_eq!(x.to_string(), "a1 A3 a2 a2");
        assert_eq!(w(&x.to_string()), x);
        assert_eq!(GroupWord::empty().to_string(), "1");
        assert!("b1".parse::<GroupWord>().is_err());
        assert!("a0".parse::<GroupWord>().is_err());
    }

    #[test]
    fn cyclic_reduction_tracks_conjugator() {
        let x = w("a2 a1 a3 A2");
        let (c, u) = x.cyclically_reduce();
        assert_eq!(u, w("a1 a3"));
        assert_eq!(c.conjugate(&u), x);
    }

    #[test]
    fn substitution_is_homomorphic() {
        let imgs = vec![w("a2"), w("a1 a1"), w("a3")];
        let invs: Vec<_> = imgs.iter().map(|x| x.inverse()).collect();
        let x = w("a1 A2 a3");
        assert_eq!(x.substitute(&imgs, &invs), w("a2 A1 A1 a3"));
    }
}
