//! Standard-position curves on `N_g` (a sphere with `g` crosscaps in a
//! row) and their classes in homology.
//!
//! A curve is encoded by its crosscap passages, plus for every crosscap
//! strictly between two consecutive passages whether the strand runs over
//! or under it. Generator loops come from the "under" side, so an `Under`
//! tag at crosscap `m` contributes `a_m²` to the curve word and `Over`
//! contributes nothing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupContext;
use crate::homology::{HomologyZ, HomologyZ2};
use crate::word::{GroupWord, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveFamily {
    /// `α_I`: passes over every in-between crosscap.
    Alpha(Vec<usize>),
    /// `ᾱ_{i,j}`, `i < j`: passes under the in-between crosscaps.
    AlphaBar(usize, usize),
    /// `ᾱ_{1,i,j,k}`, `1 < i < j < k`: under the crosscaps strictly between
    /// `i` and `j`, over the others.
    AlphaBar4(usize, usize, usize),
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Passage {
    Through(usize),
    Over(usize),
    Under(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveSpec {
    genus: usize,
    family: CurveFamily,
    passages: Vec<Passage>,
}

fn between(lo: usize, hi: usize, under: bool) -> impl Iterator<Item = Passage> {
    (lo + 1..hi).map(move |m| {
        if under {
            Passage::Under(m)
        } else {
            Passage::Over(m)
        }
    })
}

impl CurveSpec {
    pub fn alpha(g: usize, idx: &[usize]) -> Result<CurveSpec> {
        if idx.is_empty() {
            return Err(Error::InvalidCurve(
                "alpha needs a nonempty index set".into(),
            ));
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCurve(format!(
                "alpha indices must increase: {idx:?}"
            )));
        }
        if idx[0] < 1 || *idx.last().unwrap() > g {
            return Err(Error::InvalidCurve(format!(
                "alpha indices {idx:?} out of 1..={g}"
            )));
        }
        let mut passages = vec![Passage::Through(idx[0])];
        for w in idx.windows(2) {
            passages.extend(between(w[0], w[1], false));
            passages.push(Passage::Through(w[1]));
        }
        Ok(CurveSpec {
            genus: g,
            family: CurveFamily::Alpha(idx.to_vec()),
            passages,
        })
    }

    /// `ᾱ_{i,j}`; the unordered pair is accepted in either order.
    pub fn alpha_bar(g: usize, i: usize, j: usize) -> Result<CurveSpec> {
        let (lo, hi) = (i.min(j), i.max(j));
        if lo < 1 || hi > g || lo == hi {
            return Err(Error::InvalidCurve(format!(
                "abar{{{i},{j}}} needs 1 <= i < j <= {g}"
            )));
        }
        let mut passages = vec![Passage::Through(lo)];
        passages.extend(between(lo, hi, true));
        passages.push(Passage::Through(hi));
        Ok(CurveSpec {
            genus: g,
            family: CurveFamily::AlphaBar(lo, hi),
            passages,
        })
    }

    /// `ᾱ_{1,i,j,k}`: under the crosscaps between `i` and `j` only.
    pub fn alpha_bar4(g: usize, i: usize, j: usize, k: usize) -> Result<CurveSpec> {
        if !(1 < i && i < j && j < k && k <= g) {
            return Err(Error::InvalidCurve(format!(
                "abar4{{1,{i},{j},{k}}} needs 1 < i < j < k <= {g}"
            )));
        }
        let mut passages = vec![Passage::Through(1)];
        for (lo, hi) in [(1, i), (i, j), (j, k)] {
            passages.extend(between(lo, hi, lo == i));
            passages.push(Passage::Through(hi));
        }
        Ok(CurveSpec {
            genus: g,
            family: CurveFamily::AlphaBar4(i, j, k),
            passages,
        })
    }

    pub fn generic(g: usize, passages: Vec<Passage>) -> Result<CurveSpec> {
        if passages.is_empty() {
            return Err(Error::InvalidCurve("empty passage list".into()));
        }
        for p in &passages {
            let m = match *p {
                Passage::Through(m) | Passage::Over(m) | Passage::Under(m) => m,
            };
            if m < 1 || m > g {
                return Err(Error::InvalidCurve(format!("crosscap {m} out of 1..={g}")));
            }
        }
        Ok(CurveSpec {
            genus: g,
            family: CurveFamily::Generic,
            passages,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn family(&self) -> &CurveFamily {
        &self.family
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    /// Crosscaps the curve runs through, in order.
    pub fn crosscaps(&self) -> Vec<usize> {
        self.passages
            .iter()
            .filter_map(|p| match *p {
                Passage::Through(m) => Some(m),
                _ => None,
            })
            .collect()
    }

    pub fn is_two_sided(&self) -> bool {
        self.crosscaps().len().is_multiple_of(2)
    }

    /// Representative in `π_1`, well defined up to conjugation and inversion.
    pub fn word(&self) -> GroupWord {
        let mut letters = Vec::new();
        for p in &self.passages {
            match *p {
                Passage::Through(m) => letters.push(Letter::pos(m)),
                Passage::Under(m) => {
                    letters.push(Letter::pos(m));
                    letters.push(Letter::pos(m));
                }
                Passage::Over(_) => {}
            }
        }
        GroupWord::from_letters(letters)
    }

    pub fn mod2_class(&self) -> HomologyZ2 {
        HomologyZ2::from_indices(self.genus, &self.crosscaps())
    }

    pub fn int_class(&self, ctx: &GroupContext) -> HomologyZ {
        ctx.abelianize(&self.word())
    }
}

/// Constructor keyed by family and parameters (the spec-level `make_curve`).
pub fn make_curve(family: &CurveFamily, g: usize) -> Result<CurveSpec> {
    match family {
        CurveFamily::Alpha(idx) => CurveSpec::alpha(g, idx),
        CurveFamily::AlphaBar(i, j) => {
            if i >= j {
                return Err(Error::InvalidCurve(format!("abar{{{i},{j}}} needs i < j")));
            }
            CurveSpec::alpha_bar(g, *i, *j)
        }
        CurveFamily::AlphaBar4(i, j, k) => CurveSpec::alpha_bar4(g, *i, *j, *k),
        CurveFamily::Generic => Err(Error::InvalidCurve(
            "generic curves need explicit passages".into(),
        )),
    }
}

pub fn curve_word(spec: &CurveSpec) -> GroupWord {
    spec.word()
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            CurveFamily::Alpha(idx) => write!(f, "alpha{{{}}}", join(idx)),
            CurveFamily::AlphaBar(i, j) => write!(f, "abar{{{i},{j}}}"),
            CurveFamily::AlphaBar4(i, j, k) => write!(f, "abar4{{1,{i},{j},{k}}}"),
            CurveFamily::Generic => write!(f, "curve[{}]", self.word()),
        }
    }
}

/// Parses `alpha{1,2,3}`, `abar{1,3}`, `abar4{1,2,3,4}`.
pub fn parse_curve(s: &str, g: usize) -> Result<CurveSpec> {
    let s = s.trim();
    let open = s
        .find('{')
        .ok_or_else(|| Error::Parse(format!("bad curve `{s}`")))?;
    if !s.ends_with('}') {
        return Err(Error::Parse(format!("bad curve `{s}`")));
    }
    let name = &s[..open];
    let idx: Vec<usize> = s[open + 1..s.len() - 1]
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index in `{s}`")))
        })
        .collect::<Result<_>>()?;
    match (name, idx.as_slice()) {
        ("alpha", _) => CurveSpec::alpha(g, &idx),
        ("abar", [i, j]) => make_curve(&CurveFamily::AlphaBar(*i, *j), g),
        ("abar4", [1, i, j, k]) => CurveSpec::alpha_bar4(g, *i, *j, *k),
        _ => Err(Error::Parse(format!("unknown curve `{s}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn constructor_examples() {
        let c = CurveSpec::alpha(4, &[1, 2]).unwrap();
        assert_eq!(c.passages(), &[Passage::Through(1), Passage::Through(2)]);
        let b = CurveSpec::alpha_bar(4, 1, 3).unwrap();
        assert_eq!(
            b.passages(),
            &[Passage::Through(1), Passage::Under(2), Passage::Through(3)]
        );
        assert!(CurveSpec::alpha_bar4(4, 2, 3, 5).is_err());
        assert!(CurveSpec::alpha(4, &[2, 1]).is_err());
        assert!(make_curve(&CurveFamily::AlphaBar(3, 1), 4).is_err());
    }

    #[test]
    fn word_examples() {
        assert_eq!(
            CurveSpec::alpha(4, &[1, 2, 3]).unwrap().word(),
            w("a1 a2 a3")
        );
        assert_eq!(
            CurveSpec::alpha_bar(4, 1, 3).unwrap().word(),
            w("a1 a2 a2 a3")
        );
        assert_eq!(CurveSpec::alpha(4, &[2]).unwrap().word(), w("a2"));
        assert_eq!(
            CurveSpec::alpha_bar4(5, 2, 4, 5).unwrap().word(),
            w("a1 a2 a3 a3 a4 a5")
        );
        assert_eq!(
            CurveSpec::alpha_bar4(7, 3, 5, 7).unwrap().word(),
            w("a1 a3 a4 a4 a5 a7")
        );
    }

    #[test]
    fn class_examples() {
        let ctx = GroupContext::new(4).unwrap();
        let c = CurveSpec::alpha(4, &[1, 2, 3, 4]).unwrap();
        assert_eq!(c.mod2_class(), HomologyZ2::from_indices(4, &[1, 2, 3, 4]));
        let b = CurveSpec::alpha_bar(4, 2, 3).unwrap();
        assert_eq!(
            b.mod2_class(),
            CurveSpec::alpha(4, &[2, 3]).unwrap().mod2_class()
        );
        let b13 = CurveSpec::alpha_bar(4, 1, 3).unwrap();
        assert_eq!(b13.int_class(&ctx).coords(), &[1, 2, 1, 0]);
        assert_eq!(b13.int_class(&ctx).mod2(), b13.mod2_class());
    }

    #[test]
    fn display_and_parse() {
        for s in ["alpha{1,2,3}", "abar{1,3}", "abar4{1,2,3,4}"] {
            assert_eq!(parse_curve(s, 5).unwrap().to_string(), s);
        }
        assert!(parse_curve("beta{1}", 5).is_err());
    }
}
