//! Symbolic names for the catalog generators and words over them.
//!
//! Text syntax: `R * Ybar(1,4)^-1 * T(1,2,3,4)^2`. Powers are expanded on
//! parse, so a [`GenWord`] only carries exponents `±1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorName {
    /// `Y_{i;J}`: slide of crosscap `i` along `α_{{i} ∪ J}`.
    Y(usize, Vec<usize>),
    /// `Ȳ_{i,j}`: slide of crosscap `i` along `ᾱ_{i,j}`.
    Ybar(usize, usize),
    /// `T_I`: twist about `α_I`.
    T(Vec<usize>),
    /// `T̄_{1,i,j,k}`: twist about `ᾱ_{1,i,j,k}`.
    Tbar4(usize, usize, usize),
    /// `Y_{α_k, ᾱ_{j,k}}`.
    Ymix(usize, usize),
    R,
}

fn in_range(i: usize, g: usize) -> bool {
    (1..=g).contains(&i)
}

impl GeneratorName {
    /// Checks the index ranges at genus `g`.
    pub fn check(&self, g: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGenerator(msg));
        match self {
            GeneratorName::Y(i, js) => {
                let mut all = vec![*i];
                all.extend(js);
                let mut sorted = all.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if js.is_empty()
                    || sorted.len() != all.len()
                    || !all.iter().all(|&x| in_range(x, g))
                {
                    return bad(format!("{self} at genus {g}"));
                }
                if all.len() % 2 == 1 {
                    return bad(format!("{self}: the curve must be two-sided"));
                }
            }
            GeneratorName::Ybar(i, j) | GeneratorName::Ymix(i, j) => {
                if i == j || !in_range(*i, g) || !in_range(*j, g) {
                    return bad(format!("{self} at genus {g}"));
                }
            }
            GeneratorName::T(idx) => {
                let mut s = idx.clone();
                s.sort_unstable();
                s.dedup();
                if s.len() != idx.len()
                    || s.len() < 2
                    || s.len() % 2 == 1
                    || !s.iter().all(|&x| in_range(x, g))
                {
                    return bad(format!("{self} at genus {g}"));
                }
            }
            GeneratorName::Tbar4(i, j, k) => {
                if !(1 < *i && i < j && j < k && *k <= g) {
                    return bad(format!("{self} at genus {g}"));
                }
            }
            GeneratorName::R => {}
        }
        Ok(())
    }

    /// Crosscaps touched by the generator's support, for disjointness tests.
    pub fn support(&self, g: usize) -> Vec<usize> {
        let span = |lo: usize, hi: usize| (lo.min(hi)..=lo.max(hi)).collect::<Vec<_>>();
        match self {
            GeneratorName::Y(i, js) => {
                let mut v = vec![*i];
                v.extend(js);
                let (lo, hi) = (*v.iter().min().unwrap(), *v.iter().max().unwrap());
                span(lo, hi)
            }
            GeneratorName::Ybar(i, j) | GeneratorName::Ymix(i, j) => span(*i, *j),
            GeneratorName::T(idx) => span(*idx.iter().min().unwrap(), *idx.iter().max().unwrap()),
            GeneratorName::Tbar4(_, _, k) => span(1, *k),
            GeneratorName::R => (1..=g).collect(),
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorName::Y(i, js) => write!(f, "Y({i};{})", join(js)),
            GeneratorName::Ybar(i, j) => write!(f, "Ybar({i},{j})"),
            GeneratorName::T(idx) => write!(f, "T({})", join(idx)),
            GeneratorName::Tbar4(i, j, k) => write!(f, "Tbar4(1,{i},{j},{k})"),
            GeneratorName::Ymix(j, k) => write!(f, "Ymix({j},{k})"),
            GeneratorName::R => write!(f, "R"),
        }
    }
}

fn parse_indices(s: &str, whole: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index in `{whole}`")))
        })
        .collect()
}

impl FromStr for GeneratorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<GeneratorName> {
        let s = s.trim();
        if s == "R" {
            return Ok(GeneratorName::R);
        }
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("unknown generator `{s}`")))?;
        let body = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing `)` in `{s}`")))?;
        let name = s[..open].trim();
        let pair = |v: Vec<usize>| -> Result<(usize, usize)> {
            match v.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(Error::Parse(format!("`{s}` takes two indices"))),
            }
        };
        match name {
            "Y" => {
                let (head, tail) = match body.split_once(';') {
                    Some((h, t)) => (h, t),
                    None => body
                        .split_once(',')
                        .ok_or_else(|| Error::Parse(format!("bad `{s}`")))?,
                };
                let i = parse_indices(head, s)?;
                if i.len() != 1 {
                    return Err(Error::Parse(format!("bad `{s}`")));
                }
                Ok(GeneratorName::Y(i[0], parse_indices(tail, s)?))
            }
            "Ybar" => pair(parse_indices(body, s)?).map(|(i, j)| GeneratorName::Ybar(i, j)),
            "Ymix" => pair(parse_indices(body, s)?).map(|(j, k)| GeneratorName::Ymix(j, k)),
            "T" => Ok(GeneratorName::T(parse_indices(body, s)?)),
            "Tbar4" => match parse_indices(body, s)?.as_slice() {
                [1, i, j, k] => Ok(GeneratorName::Tbar4(*i, *j, *k)),
                _ => Err(Error::Parse(format!("`{s}` must read Tbar4(1,i,j,k)"))),
            },
            _ => Err(Error::Parse(format!("unknown generator `{s}`"))),
        }
    }
}

/// A product of generators; the leftmost factor is applied last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenWord(pub Vec<(GeneratorName, i8)>);

impl GenWord {
    pub fn empty() -> GenWord {
        GenWord(Vec::new())
    }

    pub fn gen(name: GeneratorName) -> GenWord {
        GenWord(vec![(name, 1)])
    }

    /// `name^n` with the power expanded.
    pub fn power(name: GeneratorName, n: i64) -> GenWord {
        let e = if n < 0 { -1 } else { 1 };
        GenWord(vec![(name, e); n.unsigned_abs() as usize])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(GeneratorName, i8)] {
        &self.0
    }

    pub fn inverse(&self) -> GenWord {
        GenWord(self.0.iter().rev().map(|(n, e)| (n.clone(), -e)).collect())
    }

    pub fn then(&self, other: &GenWord) -> GenWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        GenWord(v)
    }

    /// `self · x · self^-1`.
    pub fn conjugate(&self, x: &GenWord) -> GenWord {
        self.then(x).then(&self.inverse())
    }

    pub fn pow(&self, n: i64) -> GenWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = GenWord::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }

    pub fn check(&self, g: usize) -> Result<()> {
        self.0.iter().try_for_each(|(n, _)| n.check(g))
    }
}

impl From<GeneratorName> for GenWord {
    fn from(n: GeneratorName) -> GenWord {
        GenWord::gen(n)
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // collapse runs of the same factor back into powers
        let mut parts = Vec::new();
        let mut k = 0;
        while k < self.0.len() {
            let (name, e) = &self.0[k];
            let mut run = 1;
            while k + run < self.0.len() && self.0[k + run] == (name.clone(), *e) {
                run += 1;
            }
            let exp = run as i64 * *e as i64;
            parts.push(if exp == 1 {
                name.to_string()
            } else {
                format!("{name}^{exp}")
            });
            k += run;
        }
        write!(f, "{}", parts.join(" * "))
    }
}

impl FromStr for GenWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<GenWord> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "id" {
            return Ok(GenWord::empty());
        }
        let mut out = Vec::new();
        for tok in split_factors(s) {
            let (base, exp) = match tok.rfind('^') {
                Some(p) if tok[p..].find(')').is_none() => {
                    let e: i64 = tok[p + 1..]
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (&tok[..p], e)
                }
                _ => (tok, 1),
            };
            let name: GeneratorName = base.parse()?;
            out.extend(GenWord::power(name, exp).0);
        }
        Ok(GenWord(out))
    }
}

/// Splits on `*` outside parentheses; juxtaposition is not accepted.
fn split_factors(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let w: GenWord = "R * Ybar(1,4)^-1 * T(1,2,3,4)^2".parse().unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.0[1], (GeneratorName::Ybar(1, 4), -1));
        assert_eq!(w.to_string(), "R * Ybar(1,4)^-1 * T(1,2,3,4)^2");
        let y: GenWord = "Y(2;3) * Ymix(3,4) * Tbar4(1,2,3,4)".parse().unwrap();
        assert_eq!(y.to_string(), "Y(2;3) * Ymix(3,4) * Tbar4(1,2,3,4)");
        assert_eq!(
            "Y(2,3)".parse::<GenWord>().unwrap(),
            "Y(2;3)".parse::<GenWord>().unwrap()
        );
        assert!("".parse::<GenWord>().unwrap().is_empty());
        assert!("Q(1)".parse::<GenWord>().is_err());
        assert!("Tbar4(2,3,4,5)".parse::<GenWord>().is_err());
    }

    #[test]
    fn index_checks() {
        assert!(GeneratorName::Ybar(1, 4).check(4).is_ok());
        assert!(GeneratorName::Ybar(1, 5).check(4).is_err());
        assert!(GeneratorName::Y(1, vec![2, 3]).check(4).is_err());
        assert!(GeneratorName::T(vec![1, 2, 3]).check(4).is_err());
        assert!(GeneratorName::Tbar4(2, 3, 4).check(4).is_ok());
    }

    #[test]
    fn inverse_and_pow() {
        let w: GenWord = "R * Ybar(1,2)".parse().unwrap();
        assert_eq!(w.inverse().to_string(), "Ybar(1,2)^-1 * R^-1");
        assert_eq!(w.pow(2).len(), 4);
    }
}
