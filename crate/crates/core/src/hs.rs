//! The involution generating set, the Hirose–Sato generators, and the
//! explicit words translating between them.
//!
//! Words over members are kept symbolic as [`MemberWord`]s so the
//! minimality matrix can read exponent sums without realizing anything.

use serde::{Deserialize, Serialize};

use crate::generators::{GenWord, GeneratorName};
use crate::homology::gf2_rank;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(g: usize) -> Parity {
        if g % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratingSetSpec {
    pub genus: usize,
    pub parity: Parity,
    pub members: Vec<GenWord>,
    pub expected_count: usize,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn expected_count(g: usize) -> usize {
    binomial(g, 2) + binomial(g, 3)
}

fn ybar(i: usize, j: usize) -> GeneratorName {
    GeneratorName::Ybar(i, j)
}

fn gw(parts: &[(GeneratorName, i8)]) -> GenWord {
    GenWord(parts.to_vec())
}

/// Sign of the first-item member `R Ȳ_{m,g}^{±1}`: alternating, starting
/// with `+` at `m = 1`.
pub fn item1_sign(m: usize) -> i8 {
    if m % 2 == 1 {
        1
    } else {
        -1
    }
}

/// `R Ȳ_{1,i} Y_{α_k,ᾱ_{j,k}}^{-1} T̄_{1,i,j,k}^2`.
pub fn item3_member(i: usize, j: usize, k: usize, ymix_exp: i8) -> GenWord {
    gw(&[
        (GeneratorName::R, 1),
        (ybar(1, i), 1),
        (GeneratorName::Ymix(j, k), ymix_exp),
        (GeneratorName::Tbar4(i, j, k), 1),
        (GeneratorName::Tbar4(i, j, k), 1),
    ])
}

pub fn triples(g: usize) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for i in 2..=g {
        for j in i + 1..=g {
            for k in j + 1..=g {
                v.push((i, j, k));
            }
        }
    }
    v
}

/// Member index lookup for the symbolic words below.
#[derive(Clone, Debug)]
struct Layout {
    g: usize,
    /// index of `R` (even genus only)
    r: Option<usize>,
    /// `item1[m-1]` = index of `R Ȳ_{m,g}^{±}`
    item1: Vec<usize>,
    /// `(i, j) -> index` of `R Ȳ_{i,j}`, both below `g`
    item2: Vec<((usize, usize), usize)>,
    item3: Vec<((usize, usize, usize), usize)>,
}

pub fn involution_set(g: usize) -> GeneratingSetSpec {
    let (members, _) = build(g);
    GeneratingSetSpec {
        genus: g,
        parity: Parity::of(g),
        members,
        expected_count: expected_count(g),
    }
}

fn build(g: usize) -> (Vec<GenWord>, Layout) {
    let parity = Parity::of(g);
    let mut members = Vec::new();
    let mut lay = Layout {
        g,
        r: None,
        item1: Vec::new(),
        item2: Vec::new(),
        item3: Vec::new(),
    };
    let top = match parity {
        Parity::Odd => g - 1,
        Parity::Even => {
            lay.r = Some(members.len());
            members.push(GenWord::gen(GeneratorName::R));
            g - 2
        }
    };
    for m in 1..=top {
        lay.item1.push(members.len());
        members.push(gw(&[(GeneratorName::R, 1), (ybar(m, g), item1_sign(m))]));
    }
    for i in 1..g {
        for j in 1..g {
            if i != j {
                lay.item2.push(((i, j), members.len()));
                members.push(gw(&[(GeneratorName::R, 1), (ybar(i, j), 1)]));
            }
        }
    }
    for (i, j, k) in triples(g) {
        lay.item3.push(((i, j, k), members.len()));
        members.push(item3_member(i, j, k, -1));
    }
    (members, lay)
}

/// A word in the members of [`involution_set`], by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberWord(pub Vec<(usize, i8)>);

impl MemberWord {
    fn one(i: usize) -> MemberWord {
        MemberWord(vec![(i, 1)])
    }

    fn inverse(&self) -> MemberWord {
        MemberWord(self.0.iter().rev().map(|&(i, e)| (i, -e)).collect())
    }

    fn then(mut self, o: &MemberWord) -> MemberWord {
        self.0.extend_from_slice(&o.0);
        self
    }

    fn pow(&self, e: i8) -> MemberWord {
        if e < 0 {
            self.inverse()
        } else {
            self.clone()
        }
    }

    /// Members are involutions, so `m^-1` is written as `m`; the GenWord
    /// keeps the literal inverse so nothing is assumed.
    pub fn expand(&self, members: &[GenWord]) -> GenWord {
        self.0.iter().fold(GenWord::empty(), |acc, &(i, e)| {
            acc.then(&if e < 0 {
                members[i].inverse()
            } else {
                members[i].clone()
            })
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn concat<I: IntoIterator<Item = MemberWord>>(it: I) -> MemberWord {
    it.into_iter()
        .fold(MemberWord::default(), |a, b| a.then(&b))
}

impl Layout {
    fn r_word(&self) -> MemberWord {
        match self.r {
            Some(r) => MemberWord::one(r),
            // R = Π_{m=g-1..1} (R Ȳ_{m,g}^{±})
            None => concat(
                (1..self.g)
                    .rev()
                    .map(|m| MemberWord::one(self.item1[m - 1])),
            ),
        }
    }

    fn item2(&self, i: usize, j: usize) -> usize {
        self.item2.iter().find(|(k, _)| *k == (i, j)).unwrap().1
    }

    /// `Ȳ_{i,j}` over members.
    fn ybar(&self, i: usize, j: usize) -> MemberWord {
        let g = self.g;
        let rinv = self.r_word().inverse();
        if i < g && j < g {
            return rinv.then(&MemberWord::one(self.item2(i, j)));
        }
        if j == g && i <= self.item1.len() {
            return rinv
                .then(&MemberWord::one(self.item1[i - 1]))
                .pow(item1_sign(i));
        }
        if j == g {
            // Ȳ_{g-1,g} = R (Ȳ_{g-2,g} ··· Ȳ_{1,g})^-1
            let rest = concat((1..g - 1).rev().map(|m| self.ybar(m, g)));
            return self.r_word().then(&rest.inverse());
        }
        // Ȳ_{g,j} = (Π_{m≠j, m<g} Ȳ_{m,j})^-1 R
        let rest = concat((1..g).filter(|&m| m != j).map(|m| self.ybar(m, j)));
        rest.inverse().then(&self.r_word())
    }

    fn y(&self, i: usize, j: usize) -> MemberWord {
        let yb = self.ybar(i, j);
        if i < j {
            // Y_{i,j} = P^-1 Ȳ_{i,j} P, P = Ȳ_{i+1,j}^-1 ··· Ȳ_{j-1,j}^-1
            let p = concat((i + 1..j).map(|m| self.ybar(m, j).inverse()));
            p.inverse().then(&yb).then(&p)
        } else {
            // Y_{i,j} = Q^-1 Ȳ_{i,j} Q, Q = Ȳ_{j+1,j} ··· Ȳ_{i-1,j}
            let q = concat((j + 1..i).map(|m| self.ybar(m, j)));
            q.inverse().then(&yb).then(&q)
        }
    }

    fn t_squared(&self, i: usize, j: usize, k: usize) -> MemberWord {
        let m3 = self.item3.iter().find(|(t, _)| *t == (i, j, k)).unwrap().1;
        // T̄^2 = Ymix Ȳ_{1,i}^-1 R^-1 (R Ȳ_{1,i} Ymix^-1 T̄^2)
        let tbar2 = self
            .ybar(k, j)
            .then(&self.ybar(1, i).inverse())
            .then(&self.r_word().inverse())
            .then(&MemberWord::one(m3));
        let p = concat((i + 1..j).map(|m| self.ybar(m, j).inverse()));
        p.inverse().then(&tbar2).then(&p)
    }
}

/// Generators of the level 2 subgroup in the Hirose–Sato form:
/// `Y_{i;j}` (`i < g`, `j ≠ i`) and `T_{1,j,k,l}^2`.
pub fn hs_generators(g: usize) -> Vec<GenWord> {
    let mut out = Vec::new();
    for i in 1..g {
        for j in 1..=g {
            if i != j {
                out.push(GenWord::gen(GeneratorName::Y(i, vec![j])));
            }
        }
    }
    for (i, j, k) in triples(g) {
        out.push(GenWord::power(GeneratorName::T(vec![1, i, j, k]), 2));
    }
    out
}

/// Each Hirose–Sato generator as a word in the involution members.
pub fn regenerate_hs(g: usize) -> Vec<(GenWord, MemberWord)> {
    let (_, lay) = build(g);
    let mut out = Vec::new();
    for i in 1..g {
        for j in 1..=g {
            if i != j {
                out.push((GenWord::gen(GeneratorName::Y(i, vec![j])), lay.y(i, j)));
            }
        }
    }
    for (i, j, k) in triples(g) {
        out.push((
            GenWord::power(GeneratorName::T(vec![1, i, j, k]), 2),
            lay.t_squared(i, j, k),
        ));
    }
    out
}

/// A word in the Hirose–Sato generators, by index into [`hs_generators`].
pub type HsWord = Vec<(usize, i8)>;

struct HsLayout {
    g: usize,
}

impl HsLayout {
    fn y_index(&self, i: usize, j: usize) -> usize {
        // rows of g-1 entries per i
        (i - 1) * (self.g - 1) + if j < i { j - 1 } else { j - 2 }
    }

    fn t_index(&self, t: (usize, usize, usize)) -> usize {
        (self.g - 1) * (self.g - 1) + triples(self.g).iter().position(|x| *x == t).unwrap()
    }

    fn inv(w: &HsWord) -> HsWord {
        w.iter().rev().map(|&(i, e)| (i, -e)).collect()
    }

    fn r(&self) -> HsWord {
        (1..self.g)
            .rev()
            .flat_map(|m| self.ybar(m, self.g))
            .collect()
    }

    fn ybar(&self, i: usize, j: usize) -> HsWord {
        let g = self.g;
        if i == g {
            let rest: HsWord = (1..g)
                .filter(|&m| m != j)
                .flat_map(|m| self.ybar(m, j))
                .collect();
            return Self::inv(&rest).into_iter().chain(self.r()).collect();
        }
        let p: HsWord = if i < j {
            (i + 1..j)
                .flat_map(|m| Self::inv(&self.ybar(m, j)))
                .collect()
        } else {
            (j + 1..i).flat_map(|m| self.ybar(m, j)).collect()
        };
        let mut w = p.clone();
        w.push((self.y_index(i, j), 1));
        w.extend(Self::inv(&p));
        w
    }

    fn member(&self, m: &GenWord) -> HsWord {
        let mut out = Vec::new();
        for (name, e) in m.factors() {
            let piece = match name {
                GeneratorName::R => self.r(),
                GeneratorName::Ybar(i, j) => self.ybar(*i, *j),
                GeneratorName::Ymix(j, k) => self.ybar(*k, *j),
                GeneratorName::Tbar4(i, j, k) => {
                    // each T̄ factor is half of the conjugated square; the
                    // pair of factors contributes one generator
                    let p: HsWord = (i + 1..*j)
                        .flat_map(|m| Self::inv(&self.ybar(m, *j)))
                        .collect();
                    let mut w = p.clone();
                    w.push((self.t_index((*i, *j, *k)), 1));
                    w.extend(Self::inv(&p));
                    w
                }
                _ => unreachable!("members only use R, Ybar, Ymix, Tbar4"),
            };
            out.extend(if *e < 0 { Self::inv(&piece) } else { piece });
        }
        out
    }
}

/// Each member as a word in the Hirose–Sato generators. The two `T̄` tokens
/// of a member are merged into one `T^2` generator.
pub fn members_in_hs(g: usize) -> Vec<HsWord> {
    let lay = HsLayout { g };
    involution_set(g)
        .members
        .iter()
        .map(|m| {
            let mut w = lay.member(m);
            // drop the duplicate T^2 produced by the second T̄ token
            if let Some(pos) = w.iter().rposition(|&(i, _)| i >= (g - 1) * (g - 1)) {
                let first = w.iter().position(|&(i, _)| i >= (g - 1) * (g - 1)).unwrap();
                if first != pos {
                    w.remove(pos);
                }
            }
            w
        })
        .collect()
}

/// The Hirose–Sato word as a GenWord.
pub fn hs_word_to_genword(g: usize, w: &HsWord) -> GenWord {
    let gens = hs_generators(g);
    w.iter().fold(GenWord::empty(), |acc, &(i, e)| {
        acc.then(&if e < 0 {
            gens[i].inverse()
        } else {
            gens[i].clone()
        })
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub genus: usize,
    pub size: usize,
    pub rank: usize,
    pub invertible: bool,
    pub rows: Vec<Vec<u8>>,
    pub assumption: String,
}

/// Rows: members; columns: Hirose–Sato generators; entries: exponent sums
/// mod 2.
pub fn minimality_matrix(g: usize) -> MinimalityReport {
    let n = hs_generators(g).len();
    let rows: Vec<Vec<u8>> = members_in_hs(g)
        .iter()
        .map(|w| {
            let mut row = vec![0u8; n];
            for &(i, _) in w {
                row[i] ^= 1;
            }
            row
        })
        .collect();
    let rank = gf2_rank(&rows);
    MinimalityReport {
        genus: g,
        size: rows.len(),
        rank,
        invertible: rows.len() == n && rank == n,
        rows,
        assumption: "the Hirose-Sato generators descend to a basis of H_1(level 2 subgroup; Z/2)"
            .into(),
    }
}

/// Rank after removing member `idx`.
pub fn rank_without(report: &MinimalityReport, idx: usize) -> usize {
    let rows: Vec<Vec<u8>> = report
        .rows
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != idx)
        .map(|(_, r)| r.clone())
        .collect();
    gf2_rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_formula() {
        for g in 4..=9 {
            assert_eq!(involution_set(g).members.len(), expected_count(g), "g={g}");
            assert_eq!(hs_generators(g).len(), expected_count(g), "g={g}");
        }
        assert_eq!(expected_count(5), 20);
        assert_eq!(expected_count(4), 10);
    }

    #[test]
    fn parity_lists() {
        let s = involution_set(4);
        assert_eq!(s.members[0].to_string(), "R");
        assert_eq!(s.members[1].to_string(), "R * Ybar(1,4)");
        assert_eq!(s.members[2].to_string(), "R * Ybar(2,4)^-1");
        let o = involution_set(5);
        assert_eq!(o.members[3].to_string(), "R * Ybar(4,5)^-1");
        assert_eq!(
            o.members.last().unwrap().to_string(),
            "R * Ybar(1,3) * Ymix(4,5)^-1 * Tbar4(1,3,4,5)^2"
        );
    }

    #[test]
    fn minimality_small() {
        for g in 4..=6 {
            let m = minimality_matrix(g);
            assert!(m.invertible, "g={g}");
            assert!(rank_without(&m, 0) < m.size);
        }
    }
}
