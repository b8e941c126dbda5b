//! The surface group `π_1(N_g) = <a_1..a_g | a_1² a_2² ··· a_g²>`.
//!
//! For `g >= 4` every piece of the presentation has length 1, so the
//! relator is C'(1/6) and Dehn's algorithm decides the word problem.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::homology::HomologyZ;
use crate::quotient::{self, QuotientProbe};
use crate::word::{GroupWord, Letter};

pub const MIN_GENUS: usize = 4;
pub const DEFAULT_PROBE_SEED: u64 = 0x5eed_0002;

/// Where a Dehn match sits inside `relator^{±1}` (cyclically).
#[derive(Clone, Copy, Debug)]
struct RelMatch {
    len: usize,
    which: usize,
    start: usize,
}

#[derive(Debug)]
pub struct GroupContext {
    genus: usize,
    relator: GroupWord,
    /// `rel[0] = r`, `rel[1] = r^-1`, read cyclically.
    rel: [Vec<Letter>; 2],
    /// For each letter (offset by `genus`), the positions `(which, start)` in
    /// `rel` where it occurs.
    shift_index: Vec<Vec<(usize, usize)>>,
    probe_seed: u64,
    probes: OnceLock<Vec<QuotientProbe>>,
}

/// Result of a bounded conjugacy search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// `v = w u w^-1`.
    Witness(GroupWord),
    /// Provably not conjugate; the string names the invariant that differs.
    No(String),
    Undecided {
        steps: usize,
    },
}

/// Result of an inner-automorphism search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InnerWitness {
    /// `images[i] = w a_i w^-1` for all `i`.
    Inner(GroupWord),
    /// Provably not inner; the string names the obstruction.
    NotInner(String),
    Undecided {
        steps: usize,
    },
}

/// Three-valued verdict of the independent triviality oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    Nontrivial,
    Unknown,
}

impl GroupContext {
    pub fn new(genus: usize) -> Result<GroupContext> {
        GroupContext::with_seed(genus, DEFAULT_PROBE_SEED)
    }

    pub fn with_seed(genus: usize, probe_seed: u64) -> Result<GroupContext> {
        if genus < MIN_GENUS {
            return Err(Error::UnsupportedGenus(genus));
        }
        let mut r = Vec::with_capacity(2 * genus);
        for i in 1..=genus {
            r.push(Letter::pos(i));
            r.push(Letter::pos(i));
        }
        let relator = GroupWord::from_reduced_unchecked(r.clone());
        let rinv = relator.inverse().into_letters();
        let mut shift_index = vec![Vec::new(); 2 * genus + 1];
        for (which, word) in [&r, &rinv].into_iter().enumerate() {
            for (start, l) in word.iter().enumerate() {
                shift_index[(l.raw() + genus as i16) as usize].push((which, start));
            }
        }
        let ctx = GroupContext {
            genus,
            relator,
            rel: [r, rinv],
            shift_index,
            probe_seed,
            probes: OnceLock::new(),
        };
        let max_piece = ctx.max_piece_length();
        if 6 * max_piece >= 2 * genus {
            return Err(Error::PieceCondition { max_piece });
        }
        Ok(ctx)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn relator(&self) -> &GroupWord {
        &self.relator
    }

    pub fn probe_seed(&self) -> u64 {
        self.probe_seed
    }

    pub fn letter(&self, i: usize) -> GroupWord {
        GroupWord::letter(Letter::pos(i))
    }

    /// Longest common prefix of two distinct cyclic shifts of `r^{±1}`,
    /// by exhaustive enumeration.
    pub fn max_piece_length(&self) -> usize {
        let n = 2 * self.genus;
        let mut best = 0;
        let shifts: Vec<(usize, usize)> =
            (0..2).flat_map(|w| (0..n).map(move |s| (w, s))).collect();
        for (x, &(w1, s1)) in shifts.iter().enumerate() {
            for &(w2, s2) in &shifts[x + 1..] {
                let mut k = 0;
                while k < n && self.rel[w1][(s1 + k) % n] == self.rel[w2][(s2 + k) % n] {
                    k += 1;
                }
                best = best.max(k);
            }
        }
        best
    }

    pub fn check_letters(&self, w: &GroupWord) -> Result<()> {
        match w.letters().iter().find(|l| l.index() > self.genus) {
            Some(l) => Err(Error::IndexOutOfRange {
                index: l.index(),
                genus: self.genus,
            }),
            None => Ok(()),
        }
    }

    fn longest_match(&self, w: &[Letter], q: usize, cyclic: bool) -> Option<RelMatch> {
        let n = 2 * self.genus;
        let wl = w.len();
        let cap = if cyclic { wl.min(n) } else { (wl - q).min(n) };
        let mut best: Option<RelMatch> = None;
        for &(which, start) in &self.shift_index[(w[q].raw() + self.genus as i16) as usize] {
            let rel = &self.rel[which];
            let mut k = 1;
            while k < cap && w[(q + k) % wl] == rel[(start + k) % n] {
                k += 1;
            }
            if best.is_none_or(|b| k > b.len) {
                best = Some(RelMatch {
                    len: k,
                    which,
                    start,
                });
            }
        }
        best
    }

    /// Inverse of the complement of a match: the shorter equal word.
    fn complement(&self, m: RelMatch) -> Vec<Letter> {
        let n = 2 * self.genus;
        let rel = &self.rel[m.which];
        (m.len..n)
            .rev()
            .map(|t| rel[(m.start + t) % n].inverse())
            .collect()
    }

    /// Dehn's algorithm: repeatedly replace the leftmost-longest subword of
    /// length > g that lies in a cyclic shift of `r^{±1}`.
    pub fn dehn_reduce(&self, w: &GroupWord) -> GroupWord {
        let g = self.genus;
        let mut v: Vec<Letter> = w.letters().to_vec();
        let mut from = 0usize;
        loop {
            let mut hit = None;
            for q in from..v.len() {
                if let Some(m) = self.longest_match(&v, q, false) {
                    if m.len > g {
                        hit = Some((q, m));
                        break;
                    }
                }
            }
            let Some((q, m)) = hit else { break };
            let repl = self.complement(m);
            let tail: Vec<Letter> = v[q + m.len..].to_vec();
            v.truncate(q);
            let mut low = v.len();
            for l in repl.into_iter().chain(tail) {
                match v.last() {
                    Some(&last) if last == l.inverse() => {
                        v.pop();
                        low = low.min(v.len());
                    }
                    _ => v.push(l),
                }
            }
            from = low.saturating_sub(2 * g);
        }
        GroupWord::from_reduced_unchecked(v)
    }

    pub fn is_identity(&self, w: &GroupWord) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    pub fn equal(&self, u: &GroupWord, v: &GroupWord) -> bool {
        self.is_identity(&(u * &v.inverse()))
    }

    /// Product followed by Dehn reduction.
    pub fn mul(&self, u: &GroupWord, v: &GroupWord) -> GroupWord {
        self.dehn_reduce(&(u * v))
    }

    /// Cyclic Dehn reduction. Returns `(c, u)` with `w = c u c^-1` in the
    /// group and `u` cyclically free of long relator subwords.
    pub fn cyclic_reduce(&self, w: &GroupWord) -> (GroupWord, GroupWord) {
        let g = self.genus;
        let (mut c, mut u) = self.dehn_reduce(w).cyclically_reduce();
        loop {
            let letters = u.letters();
            let n = letters.len();
            let mut hit = None;
            for q in 0..n {
                if let Some(m) = self.longest_match(letters, q, true) {
                    if m.len > g {
                        hit = Some((q, m));
                        break;
                    }
                }
            }
            let Some((q, m)) = hit else { break };
            let prefix = GroupWord::from_reduced_unchecked(letters[..q].to_vec());
            let rotated = u.rotate(q);
            c = &c * &prefix;
            let mut nl = self.complement(m);
            nl.extend_from_slice(&rotated.letters()[m.len..]);
            let (c2, u2) = self
                .dehn_reduce(&GroupWord::from_letters(nl))
                .cyclically_reduce();
            c = &c * &c2;
            u = u2;
        }
        (c, u)
    }

    /// Abelianized class in `Z^g / <2(x_1+…+x_g)>`.
    pub fn abelianize(&self, w: &GroupWord) -> HomologyZ {
        HomologyZ::canonical(w.exponent_sums(self.genus))
    }

    pub fn probes(&self) -> &[QuotientProbe] {
        self.probes
            .get_or_init(|| quotient::probes(self.genus, self.probe_seed, 4, 6))
    }

    /// Cyclic words equal to `u` reachable by swapping a half-relator
    /// subword for its complementary half (both have length g).
    fn half_swaps(&self, u: &GroupWord) -> Vec<(GroupWord, GroupWord)> {
        let g = self.genus;
        let letters = u.letters();
        let n = letters.len();
        let mut out = Vec::new();
        if n < g {
            return out;
        }
        for q in 0..n {
            for &(which, start) in &self.shift_index[(letters[q].raw() + g as i16) as usize] {
                let rel = &self.rel[which];
                let ok = (0..g).all(|k| letters[(q + k) % n] == rel[(start + k) % (2 * g)]);
                if !ok {
                    continue;
                }
                let m = RelMatch {
                    len: g,
                    which,
                    start,
                };
                let prefix = GroupWord::from_reduced_unchecked(letters[..q].to_vec());
                let rotated = u.rotate(q);
                let mut nl = self.complement(m);
                nl.extend_from_slice(&rotated.letters()[g..]);
                let (c2, u2) = self.cyclic_reduce(&GroupWord::from_letters(nl));
                out.push((&prefix * &c2, u2));
            }
        }
        out
    }

    /// Decides whether `v = w u w^-1` for some `w`, within `budget`
    /// candidate forms. Never returns a wrong verdict.
    pub fn are_conjugate(&self, u: &GroupWord, v: &GroupWord, budget: usize) -> Conjugacy {
        if self.abelianize(u) != self.abelianize(v) {
            return Conjugacy::No("integral homology class".into());
        }
        for (k, p) in self.probes().iter().enumerate() {
            if p.eval(u).cycle_type() != p.eval(v).cycle_type() {
                return Conjugacy::No(format!("quotient probe {k} (S_{})", p.degree()));
            }
        }
        let (cu, uu) = self.cyclic_reduce(u);
        let (cv, vv) = self.cyclic_reduce(v);
        // every rotation of the target, keyed by letters
        let mut targets: HashMap<Vec<Letter>, GroupWord> = HashMap::new();
        let vn = vv.len();
        for k in 0..vn.max(1) {
            let a = GroupWord::from_reduced_unchecked(vv.letters()[..k.min(vn)].to_vec());
            targets.entry(vv.rotate(k).into_letters()).or_insert(a);
        }
        // state: u = c x c^-1
        let mut queue: VecDeque<(GroupWord, GroupWord, usize)> = VecDeque::new();
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        queue.push_back((cu, uu, 0));
        let mut steps = 0usize;
        let max_depth = 2;
        let pieces = self.short_relator_subwords();
        while let Some((c, x, depth)) = queue.pop_front() {
            steps += 1;
            if steps > budget {
                return Conjugacy::Undecided { steps: budget };
            }
            if !seen.insert(min_rotation(&x)) {
                continue;
            }
            let xn = x.len();
            // prefer rotating the source onto the target as given
            let hit = (0..xn.max(1))
                .find(|&j| x.rotate(j) == vv)
                .map(|j| (j, GroupWord::empty()))
                .or_else(|| {
                    (0..xn.max(1))
                        .find_map(|j| targets.get(x.rotate(j).letters()).map(|a| (j, a.clone())))
                });
            if let Some((j, a)) = hit {
                // rot = p^-1 x p with p = x[..j], and rot = a^-1 vv a
                let p = GroupWord::from_reduced_unchecked(x.letters()[..j.min(xn)].to_vec());
                let w = self.dehn_reduce(&(&(&cv * &a) * &(&c * &p).inverse()));
                debug_assert!(self.equal(&w.conjugate(u), v));
                return Conjugacy::Witness(w);
            }
            if depth >= max_depth {
                continue;
            }
            for (pc, nx) in self.half_swaps(&x) {
                queue.push_back((&c * &pc, nx, depth + 1));
            }
            for j in 0..xn.max(1) {
                let pre = GroupWord::from_reduced_unchecked(x.letters()[..j.min(xn)].to_vec());
                let rot = x.rotate(j);
                for p in &pieces {
                    // rot = p y p^-1 with y = p^-1 rot p
                    let y = p.inverse().conjugate(&rot);
                    let (c2, y2) = self.cyclic_reduce(&y);
                    let nc = &(&(&c * &pre) * p) * &c2;
                    queue.push_back((nc, y2, depth + 1));
                }
            }
        }
        Conjugacy::Undecided { steps }
    }

    fn short_relator_subwords(&self) -> Vec<GroupWord> {
        let n = 2 * self.genus;
        let mut set = HashSet::new();
        for rel in &self.rel {
            for s in 0..n {
                for len in 1..=self.genus {
                    let w: Vec<Letter> = (0..len).map(|k| rel[(s + k) % n]).collect();
                    set.insert(GroupWord::from_letters(w));
                }
            }
        }
        let mut v: Vec<GroupWord> = set.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// Finds `w` with `images[i] = w a_i w^-1` for every `i`, or proves that
    /// none exists, or gives up after `budget` steps.
    pub fn inner_witness(&self, images: &[GroupWord], budget: usize) -> Result<InnerWitness> {
        let g = self.genus;
        if images.len() != g {
            return Err(Error::LengthMismatch(images.len(), g));
        }
        for w in images {
            self.check_letters(w)?;
        }
        let inverses: Vec<GroupWord> = images.iter().map(GroupWord::inverse).collect();
        let r_img = self.relator.substitute(images, &inverses);
        if !self.is_identity(&r_img) {
            return Err(Error::MalformedAutomorphism(
                "relator is not sent to the identity".into(),
            ));
        }
        for (i, img) in images.iter().enumerate() {
            if self.abelianize(img) != self.abelianize(&self.letter(i + 1)) {
                return Ok(InnerWitness::NotInner(format!(
                    "integral homology of a{}",
                    i + 1
                )));
            }
        }
        let gens: Vec<_> = (1..=g).map(|i| self.letter(i)).collect();
        for (k, p) in self.probes().iter().enumerate() {
            let xs: Vec<_> = gens.iter().map(|w| p.eval(w)).collect();
            let ys: Vec<_> = images.iter().map(|w| p.eval(w)).collect();
            if !quotient::simultaneously_conjugate(&xs, &ys) {
                return Ok(InnerWitness::NotInner(format!(
                    "quotient probe {k} (S_{})",
                    p.degree()
                )));
            }
        }
        if budget == 0 {
            return Ok(InnerWitness::Undecided { steps: 0 });
        }
        let w0 = match self.are_conjugate(&gens[0], &images[0], budget) {
            Conjugacy::Witness(w) => w,
            Conjugacy::No(why) => {
                return Ok(InnerWitness::NotInner(format!(
                    "a1 image not conjugate: {why}"
                )))
            }
            Conjugacy::Undecided { steps } => return Ok(InnerWitness::Undecided { steps }),
        };
        // the centralizer of a1 is <a1>
        let a1 = &gens[0];
        let kmax = budget.min(4 * g + 8) as i64;
        let mut order: Vec<i64> = vec![0];
        for k in 1..=kmax {
            order.push(k);
            order.push(-k);
        }
        for k in order {
            let w = self.dehn_reduce(&(&w0 * &a1.pow(k)));
            if (1..g).all(|i| self.equal(&w.conjugate(&gens[i]), &images[i])) {
                return Ok(InnerWitness::Inner(w));
            }
        }
        Ok(InnerWitness::Undecided { steps: budget })
    }
}

/// Lexicographically least rotation, used as a cyclic-word key.
pub fn min_rotation(w: &GroupWord) -> Vec<Letter> {
    let n = w.len();
    let l = w.letters();
    (0..n.max(1))
        .map(|k| {
            let mut v = Vec::with_capacity(n);
            v.extend_from_slice(&l[k.min(n)..]);
            v.extend_from_slice(&l[..k.min(n)]);
            v
        })
        .min()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn context_rejects_small_genus() {
        assert!(matches!(
            GroupContext::new(3),
            Err(Error::UnsupportedGenus(3))
        ));
        assert!(GroupContext::new(4).is_ok());
    }

    #[test]
    fn piece_condition_holds() {
        for g in 4..=12 {
            assert_eq!(GroupContext::new(g).unwrap().max_piece_length(), 1);
        }
    }

    #[test]
    fn dehn_examples() {
        let ctx = GroupContext::new(4).unwrap();
        assert!(ctx.dehn_reduce(&w("a1 a1 a2 a2 a3 a3 a4 a4")).is_empty());
        assert_eq!(ctx.dehn_reduce(&w("a1 a1 a2 a2 a3 a3 a4")), w("A4"));
        assert_eq!(ctx.dehn_reduce(&w("a1")), w("a1"));
    }

    #[test]
    fn identity_examples() {
        let ctx = GroupContext::new(4).unwrap();
        let x = w("a1 a2");
        assert!(ctx.is_identity(&(&x * &x.inverse())));
        assert!(!ctx.is_identity(&w("a1")));
        let r = ctx.relator().clone();
        assert!(ctx.is_identity(&w("a3").conjugate(&r)));
        // a relator spread over a junction
        assert!(ctx.is_identity(&w("a3 a3 a4 a4 a1 a1 a2 a2")));
        assert!(ctx.is_identity(&w("A4 A4 A3 A3 A2 A2 A1 A1")));
    }

    #[test]
    fn conjugacy_examples() {
        let ctx = GroupContext::new(4).unwrap();
        let u = w("a1 a2");
        let v = w("a2 a1");
        match ctx.are_conjugate(&u, &v, 1000) {
            Conjugacy::Witness(c) => {
                assert!(ctx.equal(&c.conjugate(&u), &v));
                assert_eq!(c, w("A1"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            ctx.are_conjugate(&w("a1"), &w("a2"), 1000),
            Conjugacy::No(_)
        ));
        match ctx.are_conjugate(&w("a1"), &w("A3 a1 a3"), 1000) {
            Conjugacy::Witness(c) => assert_eq!(c, w("A3")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inner_witness_examples() {
        let ctx = GroupContext::new(4).unwrap();
        let id: Vec<_> = (1..=4).map(|i| ctx.letter(i)).collect();
        assert_eq!(
            ctx.inner_witness(&id, 100).unwrap(),
            InnerWitness::Inner(GroupWord::empty())
        );
        let c = w("a1 a2");
        let conj: Vec<_> = id.iter().map(|x| c.conjugate(x)).collect();
        assert_eq!(
            ctx.inner_witness(&conj, 100).unwrap(),
            InnerWitness::Inner(c)
        );
        let bad = vec![w("a1 a1"), w("a2"), w("a3"), w("a4")];
        assert!(ctx.inner_witness(&bad, 100).is_err());
    }

    #[test]
    fn cyclic_reduce_tracks_conjugator() {
        let ctx = GroupContext::new(4).unwrap();
        for s in [
            "a2 a1 a1 a2 a2 a3 a3 a4 A2",
            "a4 a4 a1 a1 a2 a2 a3",
            "A1 a3 a1",
        ] {
            let x = w(s);
            let (c, u) = ctx.cyclic_reduce(&x);
            assert!(ctx.equal(&c.conjugate(&u), &x), "{s}");
        }
    }
}
