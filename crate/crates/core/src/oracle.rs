//! Independent triviality oracle used to cross-check Dehn reduction.
//!
//! "Trivial" comes from an explicit derivation: breadth-first search over
//! rewrites `s -> t` where `s t^-1` is a cyclic shift of `r^{±1}`, with
//! free reduction, capped by word length and state count. "Nontrivial"
//! comes from abelianization or a finite quotient. It never consults
//! `dehn_reduce`.

use std::collections::{HashSet, VecDeque};

use crate::group::{GroupContext, Triviality};
use crate::word::{GroupWord, Letter};

pub fn triviality_oracle(ctx: &GroupContext, w: &GroupWord, radius: usize) -> Triviality {
    if !ctx.abelianize(w).is_zero() {
        return Triviality::Nontrivial;
    }
    if ctx.probes().iter().any(|p| !p.eval(w).is_identity()) {
        return Triviality::Nontrivial;
    }
    if derivation_search(ctx, w, radius) {
        Triviality::Trivial
    } else {
        Triviality::Unknown
    }
}

fn derivation_search(ctx: &GroupContext, w: &GroupWord, radius: usize) -> bool {
    if w.is_empty() {
        return true;
    }
    let g = ctx.genus();
    let n = 2 * g;
    let r = ctx.relator().letters().to_vec();
    let rinv = ctx.relator().inverse().into_letters();
    // all (s, t) with s t^-1 a cyclic shift of r^{±1}, |s| >= |t|
    let mut rules: Vec<(Vec<Letter>, Vec<Letter>)> = Vec::new();
    for rel in [&r, &rinv] {
        for start in 0..n {
            let shift: Vec<Letter> = (0..n).map(|k| rel[(start + k) % n]).collect();
            for len in g..=n {
                let s = shift[..len].to_vec();
                let t: Vec<Letter> = shift[len..].iter().rev().map(|l| l.inverse()).collect();
                rules.push((s, t));
            }
        }
    }
    let max_len = w.len() + n;
    let max_states = radius.saturating_mul(2000).max(1);
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.letters().to_vec());
    queue.push_back(w.letters().to_vec());
    while let Some(cur) = queue.pop_front() {
        for (s, t) in &rules {
            for pos in 0..cur.len() {
                if cur.len() - pos < s.len() || cur[pos..pos + s.len()] != s[..] {
                    continue;
                }
                let next = GroupWord::from_letters(
                    cur[..pos]
                        .iter()
                        .chain(t.iter())
                        .chain(cur[pos + s.len()..].iter())
                        .copied(),
                )
                .into_letters();
                if next.is_empty() {
                    return true;
                }
                if next.len() <= max_len && seen.len() < max_states && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        // Also allow a free cyclic conjugation step: a trivial word stays
        // trivial under conjugation.
        if cur.len() >= 2 {
            let mut rot = cur[1..].to_vec();
            rot.push(cur[0]);
            let next = GroupWord::from_letters(rot).into_letters();
            if next.is_empty() {
                return true;
            }
            if seen.len() < max_states && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let ctx = GroupContext::new(4).unwrap();
        assert_eq!(
            triviality_oracle(&ctx, &ctx.relator().clone(), 10),
            Triviality::Trivial
        );
        let x: GroupWord = "a1 a2".parse().unwrap();
        assert_eq!(triviality_oracle(&ctx, &x, 10), Triviality::Nontrivial);
        let comm: GroupWord = "a1 a2 A1 A2".parse().unwrap();
        assert_ne!(triviality_oracle(&ctx, &comm, 3), Triviality::Trivial);
        let conj: GroupWord = "a3 a1 a1 a2 a2 a3 a3 a4 a4 A3".parse().unwrap();
        assert_eq!(triviality_oracle(&ctx, &conj, 10), Triviality::Trivial);
    }
}
