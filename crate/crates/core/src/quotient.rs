//! Seeded homomorphisms from the surface group into small symmetric groups.
//!
//! Used one-sidedly: a probe can prove a word nontrivial, two words
//! non-conjugate, or an automorphism non-inner. A probe never proves
//! anything positive.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::word::GroupWord;

/// Permutation of `0..n` in image form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `self ∘ other` acting on the right: first `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x as usize] = i as u8;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Sorted cycle lengths; a conjugacy invariant in `S_n`.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// `s^-1 self s`.
    pub fn conjugate_by(&self, s: &Perm) -> Perm {
        s.inverse().then(self).then(s)
    }
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    fn rec(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Perm>) {
        if k == cur.len() {
            out.push(Perm(cur.clone()));
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

/// A homomorphism `π_1(N_g) → S_n` given by the images of `a_1..a_g`.
#[derive(Clone, Debug)]
pub struct QuotientProbe {
    images: Vec<Perm>,
}

impl QuotientProbe {
    pub fn degree(&self) -> usize {
        self.images[0].degree()
    }

    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    pub fn eval(&self, w: &GroupWord) -> Perm {
        let n = self.degree();
        let inv: Vec<Perm> = self.images.iter().map(Perm::inverse).collect();
        let mut acc = Perm::identity(n);
        for l in w.letters() {
            let p = if l.is_positive() {
                &self.images[l.index() - 1]
            } else {
                &inv[l.index() - 1]
            };
            acc = acc.then(p);
        }
        acc
    }

    fn respects_relator(&self) -> bool {
        let n = self.degree();
        let mut acc = Perm::identity(n);
        for p in &self.images {
            acc = acc.then(p).then(p);
        }
        acc.is_identity()
    }
}

/// Deterministic family of probes for genus `g`, degrees 3..=max_degree.
pub fn probes(g: usize, seed: u64, per_degree: usize, max_degree: usize) -> Vec<QuotientProbe> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (g as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut out = Vec::new();
    for n in 3..=max_degree {
        let perms = all_perms(n);
        let mut roots: HashMap<Perm, Vec<usize>> = HashMap::new();
        for (i, p) in perms.iter().enumerate() {
            roots.entry(p.then(p)).or_default().push(i);
        }
        let mut made = 0;
        let mut attempts = 0;
        while made < per_degree && attempts < per_degree * 200 {
            attempts += 1;
            let mut imgs: Vec<Perm> = (0..g - 1)
                .map(|_| perms[rng.gen_range(0..perms.len())].clone())
                .collect();
            let mut acc = Perm::identity(n);
            for p in &imgs {
                acc = acc.then(p).then(p);
            }
            let target = acc.inverse();
            let Some(cands) = roots.get(&target) else {
                continue;
            };
            let pick = *cands.choose(&mut rng).expect("nonempty");
            imgs.push(perms[pick].clone());
            if imgs.iter().all(Perm::is_identity) {
                continue;
            }
            let probe = QuotientProbe { images: imgs };
            debug_assert!(probe.respects_relator());
            out.push(probe);
            made += 1;
        }
    }
    out
}

/// Is there `s` with `s^-1 x_i s = y_i` for all `i`? Brute force over `S_n`.
pub fn simultaneously_conjugate(xs: &[Perm], ys: &[Perm]) -> bool {
    if xs.is_empty() {
        return true;
    }
    let n = xs[0].degree();
    if xs
        .iter()
        .zip(ys)
        .any(|(x, y)| x.cycle_type() != y.cycle_type())
    {
        return false;
    }
    all_perms(n)
        .iter()
        .any(|s| xs.iter().zip(ys).all(|(x, y)| &x.conjugate_by(s) == y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probes_satisfy_relator() {
        for p in probes(4, 7, 3, 5) {
            assert!(p.respects_relator());
            let r = GroupWord::from_ints(&[1, 1, 2, 2, 3, 3, 4, 4]);
            assert!(p.eval(&r).is_identity());
        }
    }

    #[test]
    fn perm_algebra() {
        let p = Perm(vec![1, 2, 0]);
        assert_eq!(p.then(&p.inverse()), Perm::identity(3));
        assert_eq!(p.cycle_type(), vec![3]);
        assert_eq!(all_perms(4).len(), 24);
        assert!(simultaneously_conjugate(
            std::slice::from_ref(&p),
            &[p.inverse()]
        ));
        assert!(!simultaneously_conjugate(&[p], &[Perm(vec![1, 0, 2])]));
    }
}
