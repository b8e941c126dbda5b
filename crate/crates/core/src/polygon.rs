//! Dehn twists computed in the polygon model of `N_g`.
//!
//! `N_g` is the `2g`-gon with boundary word `a_1 a_1 a_2 a_2 ··· a_g a_g`,
//! both copies of each edge oriented counterclockwise. A curve is a family
//! of disjoint chords; leaving through the first copy of edge `i` reads
//! `a_i`, leaving through the second copy reads `a_i^-1`. The generator
//! loop `a_m` runs from a point next to the polygon vertex to the first copy
//! of edge `m`, and back from the second copy.
//!
//! Crossing a glued edge reverses the plane orientation, so chord `k` of a
//! two-sided curve carries orientation sign `(-1)^k`. The twist turns onto
//! the curve at every crossing, forward when the crossing sign agrees with
//! the chord's orientation sign.

use crate::error::{Error, Result};
use crate::word::{GroupWord, Letter};

/// A point on the polygon boundary: edge `i`, copy 0 or 1, and a rank
/// along the edge. Boundary position is `2(i-1) + copy + t`.
#[derive(Clone, Copy, Debug)]
struct BoundaryPoint {
    pos: f64,
}

struct Chord {
    start: f64,
    end: f64,
}

fn interleaved(a: (f64, f64), b: (f64, f64)) -> bool {
    let (lo, hi) = if a.0 < a.1 { a } else { (a.1, a.0) };
    let inside = |x: f64| x > lo && x < hi;
    inside(b.0) != inside(b.1)
}

fn point(edge: usize, copy: usize, t: f64) -> BoundaryPoint {
    BoundaryPoint {
        pos: (2 * (edge - 1) + copy) as f64 + t,
    }
}

/// Realizes the cyclic word as non-crossing chords, trying every order of
/// crossing points along each edge.
fn realize(c: &[Letter]) -> Option<Vec<Chord>> {
    let n = c.len();
    let maxi = c.iter().map(|l| l.index()).max()?;
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); maxi + 1];
    for (k, l) in c.iter().enumerate() {
        occ[l.index()].push(k);
    }
    // current permutation of ranks for each edge
    let mut perms: Vec<Vec<usize>> = occ.iter().map(|o| (0..o.len()).collect()).collect();
    let total: usize = occ.iter().map(|o| factorial(o.len())).product();
    if total > 1 << 16 {
        return None;
    }
    for _ in 0..total {
        let mut t = vec![0.0; n];
        for (e, o) in occ.iter().enumerate() {
            let cnt = o.len() as f64;
            for (slot, &k) in o.iter().enumerate() {
                t[k] = (perms[e][slot] as f64 + 1.0) / (cnt + 1.0);
            }
            let _ = e;
        }
        let exit = |k: usize| {
            let l = c[k];
            let copy = if l.is_positive() { 0 } else { 1 };
            point(l.index(), copy, t[k])
        };
        let entry_after = |k: usize| {
            let l = c[k];
            let copy = if l.is_positive() { 1 } else { 0 };
            point(l.index(), copy, t[k])
        };
        let chords: Vec<Chord> = (0..n)
            .map(|k| Chord {
                start: entry_after((k + n - 1) % n).pos,
                end: exit(k).pos,
            })
            .collect();
        let simple = (0..n).all(|a| {
            (a + 1..n).all(|b| {
                !interleaved(
                    (chords[a].start, chords[a].end),
                    (chords[b].start, chords[b].end),
                )
            })
        });
        if simple {
            return Some(chords);
        }
        if !next_config(&mut perms) {
            break;
        }
    }
    None
}

fn factorial(k: usize) -> usize {
    (1..=k).product::<usize>().max(1)
}

fn next_config(perms: &mut [Vec<usize>]) -> bool {
    for p in perms.iter_mut() {
        if next_permutation(p) {
            return true;
        }
    }
    false
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Whether the cyclic word is carried by a simple closed curve in the
/// polygon model (up to the edge-order search limit).
pub fn is_simple(c: &GroupWord) -> bool {
    let (_, u) = c.cyclically_reduce();
    !u.is_empty() && realize(u.letters()).is_some()
}

/// Images of `a_1..a_g` under the twist about the curve `c` (a cyclically
/// reduced, two-sided simple word). `right` selects the handedness.
pub fn twist_images(g: usize, c: &GroupWord, right: bool) -> Result<Vec<GroupWord>> {
    let (_, cyc) = c.cyclically_reduce();
    let letters = cyc.letters();
    let n = letters.len();
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidCurve(format!(
            "twist needs a two-sided curve, got `{c}`"
        )));
    }
    if cyc.max_index() > g {
        return Err(Error::IndexOutOfRange {
            index: cyc.max_index(),
            genus: g,
        });
    }
    let chords = realize(letters)
        .ok_or_else(|| Error::InvalidCurve(format!("`{c}` has no simple chord realization")))?;
    let loop_from = |k: usize, forward: bool| -> GroupWord {
        let w = GroupWord::from_letters((0..n).map(|s| letters[(k + s) % n]));
        if forward {
            w
        } else {
            w.inverse()
        }
    };
    let mut images = Vec::with_capacity(g);
    for m in 1..=g {
        let cnt = letters.iter().filter(|l| l.index() == m).count() as f64;
        // the loop crosses edge m before all curve points on it
        let td = 0.5 / (cnt + 1.0);
        let out_pt = point(m, 0, td).pos;
        let back_pt = point(m, 1, td).pos;
        // crossings with the segment from the corner (position 0) to p,
        // ordered from the corner outward
        let crossings = |p: f64| -> Vec<(f64, usize, i32)> {
            let mut v: Vec<(f64, usize, i32)> = chords
                .iter()
                .enumerate()
                .filter(|(_, ch)| (ch.start < p) != (ch.end < p))
                .map(|(k, ch)| {
                    // start inside (0, p) means the chord crosses the
                    // outward path right-to-left: sign -1
                    let (near, sigma) = if ch.start < p {
                        (ch.start, -1)
                    } else {
                        (ch.end, 1)
                    };
                    (near, k, sigma)
                })
                .collect();
            v.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            v
        };
        let mut img: Vec<Letter> = Vec::new();
        let detour = |k: usize, sigma: i32, img: &mut Vec<Letter>| {
            let s = if k.is_multiple_of(2) { 1 } else { -1 };
            let mut forward = sigma * s == 1;
            if !right {
                forward = !forward;
            }
            img.extend(loop_from(k, forward).into_letters());
        };
        for (_, k, sigma) in crossings(out_pt) {
            detour(k, sigma, &mut img);
        }
        img.push(Letter::pos(m));
        let mut back = crossings(back_pt);
        back.reverse();
        for (_, k, sigma) in back {
            // inward path: crossing sign flips
            detour(k, -sigma, &mut img);
        }
        images.push(GroupWord::from_letters(img));
    }
    Ok(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn simplicity_of_standard_words() {
        assert!(is_simple(&w("a1 a2")));
        assert!(is_simple(&w("a1 a2 a2 a3")));
        assert!(!is_simple(&w("a1 A2 A2 a3")));
        assert!(is_simple(&w("a1 a2 a3 a4")));
        assert!(is_simple(&w("a1 a2 a2 a3 a4 a4 a5 a6")));
    }

    #[test]
    fn twist_fixes_relator_and_curve_adjacent() {
        let imgs = twist_images(4, &w("a1 a2"), true).unwrap();
        let inv: Vec<_> = imgs.iter().map(|x| x.inverse()).collect();
        let r = w("a1 a1 a2 a2 a3 a3 a4 a4");
        let rr = r.substitute(&imgs, &inv);
        let (_, cr) = rr.cyclically_reduce();
        assert_eq!(
            crate::group::min_rotation(&cr),
            crate::group::min_rotation(&r)
        );
        assert_eq!(imgs[2], w("a3"));
    }
}
