//! Counting and surjectivity checks.

use serde::{Deserialize, Serialize};

use crate::curves::CurveSpec;
use crate::engine::Engine;
use crate::error::Result;
use crate::homology::{isometry_order_bruteforce, isometry_order_closure, GF2Matrix};
use crate::hs::{expected_count, involution_set};
use crate::polygon::twist_images;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountReport {
    pub genus: usize,
    pub members: usize,
    pub expected: usize,
}

impl CountReport {
    pub fn matches(&self) -> bool {
        self.members == self.expected
    }
}

pub fn count(g: usize) -> CountReport {
    CountReport {
        genus: g,
        members: involution_set(g).members.len(),
        expected: expected_count(g),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurjectivityReport {
    pub genus: usize,
    pub bruteforce: u64,
    pub closure: u64,
    pub generators: usize,
}

impl SurjectivityReport {
    pub fn matches(&self) -> bool {
        self.bruteforce == self.closure
    }
}

/// The twist curves `α_{i,i+1}` and `α_{1,j,k,l}`.
pub fn twist_curves(g: usize) -> Result<Vec<CurveSpec>> {
    let mut out = Vec::new();
    for i in 1..g {
        out.push(CurveSpec::alpha(g, &[i, i + 1])?);
    }
    for j in 2..=g {
        for k in j + 1..=g {
            for l in k + 1..=g {
                out.push(CurveSpec::alpha(g, &[1, j, k, l])?);
            }
        }
    }
    Ok(out)
}

/// Mod-2 action read off the twist's `π_1` images by exponent sums. Works
/// below genus 4, where no word-problem context is available.
fn twist_mod2(g: usize, c: &CurveSpec) -> Result<GF2Matrix> {
    let imgs = twist_images(g, &c.word(), true)?;
    let cols = imgs
        .iter()
        .map(|w| {
            w.exponent_sums(g)
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, e)| {
                    if e.rem_euclid(2) == 1 {
                        acc | (1 << i)
                    } else {
                        acc
                    }
                })
        })
        .collect();
    Ok(GF2Matrix::from_columns(g, cols))
}

/// Closure of the twist images against the bruteforce isometry count.
pub fn surjectivity_check(g: usize) -> Result<SurjectivityReport> {
    let curves = twist_curves(g)?;
    let gens: Vec<GF2Matrix> = if g >= 4 {
        let e = Engine::new(g)?;
        curves
            .iter()
            .map(|c| e.twist(c).map(|f| f.induced_mod2(e.ctx())))
            .collect::<Result<_>>()?
    } else {
        curves
            .iter()
            .map(|c| twist_mod2(g, c))
            .collect::<Result<_>>()?
    };
    let closure = isometry_order_closure(g, &gens)?;
    let brute = isometry_order_bruteforce(g)?;
    Ok(SurjectivityReport {
        genus: g,
        bruteforce: brute.order,
        closure: closure.order,
        generators: gens.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_genera() {
        let r3 = surjectivity_check(3).unwrap();
        assert_eq!((r3.bruteforce, r3.closure), (6, 6));
        let r4 = surjectivity_check(4).unwrap();
        assert_eq!((r4.bruteforce, r4.closure), (48, 48));
    }

    #[test]
    fn exponent_sum_route_agrees() {
        let e = Engine::new(4).unwrap();
        for c in twist_curves(4).unwrap() {
            assert_eq!(
                twist_mod2(4, &c).unwrap(),
                e.twist(&c).unwrap().induced_mod2(e.ctx())
            );
        }
    }
}
