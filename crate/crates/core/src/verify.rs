//! Two-tier verification of catalog statements, certificates, and replay.
//!
//! Tier A compares induced actions on homology, a necessary condition
//! only. Tier B decides equality in `Mod(N_g)` through `π_1`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::catalog::{MatrixKind, Orientation, Statement, StatementKind};
use crate::curves::CurveSpec;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::generators::GenWord;
use crate::group::Conjugacy;
use crate::homology::{GF2Matrix, IntMatrix};
use crate::hs::{minimality_matrix, rank_without};
use crate::invariants::{count, surjectivity_check};
use crate::mapping::{
    curve_equiv_oriented, curve_equiv_word, equal_mod_inner, replay_equality, CurveMatch, Equality,
    MappingClass,
};
use crate::word::GroupWord;

/// Default search budget for Tier B.
pub const DEFAULT_BUDGET: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tier {
    A,
    B,
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tier> {
        match s {
            "a" | "A" => Ok(Tier::A),
            "b" | "B" => Ok(Tier::B),
            _ => Err(Error::Parse(format!("tier must be a or b, got `{s}`"))),
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::A => "A",
            Tier::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Falsified,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Falsified => "falsified",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub id: String,
    pub genus: usize,
    pub kind: String,
    pub as_printed: bool,
    pub tier: Tier,
    pub verdict: Verdict,
    /// Conjugator words (Tier B) or the distinguishing invariant.
    pub witness: String,
    pub detail: String,
    pub elapsed_ms: u64,
    pub budget: usize,
}

struct Outcome {
    verdict: Verdict,
    witness: String,
    detail: String,
}

impl Outcome {
    fn new(verdict: Verdict, witness: impl Into<String>, detail: impl Into<String>) -> Outcome {
        Outcome {
            verdict,
            witness: witness.into(),
            detail: detail.into(),
        }
    }

    fn check(ok: bool, pass: &str, fail: &str) -> Outcome {
        if ok {
            Outcome::new(Verdict::Verified, "", pass)
        } else {
            Outcome::new(Verdict::Falsified, fail, fail)
        }
    }
}

pub fn verify(engine: &Engine, s: &Statement, tier: Tier, budget: usize) -> Certificate {
    let t0 = Instant::now();
    let out = match tier {
        Tier::A => tier_a(engine, s),
        Tier::B => tier_b(engine, s, budget),
    }
    .unwrap_or_else(|e| Outcome::new(Verdict::Undecided, "", format!("error: {e}")));
    Certificate {
        id: s.id.clone(),
        genus: s.genus,
        kind: s.kind.label().into(),
        as_printed: s.as_printed,
        tier,
        verdict: out.verdict,
        witness: out.witness,
        detail: out.detail,
        elapsed_ms: t0.elapsed().as_millis() as u64,
        budget,
    }
}

/// Induced actions of a word, left factor outermost.
pub fn action(engine: &Engine, gw: &GenWord) -> Result<(GF2Matrix, IntMatrix)> {
    gw.check(engine.genus())?;
    let ctx = engine.ctx();
    let mut int = IntMatrix::identity(engine.genus());
    for (name, e) in gw.factors() {
        let f = engine.generator(name)?;
        let m = if *e < 0 {
            f.invert().induced_int(ctx)
        } else {
            f.induced_int(ctx)
        };
        int = int.mul(&m);
    }
    Ok((int.mod2(), int))
}

fn curve_classes_ok(
    engine: &Engine,
    m: &IntMatrix,
    pairs: &[(CurveSpec, CurveSpec)],
    o: Orientation,
) -> Option<String> {
    let ctx = engine.ctx();
    for (src, tgt) in pairs {
        let img = m.apply(src.int_class(ctx).coords());
        let t = tgt.int_class(ctx);
        let ok = match o {
            Orientation::Reversed => img == t.neg(),
            Orientation::Unoriented => img == t || img == t.neg(),
        };
        if !ok {
            return Some(format!("homology class of image of {}", src.word()));
        }
    }
    None
}

fn tier_a(engine: &Engine, s: &Statement) -> Result<Outcome> {
    let g = engine.genus();
    Ok(match &s.kind {
        StatementKind::MapEquality { lhs, rhs } => {
            let (m2l, zl) = action(engine, lhs)?;
            let (m2r, zr) = action(engine, rhs)?;
            if m2l != m2r {
                Outcome::new(Verdict::Falsified, "mod-2 action differs", "")
            } else {
                Outcome::check(
                    zl == zr,
                    "mod-2 and integral actions agree",
                    "integral action differs",
                )
            }
        }
        StatementKind::CurveImage {
            gw,
            pairs,
            orientation,
        } => {
            let (_, z) = action(engine, gw)?;
            match curve_classes_ok(engine, &z, pairs, *orientation) {
                None => Outcome::new(Verdict::Verified, "", "image classes agree"),
                Some(why) => Outcome::new(Verdict::Falsified, why, ""),
            }
        }
        StatementKind::InvolutionClaim { gw } => {
            let (_, z) = action(engine, gw)?;
            Outcome::check(
                z.mul(&z) == IntMatrix::identity(g),
                "square acts trivially",
                "square acts nontrivially on homology",
            )
        }
        StatementKind::MembershipClaim { gw } => {
            let (m2, _) = action(engine, gw)?;
            Outcome::check(
                m2.is_identity(),
                "trivial on mod-2 homology",
                "nontrivial on mod-2 homology",
            )
        }
        _ => exact(g, &s.kind)?,
    })
}

/// Claims with no search component; identical at both tiers.
fn exact(g: usize, kind: &StatementKind) -> Result<Outcome> {
    Ok(match kind {
        StatementKind::CountClaim => {
            let c = count(g);
            let w = format!("{} = {}", c.members, c.expected);
            Outcome::new(
                if c.matches() {
                    Verdict::Verified
                } else {
                    Verdict::Falsified
                },
                w,
                "",
            )
        }
        StatementKind::MatrixClaim(MatrixKind::Minimality) => {
            let m = minimality_matrix(g);
            let drops_singular = (0..m.size).all(|k| rank_without(&m, k) < m.size);
            let w = format!("rank {}/{}", m.rank, m.size);
            let ok = m.invertible && drops_singular;
            Outcome::new(
                if ok {
                    Verdict::Verified
                } else {
                    Verdict::Falsified
                },
                w,
                format!("assuming {}", m.assumption),
            )
        }
        StatementKind::MatrixClaim(MatrixKind::Surjectivity) => {
            let r = surjectivity_check(g)?;
            let w = format!("closure {} vs bruteforce {}", r.closure, r.bruteforce);
            Outcome::new(
                if r.matches() {
                    Verdict::Verified
                } else {
                    Verdict::Falsified
                },
                w,
                "",
            )
        }
        _ => unreachable!("exact claims only"),
    })
}

/// Curves used to tell two unequal mapping classes apart.
pub fn probe_curves(g: usize) -> Vec<CurveSpec> {
    let mut out = Vec::new();
    for i in 1..=g {
        out.push(CurveSpec::alpha(g, &[i]).expect("in range"));
    }
    for i in 1..=g {
        for j in i + 1..=g {
            out.push(CurveSpec::alpha(g, &[i, j]).expect("in range"));
            if j > i + 1 {
                out.push(CurveSpec::alpha_bar(g, i, j).expect("in range"));
            }
        }
    }
    out
}

/// First probe curve whose images under `f` and `h` are not conjugate.
fn distinguishing_curve(
    engine: &Engine,
    f: &MappingClass,
    h: &MappingClass,
    budget: usize,
) -> Option<String> {
    let ctx = engine.ctx();
    probe_curves(engine.genus()).into_iter().find_map(|c| {
        match ctx.are_conjugate(
            &h.apply_to_curve(ctx, &c),
            &f.apply_to_curve(ctx, &c),
            budget,
        ) {
            Conjugacy::No(why) => Some(format!("curve {}: {why}", c.word())),
            _ => None,
        }
    })
}

fn equality_outcome(engine: &Engine, f: &MappingClass, h: &MappingClass, budget: usize) -> Outcome {
    match equal_mod_inner(engine.ctx(), f, h, budget) {
        Equality::Equal(w) => Outcome::new(Verdict::Verified, w.to_string(), "inner witness"),
        Equality::NotEqual(why) => {
            let w = distinguishing_curve(engine, f, h, budget).unwrap_or_else(|| why.clone());
            Outcome::new(Verdict::Falsified, w, why)
        }
        Equality::Undecided => Outcome::new(Verdict::Undecided, "", "search budget exhausted"),
    }
}

fn tier_b(engine: &Engine, s: &Statement, budget: usize) -> Result<Outcome> {
    let g = engine.genus();
    let ctx = engine.ctx();
    Ok(match &s.kind {
        StatementKind::MapEquality { lhs, rhs } => {
            equality_outcome(engine, &engine.realize(lhs)?, &engine.realize(rhs)?, budget)
        }
        StatementKind::InvolutionClaim { gw } => {
            let f = engine.realize(gw)?;
            equality_outcome(
                engine,
                &f.compose(ctx, &f),
                &MappingClass::identity(g),
                budget,
            )
        }
        StatementKind::CurveImage {
            gw,
            pairs,
            orientation,
        } => {
            let f = engine.realize(gw)?;
            let mut witnesses = Vec::new();
            let mut undecided = false;
            for (src, tgt) in pairs {
                let img = f.apply_to_curve(ctx, src);
                let verdict = match orientation {
                    Orientation::Unoriented => curve_equiv_word(ctx, &img, &tgt.word(), budget),
                    Orientation::Reversed => {
                        curve_equiv_oriented(ctx, &img, &tgt.word().inverse(), budget)
                    }
                };
                match verdict {
                    CurveMatch::Same {
                        conjugator,
                        inverted,
                    } => {
                        let inv = inverted || *orientation == Orientation::Reversed;
                        witnesses.push(format!("{}{conjugator}", if inv { "inv:" } else { "" }));
                    }
                    CurveMatch::Different(why) => {
                        return Ok(Outcome::new(
                            Verdict::Falsified,
                            format!("image of {} is {img}: {why}", src.word()),
                            "",
                        ))
                    }
                    CurveMatch::Undecided => undecided = true,
                }
            }
            if undecided {
                Outcome::new(Verdict::Undecided, "", "search budget exhausted")
            } else {
                Outcome::new(
                    Verdict::Verified,
                    witnesses.join(" | "),
                    "curve conjugators",
                )
            }
        }
        StatementKind::MembershipClaim { gw } => {
            let f = engine.realize(gw)?;
            Outcome::check(
                f.is_level2(ctx),
                "trivial on mod-2 homology",
                "nontrivial on mod-2 homology",
            )
        }
        _ => exact(g, &s.kind)?,
    })
}

fn parse_word(s: &str) -> Result<GroupWord> {
    s.parse()
}

/// Re-checks a verified Tier-B certificate from its witness, without search.
pub fn replay(engine: &Engine, s: &Statement, cert: &Certificate) -> Result<bool> {
    if cert.tier != Tier::B || cert.verdict != Verdict::Verified {
        return Err(Error::Unsupported(
            "only verified Tier-B certificates replay".into(),
        ));
    }
    let ctx = engine.ctx();
    let g = engine.genus();
    Ok(match &s.kind {
        StatementKind::MapEquality { lhs, rhs } => replay_equality(
            ctx,
            &engine.realize(lhs)?,
            &engine.realize(rhs)?,
            &parse_word(&cert.witness)?,
        ),
        StatementKind::InvolutionClaim { gw } => {
            let f = engine.realize(gw)?;
            replay_equality(
                ctx,
                &f.compose(ctx, &f),
                &MappingClass::identity(g),
                &parse_word(&cert.witness)?,
            )
        }
        StatementKind::CurveImage { gw, pairs, .. } => {
            let f = engine.realize(gw)?;
            let parts: Vec<&str> = cert.witness.split(" | ").collect();
            if parts.len() != pairs.len() {
                return Ok(false);
            }
            let mut ok = true;
            for ((src, tgt), part) in pairs.iter().zip(parts) {
                let (inv, word) = match part.strip_prefix("inv:") {
                    Some(rest) => (true, rest),
                    None => (false, part),
                };
                let t = if inv {
                    tgt.word().inverse()
                } else {
                    tgt.word()
                };
                let c = parse_word(word)?;
                ok &= ctx.equal(&c.conjugate(&t), &f.apply_to_curve(ctx, src));
            }
            ok
        }
        _ => tier_b(engine, s, 0)?.verdict == Verdict::Verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;

    #[test]
    fn spec_examples_g4() {
        let e = Engine::new(4).unwrap();
        let c = catalog(4);
        for id in ["L3.invol(i=1,j=4,+)", "Eq1.lt(i=1,j=3)", "L2.short"] {
            let s = c.iter().find(|s| s.id == id).unwrap();
            let cert = verify(&e, s, Tier::B, DEFAULT_BUDGET);
            assert_eq!(cert.verdict, Verdict::Verified, "{id}: {cert:?}");
            assert!(replay(&e, s, &cert).unwrap(), "{id}");
            assert_eq!(
                verify(&e, s, Tier::A, DEFAULT_BUDGET).verdict,
                Verdict::Verified
            );
        }
    }

    #[test]
    fn zero_budget_is_undecided() {
        let e = Engine::new(4).unwrap();
        let s = catalog(4).into_iter().find(|s| s.id == "L2.short").unwrap();
        assert_eq!(verify(&e, &s, Tier::B, 0).verdict, Verdict::Undecided);
    }
}
