//! Whole runs: the generator gate, catalog selection, seeded mutants, and
//! the JSON report.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{catalog, Statement, StatementKind};
use crate::curves::CurveSpec;
use crate::engine::{Engine, CONSTRUCTION_BUDGET};
use crate::error::{Error, Result};
use crate::generators::{GenWord, GeneratorName};
use crate::homology::transvection;
use crate::mapping::{curve_equiv, equal_mod_inner, CurveMatch};
use crate::verify::{probe_curves, verify, Certificate, Tier, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Corrected,
    Printed,
    Both,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "corrected" => Ok(Variant::Corrected),
            "printed" => Ok(Variant::Printed),
            "both" => Ok(Variant::Both),
            _ => Err(Error::Parse(format!(
                "variant must be corrected, printed or both, got `{s}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub genus: Vec<usize>,
    pub tier: Tier,
    /// glob over statement ids or family names
    pub statement: Option<String>,
    pub variant: Variant,
    pub budget: usize,
    pub jobs: usize,
    pub seed: u64,
    /// verify seeded mutants of the selection instead of the statements
    pub mutants: bool,
}

impl RunConfig {
    pub fn new(genus: Vec<usize>, tier: Tier) -> RunConfig {
        RunConfig {
            genus,
            tier,
            statement: None,
            variant: Variant::Corrected,
            budget: crate::verify::DEFAULT_BUDGET,
            jobs: 1,
            seed: 0,
            mutants: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GateReport {
    pub genus: usize,
    pub passed: bool,
    pub checks: Vec<GateCheck>,
}

fn all_words(stmts: &[Statement]) -> Vec<&GenWord> {
    let mut out = Vec::new();
    for s in stmts {
        match &s.kind {
            StatementKind::MapEquality { lhs, rhs } => {
                out.push(lhs);
                out.push(rhs);
            }
            StatementKind::CurveImage { gw, .. }
            | StatementKind::InvolutionClaim { gw }
            | StatementKind::MembershipClaim { gw } => out.push(gw),
            _ => {}
        }
    }
    out
}

fn catalog_curves(
    engine: &Engine,
    stmts: &[Statement],
    names: &BTreeSet<GeneratorName>,
) -> Vec<CurveSpec> {
    let mut curves: Vec<CurveSpec> = probe_curves(engine.genus());
    for s in stmts {
        if let StatementKind::CurveImage { pairs, .. } = &s.kind {
            for (a, b) in pairs {
                curves.push(a.clone());
                curves.push(b.clone());
            }
        }
    }
    for n in names {
        if let Ok((_, c)) = engine.generator_curve(n) {
            curves.push(c);
        }
    }
    let mut seen = BTreeSet::new();
    curves.retain(|c| c.is_two_sided() && seen.insert(c.word()));
    curves
}

/// Sanity gate on the constructed generators; every other check depends on it.
pub fn validate_generators(engine: &Engine) -> GateReport {
    let g = engine.genus();
    let ctx = engine.ctx();
    let stmts = catalog(g);
    let names: BTreeSet<GeneratorName> = all_words(&stmts)
        .into_iter()
        .flat_map(|w| w.factors().iter().map(|(n, _)| n.clone()))
        .collect();
    let mut checks = Vec::new();
    let mut push = |name: &str, failures: Vec<String>, total: usize| {
        checks.push(GateCheck {
            name: name.into(),
            passed: failures.is_empty(),
            detail: if failures.is_empty() {
                format!("{total} ok")
            } else {
                failures.join("; ")
            },
        });
    };

    let mut bad = Vec::new();
    for n in &names {
        match engine.generator(n) {
            Ok(f) => {
                if let Err(e) = f.validate(ctx) {
                    bad.push(format!("{n}: {e}"));
                }
            }
            Err(e) => bad.push(format!("{n}: {e}")),
        }
    }
    push("relator", bad, names.len());

    let curves = catalog_curves(engine, &stmts, &names);
    let mut bad = Vec::new();
    for c in &curves {
        let ok = engine
            .twist(c)
            .and_then(|t| Ok(t.induced_mod2(ctx) == transvection(&c.mod2_class())?))
            .unwrap_or(false);
        if !ok {
            bad.push(c.word().to_string());
        }
    }
    push("transvection", bad, curves.len());

    let mut bad = Vec::new();
    let mut total = 0;
    for n in &names {
        let Ok(f) = engine.generator(n) else { continue };
        let level2 = match n {
            GeneratorName::T(_) | GeneratorName::Tbar4(..) => f.compose(ctx, &f).is_level2(ctx),
            _ => f.is_level2(ctx),
        };
        total += 1;
        if !level2 {
            bad.push(n.to_string());
        }
    }
    push("level2", bad, total);

    let t = |i: usize| GenWord::gen(GeneratorName::T(vec![i, i + 1]));
    let same = |a: &GenWord, b: &GenWord| -> std::result::Result<bool, Error> {
        let (f, h) = (engine.realize(a)?, engine.realize(b)?);
        Ok(equal_mod_inner(ctx, &f, &h, CONSTRUCTION_BUDGET).is_equal())
    };
    let mut bad = Vec::new();
    for i in 1..g - 1 {
        let lhs = t(i).then(&t(i + 1)).then(&t(i));
        let rhs = t(i + 1).then(&t(i)).then(&t(i + 1));
        if !same(&lhs, &rhs).unwrap_or(false) {
            bad.push(format!("T({},{}) braid", i, i + 1));
        }
    }
    push("braid", bad, g - 2);

    let mut bad = Vec::new();
    let mut total = 0;
    for i in 1..g {
        for j in i + 2..g {
            let y = GenWord::gen(GeneratorName::Y(i, vec![i + 1]));
            for (a, b) in [(t(i), t(j)), (y.clone(), t(j))] {
                total += 1;
                if !same(&a.then(&b), &b.then(&a)).unwrap_or(false) {
                    bad.push(format!("{a} vs {b}"));
                }
            }
        }
    }
    push("commutation", bad, total);

    // a tampered twist must be rejected
    let control = engine
        .twist(&CurveSpec::alpha(g, &[1, 2]).expect("in range"))
        .map(|f| f.mutated(ctx, 0, &ctx.letter(2)).validate(ctx).is_err())
        .unwrap_or(false);
    push(
        "negative-control",
        if control {
            vec![]
        } else {
            vec!["mutated twist accepted".into()]
        },
        1,
    );

    let passed = checks.iter().all(|c| c.passed);
    GateReport {
        genus: g,
        passed,
        checks,
    }
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

fn flip(gw: &GenWord, rng: &mut ChaCha8Rng) -> Option<GenWord> {
    let spots: Vec<usize> = (0..gw.len())
        .filter(|&k| gw.0[k].0 != GeneratorName::R)
        .collect();
    if spots.is_empty() {
        return None;
    }
    let k = spots[rng.gen_range(0..spots.len())];
    let mut out = gw.clone();
    out.0[k].1 = -out.0[k].1;
    Some(out)
}

fn substitute(gw: &GenWord, k: usize, name: GeneratorName) -> GenWord {
    let mut out = gw.clone();
    if out.is_empty() {
        out.0.push((name, 1));
    } else {
        out.0[k] = (name, 1);
    }
    out
}

/// A generator that moves `c`: a twist about `α_{a,a+1}` with odd mod-2
/// pairing against `c`, else the slide of its first crosscap.
fn disturbing(g: usize, c: &CurveSpec) -> GeneratorName {
    let cs = c.crosscaps();
    (1..g)
        .find(|&a| cs.contains(&a) != cs.contains(&(a + 1)))
        .map(|a| GeneratorName::T(vec![a, a + 1]))
        .unwrap_or_else(|| {
            let a = cs[0];
            GeneratorName::Y(a, vec![if a < g { a + 1 } else { a - 1 }])
        })
}

/// Twist about the first `α_{a,b}` that `w` moves. If `w` reverses twists
/// and fixes `c`, then `(T_c w)^2 = 1`, so a fixed curve would make the
/// mutant true.
fn moved_twist(engine: &Engine, w: &GenWord) -> GeneratorName {
    let g = engine.genus();
    let ctx = engine.ctx();
    let Ok(f) = engine.realize(w) else {
        return GeneratorName::T(vec![1, 2]);
    };
    (1..=g)
        .flat_map(|a| (a + 1..=g).map(move |b| (a, b)))
        .find(|&(a, b)| {
            let c = CurveSpec::alpha(g, &[a, b]).expect("in range");
            matches!(
                curve_equiv(ctx, &f.apply_to_curve(ctx, &c), &c, CONSTRUCTION_BUDGET),
                CurveMatch::Different(_)
            )
        })
        .map(|(a, b)| GeneratorName::T(vec![a, b]))
        .unwrap_or_else(|| GeneratorName::T(vec![1, 2]))
}

/// A seeded single-token mutation, or `None` for claims without words.
///
/// Equalities and curve images get an exponent flip on a non-`R` token;
/// involutions and memberships get a twist in place of a token.
pub fn mutant(engine: &Engine, s: &Statement, seed: u64) -> Option<Statement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv(&s.id));
    let kind = match &s.kind {
        StatementKind::MapEquality { lhs, rhs } => {
            let left_first = rng.gen_bool(0.5);
            let try_side = |left: bool, rng: &mut ChaCha8Rng| {
                if left {
                    flip(lhs, rng).map(|l| (l, rhs.clone()))
                } else {
                    flip(rhs, rng).map(|r| (lhs.clone(), r))
                }
            };
            let (l, r) = try_side(left_first, &mut rng)
                .or_else(|| try_side(!left_first, &mut rng))
                .unwrap_or_else(|| (substitute(lhs, 0, GeneratorName::Ybar(1, 2)), rhs.clone()));
            StatementKind::MapEquality { lhs: l, rhs: r }
        }
        StatementKind::CurveImage {
            gw,
            pairs,
            orientation,
        } => {
            let gw = flip(gw, &mut rng).unwrap_or_else(|| {
                let k = rng.gen_range(0..gw.len().max(1));
                substitute(gw, k, disturbing(s.genus, &pairs[0].0))
            });
            StatementKind::CurveImage {
                gw,
                pairs: pairs.clone(),
                orientation: *orientation,
            }
        }
        StatementKind::InvolutionClaim { gw } => {
            let gw = match gw.0.iter().position(|(n, _)| *n == GeneratorName::R) {
                Some(k) => {
                    let mut rest = gw.clone();
                    rest.0.remove(k);
                    substitute(gw, k, moved_twist(engine, &rest))
                }
                None => flip(gw, &mut rng)?,
            };
            StatementKind::InvolutionClaim { gw }
        }
        StatementKind::MembershipClaim { gw } => {
            let k = rng.gen_range(0..gw.len().max(1));
            StatementKind::MembershipClaim {
                gw: substitute(gw, k, GeneratorName::T(vec![1, 2])),
            }
        }
        StatementKind::CountClaim | StatementKind::MatrixClaim(_) => return None,
    };
    Some(Statement {
        id: format!("{}~mutant", s.id),
        family: s.family.clone(),
        genus: s.genus,
        kind,
        as_printed: false,
    })
}

pub fn matches_filter(s: &Statement, pattern: Option<&glob::Pattern>) -> bool {
    pattern.is_none_or(|p| p.matches(&s.id) || p.matches(&s.family))
}

/// Catalog at genus `g` restricted by an id/family glob and a variant.
pub fn filtered_catalog(
    g: usize,
    statement: Option<&str>,
    variant: Variant,
) -> Result<Vec<Statement>> {
    let pattern = statement
        .map(glob::Pattern::new)
        .transpose()
        .map_err(|e| Error::Parse(format!("statement filter: {e}")))?;
    Ok(catalog(g)
        .into_iter()
        .filter(|s| {
            let keep = match variant {
                Variant::Corrected => !s.as_printed,
                Variant::Printed => s.as_printed,
                Variant::Both => true,
            };
            keep && matches_filter(s, pattern.as_ref())
        })
        .collect())
}

/// Statements (or their mutants) chosen by a config.
pub fn select(config: &RunConfig, engine: &Engine) -> Result<Vec<Statement>> {
    let stmts = filtered_catalog(engine.genus(), config.statement.as_deref(), config.variant)?;
    Ok(if config.mutants {
        stmts
            .iter()
            .filter_map(|s| mutant(engine, s, config.seed))
            .collect()
    } else {
        stmts
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub verified: usize,
    pub falsified: usize,
    pub undecided: usize,
    pub gate_passed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Budgets {
    pub search: usize,
    pub construction: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunRecord {
    pub genus: Vec<usize>,
    pub tier: Tier,
    pub statement: Option<String>,
    pub variant: Variant,
    pub mutants: bool,
    pub budgets: Budgets,
    pub seed: u64,
    pub version: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub run_config: RunRecord,
    pub gates: Vec<GateReport>,
    pub certificates: Vec<Certificate>,
    pub summary: Summary,
}

impl VerificationReport {
    /// 0: all verified; 1: something falsified or the gate failed;
    /// 2: nothing falsified but something undecided.
    pub fn exit_code(&self) -> i32 {
        if !self.summary.gate_passed || self.summary.falsified > 0 {
            1
        } else if self.summary.undecided > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Gate, then the selected statements, for each genus in turn.
pub fn verify_all(config: &RunConfig) -> Result<VerificationReport> {
    if let Some(&g) = config.genus.iter().find(|&&g| g < 4) {
        return Err(Error::UnsupportedGenus(g));
    }
    if config.jobs == 0 {
        return Err(Error::Parse("jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let mut gates = Vec::new();
    let mut certificates = Vec::new();
    for &g in &config.genus {
        let engine = Engine::with_seed(g, config.seed)?;
        let stmts = select(config, &engine)?;
        let gate = pool.install(|| validate_generators(&engine));
        if gate.passed {
            let certs: Vec<Certificate> = pool.install(|| {
                stmts
                    .par_iter()
                    .map(|s| verify(&engine, s, config.tier, config.budget))
                    .collect()
            });
            certificates.extend(certs);
        }
        gates.push(gate);
    }
    certificates.sort_by(|a, b| a.id.cmp(&b.id).then(a.genus.cmp(&b.genus)));
    let count = |v: Verdict| certificates.iter().filter(|c| c.verdict == v).count();
    let summary = Summary {
        verified: count(Verdict::Verified),
        falsified: count(Verdict::Falsified),
        undecided: count(Verdict::Undecided),
        gate_passed: gates.iter().all(|g| g.passed),
    };
    Ok(VerificationReport {
        run_config: RunRecord {
            genus: config.genus.clone(),
            tier: config.tier,
            statement: config.statement.clone(),
            variant: config.variant,
            mutants: config.mutants,
            budgets: Budgets {
                search: config.budget,
                construction: CONSTRUCTION_BUDGET,
            },
            seed: config.seed,
            version: env!("CARGO_PKG_VERSION").into(),
        },
        gates,
        certificates,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_passes_g4() {
        let e = Engine::new(4).unwrap();
        let r = validate_generators(&e);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn mutants_are_deterministic() {
        let s = catalog(4).into_iter().find(|s| s.id == "L2.short").unwrap();
        let e = Engine::new(4).unwrap();
        let a = mutant(&e, &s, 7).unwrap();
        let b = mutant(&e, &s, 7).unwrap();
        assert_eq!(a.kind.describe(), b.kind.describe());
        assert_ne!(a.kind.describe(), s.kind.describe());
    }

    #[test]
    fn filter_by_family_and_glob() {
        let mut c = RunConfig::new(vec![4], Tier::A);
        c.statement = Some("L2.*".into());
        let e = Engine::new(4).unwrap();
        let s = select(&c, &e).unwrap();
        assert!(s.iter().all(|s| s.id.starts_with("L2.")));
        c.statement = Some("Eq1.lt".into());
        assert_eq!(select(&c, &e).unwrap().len(), 3);
    }
}
