//! One PASS/FAIL line per acceptance criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use level2::catalog::{Statement, StatementKind};
use level2::homology::isometry_order_bruteforce;
use level2::hs::{binomial, involution_set, minimality_matrix, rank_without};
use level2::invariants::{count, surjectivity_check};
use level2::oracle::triviality_oracle;
use level2::run::{validate_generators, verify_all, RunConfig, Variant};
use level2::verify::{verify, Tier, Verdict, DEFAULT_BUDGET};
use level2::{Engine, GroupContext, GroupWord, Letter, Triviality};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn reduced_words(g: usize, max_len: usize) -> Vec<GroupWord> {
    let letters: Vec<Letter> = (1..=g)
        .flat_map(|i| [Letter::pos(i), Letter::neg(i)])
        .collect();
    let mut out = vec![Vec::<Letter>::new()];
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last() != Some(&l.inverse()) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(GroupWord::from_letters).collect()
}

fn agree(ctx: &GroupContext, w: &GroupWord, tally: &mut [usize; 3]) -> Result<(), String> {
    let dehn = ctx.is_identity(w);
    match triviality_oracle(ctx, w, 4) {
        Triviality::Trivial if !dehn => Err(format!("{w}: oracle trivial, Dehn nontrivial")),
        Triviality::Nontrivial if dehn => Err(format!("{w}: oracle nontrivial, Dehn trivial")),
        Triviality::Trivial => {
            tally[0] += 1;
            Ok(())
        }
        Triviality::Nontrivial => {
            tally[1] += 1;
            Ok(())
        }
        Triviality::Unknown => {
            tally[2] += 1;
            Ok(())
        }
    }
}

fn c1_oracle() -> Outcome {
    let t0 = Instant::now();
    let ctx = GroupContext::new(4).map_err(|e| e.to_string())?;
    let mut tally = [0usize; 3];
    let exhaustive = reduced_words(4, 5);
    for w in &exhaustive {
        agree(&ctx, w, &mut tally)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let len = rng.gen_range(0..=8);
        let w =
            GroupWord::from_letters((0..len).map(|_| Letter::new(rng.gen_range(1..=4), rng.gen())));
        agree(&ctx, &w, &mut tally)?;
    }
    let dt = t0.elapsed();
    if dt >= Duration::from_secs(60) {
        return Err(format!("took {dt:.1?}"));
    }
    Ok(format!(
        "{} exhaustive + 10000 random words, oracle trivial {} / nontrivial {} / unknown {}, {dt:.1?}",
        exhaustive.len(),
        tally[0],
        tally[1],
        tally[2]
    ))
}

fn c2_gate() -> Outcome {
    for g in 4..=7 {
        let e = Engine::new(g).map_err(|e| e.to_string())?;
        let r = validate_generators(&e);
        if !r.passed {
            let bad: Vec<String> = r
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect();
            return Err(format!("g={g}: {}", bad.join("; ")));
        }
    }
    Ok("gate passes at g=4..7".into())
}

fn c3_tier_b() -> Outcome {
    let t0 = Instant::now();
    let mut config = RunConfig::new(vec![4, 5, 6, 7], Tier::B);
    config.variant = Variant::Corrected;
    config.jobs = jobs();
    let report = verify_all(&config).map_err(|e| e.to_string())?;
    let dt = t0.elapsed();
    let bad: Vec<String> = report
        .certificates
        .iter()
        .filter(|c| c.verdict != Verdict::Verified)
        .map(|c| format!("{}@{} {}", c.id, c.genus, c.verdict))
        .collect();
    if !bad.is_empty() {
        return Err(format!("{} not verified: {}", bad.len(), bad.join(", ")));
    }
    let slowest = report
        .certificates
        .iter()
        .max_by_key(|c| c.elapsed_ms)
        .unwrap();
    if slowest.elapsed_ms >= 60_000 {
        return Err(format!(
            "{}@{} took {} ms",
            slowest.id, slowest.genus, slowest.elapsed_ms
        ));
    }
    if dt >= Duration::from_secs(1800) {
        return Err(format!("run took {dt:.1?}"));
    }
    Ok(format!(
        "{} certificates verified, slowest {}@{} {} ms, total {dt:.1?}",
        report.certificates.len(),
        slowest.id,
        slowest.genus,
        slowest.elapsed_ms
    ))
}

fn c4_count() -> Outcome {
    let mut got = Vec::new();
    for g in 4..=9 {
        let want = binomial(g, 2) + binomial(g, 3);
        let c = count(g);
        if c.members != want {
            return Err(format!("g={g}: {} members, expected {want}", c.members));
        }
        got.push(c.members.to_string());
    }
    Ok(format!("counts {} for g=4..9", got.join(", ")))
}

fn c5_minimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut notes = Vec::new();
    for g in 4..=6 {
        let m = minimality_matrix(g);
        if !m.invertible {
            return Err(format!("g={g}: rank {} of {}", m.rank, m.size));
        }
        for idx in sample(&mut rng, m.size, 5) {
            let r = rank_without(&m, idx);
            if r >= m.size {
                return Err(format!("g={g}: dropping member {idx} keeps rank {r}"));
            }
        }
        notes.push(format!("{}x{}", m.size, m.size));
    }
    Ok(format!(
        "invertible ({}), 5 seeded drops singular per genus",
        notes.join(", ")
    ))
}

fn c6_isometry() -> Outcome {
    for (g, want) in [(3, 6u64), (4, 48)] {
        let got = isometry_order_bruteforce(g)
            .map_err(|e| e.to_string())?
            .order;
        if got != want {
            return Err(format!("g={g}: bruteforce {got}, expected {want}"));
        }
    }
    let t0 = Instant::now();
    isometry_order_bruteforce(5).map_err(|e| e.to_string())?;
    let brute5 = t0.elapsed();
    if brute5 >= Duration::from_secs(60) {
        return Err(format!("g=5 bruteforce took {brute5:.1?}"));
    }
    let mut orders = Vec::new();
    for g in 3..=5 {
        let r = surjectivity_check(g).map_err(|e| e.to_string())?;
        if !r.matches() {
            return Err(format!(
                "g={g}: closure {} vs bruteforce {}",
                r.closure, r.bruteforce
            ));
        }
        orders.push(r.closure.to_string());
    }
    Ok(format!(
        "orders {} for g=3..5, g=5 bruteforce {brute5:.1?}",
        orders.join(", ")
    ))
}

fn c7_involutions() -> Outcome {
    let mut n = 0;
    for g in 4..=7 {
        let e = Engine::new(g).map_err(|e| e.to_string())?;
        for (k, gw) in involution_set(g).members.into_iter().enumerate() {
            let s = Statement {
                id: format!("member({k})"),
                family: "member".into(),
                genus: g,
                kind: StatementKind::InvolutionClaim { gw: gw.clone() },
                as_printed: false,
            };
            let c = verify(&e, &s, Tier::B, DEFAULT_BUDGET);
            if c.verdict != Verdict::Verified {
                return Err(format!("g={g} {gw}: {} ({})", c.verdict, c.detail));
            }
            n += 1;
        }
    }
    Ok(format!("{n} members square to the identity at g=4..7"))
}

fn c8_mutants() -> Outcome {
    let mut config = RunConfig::new(vec![4, 5, 6, 7], Tier::B);
    config.mutants = true;
    config.jobs = jobs();
    let report = verify_all(&config).map_err(|e| e.to_string())?;
    let mut fam: BTreeMap<String, [usize; 3]> = BTreeMap::new();
    for c in &report.certificates {
        let family =
            c.id.split('(')
                .next()
                .unwrap_or(&c.id)
                .trim_end_matches(".printed")
                .to_string();
        let slot = match c.verdict {
            Verdict::Verified => 0,
            Verdict::Falsified => 1,
            Verdict::Undecided => 2,
        };
        fam.entry(family).or_default()[slot] += 1;
    }
    for (f, [v, fa, u]) in &fam {
        if *v > 0 {
            return Err(format!("{f}: {v} mutants verified"));
        }
        if *fa * 100 < 95 * (fa + u) {
            return Err(format!("{f}: only {fa} of {} falsified", fa + u));
        }
    }
    Ok(format!(
        "{} mutants over {} families, falsified {}, undecided {}, verified 0",
        report.certificates.len(),
        fam.len(),
        report.summary.falsified,
        report.summary.undecided
    ))
}

fn c9_tier_a() -> Outcome {
    let mut notes = Vec::new();
    for g in 8..=12 {
        let t0 = Instant::now();
        let mut config = RunConfig::new(vec![g], Tier::A);
        config.jobs = jobs();
        let report = verify_all(&config).map_err(|e| e.to_string())?;
        let dt = t0.elapsed();
        if report.exit_code() != 0 {
            return Err(format!(
                "g={g}: falsified {} undecided {} gate {}",
                report.summary.falsified, report.summary.undecided, report.summary.gate_passed
            ));
        }
        if dt >= Duration::from_secs(10) {
            return Err(format!("g={g} took {dt:.1?}"));
        }
        notes.push(format!("g={g} {}/{dt:.1?}", report.certificates.len()));
    }
    Ok(notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 word-problem oracle agreement", c1_oracle),
        ("2 generator validation gate", c2_gate),
        ("3 catalog at Tier B, g=4..7", c3_tier_b),
        ("4 involution counts", c4_count),
        ("5 minimality matrix", c5_minimality),
        ("6 isometry surjectivity", c6_isometry),
        ("7 involution suite", c7_involutions),
        ("8 negative controls", c8_mutants),
        ("9 Tier A scaling, g=8..12", c9_tier_a),
    ];
    let mut failed = 0;
    let mut gate_ok = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let out = if k != 1 && !gate_ok {
            Err("blocked by generator gate".into())
        } else {
            run()
        };
        if k == 1 {
            gate_ok = out.is_ok();
        }
        match out {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
