use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use level2::homology::{isometry_order_bruteforce, BRUTEFORCE_MAX_GENUS};
use level2::invariants::{count, surjectivity_check};
use level2::run::{filtered_catalog, verify_all, RunConfig, Variant};
use level2::verify::{Tier, DEFAULT_BUDGET};
use level2::{Engine, GenWord};

const USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "level2",
    version,
    about = "Verify identities in the level 2 mapping class group of N_g"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify catalog statements and print a verdict table
    Verify(VerifyArgs),
    /// List statement ids
    Catalog {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        statement: Option<String>,
        #[arg(long, default_value = "both")]
        variant: Variant,
    },
    /// Print the induced action of a word on homology
    Homology {
        #[arg(long = "gen")]
        word: GenWord,
        #[arg(long)]
        genus: usize,
    },
    /// Order of the mod-2 isometry group, by bruteforce and by closure
    Isometry {
        #[arg(long)]
        genus: usize,
    },
    /// Involution count against C(g,2) + C(g,3)
    Count {
        #[arg(long)]
        genus: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// genus, repeatable or comma separated
    #[arg(long, required = true, value_delimiter = ',')]
    genus: Vec<usize>,
    #[arg(long, default_value = "b")]
    tier: Tier,
    /// glob over statement ids or family names
    #[arg(long)]
    statement: Option<String>,
    #[arg(long, default_value = "corrected")]
    variant: Variant,
    #[arg(long)]
    json: Option<String>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, env = "LEVEL2_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// verify seeded single-token mutants instead
    #[arg(long)]
    mutants: bool,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn need_genus(g: usize) -> Result<(), ExitCode> {
    if g < 4 {
        Err(usage(format!("genus must be at least 4, got {g}")))
    } else {
        Ok(())
    }
}

fn cmd_verify(a: VerifyArgs) -> ExitCode {
    let json = a.json.clone();
    for &g in &a.genus {
        if let Err(code) = need_genus(g) {
            return code;
        }
    }
    if a.jobs == 0 {
        return usage("--jobs must be at least 1");
    }
    let config = RunConfig {
        genus: a.genus,
        tier: a.tier,
        statement: a.statement,
        variant: a.variant,
        budget: a.budget,
        jobs: a.jobs,
        seed: a.seed,
        mutants: a.mutants,
    };
    let report = match verify_all(&config) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    for gate in &report.gates {
        for c in gate.checks.iter().filter(|c| !c.passed) {
            eprintln!("gate g={} {}: {}", gate.genus, c.name, c.detail);
        }
    }
    println!(
        "{:<48} {:>5} {:>4} {:<10} {:>8}  witness",
        "id", "genus", "tier", "verdict", "ms"
    );
    for c in &report.certificates {
        let mut w = c.witness.clone();
        if w.chars().count() > 60 {
            w = w.chars().take(57).collect::<String>() + "...";
        }
        println!(
            "{:<48} {:>5} {:>4} {:<10} {:>8}  {}",
            c.id, c.genus, c.tier, c.verdict, c.elapsed_ms, w
        );
    }
    let s = &report.summary;
    println!(
        "verified {}  falsified {}  undecided {}  gate {}",
        s.verified,
        s.falsified,
        s.undecided,
        if s.gate_passed { "passed" } else { "FAILED" }
    );
    if let Some(path) = &json {
        if let Err(e) = fs::write(path, report.to_json()) {
            eprintln!("cannot write {path}: {e}");
            return ExitCode::from(USAGE);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

fn cmd_catalog(genus: usize, statement: Option<String>, variant: Variant) -> ExitCode {
    if let Err(code) = need_genus(genus) {
        return code;
    }
    match filtered_catalog(genus, statement.as_deref(), variant) {
        Ok(stmts) => {
            for s in stmts {
                println!("{}\t{}\t{}", s.id, s.kind.label(), s.kind.describe());
            }
        }
        Err(e) => return usage(e),
    }
    ExitCode::SUCCESS
}

fn cmd_homology(word: GenWord, genus: usize) -> ExitCode {
    if let Err(code) = need_genus(genus) {
        return code;
    }
    let engine = match Engine::new(genus) {
        Ok(e) => e,
        Err(e) => return usage(e),
    };
    match level2::verify::action(&engine, &word) {
        Ok((m2, z)) => {
            println!("word: {word}");
            println!("mod 2:\n{m2}");
            println!("integral:\n{z}");
            println!("level 2: {}", m2.is_identity());
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn cmd_isometry(genus: usize) -> ExitCode {
    if !(3..=BRUTEFORCE_MAX_GENUS).contains(&genus) {
        return usage(format!(
            "isometry needs 3 <= genus <= {BRUTEFORCE_MAX_GENUS}"
        ));
    }
    let brute = match isometry_order_bruteforce(genus) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    match surjectivity_check(genus) {
        Ok(r) => {
            println!("genus {genus}: bruteforce order {}", brute.order);
            println!(
                "genus {genus}: closure order {} from {} twist images",
                r.closure, r.generators
            );
            if r.matches() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => usage(e),
    }
}

fn cmd_count(genus: usize) -> ExitCode {
    if let Err(code) = need_genus(genus) {
        return code;
    }
    let c = count(genus);
    println!("{} = {}", c.members, c.expected);
    if c.matches() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Catalog {
            genus,
            statement,
            variant,
        } => cmd_catalog(genus, statement, variant),
        Cmd::Homology { word, genus } => cmd_homology(word, genus),
        Cmd::Isometry { genus } => cmd_isometry(genus),
        Cmd::Count { genus } => cmd_count(genus),
    }
}
