//! Every checkable claim, instantiated at a given genus.

use serde::{Deserialize, Serialize};

use crate::curves::CurveSpec;
use crate::generators::{GenWord, GeneratorName};
use crate::hs::{self, item1_sign, triples, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// image is the target up to conjugacy and inversion
    Unoriented,
    /// image is conjugate to the inverse of the target
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    Minimality,
    Surjectivity,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum StatementKind {
    MapEquality {
        lhs: GenWord,
        rhs: GenWord,
    },
    CurveImage {
        gw: GenWord,
        pairs: Vec<(CurveSpec, CurveSpec)>,
        orientation: Orientation,
    },
    InvolutionClaim {
        gw: GenWord,
    },
    MembershipClaim {
        gw: GenWord,
    },
    CountClaim,
    MatrixClaim(MatrixKind),
}

impl StatementKind {
    pub fn label(&self) -> &'static str {
        match self {
            StatementKind::MapEquality { .. } => "MapEquality",
            StatementKind::CurveImage { .. } => "CurveImage",
            StatementKind::InvolutionClaim { .. } => "InvolutionClaim",
            StatementKind::MembershipClaim { .. } => "MembershipClaim",
            StatementKind::CountClaim => "CountClaim",
            StatementKind::MatrixClaim(_) => "MatrixClaim",
        }
    }

    /// Human-readable claim.
    pub fn describe(&self) -> String {
        match self {
            StatementKind::MapEquality { lhs, rhs } => format!("{lhs} = {rhs}"),
            StatementKind::CurveImage {
                gw,
                pairs,
                orientation,
            } => {
                let ps: Vec<String> = pairs
                    .iter()
                    .map(|(s, t)| format!("{} -> {}", s.word(), t.word()))
                    .collect();
                let o = match orientation {
                    Orientation::Unoriented => "",
                    Orientation::Reversed => " (reversed)",
                };
                format!("{gw}: {}{o}", ps.join(", "))
            }
            StatementKind::InvolutionClaim { gw } => format!("({gw})^2 = 1"),
            StatementKind::MembershipClaim { gw } => format!("{gw} is level 2"),
            StatementKind::CountClaim => "member count = C(g,2) + C(g,3)".into(),
            StatementKind::MatrixClaim(MatrixKind::Minimality) => {
                "GF(2) change-of-basis matrix invertible".into()
            }
            StatementKind::MatrixClaim(MatrixKind::Surjectivity) => {
                "twist image closure = isometry group".into()
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Statement {
    pub id: String,
    pub family: String,
    pub genus: usize,
    pub kind: StatementKind,
    /// literal text of the source, as opposed to the corrected reading
    pub as_printed: bool,
}

fn yb(i: usize, j: usize) -> GenWord {
    GenWord::gen(GeneratorName::Ybar(i, j))
}

fn yb_pow(i: usize, j: usize, e: i8) -> GenWord {
    GenWord(vec![(GeneratorName::Ybar(i, j), e)])
}

fn y(i: usize, j: usize) -> GenWord {
    GenWord::gen(GeneratorName::Y(i, vec![j]))
}

fn t(idx: &[usize]) -> GenWord {
    GenWord::gen(GeneratorName::T(idx.to_vec()))
}

fn r() -> GenWord {
    GenWord::gen(GeneratorName::R)
}

fn ymix(j: usize, k: usize) -> GenWord {
    GenWord::gen(GeneratorName::Ymix(j, k))
}

fn tbar2(i: usize, j: usize, k: usize) -> GenWord {
    GenWord::power(GeneratorName::Tbar4(i, j, k), 2)
}

fn prod<I: IntoIterator<Item = GenWord>>(it: I) -> GenWord {
    it.into_iter().fold(GenWord::empty(), |a, b| a.then(&b))
}

fn alpha(g: usize, idx: &[usize]) -> CurveSpec {
    CurveSpec::alpha(g, idx).expect("catalog indices are in range")
}

fn abar(g: usize, i: usize, j: usize) -> CurveSpec {
    CurveSpec::alpha_bar(g, i, j).expect("catalog indices are in range")
}

fn abar4(g: usize, i: usize, j: usize, k: usize) -> CurveSpec {
    CurveSpec::alpha_bar4(g, i, j, k).expect("catalog indices are in range")
}

/// `Ȳ_{i+1,j}^-1 ··· Ȳ_{j-1,j}^-1`, the transport for `i < j`.
pub fn lt_transport(i: usize, j: usize) -> GenWord {
    prod((i + 1..j).map(|m| yb_pow(m, j, -1)))
}

/// `Ȳ_{j+1,j} ··· Ȳ_{i-1,j}`, the transport for `i > j`.
pub fn gt_transport(i: usize, j: usize) -> GenWord {
    prod((j + 1..i).map(|m| yb(m, j)))
}

/// `T_{α_{i+1,i+2}} ··· T_{α_{g-1,g}}`.
pub fn chain_twists(g: usize, i: usize) -> GenWord {
    prod((i + 1..g).map(|m| t(&[m, m + 1])))
}

/// `R` as the long product of adjacent slides conjugated by twist chains.
pub fn long_reflection(g: usize) -> GenWord {
    prod((1..g).rev().map(|i| {
        chain_twists(g, i)
            .inverse()
            .then(&y(i, i + 1))
            .then(&chain_twists(g, i))
    }))
}

/// `Ȳ_{g-1,g} ··· Ȳ_{1,g}`.
pub fn short_reflection(g: usize) -> GenWord {
    prod((1..g).rev().map(|m| yb(m, g)))
}

/// `Y_{α_k, ᾱ_{j,k}}` written with barred slides.
pub fn ymix_expansion(g: usize, j: usize, k: usize) -> GenWord {
    if k < g {
        yb(k, j)
    } else {
        prod((1..g).filter(|&m| m != j).map(|m| yb(m, j)))
            .inverse()
            .then(&r())
    }
}

struct Builder {
    g: usize,
    out: Vec<Statement>,
}

impl Builder {
    fn push(&mut self, family: &str, params: &str, as_printed: bool, kind: StatementKind) {
        let mut id = if params.is_empty() {
            family.to_string()
        } else {
            format!("{family}({params})")
        };
        if as_printed {
            id.push_str(".printed");
        }
        self.out.push(Statement {
            id,
            family: family.into(),
            genus: self.g,
            kind,
            as_printed,
        });
    }

    fn eq(&mut self, family: &str, params: &str, printed: bool, lhs: GenWord, rhs: GenWord) {
        self.push(
            family,
            params,
            printed,
            StatementKind::MapEquality { lhs, rhs },
        );
    }

    fn curves(
        &mut self,
        family: &str,
        params: &str,
        printed: bool,
        gw: GenWord,
        pairs: Vec<(CurveSpec, CurveSpec)>,
        o: Orientation,
    ) {
        self.push(
            family,
            params,
            printed,
            StatementKind::CurveImage {
                gw,
                pairs,
                orientation: o,
            },
        );
    }
}

/// All statements at genus `g` (`g >= 4`).
pub fn catalog(g: usize) -> Vec<Statement> {
    let mut b = Builder { g, out: Vec::new() };
    lem_y_family(&mut b);
    eq1_family(&mut b);
    t1_family(&mut b);
    p1_family(&mut b);
    l2_family(&mut b);
    l3_l4_families(&mut b);
    t2_family(&mut b);
    b.out.sort_by(|x, y| x.id.cmp(&y.id));
    b.out
}

fn lem_y_family(b: &mut Builder) {
    let g = b.g;
    for i in 1..g {
        b.eq(
            "LemY.adj",
            &format!("i={i}"),
            false,
            yb(i, i + 1),
            y(i, i + 1),
        );
        b.eq(
            "LemY.adj.rev",
            &format!("i={i}"),
            false,
            yb(i + 1, i),
            y(i + 1, i),
        );
    }
    for i in 1..=g - 2 {
        let p = format!("i={i}");
        b.curves(
            "LemY.fig1",
            &p,
            false,
            yb_pow(i + 1, i + 2, -1),
            vec![
                (alpha(g, &[i]), alpha(g, &[i])),
                (alpha(g, &[i, i + 2]), abar(g, i, i + 2)),
            ],
            Orientation::Unoriented,
        );
        b.eq(
            "LemY.conj.lt2",
            &p,
            false,
            yb(i, i + 2),
            yb_pow(i + 1, i + 2, -1)
                .then(&y(i, i + 2))
                .then(&yb(i + 1, i + 2)),
        );
        b.curves(
            "LemY.fig3",
            &p,
            false,
            yb(i + 1, i),
            vec![
                (alpha(g, &[i + 2]), alpha(g, &[i + 2])),
                (alpha(g, &[i, i + 2]), abar(g, i, i + 2)),
            ],
            Orientation::Unoriented,
        );
        b.eq(
            "LemY.conj.gt2",
            &p,
            false,
            yb(i + 2, i),
            yb(i + 1, i).conjugate(&y(i + 2, i)),
        );
    }
    for i in 1..=g - 3 {
        let p = format!("i={i}");
        let q = yb_pow(i + 1, i + 3, -1).then(&yb_pow(i + 2, i + 3, -1));
        b.curves(
            "LemY.fig2",
            &p,
            false,
            q.clone(),
            vec![
                (alpha(g, &[i]), alpha(g, &[i])),
                (alpha(g, &[i, i + 3]), abar(g, i, i + 3)),
            ],
            Orientation::Unoriented,
        );
        b.eq(
            "LemY.conj.lt3",
            &p,
            true,
            yb(i, i + 3),
            q.conjugate(&y(i, i + 2)),
        );
        b.eq(
            "LemY.conj.lt3",
            &p,
            false,
            yb(i, i + 3),
            q.conjugate(&y(i, i + 3)),
        );
    }
    for i in 1..=g {
        for j in 1..=g {
            let p = format!("i={i},j={j}");
            if j >= i + 2 {
                b.eq(
                    "LemY.conj.lt",
                    &p,
                    false,
                    yb(i, j),
                    lt_transport(i, j).conjugate(&y(i, j)),
                );
            }
            if i >= j + 2 {
                // literally (Ȳ_{i,j-1} ··· Ȳ_{i,i+1}): empty when i > j
                b.eq("LemY.conj.gt", &p, true, yb(i, j), y(i, j));
                b.eq(
                    "LemY.conj.gt",
                    &p,
                    false,
                    yb(i, j),
                    gt_transport(i, j).conjugate(&y(i, j)),
                );
            }
        }
    }
}

fn eq1_family(b: &mut Builder) {
    let g = b.g;
    for i in 1..g {
        for j in 1..g {
            let p = format!("i={i},j={j}");
            if i < j {
                let q = lt_transport(i, j);
                b.eq(
                    "Eq1.lt",
                    &p,
                    false,
                    y(i, j),
                    q.inverse().then(&yb(i, j)).then(&q),
                );
            } else if i > j {
                let q = gt_transport(i, j);
                b.eq(
                    "Eq1.gt",
                    &p,
                    false,
                    y(i, j),
                    q.inverse().then(&yb(i, j)).then(&q),
                );
                if i - j >= 2 {
                    b.eq("Eq1.gt", &p, true, y(i, j), yb(i, j));
                }
            }
        }
    }
}

fn t1_family(b: &mut Builder) {
    let g = b.g;
    for (i, j, k) in triples(g) {
        let p = format!("i={i},j={j},k={k}");
        let q = lt_transport(i, j);
        b.curves(
            "T1.transport",
            &p,
            false,
            q.clone(),
            vec![(alpha(g, &[1, i, j, k]), abar4(g, i, j, k))],
            Orientation::Unoriented,
        );
        b.eq(
            "T1.decomp",
            &p,
            false,
            tbar2(i, j, k),
            q.conjugate(&t(&[1, i, j, k]).pow(2)),
        );
    }
}

fn p1_family(b: &mut Builder) {
    let g = b.g;
    for (i, j, k) in triples(g) {
        let p = format!("i={i},j={j},k={k}");
        let body = yb(1, i).then(&ymix(j, k)).then(&tbar2(i, j, k));
        b.eq(
            "P1.decomp",
            &p,
            false,
            body.clone(),
            r().then(&r().then(&body)),
        );
    }
    for j in 3..g {
        for k in j + 1..=g {
            b.eq(
                "P1.ymix",
                &format!("j={j},k={k}"),
                false,
                ymix(j, k),
                ymix_expansion(g, j, k),
            );
        }
    }
}

fn l2_family(b: &mut Builder) {
    let g = b.g;
    b.eq("L2.short", "", false, r(), short_reflection(g));
    b.eq(
        "L2.long-vs-short",
        "",
        false,
        long_reflection(g),
        short_reflection(g),
    );
    for i in 1..g {
        let p = format!("i={i}");
        let c = chain_twists(g, i);
        let src = vec![(alpha(g, &[i]), alpha(g, &[i]))];
        let mut corrected = src.clone();
        corrected.push((alpha(g, &[i, i + 1]), abar(g, i, g)));
        b.curves(
            "L2.transport",
            &p,
            false,
            c.inverse(),
            corrected,
            Orientation::Unoriented,
        );
        if i > 1 {
            let mut printed = src;
            printed.push((alpha(g, &[i, i + 1]), abar(g, 1, g)));
            b.curves(
                "L2.transport",
                &p,
                true,
                c.inverse(),
                printed,
                Orientation::Unoriented,
            );
        }
        b.eq(
            "L2.conj",
            &p,
            false,
            yb(i, g),
            c.inverse().then(&y(i, i + 1)).then(&c),
        );
    }
    for j in 1..=g {
        let star = prod((1..=g).filter(|&m| m != j).map(|m| yb(m, j)));
        b.eq("L2.star", &format!("j={j}"), false, r(), star);
    }
}

fn l3_l4_families(b: &mut Builder) {
    let g = b.g;
    b.push(
        "R.invol",
        "",
        false,
        StatementKind::InvolutionClaim { gw: r() },
    );
    b.push(
        "R.level2",
        "",
        false,
        StatementKind::MembershipClaim { gw: r() },
    );
    for i in 1..g {
        for j in 1..=g {
            if i == j {
                continue;
            }
            for (s, e) in [("+", 1i8), ("-", -1)] {
                let gw = r().then(&yb_pow(i, j, e));
                b.push(
                    "L3.invol",
                    &format!("i={i},j={j},{s}"),
                    false,
                    StatementKind::InvolutionClaim { gw },
                );
            }
            let (lo, hi) = (i.min(j), i.max(j));
            b.curves(
                "L3.curves",
                &format!("i={i},j={j}"),
                false,
                r(),
                vec![
                    (alpha(g, &[i]), alpha(g, &[i])),
                    (abar(g, lo, hi), abar(g, lo, hi)),
                ],
                Orientation::Reversed,
            );
        }
    }
    for (i, j, k) in triples(g) {
        let p = format!("i={i},j={j},k={k}");
        let head = r().then(&yb(1, i)).then(&ymix(j, k).inverse());
        b.curves(
            "L4.curves",
            &p,
            false,
            r(),
            vec![
                (abar(g, 1, i), abar(g, 1, i)),
                (abar(g, j, k), abar(g, j, k)),
                (alpha(g, &[i]), alpha(g, &[i])),
                (alpha(g, &[k]), alpha(g, &[k])),
            ],
            Orientation::Reversed,
        );
        b.eq(
            "L4.conj",
            &p,
            false,
            head.then(&r().inverse()),
            yb_pow(1, i, -1).then(&ymix(j, k)),
        );
        b.eq(
            "L4.comm",
            &p,
            false,
            yb_pow(1, i, -1).then(&ymix(j, k)),
            ymix(j, k).then(&yb_pow(1, i, -1)),
        );
        b.push(
            "L4.head",
            &p,
            false,
            StatementKind::InvolutionClaim { gw: head.clone() },
        );
        b.curves(
            "L4.rev",
            &p,
            false,
            head,
            vec![(abar4(g, i, j, k), abar4(g, i, j, k))],
            Orientation::Reversed,
        );
        b.push(
            "L4.invol",
            &p,
            false,
            StatementKind::InvolutionClaim {
                gw: hs::item3_member(i, j, k, -1),
            },
        );
        b.push(
            "L4.invol",
            &p,
            true,
            StatementKind::InvolutionClaim {
                gw: hs::item3_member(i, j, k, 1),
            },
        );
    }
}

/// Parameter tag of a member of the involution set.
fn member_tag(g: usize, m: &GenWord) -> String {
    let f = m.factors();
    match (f.len(), f.get(1).map(|x| &x.0)) {
        (1, _) => "R".into(),
        (2, Some(GeneratorName::Ybar(i, j))) if *j == g => format!("R*Ybar({i},{g})^{}", f[1].1),
        (2, Some(GeneratorName::Ybar(i, j))) => format!("R*Ybar({i},{j})"),
        (_, _) => match &f[3].0 {
            GeneratorName::Tbar4(i, j, k) => format!("i={i},j={j},k={k}"),
            _ => unreachable!("third item shape"),
        },
    }
}

fn t2_family(b: &mut Builder) {
    let g = b.g;
    let set = hs::involution_set(g);
    let fam = match set.parity {
        Parity::Odd => "T2.odd",
        Parity::Even => "T2.even",
    };
    for m in &set.members {
        let tag = member_tag(g, m);
        b.push(
            &format!("{fam}.invol"),
            &tag,
            false,
            StatementKind::InvolutionClaim { gw: m.clone() },
        );
        b.push(
            &format!("{fam}.level2"),
            &tag,
            false,
            StatementKind::MembershipClaim { gw: m.clone() },
        );
    }
    let member = |m: usize| r().then(&yb_pow(m, g, item1_sign(m)));
    match set.parity {
        Parity::Odd => {
            b.eq(
                "T2.regen.odd",
                "",
                false,
                r(),
                prod((1..g).rev().map(member)),
            );
        }
        Parity::Even => {
            // the printed last member carries no inverse
            let last = r().then(&yb(g - 2, g));
            let tag = format!("R*Ybar({},{g})^1", g - 2);
            b.push(
                "T2.even.invol",
                &tag,
                true,
                StatementKind::InvolutionClaim { gw: last.clone() },
            );
            b.push(
                "T2.even.level2",
                &tag,
                true,
                StatementKind::MembershipClaim { gw: last },
            );
            // R (R Ȳ_{g-2,g} R Ȳ_{g-3,g}^-1 ···) with the leading sign pattern
            let head = |m: usize| r().then(&yb_pow(m, g, if m.is_multiple_of(2) { 1 } else { -1 }));
            let partial = prod((1..g - 1).rev().map(|m| yb(m, g)));
            b.eq(
                "T2.regen.even",
                "",
                true,
                r().then(&prod((1..g - 1).rev().map(head))),
                partial.clone(),
            );
            // Ȳ_{m,g} = (R^-1 · member)^{sign}
            let via_members = prod(
                (1..g - 1)
                    .rev()
                    .map(|m| r().inverse().then(&member(m)).pow(item1_sign(m) as i64)),
            );
            b.eq("T2.regen.even", "", false, partial, via_members.clone());
            b.eq(
                "T2.regen.even",
                "m=g-1",
                false,
                yb(g - 1, g),
                r().then(&via_members.inverse()),
            );
        }
    }
    for (gen, word) in hs::regenerate_hs(g) {
        b.eq(
            "T2.regen",
            &gen.to_string().replace(' ', ""),
            false,
            gen,
            word.expand(&set.members),
        );
    }
    b.push("Count", "", false, StatementKind::CountClaim);
    b.push(
        "Minimality",
        "",
        false,
        StatementKind::MatrixClaim(MatrixKind::Minimality),
    );
    // expansions grow like 3^g
    if g <= 7 {
        for (m, w) in set.members.iter().zip(hs::members_in_hs(g)) {
            b.eq(
                "Minimality.expand",
                &member_tag(g, m),
                false,
                m.clone(),
                hs::hs_word_to_genword(g, &w),
            );
        }
    }
    if g <= 5 {
        b.push(
            "Surjectivity",
            "",
            false,
            StatementKind::MatrixClaim(MatrixKind::Surjectivity),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(c: &[Statement], family: &str, printed: bool) -> usize {
        c.iter()
            .filter(|s| s.family == family && s.as_printed == printed)
            .count()
    }

    #[test]
    fn cardinalities() {
        for g in 4..=8 {
            let c = catalog(g);
            assert_eq!(
                count(&c, "L4.invol", false),
                hs::binomial(g - 1, 3),
                "g={g}"
            );
            let eq1 = count(&c, "Eq1.lt", false) + count(&c, "Eq1.gt", false);
            assert_eq!(eq1, (g - 1) * (g - 2), "g={g}");
            let fam = if g % 2 == 1 {
                "T2.odd.invol"
            } else {
                "T2.even.invol"
            };
            assert_eq!(count(&c, fam, false), hs::expected_count(g));
            let other = if g % 2 == 1 {
                "T2.even.invol"
            } else {
                "T2.odd.invol"
            };
            assert_eq!(count(&c, other, false) + count(&c, other, true), 0);
        }
    }

    #[test]
    fn ids_unique_and_sorted() {
        let c = catalog(6);
        for w in c.windows(2) {
            assert!(w[0].id < w[1].id, "{} {}", w[0].id, w[1].id);
        }
    }

    #[test]
    fn spot_instances() {
        let c = catalog(4);
        let s = c.iter().find(|s| s.id == "L2.short").unwrap();
        assert_eq!(s.kind.describe(), "R = Ybar(3,4) * Ybar(2,4) * Ybar(1,4)");
        assert!(c.iter().any(|s| s.id == "L3.invol(i=1,j=4,+)"));
        assert!(c.iter().any(|s| s.id == "Eq1.lt(i=1,j=3)"));
        assert_eq!(count(&c, "L4.invol", false), 1);
    }
}
