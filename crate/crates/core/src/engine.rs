//! Construction of the named mapping classes at a fixed genus.
//!
//! Twists come from the polygon model. The crosscap slide of crosscap `i`
//! along `α_{i,i+1}` is written down explicitly from the crosscap
//! transposition `u_i` and the twist `T_{i,i+1}`; every other slide is a
//! transport `f Y f^-1` of one of these, where `f` is a short chain of
//! adjacent twists or crosscap transpositions found by matching the based
//! pair `(μ, α)` in `π_1`.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::curves::CurveSpec;
use crate::error::{Error, Result};
use crate::generators::{GenWord, GeneratorName};
use crate::group::{Conjugacy, GroupContext};
use crate::homology::{GF2Matrix, HomologyZ2};
use crate::mapping::MappingClass;
use crate::polygon;
use crate::word::{GroupWord, Letter};

/// Step budget for the internal pair-matching searches.
pub const CONSTRUCTION_BUDGET: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Elementary {
    /// Crosscap transposition of `i` and `i+1`.
    U(usize),
    /// Twist about `α_{i,i+1}`.
    T(usize),
}

type Chain = Vec<(Elementary, bool)>;

pub struct Engine {
    ctx: GroupContext,
    u: Vec<MappingClass>,
    t: Vec<MappingClass>,
    /// `Y_{i,i+1}` at index `i-1`.
    slide_up: Vec<MappingClass>,
    /// `Y_{i+1,i}` at index `i-1`.
    slide_down: Vec<MappingClass>,
    chains: Vec<Chain>,
    cache: Mutex<HashMap<GeneratorName, Arc<MappingClass>>>,
    slides: Mutex<HashMap<(usize, GroupWord), Arc<MappingClass>>>,
    reflection: Mutex<Option<Arc<MappingClass>>>,
}

fn w(ints: &[i32]) -> GroupWord {
    GroupWord::from_ints(ints)
}

impl Engine {
    pub fn new(g: usize) -> Result<Engine> {
        Engine::from_context(GroupContext::new(g)?)
    }

    pub fn with_seed(g: usize, seed: u64) -> Result<Engine> {
        Engine::from_context(GroupContext::with_seed(g, seed)?)
    }

    pub fn from_context(ctx: GroupContext) -> Result<Engine> {
        let g = ctx.genus();
        let mut u = Vec::new();
        let mut t = Vec::new();
        let mut slide_up = Vec::new();
        let mut slide_down = Vec::new();
        for i in 1..g {
            let (a, b) = (i as i32, i as i32 + 1);
            let mut img = MappingClass::identity(g).images().to_vec();
            let mut inv = img.clone();
            img[i - 1] = w(&[a, a, b, -a, -a]);
            img[i] = w(&[a]);
            inv[i - 1] = w(&[b]);
            inv[i] = w(&[-b, -b, a, b, b]);
            let ui = MappingClass::from_images(&ctx, img, inv)?;
            let ti = twist_of_word(&ctx, &w(&[a, b]))?;
            // the slide direction that moves α_{i-1,i+1} onto ᾱ_{i-1,i+1} under Y^-1
            let y = ui.compose(&ctx, &ti).invert();
            y.validate(&ctx)?;
            let yd = ti.conjugate(&ctx, &y);
            u.push(ui);
            t.push(ti);
            slide_up.push(y);
            slide_down.push(yd);
        }
        let chains = candidate_chains(g);
        Ok(Engine {
            ctx,
            u,
            t,
            slide_up,
            slide_down,
            chains,
            cache: Mutex::new(HashMap::new()),
            slides: Mutex::new(HashMap::new()),
            reflection: Mutex::new(None),
        })
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn genus(&self) -> usize {
        self.ctx.genus()
    }

    /// Crosscap transposition `u_i`, exchanging crosscaps `i` and `i+1`.
    pub fn transposition(&self, i: usize) -> Result<&MappingClass> {
        self.check_adjacent(i)?;
        Ok(&self.u[i - 1])
    }

    /// `Y_{i,i+1}`, written explicitly as `(u_i ∘ T_{i,i+1})^-1`.
    pub fn adjacent_slide(&self, i: usize) -> Result<&MappingClass> {
        self.check_adjacent(i)?;
        Ok(&self.slide_up[i - 1])
    }

    fn check_adjacent(&self, i: usize) -> Result<()> {
        if i < 1 || i >= self.genus() {
            return Err(Error::IndexOutOfRange {
                index: i,
                genus: self.genus(),
            });
        }
        Ok(())
    }

    /// Right-handed Dehn twist about a two-sided curve.
    pub fn twist(&self, c: &CurveSpec) -> Result<MappingClass> {
        if c.genus() != self.genus() {
            return Err(Error::InvalidCurve(format!(
                "{c} lives in genus {}",
                c.genus()
            )));
        }
        if !c.is_two_sided() {
            return Err(Error::InvalidCurve(format!("{c} is one-sided")));
        }
        twist_of_word(&self.ctx, &c.word())
    }

    /// Crosscap slide `Y_{μ,α}` of crosscap `mu` along the oriented curve `c`.
    pub fn crosscap_slide(&self, mu: usize, c: &CurveSpec) -> Result<Arc<MappingClass>> {
        let g = self.genus();
        if c.genus() != g || !c.is_two_sided() {
            return Err(Error::InvalidCurve(format!(
                "{c} is not a two-sided curve in genus {g}"
            )));
        }
        if c.crosscaps().iter().filter(|&&m| m == mu).count() != 1 {
            return Err(Error::InvalidCurve(format!(
                "{c} does not pass once through crosscap {mu}"
            )));
        }
        let word = c.word();
        let start = word
            .letters()
            .iter()
            .position(|l| *l == Letter::pos(mu))
            .ok_or_else(|| Error::InvalidCurve(format!("{c} misses a{mu}")))?;
        let alpha = word.rotate(start);
        let key = (mu, alpha.clone());
        if let Some(y) = self.slides.lock().unwrap().get(&key) {
            return Ok(y.clone());
        }
        let y = Arc::new(self.transport_slide(mu, &alpha)?);
        self.slides.lock().unwrap().insert(key, y.clone());
        Ok(y)
    }

    fn elementary(&self, e: Elementary, inverse: bool) -> MappingClass {
        let f = match e {
            Elementary::U(i) => &self.u[i - 1],
            Elementary::T(i) => &self.t[i - 1],
        };
        if inverse {
            f.invert()
        } else {
            f.clone()
        }
    }

    fn chain_class(&self, chain: &Chain) -> MappingClass {
        chain
            .iter()
            .fold(MappingClass::identity(self.genus()), |acc, &(e, inv)| {
                acc.compose(&self.ctx, &self.elementary(e, inv))
            })
    }

    fn chain_apply(&self, chain: &Chain, x: &GroupWord) -> GroupWord {
        chain.iter().rev().fold(x.clone(), |acc, &(e, inv)| {
            let f = match e {
                Elementary::U(i) => &self.u[i - 1],
                Elementary::T(i) => &self.t[i - 1],
            };
            if inv {
                f.apply_inverse_word(&self.ctx, &acc)
            } else {
                f.apply_word(&self.ctx, &acc)
            }
        })
    }

    fn chain_mod2(
        &self,
        chain: &Chain,
        cache: &HashMap<(Elementary, bool), GF2Matrix>,
    ) -> GF2Matrix {
        chain
            .iter()
            .fold(GF2Matrix::identity(self.genus()), |acc, k| {
                acc.mul(&cache[k])
            })
    }

    fn transport_slide(&self, mu: usize, alpha: &GroupWord) -> Result<MappingClass> {
        let g = self.genus();
        let ctx = &self.ctx;
        let mut mats = HashMap::new();
        for i in 1..g {
            for e in [Elementary::U(i), Elementary::T(i)] {
                for inv in [false, true] {
                    mats.insert((e, inv), self.elementary(e, inv).induced_mod2(ctx));
                }
            }
        }
        let target_mu = HomologyZ2::basis(g, mu);
        let target_alpha = ctx.abelianize(alpha).mod2();
        // (crosscap, based curve word, slide)
        let mut bases: Vec<(usize, GroupWord, &MappingClass)> = Vec::new();
        for i in 1..g {
            let (a, b) = (i as i32, i as i32 + 1);
            bases.push((i, w(&[a, b]), &self.slide_up[i - 1]));
            bases.push((i + 1, w(&[b, a]), &self.slide_down[i - 1]));
        }
        bases.sort_by_key(|(m, _, _)| usize::from(*m != mu));
        for chain in &self.chains {
            let m = self.chain_mod2(chain, &mats);
            for (m0, alpha0, base) in &bases {
                if m.apply(&HomologyZ2::basis(g, *m0)) != target_mu {
                    continue;
                }
                if m.apply(&ctx.abelianize(alpha0).mod2()) != target_alpha {
                    continue;
                }
                let x = self.chain_apply(chain, &ctx.letter(*m0));
                let y = self.chain_apply(chain, alpha0);
                if let Some(orient) = self.pair_match(&x, &y, mu, alpha) {
                    let f = self.chain_class(chain);
                    let core = if orient {
                        (*base).clone()
                    } else {
                        base.invert()
                    };
                    return Ok(f.conjugate(ctx, &core));
                }
            }
        }
        Err(Error::Construction(format!(
            "no transport found for the slide of crosscap {mu} along {alpha}"
        )))
    }

    /// Is `(x, y)` the based pair `(a_mu^{±1}, alpha^{±1})` up to a common
    /// conjugator? Returns whether `alpha` keeps its orientation.
    fn pair_match(
        &self,
        x: &GroupWord,
        y: &GroupWord,
        mu: usize,
        alpha: &GroupWord,
    ) -> Option<bool> {
        let ctx = &self.ctx;
        let a = ctx.letter(mu);
        for s in [a.clone(), a.inverse()] {
            let w0 = match ctx.are_conjugate(&s, x, CONSTRUCTION_BUDGET) {
                Conjugacy::Witness(w0) => w0,
                _ => continue,
            };
            for k in [0i64, 1, -1, 2, -2, 3, -3] {
                let c = ctx.dehn_reduce(&(&w0 * &a.pow(k)));
                if ctx.equal(&c.conjugate(alpha), y) {
                    return Some(true);
                }
                if ctx.equal(&c.conjugate(&alpha.inverse()), y) {
                    return Some(false);
                }
            }
        }
        None
    }

    /// The reflection, as the product
    /// `Π_{i=g-1..1} C_i^-1 Y_{i,i+1} C_i` with `C_i = T_{i+1,i+2} ··· T_{g-1,g}`.
    pub fn reflection(&self) -> Arc<MappingClass> {
        if let Some(r) = self.reflection.lock().unwrap().as_ref() {
            return r.clone();
        }
        let g = self.genus();
        let ctx = &self.ctx;
        let mut acc = MappingClass::identity(g);
        for i in (1..g).rev() {
            let c = (i + 1..g).fold(MappingClass::identity(g), |f, k| {
                f.compose(ctx, &self.t[k - 1])
            });
            let piece = c
                .invert()
                .compose(ctx, &self.slide_up[i - 1])
                .compose(ctx, &c);
            acc = acc.compose(ctx, &piece);
        }
        let r = Arc::new(acc);
        *self.reflection.lock().unwrap() = Some(r.clone());
        r
    }

    /// The curve a named twist or slide is built on, with the slid crosscap.
    pub fn generator_curve(&self, name: &GeneratorName) -> Result<(Option<usize>, CurveSpec)> {
        let g = self.genus();
        name.check(g)?;
        Ok(match name {
            GeneratorName::Y(i, js) => {
                let mut idx = vec![*i];
                idx.extend(js);
                idx.sort_unstable();
                (Some(*i), CurveSpec::alpha(g, &idx)?)
            }
            GeneratorName::Ybar(i, j) => (Some(*i), CurveSpec::alpha_bar(g, *i, *j)?),
            GeneratorName::Ymix(j, k) => (Some(*k), CurveSpec::alpha_bar(g, *j, *k)?),
            GeneratorName::T(idx) => {
                let mut idx = idx.clone();
                idx.sort_unstable();
                (None, CurveSpec::alpha(g, &idx)?)
            }
            GeneratorName::Tbar4(i, j, k) => (None, CurveSpec::alpha_bar4(g, *i, *j, *k)?),
            GeneratorName::R => {
                return Err(Error::InvalidGenerator(
                    "R is not supported on a curve".into(),
                ))
            }
        })
    }

    pub fn generator(&self, name: &GeneratorName) -> Result<Arc<MappingClass>> {
        if let Some(f) = self.cache.lock().unwrap().get(name) {
            return Ok(f.clone());
        }
        let f = match name {
            GeneratorName::R => {
                name.check(self.genus())?;
                self.reflection()
            }
            _ => match self.generator_curve(name)? {
                (Some(mu), c) => self.crosscap_slide(mu, &c)?,
                (None, c) => Arc::new(self.twist(&c)?),
            },
        };
        self.cache.lock().unwrap().insert(name.clone(), f.clone());
        Ok(f)
    }

    /// Left-to-right composition: the rightmost factor acts first.
    pub fn realize(&self, gw: &GenWord) -> Result<MappingClass> {
        gw.check(self.genus())?;
        let mut acc = MappingClass::identity(self.genus());
        for (name, e) in gw.factors() {
            let f = self.generator(name)?;
            acc = if *e < 0 {
                acc.compose(&self.ctx, &f.invert())
            } else {
                acc.compose(&self.ctx, &f)
            };
        }
        Ok(acc)
    }
}

fn twist_of_word(ctx: &GroupContext, c: &GroupWord) -> Result<MappingClass> {
    let g = ctx.genus();
    let right = polygon::twist_images(g, c, true)?;
    let left = polygon::twist_images(g, c, false)?;
    MappingClass::from_images(ctx, right, left)
}

/// Chains of consecutive elementary moves in either order, shortest first.
fn candidate_chains(g: usize) -> Vec<Chain> {
    let mut seen = HashSet::new();
    let mut out: Vec<Chain> = vec![Vec::new()];
    seen.insert(Vec::new());
    for len in 1..g {
        for a in 1..=g - len {
            let b = a + len - 1;
            for kind in [Elementary::U as fn(usize) -> Elementary, Elementary::T] {
                let asc: Vec<Elementary> = (a..=b).map(kind).collect();
                let desc: Vec<Elementary> = asc.iter().rev().copied().collect();
                for seq in [asc, desc] {
                    let fwd: Chain = seq.iter().map(|&e| (e, false)).collect();
                    let back: Chain = seq.iter().rev().map(|&e| (e, true)).collect();
                    for c in [fwd, back] {
                        if seen.insert(c.clone()) {
                            out.push(c);
                        }
                    }
                }
            }
        }
    }
    out
}
