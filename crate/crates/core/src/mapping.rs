//! Mapping classes as automorphisms of `π_1(N_g)`.
//!
//! A [`MappingClass`] stores the images of the generators together with the
//! images under its inverse, so inversion is exact and free. Equality is
//! decided up to inner automorphism.

use std::fmt;
use std::sync::OnceLock;

use crate::curves::CurveSpec;
use crate::error::{Error, Result};
use crate::group::{Conjugacy, GroupContext, InnerWitness};
use crate::homology::{GF2Matrix, HomologyZ, IntMatrix};
use crate::word::GroupWord;

#[derive(Clone)]
pub struct MappingClass {
    genus: usize,
    images: Vec<GroupWord>,
    inverse_images: Vec<GroupWord>,
    matrices: OnceLock<(GF2Matrix, IntMatrix)>,
}

impl fmt::Debug for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MappingClass")
            .field("genus", &self.genus)
            .field(
                "images",
                &self
                    .images
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl MappingClass {
    pub fn identity(g: usize) -> MappingClass {
        let images: Vec<GroupWord> = (1..=g).map(|i| GroupWord::from_ints(&[i as i32])).collect();
        MappingClass {
            genus: g,
            inverse_images: images.clone(),
            images,
            matrices: OnceLock::new(),
        }
    }

    /// Validated constructor: both maps must be endomorphisms of `π_1`
    /// (relator sent to 1) and mutually inverse.
    pub fn from_images(
        ctx: &GroupContext,
        images: Vec<GroupWord>,
        inverse_images: Vec<GroupWord>,
    ) -> Result<MappingClass> {
        let g = ctx.genus();
        if images.len() != g || inverse_images.len() != g {
            return Err(Error::MalformedAutomorphism(format!("expected {g} images")));
        }
        for w in images.iter().chain(&inverse_images) {
            ctx.check_letters(w)?;
        }
        let f = MappingClass::unchecked(ctx, images, inverse_images);
        f.validate(ctx)?;
        Ok(f)
    }

    pub(crate) fn unchecked(
        ctx: &GroupContext,
        images: Vec<GroupWord>,
        inverse_images: Vec<GroupWord>,
    ) -> MappingClass {
        MappingClass {
            genus: ctx.genus(),
            images: images.iter().map(|w| ctx.dehn_reduce(w)).collect(),
            inverse_images: inverse_images.iter().map(|w| ctx.dehn_reduce(w)).collect(),
            matrices: OnceLock::new(),
        }
    }

    /// Relator preservation, mutual inversion, and the mod-2 isometry check.
    pub fn validate(&self, ctx: &GroupContext) -> Result<()> {
        let r = ctx.relator();
        if !ctx.is_identity(&r.substitute(&self.images, &inverses(&self.images))) {
            return Err(Error::MalformedAutomorphism("relator not preserved".into()));
        }
        if !ctx.is_identity(&r.substitute(&self.inverse_images, &inverses(&self.inverse_images))) {
            return Err(Error::MalformedAutomorphism(
                "relator not preserved by inverse".into(),
            ));
        }
        for i in 1..=self.genus {
            let a = ctx.letter(i);
            let there = self.apply_word(ctx, &self.apply_inverse_word(ctx, &a));
            let back = self.apply_inverse_word(ctx, &self.apply_word(ctx, &a));
            if there != a || back != a {
                return Err(Error::MalformedAutomorphism(format!(
                    "inverse images disagree on a{i}"
                )));
            }
        }
        if !self.induced_mod2(ctx).is_isometry() {
            return Err(Error::MalformedAutomorphism(
                "mod-2 action is not an isometry".into(),
            ));
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn images(&self) -> &[GroupWord] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[GroupWord] {
        &self.inverse_images
    }

    /// Total image length, a rough size measure.
    pub fn weight(&self) -> usize {
        self.images.iter().map(GroupWord::len).sum()
    }

    pub fn apply_word(&self, ctx: &GroupContext, w: &GroupWord) -> GroupWord {
        ctx.dehn_reduce(&w.substitute(&self.images, &inverses(&self.images)))
    }

    pub fn apply_inverse_word(&self, ctx: &GroupContext, w: &GroupWord) -> GroupWord {
        ctx.dehn_reduce(&w.substitute(&self.inverse_images, &inverses(&self.inverse_images)))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, ctx: &GroupContext, other: &MappingClass) -> MappingClass {
        let fi = inverses(&self.images);
        let hi_inv = inverses(&other.inverse_images);
        let images = other
            .images
            .iter()
            .map(|w| ctx.dehn_reduce(&w.substitute(&self.images, &fi)))
            .collect();
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|w| ctx.dehn_reduce(&w.substitute(&other.inverse_images, &hi_inv)))
            .collect();
        MappingClass {
            genus: self.genus,
            images,
            inverse_images,
            matrices: OnceLock::new(),
        }
    }

    pub fn invert(&self) -> MappingClass {
        MappingClass {
            genus: self.genus,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
            matrices: OnceLock::new(),
        }
    }

    pub fn power(&self, ctx: &GroupContext, n: i64) -> MappingClass {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = MappingClass::identity(self.genus);
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(ctx, &base);
        }
        acc
    }

    /// `self ∘ other ∘ self^-1`.
    pub fn conjugate(&self, ctx: &GroupContext, other: &MappingClass) -> MappingClass {
        self.compose(ctx, other).compose(ctx, &self.invert())
    }

    fn matrices(&self, ctx: &GroupContext) -> &(GF2Matrix, IntMatrix) {
        self.matrices.get_or_init(|| {
            let cols: Vec<HomologyZ> = self.images.iter().map(|w| ctx.abelianize(w)).collect();
            let int = IntMatrix::from_columns(cols);
            (int.mod2(), int)
        })
    }

    pub fn induced_mod2(&self, ctx: &GroupContext) -> GF2Matrix {
        self.matrices(ctx).0.clone()
    }

    pub fn induced_int(&self, ctx: &GroupContext) -> IntMatrix {
        self.matrices(ctx).1.clone()
    }

    pub fn is_level2(&self, ctx: &GroupContext) -> bool {
        self.matrices(ctx).0.is_identity()
    }

    /// Image of the curve's `π_1` representative.
    pub fn apply_to_curve(&self, ctx: &GroupContext, c: &CurveSpec) -> GroupWord {
        self.apply_word(ctx, &c.word())
    }

    /// Replaces one image letter; used for negative controls.
    pub fn mutated(&self, ctx: &GroupContext, generator: usize, extra: &GroupWord) -> MappingClass {
        let mut images = self.images.clone();
        images[generator] = &images[generator] * extra;
        MappingClass::unchecked(ctx, images, self.inverse_images.clone())
    }
}

pub fn inverses(ws: &[GroupWord]) -> Vec<GroupWord> {
    ws.iter().map(GroupWord::inverse).collect()
}

/// Verdict for curve-class comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveMatch {
    /// `w` is conjugate to the target word (`inverted = false`) or to its
    /// inverse; `conjugator` witnesses it.
    Same {
        conjugator: GroupWord,
        inverted: bool,
    },
    Different(String),
    Undecided,
}

impl CurveMatch {
    pub fn is_same(&self) -> bool {
        matches!(self, CurveMatch::Same { .. })
    }
}

/// Is `w` the class of the unoriented curve `target` (conjugacy and inversion)?
pub fn curve_equiv_word(
    ctx: &GroupContext,
    w: &GroupWord,
    target: &GroupWord,
    budget: usize,
) -> CurveMatch {
    let mut reasons = Vec::new();
    let mut undecided = false;
    for inverted in [false, true] {
        let t = if inverted {
            target.inverse()
        } else {
            target.clone()
        };
        match ctx.are_conjugate(&t, w, budget) {
            Conjugacy::Witness(c) => {
                return CurveMatch::Same {
                    conjugator: c,
                    inverted,
                }
            }
            Conjugacy::No(why) => reasons.push(why),
            Conjugacy::Undecided { .. } => undecided = true,
        }
    }
    if undecided {
        CurveMatch::Undecided
    } else {
        CurveMatch::Different(reasons.join("; "))
    }
}

pub fn curve_equiv(ctx: &GroupContext, w: &GroupWord, c: &CurveSpec, budget: usize) -> CurveMatch {
    curve_equiv_word(ctx, w, &c.word(), budget)
}

/// Oriented variant: `w` conjugate to `target` itself.
pub fn curve_equiv_oriented(
    ctx: &GroupContext,
    w: &GroupWord,
    target: &GroupWord,
    budget: usize,
) -> CurveMatch {
    match ctx.are_conjugate(target, w, budget) {
        Conjugacy::Witness(c) => CurveMatch::Same {
            conjugator: c,
            inverted: false,
        },
        Conjugacy::No(why) => CurveMatch::Different(why),
        Conjugacy::Undecided { .. } => CurveMatch::Undecided,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equality {
    /// `f ∘ h^-1` is conjugation by the witness.
    Equal(GroupWord),
    NotEqual(String),
    Undecided,
}

impl Equality {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equality::Equal(_))
    }
}

/// Equality of mapping classes up to inner automorphism.
pub fn equal_mod_inner(
    ctx: &GroupContext,
    f: &MappingClass,
    h: &MappingClass,
    budget: usize,
) -> Equality {
    if f.induced_mod2(ctx) != h.induced_mod2(ctx) {
        return Equality::NotEqual("mod-2 action differs".into());
    }
    if f.induced_int(ctx) != h.induced_int(ctx) {
        return Equality::NotEqual("integral action differs".into());
    }
    let phi = f.compose(ctx, &h.invert());
    match ctx.inner_witness(phi.images(), budget) {
        Ok(InnerWitness::Inner(w)) => Equality::Equal(w),
        Ok(InnerWitness::NotInner(why)) => Equality::NotEqual(why),
        Ok(InnerWitness::Undecided { .. }) => Equality::Undecided,
        Err(e) => Equality::NotEqual(e.to_string()),
    }
}

/// Re-checks a stored witness without search: `f(a_i) = w h(a_i) w^-1`.
pub fn replay_equality(
    ctx: &GroupContext,
    f: &MappingClass,
    h: &MappingClass,
    w: &GroupWord,
) -> bool {
    let phi = f.compose(ctx, &h.invert());
    phi.images()
        .iter()
        .enumerate()
        .all(|(i, img)| ctx.equal(&w.conjugate(&ctx.letter(i + 1)), img))
}
