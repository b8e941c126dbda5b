use proptest::prelude::*;

use level2::verify::action;
use level2::{
    equal_mod_inner, Engine, Equality, GenWord, GeneratorName, GroupContext, GroupWord, Letter,
    MappingClass,
};

fn letter() -> impl Strategy<Value = Letter> {
    (1usize..=4, any::<bool>()).prop_map(|(i, p)| Letter::new(i, p))
}

fn word(max: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(letter(), 0..=max).prop_map(GroupWord::from_letters)
}

fn names() -> Vec<GeneratorName> {
    use GeneratorName::*;
    vec![
        T(vec![1, 2]),
        T(vec![2, 3]),
        T(vec![3, 4]),
        T(vec![1, 2, 3, 4]),
        Y(1, vec![2]),
        Y(3, vec![2]),
        Ybar(1, 3),
        Ybar(4, 2),
        Ymix(2, 4),
        Tbar4(2, 3, 4),
        R,
    ]
}

fn gen_word(max: usize) -> impl Strategy<Value = GenWord> {
    let n = names();
    prop::collection::vec((0..n.len(), any::<bool>()), 0..=max).prop_map(move |v| {
        GenWord(
            v.into_iter()
                .map(|(k, p)| (n[k].clone(), if p { 1 } else { -1 }))
                .collect(),
        )
    })
}

thread_local! {
    static ENGINE: Engine = Engine::new(4).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relator_conjugates_are_trivial(u in word(6), k in 0usize..8) {
        let ctx = GroupContext::new(4).unwrap();
        let r = ctx.relator().rotate(k);
        prop_assert!(ctx.is_identity(&u.conjugate(&r)));
        prop_assert!(ctx.is_identity(&u.conjugate(&r.inverse())));
    }

    #[test]
    fn equality_is_identity_of_quotient(u in word(7), v in word(7)) {
        let ctx = GroupContext::new(4).unwrap();
        prop_assert_eq!(ctx.equal(&u, &v), ctx.is_identity(&ctx.mul(&u, &v.inverse())));
    }

    #[test]
    fn nonzero_abelianization_is_nontrivial(u in word(8)) {
        let ctx = GroupContext::new(4).unwrap();
        if !ctx.abelianize(&u).is_zero() {
            prop_assert!(!ctx.is_identity(&u));
        }
    }

    #[test]
    fn genword_text_round_trip(w in gen_word(6)) {
        let back: GenWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn word_times_inverse_is_identity(w in gen_word(4)) {
        ENGINE.with(|e| {
            let ctx = e.ctx();
            let f = e.realize(&w).unwrap();
            let id = f.compose(ctx, &e.realize(&w.inverse()).unwrap());
            prop_assert!(matches!(equal_mod_inner(ctx, &id, &MappingClass::identity(4), 2000), Equality::Equal(_)));
            Ok(())
        })?;
    }

    #[test]
    fn homology_action_is_multiplicative(u in gen_word(3), v in gen_word(3)) {
        ENGINE.with(|e| {
            let (_, a) = action(e, &u).unwrap();
            let (_, b) = action(e, &v).unwrap();
            let (m2, ab) = action(e, &u.then(&v)).unwrap();
            prop_assert_eq!(ab, a.mul(&b));
            prop_assert!(m2.is_isometry());
            prop_assert_eq!(m2, e.realize(&u.then(&v)).unwrap().induced_mod2(e.ctx()));
            Ok(())
        })?;
    }
}
