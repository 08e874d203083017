use free_coherence::presentation::bundled;
use free_coherence::{class_automaton, longest_common_suffix, member, Alphabet, Presentation, Symbol, Word};
use proptest::prelude::*;

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u16..2, 0..=max).prop_map(|v| Word(v.into_iter().map(Symbol).collect()))
}

fn presentation() -> impl Strategy<Value = Presentation> {
    prop::collection::vec((word(3), word(3)), 0..=3)
        .prop_map(|raw| Presentation::new(Alphabet::from_chars("ab").unwrap(), raw).unwrap())
}

proptest! {
    #[test]
    fn strip_undoes_concat(u in word(8), x in word(8)) {
        let ux = u.concat(&x);
        prop_assert_eq!(ux.strip_suffix(&x), Some(u.clone()));
        prop_assert_eq!(ux.strip_prefix(&u), Some(x));
    }

    #[test]
    fn common_suffix_is_maximal(ws in prop::collection::vec(word(6), 1..5)) {
        let x = longest_common_suffix(&ws).unwrap();
        prop_assert!(ws.iter().all(|w| w.has_suffix(&x)));
        let longer = ws[0].suffix(x.len() + 1);
        if longer.len() > x.len() {
            prop_assert!(!ws.iter().all(|w| w.has_suffix(&longer)));
        }
    }

    #[test]
    fn common_suffix_empty_iff_last_letters_differ(u in word(6), v in word(6)) {
        let x = longest_common_suffix([&u, &v]).unwrap();
        let same_last = matches!((u.0.last(), v.0.last()), (Some(p), Some(q)) if p == q);
        prop_assert_eq!(x.is_empty(), !same_last);
    }

    #[test]
    fn presentation_is_idempotent(p in presentation()) {
        let again = Presentation::new(p.alphabet().clone(), p.pairs().cloned()).unwrap();
        prop_assert_eq!(again.pairs().collect::<Vec<_>>(), p.pairs().collect::<Vec<_>>());
        prop_assert_eq!(again.k(), p.k());
        for (c, d) in p.pairs() {
            prop_assert!(p.contains(d, c));
            prop_assert!(c != d);
            prop_assert!(c.len() <= p.k());
        }
    }

    #[test]
    fn class_contains_seed_and_is_consistent(p in presentation(), w in word(5), v in word(5)) {
        let class = class_automaton(&p, &w).unwrap();
        prop_assert!(class.accepts(&w));
        prop_assert_eq!(class.accepts(&v), member(&p, &v, &w).unwrap());
        prop_assert_eq!(member(&p, &w, &v).unwrap(), member(&p, &v, &w).unwrap());
    }
}

#[test]
fn bundled_presentations_are_symmetric() {
    for (_, p) in bundled() {
        for (c, d) in p.pairs() {
            assert!(p.contains(d, c));
        }
    }
}
