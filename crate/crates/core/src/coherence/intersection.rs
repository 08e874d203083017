use std::collections::BTreeSet;

use crate::automaton::FiniteAutomaton;
use crate::closure::{class_automaton, right_ideal_closure};
use crate::error::Result;
use crate::presentation::Presentation;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGenerators {
    pub a: Word,
    pub b: Word,
    /// Pairwise ρ-inequivalent representatives, each the shortlex-least
    /// candidate of its class, none lying in another's cyclic subact; sorted.
    pub reps: Vec<Word>,
    /// Decided on the closure of `aΩ*` intersected with `bΩ*`.
    pub empty: bool,
}

/// Generators of `(aρ)S ∩ (bρ)S` drawn from the candidates `a`, `b` and the
/// words of `H`.
pub fn intersection_generators(p: &Presentation, a: &Word, b: &Word) -> Result<IntersectionGenerators> {
    p.alphabet().check(a)?;
    p.alphabet().check(b)?;
    let mut candidates: BTreeSet<Word> = p.left_sides();
    candidates.insert(a.clone());
    candidates.insert(b.clone());

    let mut reps: Vec<(Word, FiniteAutomaton)> = Vec::new();
    for w in candidates {
        let class = class_automaton(p, &w)?;
        if !(class.meets_prefix(a) && class.meets_prefix(b)) {
            continue;
        }
        // Candidates arrive in shortlex order, so the first of a class is its least.
        if reps.iter().any(|(_, rep_class)| rep_class.accepts(&w)) {
            continue;
        }
        reps.push((w, class));
    }
    // Drop candidates whose cyclic subact is covered by another survivor,
    // longest first, so of two mutually covering reps the shorter remains.
    let mut i = reps.len();
    while i > 0 {
        i -= 1;
        let covered = reps
            .iter()
            .enumerate()
            .any(|(j, (other, _))| j != i && reps[i].1.meets_prefix(other));
        if covered {
            reps.remove(i);
        }
    }
    let empty = !right_ideal_closure(p, a)?.meets_prefix(b);
    Ok(IntersectionGenerators {
        a: a.clone(),
        b: b.clone(),
        reps: reps.into_iter().map(|(w, _)| w).collect(),
        empty,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn pres(raw: &[(&str, &str)]) -> Presentation {
        Presentation::parse(Alphabet::from_chars("ab").unwrap(), raw).unwrap()
    }

    #[test]
    fn free_monoid_has_disjoint_ideals() {
        let p = pres(&[]);
        let w = |s| p.parse_word(s).unwrap();
        let g = intersection_generators(&p, &w("a"), &w("b")).unwrap();
        assert!(g.reps.is_empty());
        assert!(g.empty);
    }

    #[test]
    fn commutation_example() {
        let p = pres(&[("ab", "ba")]);
        let w = |s| p.parse_word(s).unwrap();
        let g = intersection_generators(&p, &w("a"), &w("b")).unwrap();
        assert_eq!(g.reps, vec![w("ab")]);
        assert!(!g.empty);
    }

    #[test]
    fn equal_elements() {
        for (_, p) in crate::presentation::bundled() {
            let a = p.parse_word("a").unwrap();
            let g = intersection_generators(&p, &a, &a).unwrap();
            assert_eq!(g.reps, vec![a.clone()]);
            assert!(!g.empty);
        }
    }
}
