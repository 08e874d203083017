//! Prefix-rewriting closure of regular languages.
//!
//! Given a seed automaton `A` and the symmetric rule set `H`, the closure is
//! the least language containing `L(A)` such that `c·t` in it and `(c, d)`
//! in `H` imply `d·t` in it. For a singleton seed `{w}` this is the class
//! `[w]ρ` of the right congruence generated by `H`.
//!
//! # Construction
//!
//! The workspace automaton has a fresh start state `p₀` that copies the
//! outgoing transitions and finality of the seed's initial states, so the
//! seed's own states keep their original languages. Each rule `(c, d)` with
//! `|d| = k ≥ 2` owns a private push path
//!
//! ```text
//! p₀ --d₁--> s₁ --d₂--> … --d_{k-1}--> s_{k-1}
//! ```
//!
//! of `k - 1` auxiliary states, created once. The rule fires on every state
//! `q` reachable from `p₀` by reading `c`; firing adds the single transition
//! `s_{k-1} --d_k--> q` (or `p₀ --d₁--> q` when `k = 1`). A rule with `d = ε`
//! instead records an ε-link `p₀ → q`, meaning `p₀` inherits everything
//! accepted from `q`; ε-links only ever leave `p₀`.
//!
//! The state set is fixed up front (seed + 1 + Σ(|d| - 1)), and every step
//! only adds transitions or ε-links over it, so saturation terminates after
//! at most `|states|² · |Ω| + |states|` productive rounds.
//!
//! Every path `p₀ --w--> sⱼ` into a push state satisfies `d₁…dⱼ ⇒* w`, and
//! every path into a seed state `q` is reached from some seed path `w'` into
//! `q` with `w' ⇒* w`, where `⇒*` is prefix-rewriting reachability. Hence
//! every accepted word is reachable from the seed language. Conversely, at
//! the fixpoint, whenever `c·t` is accepted through `p₀ --c--> q --t--> f`,
//! the rule's push path ends in `q`, so `d·t` is accepted too.

use std::collections::{BTreeSet, HashSet};

use crate::automaton::{FiniteAutomaton, State};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Symbol, Word};

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub automaton: FiniteAutomaton,
    pub saturation_rounds: usize,
    pub added_transitions: usize,
}

struct Rule {
    pop: Word,
    push: Word,
    /// Source state of the rule's final push transition (unused when `push` is ε).
    last: State,
}

struct Workspace {
    adj: Vec<Vec<(Symbol, State)>>,
    edges: HashSet<(State, Symbol, State)>,
    finals: Vec<bool>,
    /// Targets of ε-links out of the start state.
    eps: BTreeSet<State>,
}

const START: State = 0;

impl Workspace {
    fn add_edge(&mut self, s: State, a: Symbol, t: State) -> bool {
        if self.edges.insert((s, a, t)) {
            self.adj[s].push((a, t));
            true
        } else {
            false
        }
    }

    fn close(&self, mut set: BTreeSet<State>) -> BTreeSet<State> {
        if set.contains(&START) {
            set.extend(self.eps.iter().copied());
        }
        set
    }

    fn read_from_start(&self, w: &Word) -> BTreeSet<State> {
        let mut cur = self.close([START].into());
        for &sym in w.symbols() {
            if cur.is_empty() {
                break;
            }
            let next = cur
                .iter()
                .flat_map(|&s| self.adj[s].iter().filter(|(a, _)| *a == sym).map(|&(_, t)| t))
                .collect();
            cur = self.close(next);
        }
        cur
    }

    fn into_automaton(self, alphabet_size: usize) -> FiniteAutomaton {
        let mut transitions: BTreeSet<(State, Symbol, State)> = self.edges.iter().copied().collect();
        for &q in &self.eps {
            for &(a, t) in &self.adj[q] {
                transitions.insert((START, a, t));
            }
        }
        let start_final = self.finals[START] || self.eps.iter().any(|&q| self.finals[q]);
        let finals = self
            .finals
            .iter()
            .enumerate()
            .filter(|&(s, &f)| f || (s == START && start_final))
            .map(|(s, _)| s);
        FiniteAutomaton::new(alphabet_size, self.adj.len(), [START], finals, transitions)
            .expect("workspace states are in range")
    }
}

/// Saturates `seed` under prefix rewriting by the pairs of `p`.
pub fn closure_automaton(p: &Presentation, seed: &FiniteAutomaton) -> Result<ClosureResult> {
    let sigma = p.alphabet().len();
    if seed.alphabet_size() != sigma {
        return Err(Error::AlphabetMismatch(seed.alphabet_size(), sigma));
    }
    let offset = 1;
    let mut num_states = seed.num_states() + offset;
    let mut rules = Vec::with_capacity(p.pair_count());
    for (c, d) in p.pairs() {
        let last = if d.len() >= 2 {
            let first_aux = num_states;
            num_states += d.len() - 1;
            first_aux + d.len() - 2
        } else {
            START
        };
        rules.push(Rule {
            pop: c.clone(),
            push: d.clone(),
            last,
        });
    }

    let mut ws = Workspace {
        adj: vec![Vec::new(); num_states],
        edges: HashSet::new(),
        finals: vec![false; num_states],
        eps: BTreeSet::new(),
    };
    for &(s, a, t) in seed.transitions() {
        ws.add_edge(s + offset, a, t + offset);
        if seed.initial().contains(&s) {
            ws.add_edge(START, a, t + offset);
        }
    }
    for &f in seed.finals() {
        ws.finals[f + offset] = true;
    }
    ws.finals[START] = seed.initial().iter().any(|s| seed.finals().contains(s));

    // Fixed push paths; only their last transition depends on the firing site.
    for rule in &rules {
        let k = rule.push.len();
        if k >= 2 {
            let first_aux = rule.last + 2 - k;
            let syms = rule.push.symbols();
            ws.add_edge(START, syms[0], first_aux);
            for j in 1..k - 1 {
                ws.add_edge(first_aux + j - 1, syms[j], first_aux + j);
            }
        }
    }
    let baseline = ws.edges.len();

    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut changed = false;
        for rule in &rules {
            let targets = ws.read_from_start(&rule.pop);
            for q in targets {
                changed |= match rule.push.symbols().last() {
                    None => q != START && ws.eps.insert(q),
                    Some(&a) => ws.add_edge(rule.last, a, q),
                };
            }
        }
        if !changed {
            break;
        }
    }
    let added_transitions = ws.edges.len() - baseline + ws.eps.len();
    Ok(ClosureResult {
        automaton: ws.into_automaton(sigma),
        saturation_rounds: rounds,
        added_transitions,
    })
}

/// An automaton accepting exactly the class `[w]ρ`.
pub fn class_automaton(p: &Presentation, w: &Word) -> Result<FiniteAutomaton> {
    p.alphabet().check(w)?;
    let seed = FiniteAutomaton::singleton(p.alphabet().len(), w);
    Ok(closure_automaton(p, &seed)?.automaton)
}

/// The closure of the right ideal `aΩ*`, i.e. the union of all classes meeting it.
pub fn right_ideal_closure(p: &Presentation, a: &Word) -> Result<FiniteAutomaton> {
    p.alphabet().check(a)?;
    let seed = FiniteAutomaton::right_ideal(p.alphabet().len(), a);
    Ok(closure_automaton(p, &seed)?.automaton)
}

/// Decides `u ρ v`.
pub fn member(p: &Presentation, u: &Word, v: &Word) -> Result<bool> {
    p.alphabet().check(v)?;
    if u == v {
        p.alphabet().check(u)?;
        return Ok(true);
    }
    Ok(class_automaton(p, u)?.accepts(v))
}

/// Whether `L(a)` contains a word with prefix `x`.
pub fn intersect_right_ideal(p: &Presentation, a: &FiniteAutomaton, x: &Word) -> Result<bool> {
    let sigma = p.alphabet().len();
    if a.alphabet_size() != sigma {
        return Err(Error::AlphabetMismatch(a.alphabet_size(), sigma));
    }
    p.alphabet().check(x)?;
    Ok(a.meets_prefix(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn pres(raw: &[(&str, &str)]) -> Presentation {
        Presentation::parse(Alphabet::from_chars("ab").unwrap(), raw).unwrap()
    }

    fn language(p: &Presentation, a: &FiniteAutomaton, max_len: usize) -> Vec<String> {
        a.enumerate(max_len, usize::MAX).iter().map(|w| p.render(w)).collect()
    }

    #[test]
    fn closure_examples() {
        let p = pres(&[]);
        let seed = FiniteAutomaton::singleton(2, &p.parse_word("ab").unwrap());
        let r = closure_automaton(&p, &seed).unwrap();
        assert_eq!(language(&p, &r.automaton, 8), ["ab"]);

        let p = pres(&[("a", "b")]);
        let c = class_automaton(&p, &p.parse_word("ab").unwrap()).unwrap();
        assert_eq!(language(&p, &c, 8), ["ab", "bb"]);

        let p = pres(&[("ab", "ba")]);
        let c = class_automaton(&p, &p.parse_word("ab").unwrap()).unwrap();
        assert_eq!(language(&p, &c, 8), ["ab", "ba"]);
    }

    #[test]
    fn class_examples() {
        let p = pres(&[]);
        let c = class_automaton(&p, &p.parse_word("abb").unwrap()).unwrap();
        assert_eq!(language(&p, &c, 8), ["abb"]);

        let p = pres(&[("a", "bb")]);
        let c = class_automaton(&p, &p.parse_word("aa").unwrap()).unwrap();
        assert_eq!(language(&p, &c, 8), ["aa", "bba"]);

        let p = pres(&[("ab", "ba"), ("bab", "bb")]);
        let c = class_automaton(&p, &p.parse_word("abb").unwrap()).unwrap();
        let lang = language(&p, &c, 8);
        for w in ["abb", "bab", "bb"] {
            assert!(lang.contains(&w.to_string()), "{w} missing from {lang:?}");
        }
    }

    #[test]
    fn member_examples() {
        let p = pres(&[("a", "b")]);
        let w = |s| p.parse_word(s).unwrap();
        assert!(member(&p, &w("bab"), &w("bab")).unwrap());
        assert!(!member(&p, &w("ab"), &w("ba")).unwrap());
        let p = pres(&[("ab", "ba")]);
        assert!(member(&p, &w("abb"), &w("bab")).unwrap());
    }

    #[test]
    fn empty_left_side_prepends() {
        // ε ~ a: every word is congruent to a^k·w for all k.
        let p = pres(&[("", "a")]);
        let w = |s| p.parse_word(s).unwrap();
        assert!(member(&p, &w("b"), &w("aaab")).unwrap());
        assert!(member(&p, &w("aab"), &w("b")).unwrap());
        assert!(member(&p, &w(""), &w("aa")).unwrap());
        assert!(!member(&p, &w("b"), &w("ba")).unwrap());
        let c = class_automaton(&p, &w("")).unwrap();
        assert_eq!(language(&p, &c, 3), ["", "a", "aa", "aaa"]);
    }

    #[test]
    fn empty_right_side_deletes_prefix() {
        let p = pres(&[("ab", "")]);
        let w = |s| p.parse_word(s).unwrap();
        assert!(member(&p, &w("abab"), &w("")).unwrap());
        assert!(member(&p, &w("b"), &w("abb")).unwrap());
        assert!(!member(&p, &w("ba"), &w("")).unwrap());
    }

    #[test]
    fn intersect_right_ideal_examples() {
        let p = pres(&[("ab", "ba")]);
        let c = class_automaton(&p, &p.parse_word("ab").unwrap()).unwrap();
        assert!(intersect_right_ideal(&p, &c, &p.parse_word("b").unwrap()).unwrap());
        assert!(intersect_right_ideal(&p, &c, &Word::empty()).unwrap());
        let a = FiniteAutomaton::singleton(2, &p.parse_word("a").unwrap());
        assert!(!intersect_right_ideal(&p, &a, &p.parse_word("b").unwrap()).unwrap());
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let p = pres(&[("a", "b")]);
        let seed = FiniteAutomaton::singleton(3, &Word::from_indices(&[2]));
        assert!(matches!(closure_automaton(&p, &seed), Err(Error::AlphabetMismatch(3, 2))));
        assert!(member(&p, &Word::from_indices(&[0]), &Word::from_indices(&[5])).is_err());
    }

    #[test]
    fn right_ideal_closure_is_union_of_classes() {
        let p = pres(&[("ab", "ba")]);
        let w = |s| p.parse_word(s).unwrap();
        let ideal = right_ideal_closure(&p, &w("a")).unwrap();
        assert!(ideal.accepts(&w("ba")));
        assert!(ideal.accepts(&w("abbb")));
        assert!(!ideal.accepts(&w("bb")));
        assert!(!ideal.accepts(&w("b")));
    }
}
