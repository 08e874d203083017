//! Nondeterministic finite automata over symbol indices, with a
//! determinize/minimize pass for canonical export and language equality.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

pub type State = usize;

/// An NFA without ε-transitions. States are `0..num_states`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAutomaton {
    alphabet_size: usize,
    num_states: usize,
    initial: BTreeSet<State>,
    finals: BTreeSet<State>,
    transitions: BTreeSet<(State, Symbol, State)>,
}

impl FiniteAutomaton {
    pub fn new(
        alphabet_size: usize,
        num_states: usize,
        initial: impl IntoIterator<Item = State>,
        finals: impl IntoIterator<Item = State>,
        transitions: impl IntoIterator<Item = (State, Symbol, State)>,
    ) -> Result<Self> {
        let a = FiniteAutomaton {
            alphabet_size,
            num_states,
            initial: initial.into_iter().collect(),
            finals: finals.into_iter().collect(),
            transitions: transitions.into_iter().collect(),
        };
        let bad_state = a
            .initial
            .iter()
            .chain(a.finals.iter())
            .chain(a.transitions.iter().flat_map(|(s, _, t)| [s, t]))
            .find(|&&s| s >= num_states);
        if let Some(&s) = bad_state {
            return Err(Error::Precondition(format!(
                "state {s} referenced but automaton has {num_states} states"
            )));
        }
        if let Some((_, sym, _)) = a.transitions.iter().find(|(_, s, _)| s.index() >= alphabet_size) {
            return Err(Error::AlphabetMismatch(sym.index(), alphabet_size));
        }
        Ok(a)
    }

    /// Accepts exactly `{w}`.
    pub fn singleton(alphabet_size: usize, w: &Word) -> Self {
        let n = w.len();
        FiniteAutomaton {
            alphabet_size,
            num_states: n + 1,
            initial: [0].into(),
            finals: [n].into(),
            transitions: w.symbols().iter().enumerate().map(|(i, &s)| (i, s, i + 1)).collect(),
        }
    }

    /// Accepts the right ideal `xΩ*`.
    pub fn right_ideal(alphabet_size: usize, x: &Word) -> Self {
        let mut a = Self::singleton(alphabet_size, x);
        let last = x.len();
        for s in 0..alphabet_size {
            a.transitions.insert((last, Symbol(s as u16), last));
        }
        a
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn initial(&self) -> &BTreeSet<State> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<State> {
        &self.finals
    }

    pub fn transitions(&self) -> &BTreeSet<(State, Symbol, State)> {
        &self.transitions
    }

    fn adjacency(&self) -> Vec<Vec<(Symbol, State)>> {
        let mut adj = vec![Vec::new(); self.num_states];
        for &(s, a, t) in &self.transitions {
            adj[s].push((a, t));
        }
        adj
    }

    fn step(adj: &[Vec<(Symbol, State)>], from: &BTreeSet<State>, sym: Symbol) -> BTreeSet<State> {
        from.iter()
            .flat_map(|&s| adj[s].iter().filter(|(a, _)| *a == sym).map(|&(_, t)| t))
            .collect()
    }

    /// States reachable from the initial states by reading `w`.
    pub fn read(&self, w: &Word) -> BTreeSet<State> {
        let adj = self.adjacency();
        w.symbols()
            .iter()
            .fold(self.initial.clone(), |cur, &sym| Self::step(&adj, &cur, sym))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.read(w).iter().any(|s| self.finals.contains(s))
    }

    /// States from which some final state is reachable.
    pub fn productive_states(&self) -> BTreeSet<State> {
        let mut rev = vec![Vec::new(); self.num_states];
        for &(s, _, t) in &self.transitions {
            rev[t].push(s);
        }
        let mut seen: BTreeSet<State> = self.finals.clone();
        let mut queue: VecDeque<State> = seen.iter().copied().collect();
        while let Some(t) = queue.pop_front() {
            for &s in &rev[t] {
                if seen.insert(s) {
                    queue.push_back(s);
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        let productive = self.productive_states();
        !self.initial.iter().any(|s| productive.contains(s))
    }

    /// Whether the language contains some word with prefix `x`.
    pub fn meets_prefix(&self, x: &Word) -> bool {
        let productive = self.productive_states();
        self.read(x).iter().any(|s| productive.contains(s))
    }

    /// Product automaton accepting the intersection of both languages.
    pub fn intersect(&self, other: &FiniteAutomaton) -> FiniteAutomaton {
        let mut index: BTreeMap<(State, State), State> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let mut initial = BTreeSet::new();
        for &p in &self.initial {
            for &q in &other.initial {
                let id = index.len();
                index.insert((p, q), id);
                initial.insert(id);
                queue.push_back((p, q));
            }
        }
        let (adj1, adj2) = (self.adjacency(), other.adjacency());
        let mut transitions = BTreeSet::new();
        while let Some((p, q)) = queue.pop_front() {
            let from = index[&(p, q)];
            for &(a, p2) in &adj1[p] {
                for &(b, q2) in &adj2[q] {
                    if a != b {
                        continue;
                    }
                    let to = match index.get(&(p2, q2)) {
                        Some(&id) => id,
                        None => {
                            let id = index.len();
                            index.insert((p2, q2), id);
                            queue.push_back((p2, q2));
                            id
                        }
                    };
                    transitions.insert((from, a, to));
                }
            }
        }
        let finals = index
            .iter()
            .filter(|((p, q), _)| self.finals.contains(p) && other.finals.contains(q))
            .map(|(_, &id)| id)
            .collect();
        FiniteAutomaton {
            alphabet_size: self.alphabet_size.min(other.alphabet_size),
            num_states: index.len(),
            initial,
            finals,
            transitions,
        }
    }

    /// Accepted words of length at most `max_len`, shortlex order, at most `limit` of them.
    pub fn enumerate(&self, max_len: usize, limit: usize) -> Vec<Word> {
        let dfa = self.minimize();
        let mut out = Vec::new();
        let mut layer = vec![(Word::empty(), dfa.initial)];
        for len in 0..=max_len {
            for (w, s) in &layer {
                if dfa.finals.contains(s) {
                    if out.len() == limit {
                        return out;
                    }
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, s) in &layer {
                for (a, t) in dfa.delta[*s].iter().enumerate() {
                    if let Some(t) = t {
                        let mut v = w.0.clone();
                        v.push(Symbol(a as u16));
                        next.push((Word(v), *t));
                    }
                }
            }
            layer = next;
        }
        out
    }

    pub fn determinize(&self) -> Dfa {
        let adj = self.adjacency();
        let mut index: BTreeMap<BTreeSet<State>, State> = BTreeMap::new();
        let mut sets = vec![self.initial.clone()];
        index.insert(self.initial.clone(), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = Vec::with_capacity(self.alphabet_size);
            for a in 0..self.alphabet_size {
                let next = Self::step(&adj, &sets[i], Symbol(a as u16));
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    sets.push(next);
                    sets.len() - 1
                });
                row.push(Some(id));
            }
            delta.push(row);
            i += 1;
        }
        let finals = sets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|s| self.finals.contains(s)))
            .map(|(i, _)| i)
            .collect();
        Dfa {
            alphabet_size: self.alphabet_size,
            initial: 0,
            finals,
            delta,
        }
    }

    /// The canonical trim minimal DFA of the language.
    pub fn minimize(&self) -> Dfa {
        self.determinize().minimize()
    }

    pub fn same_language(&self, other: &FiniteAutomaton) -> bool {
        self.alphabet_size == other.alphabet_size && self.minimize() == other.minimize()
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> AutomatonJson {
        AutomatonJson {
            states: (0..self.num_states).collect(),
            initial: self.initial.iter().copied().collect(),
            finals: self.finals.iter().copied().collect(),
            transitions: self
                .transitions
                .iter()
                .map(|&(s, a, t)| (s, alphabet.spelling(a).to_string(), t))
                .collect(),
        }
    }

    pub fn from_json(alphabet: &Alphabet, json: &AutomatonJson) -> Result<Self> {
        let transitions = json
            .transitions
            .iter()
            .map(|(s, sym, t)| {
                let a = alphabet
                    .lookup(sym)
                    .ok_or_else(|| Error::UnknownSymbol(sym.clone()))?;
                Ok((*s, a, *t))
            })
            .collect::<Result<Vec<_>>>()?;
        let num_states = json.states.iter().max().map_or(0, |m| m + 1);
        Self::new(
            alphabet.len(),
            num_states,
            json.initial.iter().copied(),
            json.finals.iter().copied(),
            transitions,
        )
    }

    pub fn to_dot(&self, alphabet: &Alphabet, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\""));
        let _ = writeln!(out, "  rankdir=LR;");
        for s in 0..self.num_states {
            let shape = if self.finals.contains(&s) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{s} [shape={shape}];");
        }
        for &s in &self.initial {
            let _ = writeln!(out, "  init{s} [shape=point];");
            let _ = writeln!(out, "  init{s} -> q{s};");
        }
        for &(s, a, t) in &self.transitions {
            let _ = writeln!(out, "  q{s} -> q{t} [label=\"{}\"];", alphabet.spelling(a));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub states: Vec<State>,
    pub initial: Vec<State>,
    pub finals: Vec<State>,
    pub transitions: Vec<(State, String, State)>,
}

/// A partial deterministic automaton. After [`Dfa::minimize`] it is trim,
/// minimal, and numbered in breadth-first order from the initial state, so
/// two minimized DFAs are equal iff their languages are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet_size: usize,
    pub initial: State,
    pub finals: BTreeSet<State>,
    pub delta: Vec<Vec<Option<State>>>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let mut s = self.initial;
        for sym in w.symbols() {
            match self.delta[s][sym.index()] {
                Some(t) => s = t,
                None => return false,
            }
        }
        self.finals.contains(&s)
    }

    /// The state reached from `s` by reading `w`, if defined.
    pub fn run_from(&self, s: State, w: &Word) -> Option<State> {
        w.symbols().iter().try_fold(s, |cur, sym| self.delta[cur][sym.index()])
    }

    /// Words of length at most `max_len` accepted from state `s`, shortlex order.
    pub fn accepted_from(&self, s: State, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer = vec![(Vec::new(), s)];
        for len in 0..=max_len {
            out.extend(
                layer
                    .iter()
                    .filter(|(_, q)| self.finals.contains(q))
                    .map(|(w, _)| Word(w.clone())),
            );
            if len == max_len {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|(w, q)| {
                    self.delta[*q].iter().enumerate().filter_map(move |(a, t)| {
                        t.map(|t| {
                            let mut v = w.clone();
                            v.push(Symbol(a as u16));
                            (v, t)
                        })
                    })
                })
                .collect();
        }
        out
    }

    pub fn minimize(&self) -> Dfa {
        let n = self.delta.len();
        let sigma = self.alphabet_size;
        // Moore refinement on the completed automaton; `n` is the sink.
        let target = |s: usize, a: usize| -> usize {
            if s == n {
                n
            } else {
                self.delta[s][a].unwrap_or(n)
            }
        };
        let mut class: Vec<usize> = (0..=n)
            .map(|s| usize::from(s < n && self.finals.contains(&s)))
            .collect();
        loop {
            let mut sig_index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let next: Vec<usize> = (0..=n)
                .map(|s| {
                    let sig = (class[s], (0..sigma).map(|a| class[target(s, a)]).collect());
                    let k = sig_index.len();
                    *sig_index.entry(sig).or_insert(k)
                })
                .collect();
            let stable = sig_index.len() == class.iter().collect::<BTreeSet<_>>().len();
            class = next;
            if stable {
                break;
            }
        }
        let dead = class[n];
        let start = class[self.initial];
        if start == dead {
            return Dfa {
                alphabet_size: sigma,
                initial: 0,
                finals: BTreeSet::new(),
                delta: vec![vec![None; sigma]],
            };
        }
        // Any representative of each class gives the class transitions.
        let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
        for s in 0..n {
            rep.entry(class[s]).or_insert(s);
        }
        let mut number: BTreeMap<usize, State> = BTreeMap::new();
        number.insert(start, 0);
        let mut order = vec![start];
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for a in 0..sigma {
                let t = class[target(rep[&c], a)];
                if t != dead && !number.contains_key(&t) {
                    number.insert(t, order.len());
                    order.push(t);
                }
            }
            i += 1;
        }
        let delta = order
            .iter()
            .map(|&c| {
                (0..sigma)
                    .map(|a| {
                        let t = class[target(rep[&c], a)];
                        (t != dead).then(|| number[&t])
                    })
                    .collect()
            })
            .collect();
        let finals = order
            .iter()
            .enumerate()
            .filter(|(_, &c)| self.finals.contains(&rep[&c]))
            .map(|(i, _)| i)
            .collect();
        Dfa {
            alphabet_size: sigma,
            initial: 0,
            finals,
            delta,
        }
    }

    pub fn to_automaton(&self) -> FiniteAutomaton {
        let transitions = self
            .delta
            .iter()
            .enumerate()
            .flat_map(|(s, row)| {
                row.iter()
                    .enumerate()
                    .filter_map(move |(a, t)| t.map(|t| (s, Symbol(a as u16), t)))
            })
            .collect();
        FiniteAutomaton {
            alphabet_size: self.alphabet_size,
            num_states: self.delta.len(),
            initial: [self.initial].into(),
            finals: self.finals.clone(),
            transitions,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn lang(words: &[&str]) -> FiniteAutomaton {
        let al = ab();
        // Union of singleton paths sharing one initial state.
        let mut transitions = Vec::new();
        let mut finals = Vec::new();
        let mut next = 1;
        for w in words {
            let w = al.parse(w).unwrap();
            let mut cur = 0;
            for &s in w.symbols() {
                transitions.push((cur, s, next));
                cur = next;
                next += 1;
            }
            finals.push(cur);
        }
        FiniteAutomaton::new(2, next, [0], finals, transitions).unwrap()
    }

    #[test]
    fn accepts_and_prefix() {
        let al = ab();
        let a = lang(&["ab", "ba"]);
        assert!(a.accepts(&al.parse("ab").unwrap()));
        assert!(!a.accepts(&al.parse("aa").unwrap()));
        assert!(a.meets_prefix(&al.parse("b").unwrap()));
        assert!(a.meets_prefix(&Word::empty()));
        assert!(!lang(&["a"]).meets_prefix(&al.parse("b").unwrap()));
    }

    #[test]
    fn canonical_forms_decide_equality() {
        assert!(lang(&["ab", "ba", "ab"]).same_language(&lang(&["ba", "ab"])));
        assert!(!lang(&["ab"]).same_language(&lang(&["ab", "b"])));
        let empty = FiniteAutomaton::new(2, 1, [0], [], []).unwrap();
        let also_empty = lang(&["a"]).intersect(&lang(&["b"]));
        assert!(empty.same_language(&also_empty));
        assert!(also_empty.is_empty());
    }

    #[test]
    fn right_ideal_and_enumeration() {
        let al = ab();
        let ideal = FiniteAutomaton::right_ideal(2, &al.parse("b").unwrap());
        let words: Vec<String> = ideal.enumerate(2, 100).iter().map(|w| al.render(w)).collect();
        assert_eq!(words, ["b", "ba", "bb"]);
        assert_eq!(ideal.enumerate(5, 4).len(), 4);
    }

    #[test]
    fn rejects_dangling_states() {
        assert!(FiniteAutomaton::new(2, 1, [0], [1], []).is_err());
        assert!(FiniteAutomaton::new(2, 2, [0], [1], [(0, Symbol(2), 1)]).is_err());
    }

    #[test]
    fn json_round_trip_preserves_language() {
        let al = ab();
        let a = lang(&["ab", "b", ""]);
        let back = FiniteAutomaton::from_json(&al, &a.to_json(&al)).unwrap();
        assert_eq!(back, a);
        let min = a.minimize().to_automaton();
        assert!(min.same_language(&a));
        assert!(a.to_dot(&al, "x").contains("doublecircle"));
    }
}
