//! Breadth-first search for H-sequences over the one-step rewriting graph
//! `c·t — d·t`, with a cap on word length. Independent of the automaton
//! engine; used to cross-check it.

use std::collections::{HashMap, VecDeque};

use crate::presentation::Presentation;
use crate::sequences::{HSequence, Quadruple, Step};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(HSequence),
    /// `exhaustive` is true when every word reachable under the length cap
    /// was visited, so the negative is certified for that cap.
    NotFound { exhaustive: bool },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&HSequence> {
        match self {
            SearchOutcome::Found(s) => Some(s),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

/// One-step rewrites of `w`: `(c, d, t, d·t)` for every pair `(c, d)` with `w = c·t`.
pub fn neighbours<'a>(p: &'a Presentation, w: &'a Word) -> impl Iterator<Item = (Step, Word)> + 'a {
    p.pairs().filter_map(move |(c, d)| {
        let t = w.strip_prefix(c)?;
        let next = d.concat(&t);
        Some((Step::new(c.clone(), d.clone(), t), next))
    })
}

/// Searches for a sequence connecting `from` to `to`. Words produced by
/// rewriting longer than `max_word_len` are pruned; the start word itself is
/// exempt. The returned sequence has context `(ε, from; ε, to)` and is a
/// shortest one under the cap.
pub fn find_sequence(
    p: &Presentation,
    from: &Word,
    to: &Word,
    max_word_len: usize,
    max_steps: usize,
) -> SearchOutcome {
    search(p, Quadruple::new(Word::empty(), from.clone(), Word::empty(), to.clone()), max_word_len, max_steps)
}

/// Like [`find_sequence`], connecting `au` to `bv` in the given context.
pub fn find_sequence_for(p: &Presentation, q: &Quadruple, max_word_len: usize, max_steps: usize) -> SearchOutcome {
    search(p, q.clone(), max_word_len, max_steps)
}

fn search(p: &Presentation, context: Quadruple, max_word_len: usize, max_steps: usize) -> SearchOutcome {
    let start = context.left();
    let goal = context.right();
    if start == goal {
        return SearchOutcome::Found(HSequence::new(context, Vec::new()));
    }
    let mut parent: HashMap<Word, Option<(Word, Step)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut truncated = false;
    while let Some((w, depth)) = queue.pop_front() {
        if depth == max_steps {
            truncated = true;
            continue;
        }
        for (step, next) in neighbours(p, &w) {
            if next.len() > max_word_len || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((w.clone(), step)));
            if next == goal {
                return SearchOutcome::Found(HSequence::new(context, trace(&parent, &next)));
            }
            queue.push_back((next, depth + 1));
        }
    }
    SearchOutcome::NotFound { exhaustive: !truncated }
}

fn trace(parent: &HashMap<Word, Option<(Word, Step)>>, end: &Word) -> Vec<Step> {
    let mut steps = Vec::new();
    let mut cur = end;
    while let Some(Some((prev, step))) = parent.get(cur) {
        steps.push(step.clone());
        cur = prev;
    }
    steps.reverse();
    steps
}

/// Every word reachable from `w` through words of length at most `max_word_len`.
pub fn reachable_set(p: &Presentation, w: &Word, max_word_len: usize) -> Vec<Word> {
    let mut seen = std::collections::BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for (_, next) in neighbours(p, &cur) {
            if next.len() <= max_word_len && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::verify_sequence;
    use crate::word::Alphabet;

    fn pres(raw: &[(&str, &str)]) -> Presentation {
        Presentation::parse(Alphabet::from_chars("ab").unwrap(), raw).unwrap()
    }

    #[test]
    fn reflexive_search_is_empty_sequence() {
        let p = pres(&[("a", "b")]);
        let w = p.parse_word("aba").unwrap();
        let s = find_sequence(&p, &w, &w, 0, 0);
        assert_eq!(s.found().unwrap().steps, vec![]);
    }

    #[test]
    fn single_rewrite_found() {
        let p = pres(&[("ab", "ba")]);
        let w = |s| p.parse_word(s).unwrap();
        let s = find_sequence(&p, &w("abb"), &w("bab"), 6, 8);
        let seq = s.found().unwrap();
        assert_eq!(seq.steps, vec![Step::new(w("ab"), w("ba"), w("b"))]);
        assert!(verify_sequence(&p, seq));
    }

    #[test]
    fn certified_negative() {
        let p = pres(&[("a", "b")]);
        let w = |s| p.parse_word(s).unwrap();
        assert_eq!(
            find_sequence(&p, &w("ab"), &w("ba"), 6, 8),
            SearchOutcome::NotFound { exhaustive: true }
        );
        let reach: Vec<String> = reachable_set(&p, &w("ab"), 6).iter().map(|x| p.render(x)).collect();
        assert_eq!(reach, ["ab", "bb"]);
    }

    #[test]
    fn step_bound_marks_search_inexhaustive() {
        let p = pres(&[("", "a")]);
        let w = |s| p.parse_word(s).unwrap();
        assert_eq!(
            find_sequence(&p, &w("b"), &w("aaab"), 10, 2),
            SearchOutcome::NotFound { exhaustive: false }
        );
        assert!(find_sequence(&p, &w("b"), &w("aaab"), 10, 3).found().is_some());
    }
}
