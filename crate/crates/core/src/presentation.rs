//! The symmetrized generating set `H` of a right congruence on `Ω*`.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::word::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    pairs: BTreeSet<(Word, Word)>,
    max_left_len: usize,
}

/// On-disk form. Pairs are listed in one direction only; the loader
/// symmetrizes them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub alphabet: Vec<String>,
    pub pairs: Vec<(String, String)>,
}

impl Presentation {
    /// Stores the symmetric closure of `raw_pairs`, dropping reflexive pairs.
    pub fn new(alphabet: Alphabet, raw_pairs: impl IntoIterator<Item = (Word, Word)>) -> Result<Self> {
        let mut pairs = BTreeSet::new();
        for (p, q) in raw_pairs {
            alphabet.check(&p)?;
            alphabet.check(&q)?;
            if p != q {
                pairs.insert((q.clone(), p.clone()));
                pairs.insert((p, q));
            }
        }
        let max_left_len = pairs.iter().map(|(p, _)| p.len()).max().unwrap_or(0);
        Ok(Presentation {
            alphabet,
            pairs,
            max_left_len,
        })
    }

    /// Parses pairs written as strings over single-character symbols.
    pub fn parse(alphabet: Alphabet, raw: &[(&str, &str)]) -> Result<Self> {
        let words = raw
            .iter()
            .map(|(p, q)| Ok((alphabet.parse(p)?, alphabet.parse(q)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Ordered pairs of the symmetrized set, sorted.
    pub fn pairs(&self) -> impl Iterator<Item = &(Word, Word)> {
        self.pairs.iter()
    }

    pub fn contains(&self, p: &Word, q: &Word) -> bool {
        // BTreeSet<(Word, Word)> needs an owned key for lookup.
        self.pairs.contains(&(p.clone(), q.clone()))
    }

    /// `|H|`, counting ordered pairs of the symmetrized set.
    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// `K`, the longest left-hand side (0 when `H` is empty).
    pub fn k(&self) -> usize {
        self.max_left_len
    }

    /// Distinct words occurring in `H`, shortlex order.
    pub fn left_sides(&self) -> BTreeSet<Word> {
        self.pairs.iter().map(|(p, _)| p.clone()).collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse(text)
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet.render(w)
    }

    pub fn from_file_form(file: &PresentationFile) -> Result<Self> {
        let alphabet = Alphabet::new(file.alphabet.iter().cloned())?;
        let raw: Vec<(&str, &str)> = file
            .pairs
            .iter()
            .map(|(p, q)| (p.as_str(), q.as_str()))
            .collect();
        Self::parse(alphabet, &raw)
    }

    /// One entry per unordered pair, smaller word first.
    pub fn to_file_form(&self) -> PresentationFile {
        PresentationFile {
            alphabet: self.alphabet.spellings().to_vec(),
            pairs: self
                .pairs
                .iter()
                .filter(|(p, q)| p < q)
                .map(|(p, q)| (self.render(p), self.render(q)))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text)?;
        Self::from_file_form(&file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// The presentations used throughout the test-suite and by `verify`, all over `{a, b}`.
pub fn bundled() -> Vec<(&'static str, Presentation)> {
    let specs: [(&str, &[(&str, &str)]); 5] = [
        ("empty", &[]),
        ("a=b", &[("a", "b")]),
        ("ab=ba", &[("ab", "ba")]),
        ("a=bb", &[("a", "bb")]),
        ("ab=ba,bab=bb", &[("ab", "ba"), ("bab", "bb")]),
    ];
    specs
        .iter()
        .map(|(name, raw)| {
            let al = Alphabet::from_chars("ab").expect("static alphabet");
            (*name, Presentation::parse(al, raw).expect("static presentation"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn symmetric_closure_and_k() {
        let p = Presentation::parse(ab(), &[("ab", "ba")]).unwrap();
        let w = |s| p.parse_word(s).unwrap();
        let pairs: Vec<_> = p.pairs().cloned().collect();
        assert_eq!(pairs, vec![(w("ab"), w("ba")), (w("ba"), w("ab"))]);
        assert_eq!(p.k(), 2);
        assert_eq!(p.pair_count(), 2);
    }

    #[test]
    fn empty_presentation() {
        let p = Presentation::parse(ab(), &[]).unwrap();
        assert_eq!(p.pair_count(), 0);
        assert_eq!(p.k(), 0);
    }

    #[test]
    fn dedupe_and_drop_reflexive() {
        let p = Presentation::parse(ab(), &[("a", "b"), ("b", "a"), ("a", "a")]).unwrap();
        assert_eq!(p.pair_count(), 2);
        assert_eq!(p.k(), 1);
    }

    #[test]
    fn pair_count_examples() {
        assert_eq!(Presentation::parse(ab(), &[("a", "b"), ("ab", "ba")]).unwrap().pair_count(), 4);
    }

    #[test]
    fn rejects_foreign_symbols() {
        assert!(matches!(
            Presentation::parse(ab(), &[("ac", "b")]),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"alphabet": ["a","b"], "pairs": [["ab","ba"], ["", "b"]]}"#;
        let p = Presentation::from_json(text).unwrap();
        assert_eq!(p.pair_count(), 4);
        assert_eq!(p.k(), 2);
        let again = Presentation::from_file_form(&p.to_file_form()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn k_is_max_over_all_components() {
        let p = Presentation::parse(ab(), &[("a", "bbb")]).unwrap();
        assert_eq!(p.k(), 3);
    }
}
