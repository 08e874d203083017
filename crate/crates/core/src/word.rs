//! Words over a finite alphabet and the suffix algebra used by H-sequences.
//!
//! Symbols are indices into an [`Alphabet`]; the alphabet owns the spellings.
//! A [`Word`] is therefore a plain index sequence and all operations on words
//! are total. Symbol-range checks happen where words enter the system
//! ([`Alphabet::parse`], [`Alphabet::check`]).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::UnknownSymbol(String::new()));
            }
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        if symbols.len() > u16::MAX as usize {
            return Err(Error::AlphabetMismatch(symbols.len(), u16::MAX as usize));
        }
        Ok(Alphabet { symbols })
    }

    /// One symbol per character of `chars`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(|i| Symbol(i as u16))
    }

    pub fn spelling(&self, s: Symbol) -> &str {
        &self.symbols[s.index()]
    }

    pub fn spellings(&self) -> &[String] {
        &self.symbols
    }

    pub fn lookup(&self, spelling: &str) -> Option<Symbol> {
        self.symbols
            .iter()
            .position(|s| s == spelling)
            .map(|i| Symbol(i as u16))
    }

    /// Parses a word written as a string of single-character symbols.
    /// The empty string is ε.
    pub fn parse(&self, text: &str) -> Result<Word> {
        if let Some(long) = self.symbols.iter().find(|s| s.chars().count() != 1) {
            return Err(Error::MultiCharSymbol(long.clone()));
        }
        text.chars()
            .map(|ch| {
                let mut buf = [0u8; 4];
                let spelled: &str = ch.encode_utf8(&mut buf);
                self.lookup(spelled)
                    .ok_or_else(|| Error::UnknownSymbol(spelled.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|s| s.index() >= self.len()) {
            Some(s) => Err(Error::AlphabetMismatch(s.index(), self.len())),
            None => Ok(()),
        }
    }

    pub fn render(&self, w: &Word) -> String {
        w.0.iter().map(|&s| self.spelling(s)).collect()
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for s in self.symbols() {
                    next.push(w.pushed(s));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn words_of_len(&self, len: usize) -> Vec<Word> {
        let mut layer = vec![Word::empty()];
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|w| self.symbols().map(move |s| w.pushed(s)))
                .collect();
        }
        layer
    }
}

/// An element of the free monoid. Ordered shortlex: by length, then
/// lexicographically by symbol index.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices(ix: &[u16]) -> Self {
        Word(ix.iter().map(|&i| Symbol(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn pushed(&self, s: Symbol) -> Word {
        let mut v = self.0.clone();
        v.push(s);
        Word(v)
    }

    pub fn has_prefix(&self, p: &Word) -> bool {
        self.0.starts_with(&p.0)
    }

    pub fn has_suffix(&self, x: &Word) -> bool {
        self.0.ends_with(&x.0)
    }

    /// `y·x⁻¹`: the word `z` with `z·x = y`, if `x` is a suffix of `self`.
    pub fn strip_suffix(&self, x: &Word) -> Option<Word> {
        self.0.strip_suffix(x.0.as_slice()).map(|z| Word(z.to_vec()))
    }

    /// `p⁻¹·y`: the word `t` with `p·t = y`, if `p` is a prefix of `self`.
    pub fn strip_prefix(&self, p: &Word) -> Option<Word> {
        self.0.strip_prefix(p.0.as_slice()).map(|t| Word(t.to_vec()))
    }

    /// The last `len` letters, or the whole word if it is shorter.
    pub fn suffix(&self, len: usize) -> Word {
        Word(self.0[self.len().saturating_sub(len)..].to_vec())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self.0.iter().map(|s| s.0.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

pub fn concat(x: &Word, y: &Word) -> Word {
    x.concat(y)
}

pub fn strip_suffix(y: &Word, x: &Word) -> Option<Word> {
    y.strip_suffix(x)
}

/// The longest word that is a suffix of every word in `ws` (possibly ε).
pub fn longest_common_suffix<'a, I>(ws: I) -> Result<Word>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut iter = ws.into_iter();
    let first = iter.next().ok_or(Error::EmptyWordList)?;
    let mut len = first.len();
    for w in iter {
        len = first.0[first.len() - len..]
            .iter()
            .rev()
            .zip(w.0.iter().rev())
            .take_while(|(x, y)| x == y)
            .count();
    }
    Ok(first.suffix(len))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn concat_examples() {
        let al = ab();
        let w = |s| al.parse(s).unwrap();
        assert_eq!(concat(&w("ab"), &w("")), w("ab"));
        assert_eq!(concat(&w(""), &w("")), w(""));
        assert_eq!(concat(&w("a"), &w("bb")), w("abb"));
    }

    #[test]
    fn strip_suffix_examples() {
        let al = ab();
        let w = |s| al.parse(s).unwrap();
        assert_eq!(strip_suffix(&w("abb"), &w("b")), Some(w("ab")));
        assert_eq!(strip_suffix(&w("abb"), &w("")), Some(w("abb")));
        assert_eq!(strip_suffix(&w("abb"), &w("ab")), None);
    }

    #[test]
    fn longest_common_suffix_examples() {
        let al = ab();
        let w = |s| al.parse(s).unwrap();
        assert_eq!(longest_common_suffix(&[w("bb"), w("b")]).unwrap(), w("b"));
        assert_eq!(longest_common_suffix(&[w("ab"), w("ba")]).unwrap(), w(""));
        assert_eq!(
            longest_common_suffix(&[w("abb"), w("bb"), w("b")]).unwrap(),
            w("b")
        );
        assert!(matches!(
            longest_common_suffix(std::iter::empty::<&Word>()),
            Err(Error::EmptyWordList)
        ));
    }

    #[test]
    fn alphabet_validation() {
        assert!(matches!(Alphabet::from_chars(""), Err(Error::EmptyAlphabet)));
        assert!(matches!(
            Alphabet::from_chars("aba"),
            Err(Error::DuplicateSymbol(_))
        ));
        let al = ab();
        assert!(matches!(al.parse("abc"), Err(Error::UnknownSymbol(_))));
        let multi = Alphabet::new(["x", "yy"]).unwrap();
        assert!(matches!(multi.parse("x"), Err(Error::MultiCharSymbol(_))));
        assert!(al.check(&Word::from_indices(&[0, 2])).is_err());
        assert_eq!(al.render(&al.parse("bab").unwrap()), "bab");
    }

    #[test]
    fn shortlex_enumeration() {
        let al = ab();
        let ws = al.words_up_to(2);
        let rendered: Vec<String> = ws.iter().map(|w| al.render(w)).collect();
        assert_eq!(rendered, ["", "a", "b", "aa", "ab", "ba", "bb"]);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(al.words_of_len(3).len(), 8);
    }
}
