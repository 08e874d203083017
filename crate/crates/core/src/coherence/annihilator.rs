use std::collections::HashMap;

use serde::Serialize;

use super::{compute_bounds, CoherenceBounds};
use crate::automaton::Dfa;
use crate::closure::class_automaton;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnnihilatorMode {
    /// Every pair with `|u| + |v| ≤ 3N` in `r(aρ)`.
    PaperFaithful,
    /// Greedy: pairs in enumeration order, kept only when not already in `⟨G⟩`.
    Reduced,
    /// Every pair of `r(aρ)` up to the given total length.
    LengthCapped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorGenerators {
    pub a: Word,
    pub bounds: CoherenceBounds,
    pub mode: AnnihilatorMode,
    /// Pairs with `|u| + |v|` up to this were examined.
    pub enumerated_to: usize,
    /// Whether `enumerated_to` reached `3N`, so `⟨pairs⟩ = r(aρ)`.
    pub complete: bool,
    /// Unordered pairs stored as `(u, v)` with `u < v` shortlex, sorted by
    /// `|u| + |v|` and then `(u, v)`.
    pub pairs: Vec<(Word, Word)>,
}

/// Ordered word pairs `(u, v)` with `|u| + |v| ≤ total` over `sigma` letters:
/// `Σ_{s ≤ total} (s + 1)·σ^s`, saturating.
pub fn candidate_pair_count(sigma: usize, total: usize) -> u128 {
    let mut sum: u128 = 0;
    let mut power: u128 = 1;
    for s in 0..=total {
        sum = sum.saturating_add(power.saturating_mul(s as u128 + 1));
        power = power.saturating_mul(sigma as u128);
    }
    sum
}

/// Incrementally grown `⟨G⟩` with cached class automata.
pub struct GeneratedCongruence {
    alphabet: Alphabet,
    pairs: Vec<(Word, Word)>,
    presentation: Presentation,
    classes: HashMap<Word, Dfa>,
}

impl GeneratedCongruence {
    pub fn new(alphabet: &Alphabet) -> Result<Self> {
        Ok(GeneratedCongruence {
            alphabet: alphabet.clone(),
            pairs: Vec::new(),
            presentation: Presentation::new(alphabet.clone(), [])?,
            classes: HashMap::new(),
        })
    }

    pub fn from_pairs(alphabet: &Alphabet, pairs: &[(Word, Word)]) -> Result<Self> {
        let mut g = Self::new(alphabet)?;
        g.pairs = pairs.to_vec();
        g.presentation = Presentation::new(alphabet.clone(), g.pairs.iter().cloned())?;
        Ok(g)
    }

    pub fn contains(&mut self, u: &Word, v: &Word) -> Result<bool> {
        if u == v {
            return Ok(true);
        }
        if !self.classes.contains_key(u) {
            let dfa = class_automaton(&self.presentation, u)?.minimize();
            self.classes.insert(u.clone(), dfa);
        }
        Ok(self.classes[u].accepts(v))
    }

    pub fn add(&mut self, u: Word, v: Word) -> Result<()> {
        self.pairs.push((u, v));
        self.presentation = Presentation::new(self.alphabet.clone(), self.pairs.iter().cloned())?;
        self.classes.clear();
        Ok(())
    }

    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.pairs
    }
}

/// All `(u, v)` with `u < v`, `|u| + |v| ≤ total` and `au ρ av`, in
/// enumeration order.
fn annihilator_pairs(p: &Presentation, a: &Word, total: usize) -> Result<Vec<(Word, Word)>> {
    let mut out = Vec::new();
    // u < v shortlex forces |u| ≤ |v|.
    for u in p.alphabet().words_up_to(total / 2) {
        let dfa = class_automaton(p, &a.concat(&u))?.minimize();
        let after_a = dfa.run_from(dfa.initial, a).expect("class of au contains au");
        for v in dfa.accepted_from(after_a, total - u.len()) {
            if u < v {
                out.push((u.clone(), v));
            }
        }
    }
    out.sort_by(|(u1, v1), (u2, v2)| {
        (u1.len() + v1.len(), u1, v1).cmp(&(u2.len() + v2.len(), u2, v2))
    });
    Ok(out)
}

/// Generators of `r(aρ)`.
///
/// `cap` is required in [`AnnihilatorMode::LengthCapped`]; in
/// [`AnnihilatorMode::Reduced`] it optionally stops the greedy pass early at
/// `min(cap, 3N)`; [`AnnihilatorMode::PaperFaithful`] ignores it. Every mode
/// refuses to start when the number of candidate pairs exceeds `budget`.
pub fn annihilator_generators(
    p: &Presentation,
    a: &Word,
    mode: AnnihilatorMode,
    cap: Option<usize>,
    budget: u128,
) -> Result<AnnihilatorGenerators> {
    p.alphabet().check(a)?;
    let bounds = compute_bounds(p, a);
    let total = match (mode, cap) {
        (AnnihilatorMode::PaperFaithful, _) => bounds.limit,
        (AnnihilatorMode::Reduced, cap) => cap.map_or(bounds.limit, |c| c.min(bounds.limit)),
        (AnnihilatorMode::LengthCapped, Some(c)) => c,
        (AnnihilatorMode::LengthCapped, None) => return Err(Error::MissingCap),
    };
    let required = candidate_pair_count(p.alphabet().len(), total);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let sound = annihilator_pairs(p, a, total)?;
    let pairs = match mode {
        AnnihilatorMode::Reduced => {
            let mut g = GeneratedCongruence::new(p.alphabet())?;
            for (u, v) in sound {
                if !g.contains(&u, &v)? {
                    g.add(u, v)?;
                }
            }
            g.pairs
        }
        _ => sound,
    };
    Ok(AnnihilatorGenerators {
        a: a.clone(),
        bounds,
        mode,
        enumerated_to: total,
        complete: total >= bounds.limit,
        pairs,
    })
}
