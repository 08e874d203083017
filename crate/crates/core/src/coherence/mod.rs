//! Finite generating sets witnessing coherence of `Ω*` for a finitely
//! generated right congruence `ρ = ⟨H⟩`: the annihilator congruence
//! `r(aρ) = {(u, v) : au ρ av}` and the subact `(aρ)S ∩ (bρ)S`.

mod annihilator;
mod intersection;
mod report;

pub use annihilator::{
    annihilator_generators, candidate_pair_count, AnnihilatorGenerators, AnnihilatorMode, GeneratedCongruence,
};
pub use intersection::{intersection_generators, IntersectionGenerators};
pub use report::{witness_report, Certification, ReportOptions, WitnessReport};

use serde::Serialize;

use crate::closure::member;
use crate::error::Result;
use crate::presentation::Presentation;
use crate::word::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceBounds {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "K_prime")]
    pub k_prime: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "N")]
    pub n: usize,
    /// `3N`: the annihilator generators have `|u| + |v|` at most this.
    pub limit: usize,
}

/// `K' = max(K, |a|) + 1`, `L = 2|H| + 2`, `N = K'L`, `limit = 3N`, with
/// `|H|` the number of ordered pairs in the symmetrized set.
pub fn compute_bounds(p: &Presentation, a: &Word) -> CoherenceBounds {
    let k = p.k();
    let k_prime = k.max(a.len()) + 1;
    let l = 2 * p.pair_count() + 2;
    let n = k_prime * l;
    CoherenceBounds {
        k,
        k_prime,
        l,
        n,
        limit: 3 * n,
    }
}

/// Decides `(u, v) ∈ ⟨G⟩` by treating `G` as a presentation.
pub fn generated_member(alphabet: &Alphabet, g: &[(Word, Word)], u: &Word, v: &Word) -> Result<bool> {
    let p = Presentation::new(alphabet.clone(), g.iter().cloned())?;
    member(&p, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(raw: &[(&str, &str)]) -> Presentation {
        Presentation::parse(Alphabet::from_chars("ab").unwrap(), raw).unwrap()
    }

    #[test]
    fn bounds_examples() {
        let b = compute_bounds(&pres(&[]), &Word::empty());
        assert_eq!((b.k, b.k_prime, b.l, b.n, b.limit), (0, 1, 2, 2, 6));
        let b = compute_bounds(&pres(&[("a", "b")]), &Word::empty());
        assert_eq!((b.k, b.k_prime, b.l, b.n, b.limit), (1, 2, 6, 12, 36));
        let p = pres(&[("ab", "ba")]);
        let b = compute_bounds(&p, &p.parse_word("b").unwrap());
        assert_eq!((b.k, b.k_prime, b.l, b.n, b.limit), (2, 3, 6, 18, 54));
    }

    #[test]
    fn generated_member_examples() {
        let al = Alphabet::from_chars("ab").unwrap();
        let w = |s| al.parse(s).unwrap();
        assert!(generated_member(&al, &[], &w("ab"), &w("ab")).unwrap());
        assert!(!generated_member(&al, &[], &w("ab"), &w("b")).unwrap());
        let g = [(w("a"), w("b"))];
        assert!(generated_member(&al, &g, &w("ab"), &w("bb")).unwrap());
        assert!(!generated_member(&al, &g, &w("ab"), &w("ba")).unwrap());
    }
}
