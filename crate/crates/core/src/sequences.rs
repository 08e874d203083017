//! H-sequences, irreducibility, the one-step reduction and the factorisation
//! of `u` obtained by iterating it.
//!
//! A sequence `(c₁,d₁,t₁; …; cₙ,dₙ,tₙ)` in context `(a, u; b, v)` satisfies
//! `au = c₁t₁`, `dᵢtᵢ = cᵢ₊₁tᵢ₊₁` and `dₙtₙ = bv`. Positions are 1-based in
//! the public API and use the boundary conventions `d₀ = a`, `t₀ = u`,
//! `cₙ₊₁ = b`, `tₙ₊₁ = v`.

use serde::{Deserialize, Serialize};

use crate::closure::member;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{longest_common_suffix, Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadruple {
    pub a: Word,
    pub u: Word,
    pub b: Word,
    pub v: Word,
}

impl Quadruple {
    pub fn new(a: Word, u: Word, b: Word, v: Word) -> Self {
        Quadruple { a, u, b, v }
    }

    pub fn left(&self) -> Word {
        self.a.concat(&self.u)
    }

    pub fn right(&self) -> Word {
        self.b.concat(&self.v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub c: Word,
    pub d: Word,
    pub t: Word,
}

impl Step {
    pub fn new(c: Word, d: Word, t: Word) -> Self {
        Step { c, d, t }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HSequence {
    pub context: Quadruple,
    pub steps: Vec<Step>,
}

impl HSequence {
    pub fn new(context: Quadruple, steps: Vec<Step>) -> Self {
        HSequence { context, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `cᵢ` for `1 ≤ i ≤ n + 1`, with `cₙ₊₁ = b`.
    pub fn c(&self, i: usize) -> &Word {
        if i == self.steps.len() + 1 {
            &self.context.b
        } else {
            &self.steps[i - 1].c
        }
    }

    /// `tᵢ` for `0 ≤ i ≤ n + 1`, with `t₀ = u` and `tₙ₊₁ = v`.
    pub fn t(&self, i: usize) -> &Word {
        if i == 0 {
            &self.context.u
        } else if i == self.steps.len() + 1 {
            &self.context.v
        } else {
            &self.steps[i - 1].t
        }
    }

    /// `dᵢ` for `0 ≤ i ≤ n`, with `d₀ = a`.
    pub fn d(&self, i: usize) -> &Word {
        if i == 0 {
            &self.context.a
        } else {
            &self.steps[i - 1].d
        }
    }

    /// The tails `u, t₁, …, tₙ, v`.
    pub fn tails(&self) -> Vec<&Word> {
        (0..=self.steps.len() + 1).map(|i| self.t(i)).collect()
    }

    /// The words `au = c₁t₁`, `d₁t₁`, …, `dₙtₙ = bv` visited by the chain.
    pub fn chain_words(&self) -> Vec<Word> {
        (0..=self.steps.len()).map(|i| self.d(i).concat(self.t(i))).collect()
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> SequenceJson {
        let r = |w: &Word| alphabet.render(w);
        SequenceJson {
            a: r(&self.context.a),
            u: r(&self.context.u),
            b: r(&self.context.b),
            v: r(&self.context.v),
            steps: self.steps.iter().map(|s| (r(&s.c), r(&s.d), r(&s.t))).collect(),
        }
    }

    pub fn from_json(alphabet: &Alphabet, json: &SequenceJson) -> Result<Self> {
        let w = |s: &str| alphabet.parse(s);
        let context = Quadruple::new(w(&json.a)?, w(&json.u)?, w(&json.b)?, w(&json.v)?);
        let steps = json
            .steps
            .iter()
            .map(|(c, d, t)| Ok(Step::new(w(c)?, w(d)?, w(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(HSequence::new(context, steps))
    }
}

/// File form: `{"a":…,"u":…,"b":…,"v":…,"steps":[[c,d,t],…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub a: String,
    pub u: String,
    pub b: String,
    pub v: String,
    pub steps: Vec<(String, String, String)>,
}

/// Checks generator membership of every step and all chain equalities.
pub fn verify_sequence(p: &Presentation, s: &HSequence) -> bool {
    let al = p.alphabet();
    let ctx = &s.context;
    let words_ok = [&ctx.a, &ctx.u, &ctx.b, &ctx.v]
        .into_iter()
        .chain(s.steps.iter().flat_map(|st| [&st.c, &st.d, &st.t]))
        .all(|w| al.check(w).is_ok());
    if !words_ok {
        return false;
    }
    if !s.steps.iter().all(|st| p.contains(&st.c, &st.d)) {
        return false;
    }
    // dᵢtᵢ = cᵢ₊₁tᵢ₊₁ for 0 ≤ i ≤ n, with d₀t₀ = au and cₙ₊₁tₙ₊₁ = bv.
    (0..=s.steps.len()).all(|i| s.d(i).concat(s.t(i)) == s.c(i + 1).concat(s.t(i + 1)))
}

/// No common nonempty suffix among `u, t₁, …, tₙ, v`.
pub fn is_irreducible_sequence(p: &Presentation, s: &HSequence) -> Result<bool> {
    if !verify_sequence(p, s) {
        return Err(Error::Precondition("not a valid H-sequence".into()));
    }
    Ok(tails_irreducible(s))
}

fn tails_irreducible(s: &HSequence) -> bool {
    longest_common_suffix(s.tails())
        .map(|x| x.is_empty())
        .unwrap_or(true)
}

/// The alternative irreducibility test: some tail is ε.
pub fn has_empty_tail(s: &HSequence) -> bool {
    s.tails().iter().any(|t| t.is_empty())
}

pub fn is_irreducible_quadruple(p: &Presentation, q: &Quadruple) -> Result<bool> {
    if !member(p, &q.left(), &q.right())? {
        return Ok(false);
    }
    let common = longest_common_suffix([&q.u, &q.v])?;
    for len in 1..=common.len() {
        let x = common.suffix(len);
        let u = q.u.strip_suffix(&x).expect("x is a suffix of u");
        let v = q.v.strip_suffix(&x).expect("x is a suffix of v");
        if member(p, &q.a.concat(&u), &q.b.concat(&v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionOutcome {
    /// The empty sequence is irreducible with respect to `(a, u; c₁, t₁)`.
    Empty,
    /// `index` is the least `i ≥ 1` with `tᵢ₊₁ = ε`; `x` is the longest common
    /// suffix of `t₀, …, tᵢ`; `truncated` is `(c₁,d₁,t₁x⁻¹; …; cᵢ₋₁,dᵢ₋₁,tᵢ₋₁x⁻¹)`
    /// in context `(a, ux⁻¹; cᵢ, tᵢx⁻¹)`.
    Strip {
        index: usize,
        x: Word,
        truncated: HSequence,
    },
}

fn check_irreducible(p: &Presentation, s: &HSequence) -> Result<()> {
    if !is_irreducible_sequence(p, s)? {
        return Err(Error::Precondition("H-sequence is not irreducible".into()));
    }
    Ok(())
}

/// One reduction step on a valid irreducible sequence.
pub fn reduce_step(p: &Presentation, s: &HSequence) -> Result<ReductionOutcome> {
    check_irreducible(p, s)?;
    Ok(reduce_unchecked(s))
}

fn reduce_unchecked(s: &HSequence) -> ReductionOutcome {
    // c₁t₁ = au, so u and t₁ are suffix-comparable: the empty sequence is
    // irreducible for (a, u; c₁, t₁) iff one of them is ε.
    if s.t(0).is_empty() || s.t(1).is_empty() {
        return ReductionOutcome::Empty;
    }
    let n = s.len();
    let index = (1..=n)
        .find(|&i| s.t(i + 1).is_empty())
        .expect("an irreducible sequence with u, t₁ ≠ ε has a later empty tail");
    let x = longest_common_suffix((0..=index).map(|j| s.t(j))).expect("nonempty list");
    let strip = |w: &Word| w.strip_suffix(&x).expect("x is a common suffix");
    let steps = s.steps[..index - 1]
        .iter()
        .map(|st| Step::new(st.c.clone(), st.d.clone(), strip(&st.t)))
        .collect();
    let context = Quadruple::new(
        s.context.a.clone(),
        strip(&s.context.u),
        s.c(index).clone(),
        strip(s.t(index)),
    );
    ReductionOutcome::Strip {
        index,
        x,
        truncated: HSequence::new(context, steps),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPart {
    /// `x_j`.
    pub x: Word,
    /// `ℓ_j`, an index into `c₁, …, cₙ₊₁` of the original sequence.
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    EmptyU,
    /// `parts[0]` is `x₁`, the rightmost factor; `u = x_k ⋯ x₁`.
    Parts(Vec<FactorPart>),
}

impl Factorization {
    pub fn parts(&self) -> &[FactorPart] {
        match self {
            Factorization::EmptyU => &[],
            Factorization::Parts(p) => p,
        }
    }

    /// `x_k ⋯ x₁`.
    pub fn recompose(&self) -> Word {
        self.parts()
            .iter()
            .rev()
            .fold(Word::empty(), |acc, part| acc.concat(&part.x))
    }
}

/// Factorises `u` by repeatedly stripping the suffix found by [`reduce_step`]
/// and continuing on the truncated sequence. Truncation keeps `c₁, …, cᵢ`, so
/// indices of the truncated sequence are indices of the original.
pub fn factorize(p: &Presentation, s: &HSequence) -> Result<Factorization> {
    check_irreducible(p, s)?;
    if s.context.u.is_empty() {
        return Ok(Factorization::EmptyU);
    }
    let mut parts = Vec::new();
    let mut cur = s.clone();
    while !cur.context.u.is_empty() {
        match reduce_unchecked(&cur) {
            ReductionOutcome::Empty => {
                parts.push(FactorPart {
                    x: cur.context.u.clone(),
                    index: 1,
                });
                break;
            }
            ReductionOutcome::Strip { index, x, truncated } => {
                parts.push(FactorPart { x, index: index + 1 });
                cur = truncated;
            }
        }
    }
    Ok(Factorization::Parts(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(raw: &[(&str, &str)]) -> Presentation {
        Presentation::parse(Alphabet::from_chars("ab").unwrap(), raw).unwrap()
    }

    fn seq(p: &Presentation, ctx: [&str; 4], steps: &[[&str; 3]]) -> HSequence {
        let w = |s: &str| p.parse_word(s).unwrap();
        HSequence::new(
            Quadruple::new(w(ctx[0]), w(ctx[1]), w(ctx[2]), w(ctx[3])),
            steps.iter().map(|[c, d, t]| Step::new(w(c), w(d), w(t))).collect(),
        )
    }

    #[test]
    fn verify_examples() {
        let p = pres(&[("ab", "ba")]);
        assert!(verify_sequence(&p, &seq(&p, ["ab", "", "ab", ""], &[])));
        assert!(verify_sequence(&p, &seq(&p, ["a", "b", "b", "a"], &[["ab", "ba", ""]])));
        assert!(!verify_sequence(&p, &seq(&p, ["a", "b", "b", "a"], &[["ab", "ba", "b"]])));
        // Not a generator pair.
        assert!(!verify_sequence(&p, &seq(&p, ["a", "a", "b", "b"], &[["aa", "bb", ""]])));
    }

    #[test]
    fn irreducible_sequence_examples() {
        let p = pres(&[("a", "bb")]);
        let s = seq(&p, ["", "aa", "", "bba"], &[["a", "bb", "a"]]);
        assert!(verify_sequence(&p, &s));
        assert!(!is_irreducible_sequence(&p, &s).unwrap());

        let p = pres(&[("ab", "ba"), ("bab", "bb")]);
        let s = seq(&p, ["a", "bb", "b", "b"], &[["ab", "ba", "b"], ["bab", "bb", ""]]);
        assert!(is_irreducible_sequence(&p, &s).unwrap());

        let p = pres(&[("ab", "ba")]);
        let s = seq(&p, ["a", "b", "b", "a"], &[["ab", "ba", ""]]);
        assert!(is_irreducible_sequence(&p, &s).unwrap());
        let bad = seq(&p, ["a", "b", "b", "a"], &[["ab", "ba", "b"]]);
        assert!(matches!(is_irreducible_sequence(&p, &bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn irreducible_quadruple_examples() {
        let p = pres(&[("ab", "ba")]);
        let w = |s| p.parse_word(s).unwrap();
        assert!(is_irreducible_quadruple(&p, &Quadruple::new(w("ab"), w(""), w("ba"), w(""))).unwrap());
        assert!(!is_irreducible_quadruple(&p, &Quadruple::new(w("a"), w("bb"), w("b"), w("ab"))).unwrap());
        let p = pres(&[("ab", "ba"), ("bab", "bb")]);
        assert!(is_irreducible_quadruple(&p, &Quadruple::new(w("a"), w("bb"), w("b"), w("b"))).unwrap());
        // Not even congruent.
        assert!(!is_irreducible_quadruple(&p, &Quadruple::new(w("a"), w(""), w("b"), w(""))).unwrap());
    }

    #[test]
    fn reduce_step_examples() {
        let p = pres(&[("ab", "ba")]);
        let s = seq(&p, ["a", "b", "b", "a"], &[["ab", "ba", ""]]);
        assert_eq!(reduce_step(&p, &s).unwrap(), ReductionOutcome::Empty);

        let p = pres(&[("a", "bb")]);
        let s = seq(&p, ["", "bb", "", "a"], &[["bb", "a", ""]]);
        assert_eq!(reduce_step(&p, &s).unwrap(), ReductionOutcome::Empty);

        let p = pres(&[("ab", "ba"), ("bab", "bb")]);
        let s = seq(&p, ["a", "bb", "b", "b"], &[["ab", "ba", "b"], ["bab", "bb", ""]]);
        let expected_trunc = seq(&p, ["a", "b", "ab", ""], &[]);
        match reduce_step(&p, &s).unwrap() {
            ReductionOutcome::Strip { index, x, truncated } => {
                assert_eq!(index, 1);
                assert_eq!(x, p.parse_word("b").unwrap());
                assert_eq!(truncated, expected_trunc);
                assert!(verify_sequence(&p, &truncated));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn factorize_examples() {
        let p = pres(&[("ab", "ba"), ("bab", "bb")]);
        let b = p.parse_word("b").unwrap();
        let s = seq(&p, ["a", "bb", "b", "b"], &[["ab", "ba", "b"], ["bab", "bb", ""]]);
        let f = factorize(&p, &s).unwrap();
        assert_eq!(
            f.parts(),
            [FactorPart { x: b.clone(), index: 2 }, FactorPart { x: b.clone(), index: 1 }]
        );
        assert_eq!(f.recompose(), s.context.u);

        let p = pres(&[("ab", "ba")]);
        let s = seq(&p, ["a", "b", "b", "a"], &[["ab", "ba", ""]]);
        assert_eq!(
            factorize(&p, &s).unwrap(),
            Factorization::Parts(vec![FactorPart { x: b, index: 1 }])
        );

        let s = seq(&p, ["ab", "", "ba", ""], &[["ab", "ba", ""]]);
        assert_eq!(factorize(&p, &s).unwrap(), Factorization::EmptyU);
    }

    #[test]
    fn json_round_trip() {
        let p = pres(&[("ab", "ba")]);
        let s = seq(&p, ["a", "b", "b", "a"], &[["ab", "ba", ""]]);
        let text = serde_json::to_string(&s.to_json(p.alphabet())).unwrap();
        assert_eq!(text, r#"{"a":"a","u":"b","b":"b","v":"a","steps":[["ab","ba",""]]}"#);
        let back: SequenceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(HSequence::from_json(p.alphabet(), &back).unwrap(), s);
    }
}
