//! Seeded randomized checks of the closure engine and the H-sequence
//! machinery. Shared by the `verify` subcommand and the test-suite.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::closure::{class_automaton, member};
use crate::error::Result;
use crate::oracle::{find_sequence, find_sequence_for, neighbours, SearchOutcome};
use crate::presentation::Presentation;
use crate::sequences::{
    factorize, has_empty_tail, is_irreducible_sequence, reduce_step, verify_sequence, Factorization, HSequence,
    Quadruple, ReductionOutcome, Step,
};
use crate::word::{Alphabet, Symbol, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut impl Rng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| Symbol(rng.gen_range(0..alphabet.len()) as u16)).collect())
}

/// A presentation over `alphabet` with up to `max_rules` unordered pairs of
/// words of length at most `max_rule_len`.
pub fn random_presentation(
    rng: &mut impl Rng,
    alphabet: &Alphabet,
    max_rules: usize,
    max_rule_len: usize,
) -> Presentation {
    let n = rng.gen_range(0..=max_rules);
    let raw: Vec<(Word, Word)> = (0..n)
        .map(|_| (random_word(rng, alphabet, max_rule_len), random_word(rng, alphabet, max_rule_len)))
        .collect();
    Presentation::new(alphabet.clone(), raw).expect("words drawn from the alphabet")
}

/// Strips the longest common suffix of all tails, giving a sequence that is
/// irreducible with respect to the shortened context.
pub fn make_irreducible(s: &HSequence) -> HSequence {
    let x = crate::word::longest_common_suffix(s.tails()).expect("tails are nonempty");
    let strip = |w: &Word| w.strip_suffix(&x).expect("common suffix");
    HSequence::new(
        Quadruple::new(s.context.a.clone(), strip(&s.context.u), s.context.b.clone(), strip(&s.context.v)),
        s.steps
            .iter()
            .map(|st| Step::new(st.c.clone(), st.d.clone(), strip(&st.t)))
            .collect(),
    )
}

/// A random irreducible H-sequence: a random walk from `au` of up to
/// `max_steps` rewrites through words of length at most `max_word_len`,
/// split as `bv` at a random point, optionally replaced by a shortest
/// sequence found by the search oracle, then made irreducible.
pub fn random_irreducible_sequence(
    rng: &mut impl Rng,
    p: &Presentation,
    max_word_len: usize,
    max_steps: usize,
    use_oracle: bool,
) -> Option<HSequence> {
    let al = p.alphabet();
    let half = max_word_len / 2;
    let a = random_word(rng, al, half);
    let u = random_word(rng, al, max_word_len - a.len());
    let mut cur = a.concat(&u);
    let mut steps = Vec::new();
    let walk_len = rng.gen_range(0..=max_steps);
    for _ in 0..walk_len {
        let options: Vec<(Step, Word)> = neighbours(p, &cur).filter(|(_, w)| w.len() <= max_word_len).collect();
        let Some((step, next)) = options.choose(rng).cloned() else {
            break;
        };
        steps.push(step);
        cur = next;
    }
    let split = rng.gen_range(0..=cur.len());
    let b = Word(cur.symbols()[..split].to_vec());
    let v = Word(cur.symbols()[split..].to_vec());
    let context = Quadruple::new(a, u, b, v);
    let seq = if use_oracle {
        find_sequence_for(p, &context, max_word_len, usize::MAX).found()?.clone()
    } else {
        HSequence::new(context, steps)
    };
    Some(make_irreducible(&seq))
}

fn bound(p: &Presentation, s: &HSequence) -> usize {
    s.context.b.len().max(p.k())
}

/// Checks the one-step reduction's guarantees on a valid irreducible sequence.
pub fn check_reduction(p: &Presentation, s: &HSequence) -> std::result::Result<(), String> {
    let outcome = reduce_step(p, s).map_err(|e| e.to_string())?;
    let bound = bound(p, s);
    let u = &s.context.u;
    match outcome {
        ReductionOutcome::Empty => {
            if u.len() > bound {
                return Err(format!("|u| = {} exceeds max(|b|, K) = {bound}", u.len()));
            }
            if !(u.is_empty() || s.t(1).is_empty()) {
                return Err("empty branch with u ≠ ε and t₁ ≠ ε".into());
            }
        }
        ReductionOutcome::Strip { index, x, truncated } => {
            let n = s.len();
            if !(1..=n).contains(&index) || !s.t(index + 1).is_empty() {
                return Err(format!("index {index} does not have t_(i+1) = ε"));
            }
            if (1..index).any(|j| s.t(j + 1).is_empty()) {
                return Err(format!("index {index} is not minimal"));
            }
            if x.is_empty() || x.len() > bound {
                return Err(format!("|x| = {} outside (0, {bound}]", x.len()));
            }
            if !(0..=index).all(|j| s.t(j).has_suffix(&x)) || !(0..=index).any(|j| s.t(j).len() == x.len()) {
                return Err("x is not the longest common suffix of t₀…tᵢ".into());
            }
            let expected_ctx = Quadruple::new(
                s.context.a.clone(),
                u.strip_suffix(&x).unwrap_or_default(),
                s.c(index).clone(),
                s.t(index).strip_suffix(&x).unwrap_or_default(),
            );
            if truncated.context != expected_ctx || truncated.len() != index - 1 {
                return Err("truncated sequence has the wrong context or length".into());
            }
            if !verify_sequence(p, &truncated) {
                return Err("truncated sequence is not a valid H-sequence".into());
            }
            if !has_empty_tail(&truncated) {
                return Err("truncated sequence is not irreducible".into());
            }
            if !member(p, &s.context.left(), s.c(index + 1)).map_err(|e| e.to_string())? {
                return Err("au is not congruent to c_(i+1)".into());
            }
        }
    }
    Ok(())
}

/// Checks the factorisation's guarantees on a valid irreducible sequence.
pub fn check_factorization(p: &Presentation, s: &HSequence) -> std::result::Result<(), String> {
    let f = factorize(p, s).map_err(|e| e.to_string())?;
    let u = &s.context.u;
    let parts = match &f {
        Factorization::EmptyU if u.is_empty() => return Ok(()),
        Factorization::EmptyU => return Err("EmptyU returned for nonempty u".into()),
        Factorization::Parts(parts) if parts.is_empty() || u.is_empty() => {
            return Err("empty factorisation".into())
        }
        Factorization::Parts(parts) => parts,
    };
    let joined = parts.iter().rev().fold(Word::empty(), |acc, part| acc.concat(&part.x));
    if &joined != u {
        return Err("factors do not recompose u".into());
    }
    let n = s.len();
    let bound = bound(p, s);
    let au = s.context.left();
    let mut prefix = au.clone();
    let mut prev_index = n + 2;
    for part in parts {
        if !(1..=n + 1).contains(&part.index) || part.index >= prev_index {
            return Err(format!("index {} breaks n + 1 ≥ ℓ₁ > … ≥ 1", part.index));
        }
        prev_index = part.index;
        if part.x.is_empty() || part.x.len() > bound {
            return Err(format!("|x| = {} outside (0, {bound}]", part.x.len()));
        }
        if !member(p, &prefix, s.c(part.index)).map_err(|e| e.to_string())? {
            return Err(format!("condition (ii) fails at ℓ = {}", part.index));
        }
        prefix = prefix
            .strip_suffix(&part.x)
            .ok_or_else(|| "factor is not a suffix of the remaining word".to_string())?;
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Word-length cap for sampled instances.
    pub cap: usize,
    /// Instances per presentation.
    pub instances: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub cap: usize,
    pub presentations: Vec<String>,
    pub instances: usize,
    pub checks: BTreeMap<&'static str, usize>,
    pub failures: usize,
    pub counterexample: Option<serde_json::Value>,
}

struct Runner<'a> {
    name: &'a str,
    p: &'a Presentation,
    report: &'a mut VerifyReport,
}

impl Runner<'_> {
    fn record(&mut self, check: &'static str, outcome: std::result::Result<(), String>, instance: serde_json::Value) {
        *self.report.checks.entry(check).or_default() += 1;
        if let Err(reason) = outcome {
            self.report.failures += 1;
            if self.report.counterexample.is_none() {
                self.report.counterexample = Some(json!({
                    "check": check,
                    "reason": reason,
                    "presentation_name": self.name,
                    "presentation": self.p.to_file_form(),
                    "instance": instance,
                }));
            }
        }
    }
}

fn ensure(ok: bool, msg: &str) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// Runs every property check on `cfg.instances` sampled instances per presentation.
pub fn run_verify(presentations: &[(String, Presentation)], cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        seed: cfg.seed,
        cap: cfg.cap,
        presentations: presentations.iter().map(|(n, _)| n.clone()).collect(),
        instances: 0,
        checks: BTreeMap::new(),
        failures: 0,
        counterexample: None,
    };
    for (index, (name, p)) in presentations.iter().enumerate() {
        let mut rng = rng(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64));
        let mut runner = Runner {
            name,
            p,
            report: &mut report,
        };
        // ε is always congruent to itself.
        runner.record("reflexivity", ensure(member(p, &Word::empty(), &Word::empty())?, "ε ρ ε"), json!({}));
        if cfg.cap == 0 {
            continue;
        }
        for i in 0..cfg.instances {
            runner.report.instances += 1;
            instance_checks(&mut runner, &mut rng, cfg.cap, i % 2 == 1)?;
        }
    }
    Ok(report)
}

fn instance_checks(r: &mut Runner<'_>, rng: &mut ChaCha8Rng, cap: usize, use_oracle: bool) -> Result<()> {
    let p = r.p;
    let al = p.alphabet();
    let render = |w: &Word| p.render(w);
    let u = random_word(rng, al, cap);
    let class = class_automaton(p, &u)?;
    let sample = class.enumerate(cap + p.k(), 100);

    // Closure soundness: one-step rewrites of sampled members stay in the class.
    let mut closed = Ok(());
    for w in &sample {
        if let Some((_, bad)) = neighbours(p, w).find(|(_, next)| !class.accepts(next)) {
            closed = Err(format!("{} rewrites to {} outside the class", render(w), render(&bad)));
            break;
        }
    }
    r.record("closure-soundness", closed, json!({ "u": render(&u) }));

    // Dual-engine agreement, symmetry and right compatibility.
    let v = match sample.choose(rng) {
        Some(w) if rng.gen_bool(0.5) => w.clone(),
        _ => random_word(rng, al, cap),
    };
    let t = random_word(rng, al, 2);
    let uv = member(p, &u, &v)?;
    let oracle_cap = u.len().max(v.len()) + 2 * p.k() + 2;
    let oracle = find_sequence(p, &u, &v, oracle_cap, usize::MAX);
    let agreement = match (&oracle, uv) {
        (SearchOutcome::Found(s), true) => ensure(verify_sequence(p, s), "oracle sequence does not verify"),
        (SearchOutcome::Found(_), false) => Err("oracle found a sequence the automaton rejects".into()),
        (SearchOutcome::NotFound { .. }, false) => Ok(()),
        // Witnesses may need words longer than the oracle cap.
        (SearchOutcome::NotFound { .. }, true) => Ok(()),
    };
    let inst = json!({ "u": render(&u), "v": render(&v), "t": render(&t) });
    r.record("dual-engine", agreement, inst.clone());
    r.record("symmetry", ensure(member(p, &v, &u)? == uv, "member is not symmetric"), inst.clone());
    let compatible = !uv || member(p, &u.concat(&t), &v.concat(&t))?;
    r.record("right-compatibility", ensure(compatible, "ut not congruent to vt"), inst.clone());
    if let Some(w) = sample.choose(rng) {
        let transitive = !uv || member(p, &v, w)?;
        r.record("transitivity", ensure(transitive, "member is not transitive"), json!({ "u": render(&u), "v": render(&v), "w": render(w) }));
    }

    // H-sequence machinery.
    if let Some(s) = random_irreducible_sequence(rng, p, cap + p.k(), 6, use_oracle) {
        let inst = serde_json::to_value(s.to_json(al)).expect("sequence serializes");
        r.record("sequence-valid", ensure(verify_sequence(p, &s), "generated sequence does not verify"), inst.clone());
        let definitional = is_irreducible_sequence(p, &s).map(|irr| irr == has_empty_tail(&s)).unwrap_or(false);
        r.record("definition-1-equivalence", ensure(definitional, "suffix and ε-tail tests disagree"), inst.clone());
        r.record("reduction", check_reduction(p, &s), inst.clone());
        r.record("factorisation", check_factorization(p, &s), inst);
    }
    Ok(())
}
