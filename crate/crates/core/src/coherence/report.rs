use std::fmt::Write as _;

use serde::Serialize;

use super::annihilator::GeneratedCongruence;
use super::{
    annihilator_generators, candidate_pair_count, compute_bounds, intersection_generators, AnnihilatorGenerators,
    AnnihilatorMode, CoherenceBounds, IntersectionGenerators,
};
use crate::closure::{class_automaton, member, right_ideal_closure};
use crate::error::Result;
use crate::oracle::{find_sequence, SearchOutcome};
use crate::presentation::{Presentation, PresentationFile};
use crate::word::Word;

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    /// Length cap for the completeness checks.
    pub cap: usize,
    /// Candidate-pair budget for the annihilator enumeration.
    pub budget: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub presentation: PresentationFile,
    pub a: String,
    pub b: String,
    pub cap: usize,
    pub bounds: CoherenceBounds,
    pub annihilator: AnnihilatorSection,
    pub intersection: IntersectionSection,
    pub certification: Certification,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatorSection {
    pub mode: AnnihilatorMode,
    pub enumerated_to: usize,
    pub complete: bool,
    pub candidate_pairs: String,
    pub pairs: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionSection {
    pub empty: bool,
    pub reps: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Certification {
    /// Generator pairs confirmed by the automaton engine.
    pub pairs_sound: usize,
    /// Generator pairs for which the search oracle found a connecting sequence.
    pub pairs_oracle_confirmed: usize,
    /// Generator pairs the oracle could not settle within its caps.
    pub pairs_oracle_inconclusive: usize,
    /// Failures of either engine on a generator pair.
    pub pair_failures: Vec<(String, String)>,
    /// Pairs of `r(aρ)` with `|u| + |v| ≤ cap` checked against `⟨G⟩`.
    pub completeness_checked: usize,
    pub completeness_failures: Vec<(String, String)>,
    pub reps_checked: usize,
    pub rep_failures: Vec<String>,
    /// Words `w` with `|w| ≤ cap` whose class meets both right ideals.
    pub subact_checked: usize,
    pub subact_failures: Vec<String>,
    /// Whether `reps` is empty exactly when the emptiness certificate says so.
    pub emptiness_consistent: bool,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.pair_failures.is_empty()
            && self.completeness_failures.is_empty()
            && self.rep_failures.is_empty()
            && self.subact_failures.is_empty()
            && self.emptiness_consistent
    }
}

/// Reduced mode over the full `3N` range when the budget allows it,
/// otherwise reduced mode stopped at `cap`.
fn best_feasible(p: &Presentation, a: &Word, opts: &ReportOptions) -> Result<AnnihilatorGenerators> {
    let bounds = compute_bounds(p, a);
    let full = candidate_pair_count(p.alphabet().len(), bounds.limit);
    let cap = (full > opts.budget).then_some(opts.cap);
    annihilator_generators(p, a, AnnihilatorMode::Reduced, cap, opts.budget)
}

fn oracle_check(p: &Presentation, from: &Word, to: &Word) -> SearchOutcome {
    let base = from.len().max(to.len());
    let mut last = SearchOutcome::NotFound { exhaustive: false };
    for slack in [0, p.k(), 2 * p.k() + 2] {
        last = find_sequence(p, from, to, base + slack, usize::MAX);
        if last.found().is_some() {
            break;
        }
    }
    last
}

pub fn witness_report(p: &Presentation, a: &Word, b: &Word, opts: &ReportOptions) -> Result<WitnessReport> {
    let r = |w: &Word| p.render(w);
    let bounds = compute_bounds(p, a);
    let annihilator = best_feasible(p, a, opts)?;
    let intersection = intersection_generators(p, a, b)?;
    let certification = certify(p, &annihilator, &intersection, opts.cap)?;
    Ok(WitnessReport {
        presentation: p.to_file_form(),
        a: r(a),
        b: r(b),
        cap: opts.cap,
        bounds,
        annihilator: AnnihilatorSection {
            mode: annihilator.mode,
            enumerated_to: annihilator.enumerated_to,
            complete: annihilator.complete,
            candidate_pairs: candidate_pair_count(p.alphabet().len(), bounds.limit).to_string(),
            pairs: annihilator.pairs.iter().map(|(u, v)| (r(u), r(v))).collect(),
        },
        intersection: IntersectionSection {
            empty: intersection.empty,
            reps: intersection.reps.iter().map(r).collect(),
        },
        passed: certification.passed(),
        certification,
    })
}

fn certify(
    p: &Presentation,
    ann: &AnnihilatorGenerators,
    int: &IntersectionGenerators,
    cap: usize,
) -> Result<Certification> {
    let r = |w: &Word| p.render(w);
    let a = &ann.a;
    let mut cert = Certification::default();

    for (u, v) in &ann.pairs {
        let (au, av) = (a.concat(u), a.concat(v));
        let by_automaton = member(p, &au, &av)?;
        if by_automaton {
            cert.pairs_sound += 1;
        }
        match oracle_check(p, &au, &av) {
            SearchOutcome::Found(_) => cert.pairs_oracle_confirmed += 1,
            SearchOutcome::NotFound { exhaustive: true } => {
                cert.pair_failures.push((r(u), r(v)));
                continue;
            }
            SearchOutcome::NotFound { exhaustive: false } => cert.pairs_oracle_inconclusive += 1,
        }
        if !by_automaton {
            cert.pair_failures.push((r(u), r(v)));
        }
    }

    let mut generated = GeneratedCongruence::from_pairs(p.alphabet(), &ann.pairs)?;
    for u in p.alphabet().words_up_to(cap / 2) {
        let dfa = class_automaton(p, &a.concat(&u))?.minimize();
        let after_a = dfa.run_from(dfa.initial, a).expect("class of au contains au");
        for v in dfa.accepted_from(after_a, cap - u.len()) {
            if u < v {
                cert.completeness_checked += 1;
                if !generated.contains(&u, &v)? {
                    cert.completeness_failures.push((r(&u), r(&v)));
                }
            }
        }
    }

    let ideal_a = right_ideal_closure(p, &int.a)?;
    let ideal_b = right_ideal_closure(p, &int.b)?;
    for rep in &int.reps {
        cert.reps_checked += 1;
        if !(ideal_a.accepts(rep) && ideal_b.accepts(rep)) {
            cert.rep_failures.push(r(rep));
        }
    }
    for w in p.alphabet().words_up_to(cap) {
        if !(ideal_a.accepts(&w) && ideal_b.accepts(&w)) {
            continue;
        }
        cert.subact_checked += 1;
        let class = class_automaton(p, &w)?;
        if !int.reps.iter().any(|rep| class.meets_prefix(rep)) {
            cert.subact_failures.push(r(&w));
        }
    }
    cert.emptiness_consistent = int.empty == int.reps.is_empty();
    Ok(cert)
}

impl WitnessReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let q = |s: &str| format!("\"{s}\"");
        let pairs: Vec<String> = self
            .presentation
            .pairs
            .iter()
            .map(|(p, r)| format!("{} = {}", q(p), q(r)))
            .collect();
        let c = &self.certification;
        let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k:<24} {v}");
        };
        line("alphabet", self.presentation.alphabet.join(" "));
        line("generators", if pairs.is_empty() { "(none)".into() } else { pairs.join(", ") });
        line("a", q(&self.a));
        line("b", q(&self.b));
        line("cap", self.cap.to_string());
        let b = &self.bounds;
        line("bounds", format!("K={} K'={} L={} N={} 3N={}", b.k, b.k_prime, b.l, b.n, b.limit));
        let ann = &self.annihilator;
        line(
            "annihilator mode",
            format!(
                "{:?}, enumerated to {}{}",
                ann.mode,
                ann.enumerated_to,
                if ann.complete { " (complete)" } else { " (capped)" }
            ),
        );
        let gens: Vec<String> = ann.pairs.iter().map(|(u, v)| format!("({}, {})", q(u), q(v))).collect();
        line("annihilator generators", if gens.is_empty() { "(none)".into() } else { gens.join(" ") });
        let reps: Vec<String> = self.intersection.reps.iter().map(|w| q(w)).collect();
        line(
            "intersection",
            if self.intersection.empty { "empty".into() } else { reps.join(" ") },
        );
        line(
            "pair soundness",
            format!(
                "{} sound, {} oracle-confirmed, {} inconclusive: {}",
                c.pairs_sound,
                c.pairs_oracle_confirmed,
                c.pairs_oracle_inconclusive,
                verdict(c.pair_failures.is_empty())
            ),
        );
        line(
            "completeness",
            format!("{} pairs: {}", c.completeness_checked, verdict(c.completeness_failures.is_empty())),
        );
        line("reps", format!("{} checked: {}", c.reps_checked, verdict(c.rep_failures.is_empty())));
        line(
            "subact completeness",
            format!("{} words: {}", c.subact_checked, verdict(c.subact_failures.is_empty())),
        );
        line("emptiness certificate", verdict(c.emptiness_consistent).to_string());
        line("verdict", if self.passed { "PASS".into() } else { "FAIL".into() });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn pres(raw: &[(&str, &str)]) -> Presentation {
        Presentation::parse(Alphabet::from_chars("ab").unwrap(), raw).unwrap()
    }

    const OPTS: ReportOptions = ReportOptions {
        cap: 4,
        budget: 200_000,
    };

    #[test]
    fn free_monoid_report() {
        let p = pres(&[]);
        let w = |s| p.parse_word(s).unwrap();
        let rep = witness_report(&p, &w("a"), &w("b"), &OPTS).unwrap();
        assert!(rep.annihilator.pairs.is_empty());
        assert!(rep.intersection.empty);
        assert!(rep.intersection.reps.is_empty());
        assert!(rep.passed, "{}", rep.to_text());
    }

    #[test]
    fn commutation_report() {
        let p = pres(&[("ab", "ba")]);
        let w = |s| p.parse_word(s).unwrap();
        let rep = witness_report(&p, &w("a"), &w("b"), &ReportOptions { cap: 5, ..OPTS }).unwrap();
        assert_eq!(rep.intersection.reps, ["ab"]);
        assert!(rep.certification.completeness_failures.is_empty());
        assert!(rep.passed, "{}", rep.to_text());
    }

    #[test]
    fn identification_report() {
        let p = pres(&[("a", "b")]);
        let rep = witness_report(&p, &Word::empty(), &Word::empty(), &ReportOptions { cap: 6, ..OPTS }).unwrap();
        assert_eq!(rep.intersection.reps, [""]);
        assert!(rep.annihilator.pairs.contains(&("a".into(), "b".into())));
        assert!(rep.certification.completeness_checked > 0);
        assert!(rep.passed, "{}", rep.to_text());
        assert!(rep.to_text().contains("PASS"));
    }
}
