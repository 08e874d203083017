//! Executable coherence witnesses for free monoids.
//!
//! For a right congruence `ρ = ⟨H⟩` on `Ω*` generated by finitely many pairs,
//! this crate decides `u ρ v` by prefix-rewriting closure of regular
//! languages, manipulates H-sequences (irreducibility, one-step reduction,
//! factorisation), and computes finite generating sets for the annihilator
//! congruence `r(aρ)` and for the subact `(aρ)S ∩ (bρ)S`.

pub mod automaton;
pub mod cli;
pub mod closure;
pub mod coherence;
pub mod error;
pub mod oracle;
pub mod presentation;
pub mod sequences;
pub mod verify;
pub mod word;

pub use automaton::{Dfa, FiniteAutomaton};
pub use closure::{class_automaton, closure_automaton, intersect_right_ideal, member, ClosureResult};
pub use coherence::{
    annihilator_generators, compute_bounds, generated_member, intersection_generators, witness_report,
    AnnihilatorGenerators, AnnihilatorMode, CoherenceBounds, IntersectionGenerators, WitnessReport,
};
pub use error::{Error, Result};
pub use oracle::{find_sequence, SearchOutcome};
pub use presentation::Presentation;
pub use sequences::{
    factorize, is_irreducible_quadruple, is_irreducible_sequence, reduce_step, verify_sequence, FactorPart,
    Factorization, HSequence, Quadruple, ReductionOutcome, Step,
};
pub use word::{longest_common_suffix, Alphabet, Symbol, Word};
