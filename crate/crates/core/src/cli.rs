//! Command-line front end. [`run`] is the whole program; `main` only wires
//! it to the process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::closure::{class_automaton, member};
use crate::coherence::{annihilator_generators, intersection_generators, witness_report, AnnihilatorMode, ReportOptions};
use crate::error::Error;
use crate::oracle::{find_sequence_for, SearchOutcome};
use crate::presentation::{bundled, Presentation};
use crate::sequences::{factorize, reduce_step, Factorization, HSequence, Quadruple, ReductionOutcome, SequenceJson};
use crate::verify::{run_verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

pub const DEFAULT_BUDGET: u128 = 2_000_000;

#[derive(Debug, Parser)]
#[command(name = "free-coherence", version, about = "Right congruences on free monoids and their coherence witnesses")]
pub struct Cli {
    /// Presentation file: {"alphabet": [...], "pairs": [[p, q], ...]}.
    #[arg(long, global = true)]
    pub presentation: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Paper,
    Reduced,
    Capped,
}

impl From<Mode> for AnnihilatorMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Paper => AnnihilatorMode::PaperFaithful,
            Mode::Reduced => AnnihilatorMode::Reduced,
            Mode::Capped => AnnihilatorMode::LengthCapped,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether two words are congruent.
    Member { u: String, v: String },
    /// Export the minimal automaton of a congruence class.
    Class { w: String },
    /// Search for an H-sequence connecting a·u to b·v.
    Trace {
        u: String,
        v: String,
        #[arg(long, default_value = "")]
        a: String,
        #[arg(long, default_value = "")]
        b: String,
        /// Maximum length of intermediate words.
        #[arg(long, default_value_t = 12)]
        cap: usize,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Apply one reduction step to an irreducible H-sequence (JSON file).
    Reduce { sequence: PathBuf },
    /// Factorise u along an irreducible H-sequence (JSON file).
    Factorize { sequence: PathBuf },
    /// Generators of the annihilator congruence r(aρ).
    Annihilator {
        a: String,
        #[arg(long, value_enum, default_value_t = Mode::Reduced)]
        mode: Mode,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Generators of the subact (aρ)S ∩ (bρ)S.
    Intersect { a: String, b: String },
    /// Both witnesses for (a, b) with certification up to --cap.
    Report {
        a: String,
        b: String,
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Seeded randomized property checks (bundled presentations unless --presentation is given).
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        cap: usize,
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok((code, text)) => {
            if let Err(e) = emit(&cli, stdout, &text) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(cli: &Cli, stdout: &mut dyn Write, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

fn load(path: Option<&Path>) -> Result<Presentation, Failure> {
    let path = path.ok_or_else(|| usage("this command needs --presentation <path>"))?;
    Presentation::load(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_sequence(p: &Presentation, path: &Path) -> Result<HSequence, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let json: SequenceJson = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(HSequence::from_json(p.alphabet(), &json)?)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<(i32, String), Failure> {
    let fmt = cli.format;
    let pres = || load(cli.presentation.as_deref());
    match &cli.command {
        Command::Member { u, v } => {
            let p = pres()?;
            let (uw, vw) = (p.parse_word(u)?, p.parse_word(v)?);
            let verdict = member(&p, &uw, &vw)?;
            let text = match fmt {
                Format::Json => pretty(&json!({ "u": u, "v": v, "member": verdict })),
                _ => format!("{verdict}\n"),
            };
            Ok((EXIT_OK, text))
        }
        Command::Class { w } => {
            let p = pres()?;
            let word = p.parse_word(w)?;
            let dfa = class_automaton(&p, &word)?.minimize().to_automaton();
            let text = match fmt {
                Format::Json => pretty(&serde_json::to_value(dfa.to_json(p.alphabet())).expect("serializes")),
                Format::Dot => dfa.to_dot(p.alphabet(), &format!("class of \"{w}\"")),
                Format::Text => {
                    let sample: Vec<String> = dfa
                        .enumerate(word.len() + 4 * p.k().max(1), 20)
                        .iter()
                        .map(|x| format!("\"{}\"", p.render(x)))
                        .collect();
                    format!(
                        "class of \"{w}\": {} states, {} transitions\nshortest members: {}\n",
                        dfa.num_states(),
                        dfa.transitions().len(),
                        sample.join(" ")
                    )
                }
            };
            Ok((EXIT_OK, text))
        }
        Command::Trace {
            u,
            v,
            a,
            b,
            cap,
            max_steps,
        } => {
            let p = pres()?;
            let ctx = Quadruple::new(p.parse_word(a)?, p.parse_word(u)?, p.parse_word(b)?, p.parse_word(v)?);
            match find_sequence_for(&p, &ctx, *cap, max_steps.unwrap_or(usize::MAX)) {
                SearchOutcome::Found(s) => {
                    let js = s.to_json(p.alphabet());
                    let text = match fmt {
                        Format::Text => {
                            let chain: Vec<String> = s.chain_words().iter().map(|w| format!("\"{}\"", p.render(w))).collect();
                            format!("{} step(s): {}\n", s.len(), chain.join(" -> "))
                        }
                        _ => pretty(&serde_json::to_value(js).expect("serializes")),
                    };
                    Ok((EXIT_OK, text))
                }
                SearchOutcome::NotFound { exhaustive } => {
                    let text = match fmt {
                        Format::Text => format!(
                            "not found{}\n",
                            if exhaustive { " (exhaustive under the cap)" } else { " (search truncated)" }
                        ),
                        _ => pretty(&json!({ "found": false, "exhaustive": exhaustive })),
                    };
                    Ok((EXIT_OK, text))
                }
            }
        }
        Command::Reduce { sequence } => {
            let p = pres()?;
            let s = load_sequence(&p, sequence)?;
            let value = match reduce_step(&p, &s)? {
                ReductionOutcome::Empty => json!({ "branch": "empty" }),
                ReductionOutcome::Strip { index, x, truncated } => json!({
                    "branch": "strip",
                    "index": index,
                    "x": p.render(&x),
                    "congruent_to": p.render(s.c(index + 1)),
                    "truncated": truncated.to_json(p.alphabet()),
                }),
            };
            Ok((EXIT_OK, pretty(&value)))
        }
        Command::Factorize { sequence } => {
            let p = pres()?;
            let s = load_sequence(&p, sequence)?;
            let value = match factorize(&p, &s)? {
                Factorization::EmptyU => json!({ "empty_u": true, "parts": [] }),
                Factorization::Parts(parts) => json!({
                    "empty_u": false,
                    "parts": parts
                        .iter()
                        .map(|part| json!({ "x": p.render(&part.x), "index": part.index }))
                        .collect::<Vec<_>>(),
                }),
            };
            Ok((EXIT_OK, pretty(&value)))
        }
        Command::Annihilator { a, mode, cap, budget } => {
            let p = pres()?;
            let g = annihilator_generators(&p, &p.parse_word(a)?, (*mode).into(), *cap, *budget)?;
            let pairs: Vec<(String, String)> = g.pairs.iter().map(|(u, v)| (p.render(u), p.render(v))).collect();
            let text = match fmt {
                Format::Json => pretty(&json!({
                    "a": a,
                    "mode": g.mode,
                    "bounds": g.bounds,
                    "enumerated_to": g.enumerated_to,
                    "complete": g.complete,
                    "pairs": pairs,
                })),
                _ => {
                    let mut out = format!(
                        "r(aρ) for a = \"{a}\": {} generator(s), enumerated to {} of 3N = {}{}\n",
                        pairs.len(),
                        g.enumerated_to,
                        g.bounds.limit,
                        if g.complete { " (complete)" } else { "" }
                    );
                    for (u, v) in &pairs {
                        out.push_str(&format!("(\"{u}\", \"{v}\")\n"));
                    }
                    out
                }
            };
            Ok((EXIT_OK, text))
        }
        Command::Intersect { a, b } => {
            let p = pres()?;
            let g = intersection_generators(&p, &p.parse_word(a)?, &p.parse_word(b)?)?;
            let reps: Vec<String> = g.reps.iter().map(|w| p.render(w)).collect();
            let text = match fmt {
                Format::Json => pretty(&json!({ "a": a, "b": b, "empty": g.empty, "reps": reps })),
                _ if g.empty => "empty\n".to_string(),
                _ => reps.iter().map(|r| format!("\"{r}\"\n")).collect(),
            };
            Ok((EXIT_OK, text))
        }
        Command::Report { a, b, cap, budget, .. } => {
            let p = pres()?;
            let opts = ReportOptions {
                cap: *cap,
                budget: *budget,
            };
            let report = witness_report(&p, &p.parse_word(a)?, &p.parse_word(b)?, &opts)?;
            let text = match fmt {
                Format::Json => report.to_json() + "\n",
                _ => report.to_text(),
            };
            Ok((if report.passed { EXIT_OK } else { EXIT_INVARIANT }, text))
        }
        Command::Verify { seed, cap, instances } => {
            let presentations: Vec<(String, Presentation)> = match &cli.presentation {
                Some(path) => vec![(path.display().to_string(), load(Some(path))?)],
                None => bundled().into_iter().map(|(n, p)| (n.to_string(), p)).collect(),
            };
            let cfg = VerifyConfig {
                seed: *seed,
                cap: *cap,
                instances: *instances,
            };
            let report = run_verify(&presentations, &cfg)?;
            let text = match fmt {
                Format::Json => pretty(&serde_json::to_value(&report).expect("serializes")),
                _ => {
                    let mut out = format!(
                        "seed {} cap {}: {} instance(s) over {} presentation(s), {} failure(s)\n",
                        report.seed,
                        report.cap,
                        report.instances,
                        report.presentations.len(),
                        report.failures
                    );
                    for (check, n) in &report.checks {
                        out.push_str(&format!("  {check:<26} {n}\n"));
                    }
                    if let Some(cx) = &report.counterexample {
                        out.push_str("counterexample:\n");
                        out.push_str(&pretty(cx));
                    }
                    out
                }
            };
            Ok((if report.failures == 0 { EXIT_OK } else { EXIT_INVARIANT }, text))
        }
    }
}
