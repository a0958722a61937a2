//! `arithsim`: generate sequences, manipulate patterns and test arithmetic self-similarity.
//!
//! Exit codes: 0 on success, 1 when a checked property is falsified, 2 on
//! usage or parse errors.

mod spec;

use std::io::Write;
use std::process::ExitCode;

use arithsim::additive::check_additive_prefix;
use arithsim::arithperm::subseq_pattern_with;
use arithsim::keane::{delta_t, keane_word, thue_morse, tm_witness, Block};
use arithsim::seq::{as_scan, format_prefix, similar_up_to, PrefixFormat};
use arithsim::toeplitz::{compose, power, toeplitz_word};
use arithsim::toeplitzadd::is_additive_pattern;
use arithsim::{CyclicGroup, Pattern, Seq};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::spec::SeqSpec;

const DEFAULT_DEPTH: u64 = 4096;

/// `println!` that exits quietly when stdout is closed, e.g. piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    };
}

#[derive(Parser)]
#[command(name = "arithsim", version, about = "Arithmetic self-similarity of sequences over Z_k")]
struct Cli {
    /// Size k of the alphabet Z_k.
    #[arg(long, short = 'k', global = true, default_value_t = 2)]
    alphabet: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first N terms of a sequence.
    Gen {
        #[arg(long)]
        spec: String,
        #[arg(long, short = 'n')]
        n: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compose two patterns, P∘Q.
    Compose { p: String, q: String },
    /// The n-th power of a pattern.
    Power { p: String, n: u64 },
    /// Decide whether a one-gap pattern generates a completely additive word (JSON).
    Classify { p: String },
    /// A pattern for the subsequence T(P)(a), T(P)(a+b), …
    SubseqPattern {
        p: String,
        a: u64,
        b: u64,
        /// Print the rewrite trace as JSON.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        verify_depth: u64,
    },
    /// Search a prefix for a violation of σ(nm) = σ(n) + σ(m).
    CheckAdditive {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u64,
    },
    /// Compare two sequences up to an additive constant.
    CheckSimilar {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        spec2: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u64,
    },
    /// Test σ_(a,b) against σ over a grid of (a, b).
    AsScan {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        amax: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bmax: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u64,
        /// One JSON record per cell instead of a grid.
        #[arg(long)]
        json: bool,
    },
    /// The Toeplitz pattern of the difference sequence of K(u), verified on a prefix.
    KeaneEmbed {
        u: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u64,
    },
    /// Some y with m(y) = 0 and m(xy) = 1, where m is the Thue–Morse word.
    TmWitness { x: u64 },
}

enum Failure {
    Usage(String),
    Falsified,
}

impl From<arithsim::Error> for Failure {
    fn from(e: arithsim::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<spec::SpecError> for Failure {
    fn from(e: spec::SpecError) -> Self {
        Failure::Usage(format!("invalid spec {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn group(k: u32) -> Result<CyclicGroup, Failure> {
    Ok(CyclicGroup::new(k)?)
}

fn pattern(k: u32, text: &str) -> Result<Pattern, Failure> {
    Pattern::parse(group(k)?, text).map_err(|e| Failure::Usage(format!("invalid pattern {text:?}: {e}")))
}

fn sequence(k: u32, text: &str) -> Result<Seq, Failure> {
    group(k)?;
    Ok(SeqSpec::parse(text, k)?.build()?)
}

fn falsified_unless(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Falsified)
    }
}

fn run(cli: Cli) -> Outcome {
    let k = cli.alphabet;
    match cli.command {
        Command::Gen { spec, n, format } => {
            let seq = sequence(k, &spec)?;
            let format = match format {
                Format::Text => PrefixFormat::Text,
                Format::Csv => PrefixFormat::Csv,
                Format::Jsonl => PrefixFormat::Jsonl,
            };
            let text = format_prefix(seq.group(), seq.first_index(), &seq.prefix(n), format);
            out!("{}", text.trim_end());
        }
        Command::Compose { p, q } => out!("{}", compose(&pattern(k, &p)?, &pattern(k, &q)?)?),
        Command::Power { p, n } => out!("{}", power(&pattern(k, &p)?, n)?),
        Command::Classify { p } => {
            let pt = pattern(k, &p)?;
            let cert = is_additive_pattern(&pt)?;
            out!("{}", json!({ "pattern": pt.to_string(), "verdict": cert.verdict, "evidence": cert.evidence }));
        }
        Command::SubseqPattern { p, a, b, trace, verify_depth } => {
            let pt = pattern(k, &p)?;
            let (out, steps) = match subseq_pattern_with(&pt, a, b, verify_depth) {
                Err(arithsim::Error::Internal(msg)) => {
                    eprintln!("verification failed: {msg}");
                    return Err(Failure::Falsified);
                }
                other => other?,
            };
            if trace {
                out!("{}", serde_json::to_string_pretty(&steps).expect("traces serialize"));
            } else {
                out!("{out}");
            }
        }
        Command::CheckAdditive { spec, depth } => {
            let seq = sequence(k, &spec)?;
            match check_additive_prefix(&seq, depth)? {
                None => out!("consistent with complete additivity on the first {depth} terms"),
                Some((n, m)) => {
                    let v = |i| seq.value_at(i);
                    out!(
                        "counterexample: n = {n}, m = {m}: σ(nm) = {} but σ(n) + σ(m) = {}",
                        v(n * m),
                        (v(n) + v(m)) % seq.group().order()
                    );
                    return Err(Failure::Falsified);
                }
            }
        }
        Command::CheckSimilar { spec, spec2, depth } => {
            let verdict = similar_up_to(&sequence(k, &spec)?, &sequence(k, &spec2)?, depth)?;
            out!("{}", serde_json::to_string(&verdict).expect("verdicts serialize"));
            falsified_unless(verdict.is_similar())?;
        }
        Command::AsScan { spec, amax, bmax, depth, json } => {
            let seq = sequence(k, &spec)?;
            let cells = as_scan(&seq, amax, bmax, depth);
            if json {
                for c in &cells {
                    out!("{}", serde_json::to_string(c).expect("cells serialize"));
                }
            } else {
                print_grid(&seq, &cells, bmax);
            }
        }
        Command::KeaneEmbed { u, depth } => {
            let block = Block::parse(group(k)?, &u).map_err(|e| Failure::Usage(format!("invalid block {u:?}: {e}")))?;
            let p = delta_t(&block)?;
            let lhs = keane_word(&block)?.diff().prefix(depth);
            let rhs = toeplitz_word(&p)?.prefix(depth);
            out!("{p}");
            match lhs.iter().zip(&rhs).position(|(x, y)| x != y) {
                None => out!("difference sequence of K({block}) equals T({p}) on {depth} terms"),
                Some(i) => {
                    out!("mismatch at index {}: {} vs {}", i + 1, lhs[i], rhs[i]);
                    return Err(Failure::Falsified);
                }
            }
        }
        Command::TmWitness { x } => {
            let y = tm_witness(x)?;
            out!("y = {y}: m({y}) = {}, m({}) = {}", thue_morse(y), x * y, thue_morse(x * y));
            falsified_unless(thue_morse(y) == 0 && thue_morse(x * y) == 1)?;
        }
    }
    Ok(())
}

/// Rows a, columns b: `S` similar, `.` not.
fn print_grid(seq: &Seq, cells: &[arithsim::seq::ScanCell], bmax: u64) {
    let width = bmax.to_string().len().max(1);
    let header: Vec<String> = (1..=bmax).map(|b| format!("{b:>width$}")).collect();
    out!("a\\b {}", header.join(" "));
    for row in cells.chunks(bmax as usize) {
        let marks: Vec<String> = row.iter().map(|c| format!("{:>width$}", if c.verdict.is_similar() { "S" } else { "." })).collect();
        out!("{:>3} {}", row[0].a, marks.join(" "));
    }
    let similar: Vec<String> = cells.iter().filter(|c| c.verdict.is_similar()).map(|c| format!("({},{})", c.a, c.b)).collect();
    out!("similar to {}: {}", seq.description(), if similar.is_empty() { "none".into() } else { similar.join(" ") });
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Falsified) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
