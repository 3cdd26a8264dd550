//! Command-line front end: encoding, rank-error injection, list decoding,
//! a self-test on the worked GF(8) examples and an operation-count benchmark.
//!
//! Elements are decimal integers `Σ a_i q^i`; polynomials and words are
//! whitespace-separated element lists, message coefficients in ascending
//! q-degree.

pub mod bench;
pub mod selftest;
pub mod spec_file;

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use gabidulin::code::{CodeSpec, Message, Word};
use gabidulin::decoder::{decode_closest_with, BasisAlgorithm, DecodeError, DecodeOptions};
use gabidulin::field::Elem;
use gabidulin::ops::OpCounts;
use serde::Serialize;
use thiserror::Error;

use spec_file::CodeSpecFile;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    Guard(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Guard(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gabidulin",
    version,
    about = "Gabidulin code encoder and list decoder"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Eea,
    Iter,
}

impl From<BasisArg> for BasisAlgorithm {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Eea => BasisAlgorithm::Eea,
            BasisArg::Iter => BasisAlgorithm::Iterative,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode message coefficients (read from stdin when none are given).
    Encode {
        #[arg(long)]
        spec: PathBuf,
        coeffs: Vec<u64>,
    },
    /// Add a random error of rank exactly `t` to a word.
    Corrupt {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        word: Vec<u64>,
    },
    /// Print every closest message, one per line.
    Decode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = BasisArg::Eea)]
        basis: BasisArg,
        /// Print a JSON report with distance, sweep index and counters.
        #[arg(long)]
        json: bool,
        /// Spread each sweep over all cores.
        #[arg(long)]
        parallel: bool,
        word: Vec<u64>,
    },
    /// Replay the worked GF(8) examples bit for bit.
    Selftest {
        #[arg(long, hide = true, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
    /// Compare decoders by mean field multiplications; CSV on stdout.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Extension degree; defaults to n for each row.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

fn read_values(given: Vec<u64>, input: &mut dyn BufRead) -> Result<Vec<u64>, CliError> {
    if !given.is_empty() {
        return Ok(given);
    }
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| CliError::Usage(format!("not an element: {tok:?}")))
        })
        .collect()
}

fn to_elems(code: &CodeSpec, values: &[u64]) -> Result<Vec<Elem>, CliError> {
    values
        .iter()
        .map(|&v| {
            code.field()
                .element(v)
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect()
}

fn read_word(code: &CodeSpec, given: Vec<u64>, input: &mut dyn BufRead) -> Result<Word, CliError> {
    let values = read_values(given, input)?;
    if values.len() != code.n() {
        return Err(CliError::Usage(format!(
            "expected {} word entries, got {}",
            code.n(),
            values.len()
        )));
    }
    Ok(Word(to_elems(code, &values)?))
}

fn load(spec: &std::path::Path) -> Result<CodeSpec, CliError> {
    CodeSpecFile::read(spec)?.build()
}

fn write_elems(out: &mut dyn Write, elems: &[Elem]) -> std::io::Result<()> {
    let line: Vec<String> = elems.iter().map(ToString::to_string).collect();
    writeln!(out, "{}", line.join(" "))
}

#[derive(Serialize)]
struct CountsJson {
    field_mults: u64,
    field_invs: u64,
    symbolic_divisions: u64,
}

impl From<OpCounts> for CountsJson {
    fn from(c: OpCounts) -> Self {
        CountsJson {
            field_mults: c.field_mults,
            field_invs: c.field_invs,
            symbolic_divisions: c.symbolic_divisions,
        }
    }
}

#[derive(Serialize)]
struct PhaseJson {
    basis: CountsJson,
    search: CountsJson,
}

#[derive(Serialize)]
struct DecodeJson {
    t: usize,
    j_final: usize,
    ell1: usize,
    ell2: usize,
    basis: &'static str,
    messages: Vec<Vec<u32>>,
    counters: PhaseJson,
}

pub fn run(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Encode { spec, coeffs } => {
            let code = load(&spec)?;
            let values = read_values(coeffs, input)?;
            if values.len() > code.k() {
                return Err(CliError::Usage(format!(
                    "at most k = {} coefficients allowed, got {}",
                    code.k(),
                    values.len()
                )));
            }
            let msg = Message::from_coeffs(to_elems(&code, &values)?, code.k())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let word = code
                .encode(&msg)
                .map_err(|e| CliError::Invariant(e.to_string()))?;
            write_elems(out, word.entries())?;
        }
        Command::Corrupt {
            spec,
            t,
            seed,
            word,
        } => {
            let code = load(&spec)?;
            let w = read_word(&code, word, input)?;
            let e = code
                .random_error(t, seed)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            write_elems(out, w.add(code.field(), &e).entries())?;
        }
        Command::Decode {
            spec,
            basis,
            json,
            parallel,
            word,
        } => {
            let code = load(&spec)?;
            let r = read_word(&code, word, input)?;
            let options = DecodeOptions {
                basis: basis.into(),
                parallel,
            };
            let output = decode_closest_with(&code, &r, options).map_err(|e| match e {
                DecodeError::SweepCapExceeded { .. } | DecodeError::EnumerationTooLarge { .. } => {
                    CliError::Guard(e.to_string())
                }
                other => CliError::Invariant(other.to_string()),
            })?;
            if json {
                let sweep = output.sweep.expect("parametrized decode");
                let report = DecodeJson {
                    t: output.t,
                    j_final: sweep.j_final,
                    ell1: sweep.ell1,
                    ell2: sweep.ell2,
                    basis: match basis {
                        BasisArg::Eea => "eea",
                        BasisArg::Iter => "iter",
                    },
                    messages: output
                        .messages
                        .iter()
                        .map(|m| m.coeffs(code.k()).iter().map(|e| e.0).collect())
                        .collect(),
                    counters: PhaseJson {
                        basis: output.counters.basis.into(),
                        search: output.counters.search.into(),
                    },
                };
                let text = serde_json::to_string_pretty(&report)
                    .map_err(|e| CliError::Invariant(e.to_string()))?;
                writeln!(out, "{text}")?;
            } else {
                for m in &output.messages {
                    write_elems(out, &m.coeffs(code.k()))?;
                }
            }
        }
        Command::Selftest { modulus } => {
            let modulus = modulus.unwrap_or_else(|| selftest::DEFAULT_MODULUS.to_vec());
            let checks = selftest::run(&modulus);
            let mut failed = 0;
            for c in &checks {
                if c.passed() {
                    writeln!(out, "PASS {}", c.name)?;
                } else {
                    failed += 1;
                    writeln!(out, "FAIL {}", c.name)?;
                    writeln!(out, "  expected: {}", c.expected)?;
                    writeln!(out, "  got:      {}", c.got)?;
                }
            }
            if failed > 0 {
                return Err(CliError::Invariant(format!(
                    "{failed} self-test checks failed"
                )));
            }
        }
        Command::Bench {
            n_list,
            t,
            trials,
            seed,
            q,
            m,
            k,
        } => {
            let report = bench::run(&bench::BenchConfig {
                q,
                m,
                k,
                n_list,
                t,
                trials,
                seed,
            })?;
            for s in &report.skipped {
                eprintln!("skipped: {s}");
            }
            bench::write_csv(&report.rows, out)?;
        }
    }
    Ok(())
}
