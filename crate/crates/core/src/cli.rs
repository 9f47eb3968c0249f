//! Batch commands. [`run`] parses arguments and returns the exit code with
//! the standard output and error payloads, so the binary stays a thin shell.
//!
//! Exit codes: 0 computed, 1 computed with a negative or empty finding,
//! 2 usage or input error.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{parse_word, text, GeneratorAlphabet, RingElement};
use crate::duality::{verify_relations, StructuredOperator};
use crate::rational::fmt_rational;
use crate::spectral::{
    build_quotient, convolution_matrix, decide_l2_zero_divisor, kernel_dim_exact, quotient::exact_rank,
    quotient::DEFAULT_MAX_SIZE, spectrum_histogram, verify_sofic_fraction, Outcome as Verdict, DEFAULT_BUDGET,
};
use crate::tds::{
    build_tds, compile_foolproof, estimate_rejection_measure, initial_measure, sample_check_stops,
    static_check_no_restart, check_partition, CompileMode, PieceKind,
};
use crate::turing::corpus::{immediate_reject, standard_by_name};
use crate::turing::{
    construct_foolproof, construct_readonly, run_readonly, run_standard, search_rejected_word, Machine, Outcome,
    ReadOnlyTm, RoConfig, StandardTm, StdConfig,
};

/// Largest lamplighter power accepted from a word.
const MAX_DIM: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome { code: 0, stdout, stderr: String::new() }
    }

    fn negative(stdout: String, stderr: impl Into<String>) -> Self {
        CommandOutcome { code: 1, stdout, stderr: stderr.into() }
    }

    fn input_error(stderr: impl Into<String>) -> Self {
        CommandOutcome { code: 2, stdout: String::new(), stderr: stderr.into() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "zdforge", version, about = "Group-ring, spectral and machine-compilation tools")]
pub struct Cli {
    /// Seed for every sampling step; echoed in sampled reports.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug)]
pub struct WordArgs {
    /// File holding the word (`-` for stdin).
    pub file: Option<String>,
    /// The word itself, instead of a file.
    #[arg(short = 'e', long = "expr")]
    pub expr: Option<String>,
    /// Number of lamplighter factors (default: largest generator index).
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a word and print the element file.
    Parse(WordArgs),
    /// Decide whether a word is an l2-zero-divisor.
    Decide {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        k: u64,
        #[arg(long = "override-n")]
        override_n: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Exact kernel fraction of the image in the quotient of level N.
    QuotientKernel {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long = "N")]
        n: u32,
    },
    /// Eigenvalue histogram (CSV) in the quotient of level N.
    Spectrum {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long = "N")]
        n: u32,
        #[arg(long, default_value_t = 20)]
        bins: usize,
    },
    /// Fraction of quotient vertices whose R-ball matches the group's.
    SoficCheck {
        #[arg(long = "N")]
        n: u32,
        #[arg(long = "R")]
        r: usize,
    },
    /// Machine commands.
    #[command(subcommand)]
    Tm(TmCommand),
    /// Lower bound for the rejected measure from words of length at most L.
    RejectMeasure {
        machine: String,
        #[arg(long = "L")]
        l: usize,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
    },
    /// Check all matrix-unit relations of size n.
    VerifyUnits {
        #[arg(long)]
        n: usize,
    },
    /// Expand a structured operator file into a flat element file.
    Expand {
        file: String,
        #[arg(long, default_value_t = 1 << 22)]
        max_terms: usize,
    },
    /// Search for an input tuple the (foolproof) machine rejects.
    Search {
        machine: String,
        #[arg(long = "L", alias = "max-len")]
        l: usize,
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Readonly,
    Foolproof,
    Tds,
    Operator,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Structured,
    Expanded,
}

#[derive(Subcommand, Debug)]
pub enum TmCommand {
    /// Check the static conventions.
    Validate { machine: String },
    /// Run on an input: symbols separated by `,`, tapes by `;`.
    Run {
        machine: String,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
    },
    /// Compile along the pipeline.
    Compile {
        machine: String,
        #[arg(long)]
        to: Target,
        #[arg(long, value_enum, default_value_t = Mode::Structured)]
        mode: Mode,
        /// Where to write the manifest (default: standard error).
        #[arg(long)]
        manifest: Option<String>,
        /// Sampled points for the stop check of `--to tds`.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

/// Caps rayon's pool by `ZDFORGE_THREADS` (first call wins).
pub fn init_threads() {
    if let Some(n) = std::env::var("ZDFORGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandOutcome::ok(text)
            } else {
                CommandOutcome::input_error(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(msg) => CommandOutcome::input_error(format!("error: {msg}\n")),
    }
}

fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| e.to_string())?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

/// Largest number following a letter, e.g. 2 for `a1 t2`.
fn infer_dim(word: &str) -> usize {
    let mut best = 1;
    let mut num = String::new();
    let mut after_letter = false;
    for ch in word.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_digit() && after_letter {
            num.push(ch);
            continue;
        }
        if !num.is_empty() {
            best = best.max(num.parse().unwrap_or(usize::MAX));
            num.clear();
        }
        after_letter = ch.is_alphabetic();
    }
    best
}

fn load_word(w: &WordArgs) -> Result<RingElement, String> {
    let text = match (&w.expr, &w.file) {
        (Some(e), None) => e.clone(),
        (None, Some(f)) => read_source(f)?,
        _ => return Err("give exactly one of a word file or --expr".into()),
    };
    let dim = w.dim.unwrap_or_else(|| infer_dim(&text));
    if dim == 0 || dim > MAX_DIM {
        return Err(format!("dimension {dim} outside 1..={MAX_DIM}"));
    }
    parse_word(text.trim(), &GeneratorAlphabet::lamplighter(dim)).map_err(|e| e.to_string())
}

fn load_machine(arg: &str) -> Result<Machine, String> {
    if Path::new(arg).exists() {
        return Machine::parse(&read_source(arg)?).map_err(|e| e.to_string());
    }
    if let Some(m) = standard_by_name(arg) {
        return Ok(Machine::Standard(m));
    }
    if arg == "immediate-reject" {
        return Ok(Machine::ReadOnly(immediate_reject()));
    }
    Err(format!("{arg}: no such file or built-in machine"))
}

/// The three-tape machine a command works on: `F(M)` for standard machines.
fn three_tape(m: &Machine) -> Result<ReadOnlyTm, String> {
    match m {
        Machine::Standard(s) => construct_foolproof(s).map_err(|e| e.to_string()),
        Machine::ReadOnly(r) if r.heads_per_tape == [1, 1, 1] => Ok(r.clone()),
        Machine::ReadOnly(_) => Err("need a standard machine or a three-tape read-only machine".into()),
    }
}

fn parse_symbols(names: &str, lookup: impl Fn(&str) -> Option<usize>) -> Result<Vec<usize>, String> {
    names
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| lookup(s).ok_or_else(|| format!("unknown symbol `{s}`")))
        .collect()
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Accept => "Accept",
        Outcome::Reject => "Reject",
        Outcome::OutOfFuel => "OutOfFuel",
    }
}

fn dispatch(cli: &Cli) -> Result<CommandOutcome, String> {
    match &cli.command {
        Command::Parse(w) => Ok(CommandOutcome::ok(text::to_text(&load_word(w)?))),
        Command::Decide { word, k, override_n, budget } => {
            let t = load_word(word)?;
            let v = decide_l2_zero_divisor(&t, *k, *override_n, *budget).map_err(|e| e.to_string())?;
            let out = v.to_json() + "\n";
            Ok(if v.outcome == Verdict::Inconclusive {
                CommandOutcome::negative(out, "inconclusive within the budget\n")
            } else {
                CommandOutcome::ok(out)
            })
        }
        Command::QuotientKernel { word, n } => {
            let t = load_word(word)?;
            let q = build_quotient(*n, t.group().dim).map_err(|e| e.to_string())?;
            let m = convolution_matrix(&q, &t, DEFAULT_MAX_SIZE).map_err(|e| e.to_string())?;
            let out = json!({
                "N": n,
                "size": m.size,
                "rank": exact_rank(&m),
                "kernel": fmt_rational(&kernel_dim_exact(&m)),
            });
            Ok(CommandOutcome::ok(out.to_string() + "\n"))
        }
        Command::Spectrum { word, n, bins } => {
            let t = load_word(word)?;
            // T*T has the same kernel and is symmetric
            let t = if t.is_self_adjoint() { t } else { t.star().mul(&t).map_err(|e| e.to_string())? };
            let q = build_quotient(*n, t.group().dim).map_err(|e| e.to_string())?;
            let m = convolution_matrix(&q, &t, DEFAULT_MAX_SIZE).map_err(|e| e.to_string())?;
            let h = spectrum_histogram(&m, *bins).map_err(|e| e.to_string())?;
            Ok(CommandOutcome::ok(h.to_csv()))
        }
        Command::SoficCheck { n, r } => {
            let q = build_quotient(*n, 1).map_err(|e| e.to_string())?;
            let f = verify_sofic_fraction(&q, &GeneratorAlphabet::walker_lamp(), *r).map_err(|e| e.to_string())?;
            let out = json!({ "N": n, "R": r, "fraction": fmt_rational(&f) });
            Ok(CommandOutcome::ok(out.to_string() + "\n"))
        }
        Command::Tm(tm) => dispatch_tm(tm, cli.seed),
        Command::RejectMeasure { machine, l, fuel } => {
            let f = three_tape(&load_machine(machine)?)?;
            let est = estimate_rejection_measure(&f, *l, *fuel).map_err(|e| e.to_string())?;
            let out = fmt_rational(&est.value) + "\n";
            Ok(if est.partial() {
                CommandOutcome::negative(out, format!("partial: {} triples ran out of fuel\n", est.skipped))
            } else {
                CommandOutcome::ok(out)
            })
        }
        Command::VerifyUnits { n } => {
            let (count, failures) = verify_relations(*n).map_err(|e| e.to_string())?;
            let out = json!({ "n": n, "relations": count, "failures": failures }).to_string() + "\n";
            Ok(if failures.is_empty() {
                CommandOutcome::ok(out)
            } else {
                CommandOutcome::negative(out, "relations fail\n")
            })
        }
        Command::Expand { file, max_terms } => {
            let op = StructuredOperator::from_text(&read_source(file)?).map_err(|e| e.to_string())?;
            let x = op.expand(*max_terms).map_err(|e| e.to_string())?;
            Ok(CommandOutcome::ok(text::to_text(&x)))
        }
        Command::Search { machine, l, fuel } => {
            let f = three_tape(&load_machine(machine)?)?;
            match search_rejected_word(&f, *l, *fuel) {
                Some(tapes) => {
                    let named: Vec<Vec<&str>> =
                        tapes.iter().map(|t| t.iter().map(|&s| f.symbol_name(s)).collect()).collect();
                    Ok(CommandOutcome::ok(json!({ "found": true, "tapes": named }).to_string() + "\n"))
                }
                None => Ok(CommandOutcome::negative(
                    json!({ "found": false, "max_len": l }).to_string() + "\n",
                    "no rejected input within the bound\n",
                )),
            }
        }
    }
}

fn run_machine(m: &Machine, input: &str, fuel: u64) -> Result<(Outcome, u64), String> {
    match m {
        Machine::Standard(s) => {
            let word = parse_symbols(input, |x| s.alphabet.iter().position(|a| a == x))?;
            let r = run_standard(s, StdConfig::initial(s, &word), fuel).map_err(|e| e.to_string())?;
            Ok((r.outcome, r.steps))
        }
        Machine::ReadOnly(r) => {
            let mut tapes: Vec<Vec<usize>> = input
                .split(';')
                .map(|t| parse_symbols(t, |x| r.alphabet.iter().position(|a| a == x)))
                .collect::<Result<_, _>>()?;
            tapes.resize(r.tapes(), Vec::new());
            if tapes.len() != r.tapes() {
                return Err(format!("expected {} tapes", r.tapes()));
            }
            let res = run_readonly(r, RoConfig::initial(r, tapes), fuel).map_err(|e| e.to_string())?;
            Ok((res.outcome, res.steps))
        }
    }
}

fn standard(m: &Machine) -> Result<&StandardTm, String> {
    match m {
        Machine::Standard(s) => Ok(s),
        Machine::ReadOnly(_) => Err("this target needs a standard machine".into()),
    }
}

fn dispatch_tm(cmd: &TmCommand, seed: u64) -> Result<CommandOutcome, String> {
    match cmd {
        TmCommand::Validate { machine } => {
            let report = load_machine(machine)?.validate();
            Ok(if report.is_valid() {
                CommandOutcome::ok(report.to_string())
            } else {
                CommandOutcome::negative(report.to_string(), "")
            })
        }
        TmCommand::Run { machine, input, fuel } => {
            let (outcome, steps) = run_machine(&load_machine(machine)?, input, *fuel)?;
            let out = json!({ "outcome": outcome_name(outcome), "steps": steps }).to_string() + "\n";
            Ok(if outcome == Outcome::OutOfFuel {
                CommandOutcome::negative(out, "out of fuel\n")
            } else {
                CommandOutcome::ok(out)
            })
        }
        TmCommand::Compile { machine, to, mode, manifest, samples } => {
            let m = load_machine(machine)?;
            match to {
                Target::Readonly => {
                    let r = construct_readonly(standard(&m)?).map_err(|e| e.to_string())?;
                    Ok(CommandOutcome::ok(r.to_text()))
                }
                Target::Foolproof => {
                    let f = construct_foolproof(standard(&m)?).map_err(|e| e.to_string())?;
                    Ok(CommandOutcome::ok(f.to_text()))
                }
                Target::Tds => {
                    let f = three_tape(&m)?;
                    let tds = build_tds(&f).map_err(|e| e.to_string())?;
                    let fuel = 3 * (f.states.len() as u64 + 64);
                    let stops = sample_check_stops(&tds, *samples, fuel, seed).map_err(|e| e.to_string())?;
                    let count = |k: PieceKind| tds.pieces.iter().filter(|p| p.kind == k).count();
                    let out = json!({
                        "m": tds.m,
                        "n": tds.n,
                        "pieces": tds.pieces.len(),
                        "initial_pieces": count(PieceKind::Initial),
                        "accept_pieces": count(PieceKind::Accept),
                        "reject_pieces": count(PieceKind::Reject),
                        "mu_initial": fmt_rational(&initial_measure(&tds)),
                        "partition": check_partition(&tds),
                        "no_restart": static_check_no_restart(&tds),
                        "stops": stops,
                        "seed": seed,
                    });
                    Ok(CommandOutcome::ok(out.to_string() + "\n"))
                }
                Target::Operator => {
                    let f = three_tape(&m)?;
                    let mode = match mode {
                        Mode::Structured => CompileMode::Structured,
                        Mode::Expanded => CompileMode::Expanded,
                    };
                    let c = compile_foolproof(&f, mode).map_err(|e| e.to_string())?;
                    let json = serde_json::to_string_pretty(&c.manifest).expect("plain data") + "\n";
                    let mut out = CommandOutcome::ok(match &c.expanded {
                        Some(x) => text::to_text(x),
                        None => c.operator.to_text(),
                    });
                    match manifest {
                        Some(path) => std::fs::write(path, json).map_err(|e| format!("{path}: {e}"))?,
                        None => out.stderr = json,
                    }
                    Ok(out)
                }
            }
        }
    }
}
