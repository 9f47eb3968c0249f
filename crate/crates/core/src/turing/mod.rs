//! Turing machines in the read-only/foolproof style: simulators, the
//! two-head history checker `R(M)` and the three-tape foolproof machine
//! `F(M)`.

pub mod corpus;
pub mod foolproof;
pub mod history;
pub mod machine;
pub mod readonly;
pub mod run;
pub mod search;
pub mod text;
pub mod validate;


pub use foolproof::{construct_foolproof, halting_bound};
pub use history::{decode_history, encode_history, HistoryAlphabet};
pub use machine::{Move, ReadOnlyTm, RoRule, StandardTm, States, StdRule, ACCEPT, INITIAL, REJECT};
pub use readonly::construct_readonly;
pub use search::search_rejected_word;
pub use run::{run_readonly, run_standard, Outcome, RoConfig, RunResult, StdConfig};

pub use text::Machine;
pub use validate::{ValidationReport, Violation};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TuringError {
    #[error("state `{0}` is required")]
    MissingState(String),
    #[error("duplicate entry `{0}`")]
    Duplicate(String),
    #[error("symbol `{0}` is reserved or malformed")]
    BadSymbol(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("{0}")]
    Malformed(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("machine is invalid: {0}")]
    Invalid(String),
    #[error("input is not accepted within {fuel} steps")]
    NotAccepted { fuel: u64 },
    #[error("head {head} broke the delimiter discipline at step {step}")]
    Discipline { step: u64, head: usize },
    #[error("bad configuration: {0}")]
    BadConfiguration(String),
}
