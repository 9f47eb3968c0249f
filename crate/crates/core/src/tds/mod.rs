//! Turing dynamical systems of foolproof machines and the compiler to the
//! integral group ring of `(Z/2 wr Z)^4`.

pub mod checks;
pub mod compile;
pub mod measure;
pub mod operators;
pub mod step;
pub mod system;

pub use checks::{
    check_disjoint_chains, check_partition, initial_measure, sample_check_disjoint_chains, sample_check_stops,
    static_check_no_restart, ChainReport, StopReport,
};
pub use compile::{compile, compile_foolproof, CompileMode, Compiled, Manifest};
pub use measure::{estimate_rejection_measure, RejectionEstimate};
pub use operators::{build_operators, OperatorPair};
pub use step::{tds_step, SymbolicConfiguration, Window};
pub use system::{build_tds, build_tds_unchecked, exponents, Gamma, Piece, PieceKind, TuringDynamicalSystem};

use thiserror::Error;

use crate::duality::DualityError;
use crate::turing::TuringError;

#[derive(Debug, Error)]
pub enum TdsError {
    #[error("machine is not usable: {0}")]
    Invalid(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("window exhausted on tape {tape} at position {pos}")]
    WindowExhausted { tape: usize, pos: i64 },
    #[error("point lies in no piece")]
    NoPiece,
    #[error("bad configuration: {0}")]
    BadConfiguration(String),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Turing(#[from] TuringError),
}

#[cfg(test)]
mod tests;
