//! Moments, the decision procedure, finite quotients and their spectra.

pub mod bounds;
pub mod decide;
pub mod histogram;
pub mod moment;
pub mod quotient;
pub mod sofic;

pub use bounds::{ln_interval, required_exponent, verify_lueck_bound, BoundReport};
pub use decide::{decide_l2_zero_divisor, Exponent, Outcome, Verdict};
pub use histogram::{spectrum_histogram, Histogram};
pub use moment::{moment, moments, DEFAULT_BUDGET};
pub use quotient::{build_quotient, convolution_matrix, kernel_dim_exact, ConvolutionMatrix, FiniteQuotient};
pub use sofic::{cayley_ball, verify_sofic_fraction, CayleyBall};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("element is not self-adjoint")]
    NotSelfAdjoint,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("{what} exceeds the size limit {limit}")]
    TooLarge { what: &'static str, limit: usize },
    #[error("the bound needs n >= 2, got {0}")]
    ExponentTooSmall(u64),
    #[error("{0}")]
    InvalidParameter(String),
}
