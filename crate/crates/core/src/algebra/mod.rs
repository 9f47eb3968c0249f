//! Exact arithmetic for `(Z/2 wr Z)^d`, its finite quotients, and their
//! rational group rings, plus the word language and text format.

pub mod group;
pub mod group_ring;
pub mod lamplighter;
pub mod ring;
pub mod text;
pub mod wide;
pub mod word;

pub use group::Group;
pub use group_ring::GroupRingElem;
pub use lamplighter::{Factor, GroupElement, Lamplighter};
pub use ring::{normalize_positive, RingElement};
pub use wide::WideFactor;
pub use word::{parse_word, to_word, GeneratorAlphabet};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("ring elements live over different group descriptors")]
    DescriptorMismatch,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("empty term at token {0}")]
    EmptyTerm(usize),
    #[error("empty word")]
    EmptyWord,
    #[error("`1` must stand alone as a term (token {0})")]
    MisplacedOne(usize),
    #[error("generator `{0}` has no matching inverse in the alphabet")]
    NotSymmetric(String),
    #[error("element is zero")]
    ZeroInput,
    #[error("element has non-integral coefficients")]
    NotIntegral,
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}
