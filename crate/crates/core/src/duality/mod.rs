//! Cylinder sets and idempotents, matrix units, finite-group embeddings and
//! the embedding chain into `Q[(Z/2 wr Z)^d]`.

pub mod cylinder;
pub mod embed;
pub mod f2;
pub mod finite_group;
pub mod matrix_units;
pub mod regular;
pub mod structured;

pub use cylinder::{cylinder_to_ring, cylinder_to_ring_in, BitCylinder};
pub use embed::{block_embed, tensor_embed, EmbeddingDescriptor, EmbeddingKind, TraceScale};
pub use f2::{transvection, AffineElem, F2Matrix};
pub use finite_group::{AffineGroup, FiniteGroupTable};
pub use matrix_units::{chi, embed_matrix, matrix_unit, unit_cylinder, verify_relations};
pub use regular::{embed_finite_group_ring, regular_representation};
pub use structured::{HElem, HGroup, SourceElem, SourceGroup, StructCylinder, StructTerm, StructuredOperator};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DualityError {
    #[error("index {index:?} out of range for size {n}")]
    IndexOutOfRange { n: usize, index: Vec<usize> },
    #[error("matrix is not square")]
    NotSquare,
    #[error("{what} {size} exceeds the expansion limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("expected {expected} factors, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("operators live over different source groups")]
    SourceMismatch,
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}
