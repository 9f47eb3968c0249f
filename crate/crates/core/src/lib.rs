//! Exact group-ring tools around the zero-divisor problem for lamplighter
//! groups.
//!
//! * [`algebra`]: `(Z/2 wr Z)^d`, rational group rings, the word language.
//! * [`duality`]: cylinder idempotents, matrix units, finite-group embeddings.
//! * [`spectral`]: moments, the moment-based decision procedure, finite
//!   quotients, exact kernels, sofic checks, spectra.
//! * [`turing`]: machines, computation histories, read-only and foolproof
//!   constructions.
//! * [`tds`]: Turing dynamical systems and the machine-to-group-ring compiler.
//! * [`cli`]: the batch commands behind the `zdforge` binary.
//!
//! Runnable walkthroughs live in `examples/`.

pub mod algebra;
pub mod cli;
pub mod duality;
pub mod rational;
pub mod spectral;
pub mod tds;
pub mod turing;
