//! `M -> F(M) -> system -> S -> integral element over (Z/2 wr Z)^4`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::RingElement;
use crate::duality::{HGroup, StructuredOperator};
use crate::rational::{fmt_rational, Rational};
use crate::turing::{construct_foolproof, ReadOnlyTm, StandardTm};

use super::checks::{check_partition, initial_measure, static_check_no_restart};
use super::operators::build_operators;
use super::system::{build_tds, TuringDynamicalSystem};
use super::TdsError;

/// Term cap for `--mode expanded`.
pub const MAX_EXPANDED_TERMS: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompileMode {
    Structured,
    Expanded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub validate: bool,
    pub partition_of_unity: bool,
    pub no_restart: bool,
    pub self_adjoint: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub machine_sha256: String,
    pub m: u32,
    pub n: usize,
    pub h_order: String,
    pub pieces: usize,
    pub terms: usize,
    pub mu_initial: String,
    pub clearing_denominator: String,
    pub embedding: Vec<String>,
    pub mode: CompileMode,
    pub checks: Checks,
}

impl Manifest {
    /// Consistency of the manifest with the operator it describes.
    pub fn check(&self, op: &StructuredOperator) -> Result<(), String> {
        let HGroup::Affine(n) = op.group.h else { return Err("H is not affine".into()) };
        let expect = |ok: bool, what: &str| if ok { Ok(()) } else { Err(format!("{what} does not match")) };
        expect(n == self.n, "n")?;
        expect(op.group.m == self.m, "m")?;
        expect(op.group.h.order().to_string() == self.h_order, "|H|")?;
        expect(op.len() == self.terms, "term count")?;
        expect(self.machine_sha256.len() == 64 && self.machine_sha256.chars().all(|c| c.is_ascii_hexdigit()), "hash")?;
        expect(op.chain.iter().map(|d| d.to_string()).eq(self.embedding.iter().cloned()), "embedding chain")?;
        let c = &self.checks;
        expect(c.validate && c.partition_of_unity && c.no_restart && c.self_adjoint, "checks")
    }
}

#[derive(Clone, Debug)]
pub struct Compiled {
    pub system: TuringDynamicalSystem,
    /// `D * S`, integral after expansion.
    pub operator: StructuredOperator,
    pub expanded: Option<RingElement>,
    pub manifest: Manifest,
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Compile a foolproof three-tape machine directly.
pub fn compile_foolproof(f: &ReadOnlyTm, mode: CompileMode) -> Result<Compiled, TdsError> {
    let system = build_tds(f)?;
    let ops = build_operators(&system)?;
    let partition = ops.partition_of_unity && check_partition(&system);
    let no_restart = static_check_no_restart(&system);
    let d = ops.s.clearing_denominator();
    let operator = ops.s.scale(&Rational::from_integer(d.clone()));
    let expanded = match mode {
        CompileMode::Structured => None,
        CompileMode::Expanded => Some(operator.expand(MAX_EXPANDED_TERMS)?),
    };
    let manifest = Manifest {
        machine_sha256: sha256_hex(&f.to_text()),
        m: system.m,
        n: system.n,
        h_order: HGroup::Affine(system.n).order().to_string(),
        pieces: system.pieces.len(),
        terms: operator.len(),
        mu_initial: fmt_rational(&initial_measure(&system)),
        clearing_denominator: d.to_string(),
        embedding: operator.chain.iter().map(|d| d.to_string()).collect(),
        mode,
        checks: Checks { validate: true, partition_of_unity: partition, no_restart, self_adjoint: ops.self_adjoint },
    };
    Ok(Compiled { system, operator, expanded, manifest })
}

/// Compile a standard machine through its foolproof machine.
pub fn compile(m: &StandardTm, mode: CompileMode) -> Result<Compiled, TdsError> {
    compile_foolproof(&construct_foolproof(m)?, mode)
}
