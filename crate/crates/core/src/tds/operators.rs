//! `T = sum gamma_i chi_i` and `S = B^* B + chi_A` with
//! `B = T + chi_X - chi_I - chi_A - chi_R`, kept in structured form.

use crate::duality::{HGroup, SourceGroup, StructTerm, StructuredOperator};
use crate::algebra::Group;
use crate::rational::Rational;

use num_traits::One;

use super::system::{PieceKind, TuringDynamicalSystem, TAPES};
use super::TdsError;

#[derive(Clone, Debug)]
pub struct OperatorPair {
    pub t: StructuredOperator,
    pub s: StructuredOperator,
    pub chi_initial: StructuredOperator,
    pub chi_accept: StructuredOperator,
    pub chi_reject: StructuredOperator,
    /// `sum chi_i = 1`, decided exactly.
    pub partition_of_unity: bool,
    /// `S^* = S`, decided exactly.
    pub self_adjoint: bool,
}

pub fn source_group(tds: &TuringDynamicalSystem) -> SourceGroup {
    SourceGroup { tapes: TAPES, m: tds.m, h: HGroup::Affine(tds.n) }
}

fn indicator(tds: &TuringDynamicalSystem, keep: impl Fn(PieceKind) -> bool) -> StructuredOperator {
    let group = source_group(tds);
    let terms = tds
        .pieces
        .iter()
        .filter(|p| keep(p.kind))
        .map(|p| StructTerm { g: group.identity(), chi: p.chi.clone(), coeff: Rational::one() })
        .collect();
    StructuredOperator::from_terms(group, terms)
}

pub fn build_operators(tds: &TuringDynamicalSystem) -> Result<OperatorPair, TdsError> {
    let group = source_group(tds);
    let t = StructuredOperator::from_terms(
        group,
        tds.pieces
            .iter()
            .map(|p| StructTerm { g: p.gamma.source_elem(), chi: p.chi.clone(), coeff: Rational::one() })
            .collect(),
    );
    let one = StructuredOperator::one(group);
    let chi_initial = indicator(tds, |k| k == PieceKind::Initial);
    let chi_accept = indicator(tds, |k| k == PieceKind::Accept);
    let chi_reject = indicator(tds, |k| k == PieceKind::Reject);
    let partition_of_unity = indicator(tds, |_| true).equals(&one)?;
    let b = t.add(&one)?.sub(&chi_initial)?.sub(&chi_accept)?.sub(&chi_reject)?;
    let s = b.star().mul(&b)?.add(&chi_accept)?;
    let self_adjoint = s.star().equals(&s)?;
    Ok(OperatorPair { t, s, chi_initial, chi_accept, chi_reject, partition_of_unity, self_adjoint })
}
