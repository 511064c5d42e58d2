//! Relative generalized Hamming weights of nested decreasing codes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ghw::{maximize, GhwOptions};
use crate::monomial::{Monomial, MonomialSet};
use crate::search::Objective;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RghwResult {
    pub r: usize,
    #[serde(rename = "M_r")]
    pub value: usize,
    /// False when only a lower bound is known.
    pub exact: bool,
    /// Whether every monomial of M1 \ M2 exceeds every monomial of M2.
    pub condition_held: bool,
    pub witness: Vec<Monomial>,
}

fn check_pair(m1: &MonomialSet, m2: &MonomialSet) -> Result<()> {
    if m1.params() != m2.params() {
        return Err(Error::Mismatch);
    }
    if !m1.is_decreasing() || !m2.is_decreasing() {
        return Err(Error::NotDecreasing);
    }
    if !m2.is_subset_of(m1) || m2.len() == m1.len() {
        return Err(Error::NotNested);
    }
    Ok(())
}

/// Whether M1 \ M2 > M2 in the weighted order.
pub fn ordering_condition(m1: &MonomialSet, m2: &MonomialSet) -> Result<bool> {
    check_pair(m1, m2)?;
    Ok(ordering_holds(m1, m2))
}

fn ordering_holds(m1: &MonomialSet, m2: &MonomialSet) -> bool {
    let params = m1.params();
    let diff = m1.difference(m2);
    match (diff.members().first(), m2.members().last()) {
        (Some(&lo), Some(&hi)) => params.compare(lo, hi).is_gt(),
        _ => true,
    }
}

/// Monomials that can lead a polynomial of L(M1) outside L(M2): every such
/// polynomial has a term in M1 \ M2, so its initial monomial is at least the
/// least member of the difference.
pub fn attainable_initials(m1: &MonomialSet, m2: &MonomialSet) -> Vec<Monomial> {
    let params = m1.params();
    let diff = m1.difference(m2);
    let Some(&lo) = diff.members().first() else {
        return Vec::new();
    };
    m1.iter().filter(|m| params.compare(*m, lo).is_ge()).collect()
}

/// M_r(ev(M1), ev(M2)): exact when the ordering condition holds, a lower
/// bound otherwise.
pub fn rghw(m1: &MonomialSet, m2: &MonomialSet, r: usize) -> Result<RghwResult> {
    rghw_with(m1, m2, r, &GhwOptions::default())
}

pub fn rghw_with(m1: &MonomialSet, m2: &MonomialSet, r: usize, options: &GhwOptions) -> Result<RghwResult> {
    check_pair(m1, m2)?;
    let gap = m1.len() - m2.len();
    if r == 0 || r > gap {
        return Err(Error::OutOfRange(format!("r = {r} must lie in 1..={gap}")));
    }
    let params = m1.params();
    let condition_held = ordering_holds(m1, m2);
    let candidates: Vec<Monomial> =
        if condition_held { m1.difference(m2).members().to_vec() } else { attainable_initials(m1, m2) };
    let best = maximize(params, &candidates, r, Objective::Star, None, options)?;
    Ok(RghwResult { r, value: params.n() - best.value, exact: condition_held, condition_held, witness: best.witness })
}
