//! Generalized Hamming weights of decreasing evaluation codes on X_u.
//!
//! d_r(ev(M)) = n - max{|Δ*(N)| : N ⊆ M, |N| = r}. The general engine
//! maximizes over r-subsets of M; the fast paths evaluate a single candidate
//! (or a few) for total-degree sets.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::CurveParams;
use crate::error::{Error, Result};
use crate::monomial::{delta_star_raw, footprint_count, maxcase_candidate, Dominant, Monomial, MonomialSet};
use crate::search::{self, binomial, Objective};

/// How a weight was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GhwMethod {
    #[serde(rename = "exhaustive")]
    Exhaustive,
    #[serde(rename = "fastpath_M_r")]
    Fastpath,
    #[serde(rename = "maxcase")]
    Maxcase,
    #[serde(rename = "oracle")]
    Oracle,
}

impl fmt::Display for GhwMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GhwMethod::Exhaustive => "exhaustive",
            GhwMethod::Fastpath => "fastpath_M_r",
            GhwMethod::Maxcase => "maxcase",
            GhwMethod::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhwResult {
    pub r: usize,
    #[serde(rename = "d_r")]
    pub value: usize,
    /// An N attaining the maximum; empty for oracle results.
    pub witness: Vec<Monomial>,
    pub method: GhwMethod,
    /// False when M was not decreasing and the value is only a lower bound.
    pub exact: bool,
    /// |Δ(M(r), y^(q^(s-1)), x^(u(q-1)+1))| reported by the fast path when
    /// u <= (q^(s-1) - 1)/(q - 1).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartesian_footprint: Option<usize>,
}

/// Which maximization strategy the exhaustive engine uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Literal scan when the subset count is small, staircase program otherwise.
    #[default]
    Auto,
    /// Always scan every r-subset (subject to the budget).
    Subsets,
    /// Always use the staircase program.
    Staircase,
}

#[derive(Clone, Copy, Debug)]
pub struct GhwOptions {
    pub strategy: Strategy,
    /// Skip subsets that cannot be maximal (scan strategy only).
    pub prune: bool,
    /// Largest subset count the scan strategy accepts.
    pub subset_budget: u128,
    /// Accept non-decreasing M and report a lower bound.
    pub bound_only: bool,
}

impl Default for GhwOptions {
    fn default() -> GhwOptions {
        GhwOptions { strategy: Strategy::Auto, prune: true, subset_budget: 1 << 34, bound_only: false }
    }
}

/// Subset counts up to this size are scanned literally under [`Strategy::Auto`].
pub const AUTO_SCAN_LIMIT: u128 = 100_000;

fn check_r(r: usize, len: usize) -> Result<()> {
    if r == 0 || r > len {
        return Err(Error::OutOfRange(format!("r = {r} must lie in 1..={len}")));
    }
    Ok(())
}

/// Maximum of `objective` over r-subsets of `candidates` using `options`.
pub(crate) fn maximize(
    params: CurveParams,
    candidates: &[Monomial],
    r: usize,
    objective: Objective,
    prune_in: Option<&MonomialSet>,
    options: &GhwOptions,
) -> Result<search::Maximum> {
    let scan = match options.strategy {
        Strategy::Subsets => true,
        Strategy::Staircase => false,
        Strategy::Auto => binomial(candidates.len(), r) <= AUTO_SCAN_LIMIT,
    };
    if scan {
        let prune = if options.prune { prune_in } else { None };
        search::scan_subsets(params, candidates, r, objective, prune, options.subset_budget)
    } else {
        search::staircase_maximum(params, candidates, r, objective)
    }
}

/// d_r(ev(M)) by maximizing |Δ*(N)| over all r-subsets N of M.
pub fn ghw_exhaustive(m: &MonomialSet, r: usize) -> Result<GhwResult> {
    ghw_exhaustive_with(m, r, &GhwOptions::default())
}

pub fn ghw_exhaustive_with(m: &MonomialSet, r: usize, options: &GhwOptions) -> Result<GhwResult> {
    let decreasing = m.is_decreasing();
    if !decreasing && !options.bound_only {
        return Err(Error::NotDecreasing);
    }
    check_r(r, m.len())?;
    let params = m.params();
    let prune_in = decreasing.then_some(m);
    let best = maximize(params, m.members(), r, Objective::Star, prune_in, options)?;
    Ok(GhwResult {
        r,
        value: params.n() - best.value,
        witness: best.witness,
        method: GhwMethod::Exhaustive,
        exact: decreasing,
        cartesian_footprint: None,
    })
}

/// The full hierarchy d_1, ..., d_|M|.
pub fn weight_hierarchy(m: &MonomialSet) -> Result<Vec<GhwResult>> {
    weight_hierarchy_with(m, &GhwOptions::default())
}

pub fn weight_hierarchy_with(m: &MonomialSet, options: &GhwOptions) -> Result<Vec<GhwResult>> {
    if m.is_empty() {
        return Err(Error::EmptySet);
    }
    (1..=m.len()).into_par_iter().map(|r| ghw_exhaustive_with(m, r, options)).collect()
}

/// d_r(ev(M)) without a witness, always via the staircase program.
pub fn ghw_value(m: &MonomialSet, r: usize) -> Result<usize> {
    if !m.is_decreasing() {
        return Err(Error::NotDecreasing);
    }
    check_r(r, m.len())?;
    let params = m.params();
    Ok(params.n() - search::staircase_value(params, m.members(), r, Objective::Star)?)
}

/// The hierarchy values d_1, ..., d_|M| without witnesses.
pub fn hierarchy_values(m: &MonomialSet) -> Result<Vec<usize>> {
    if m.is_empty() {
        return Err(Error::EmptySet);
    }
    (1..=m.len()).into_par_iter().map(|r| ghw_value(m, r)).collect()
}

/// Largest total degree accepted by the fast paths, u(q-1)(q^(s-1)-1).
pub fn fastpath_degree_bound(params: CurveParams) -> u32 {
    params.x_max() * (params.y_cap() - 1)
}

/// M(r): the first r members of M_{<=d} in descending x-dominant lex order.
pub fn lex_prefix_set(params: CurveParams, d: u32, r: usize) -> Result<MonomialSet> {
    MonomialSet::degree_set(params, d).lex_prefix(r, Dominant::X)
}

/// n - |Δ*(M(r))| for any u; equals d_r only when u is not maximal.
pub fn lex_prefix_value(params: CurveParams, d: u32, r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::OutOfRange("r must be positive".into()));
    }
    let set = lex_prefix_set(params, d, r)?;
    Ok(params.n() - delta_star_raw(params, set.members()))
}

/// d_r(ev(M_{<=d})) for non-maximal u via the lex prefix M(r).
pub fn ghw_fastpath(params: CurveParams, d: u32, r: usize) -> Result<GhwResult> {
    if params.is_maximal_u() {
        return Err(Error::WrongUKind { u: params.u(), actual: "" });
    }
    let bound = fastpath_degree_bound(params);
    if d > bound {
        return Err(Error::OutOfRange(format!("d = {d} exceeds u(q-1)(q^(s-1)-1) = {bound}")));
    }
    let full = MonomialSet::degree_set(params, d);
    check_r(r, full.len())?;
    let prefix = full.lex_prefix(r, Dominant::X)?;
    let star = delta_star_raw(params, prefix.members());
    let small_u = (params.u() as u64) * (params.q() as u64 - 1) < params.y_cap() as u64;
    Ok(GhwResult {
        r,
        value: params.n() - star,
        witness: prefix.members().to_vec(),
        method: GhwMethod::Fastpath,
        exact: true,
        cartesian_footprint: small_u.then(|| footprint_count(params, prefix.members())),
    })
}

/// d_r(ev(M_{<=d})) for maximal u from the candidates N_{a1}.
///
/// When no a1 is admissible the exhaustive engine is used instead and the
/// result carries [`GhwMethod::Exhaustive`].
pub fn ghw_maxcase(params: CurveParams, d: u32, r: usize) -> Result<GhwResult> {
    if !params.is_maximal_u() {
        return Err(Error::WrongUKind { u: params.u(), actual: "not" });
    }
    let bound = fastpath_degree_bound(params);
    if d == 0 || d > bound {
        return Err(Error::OutOfRange(format!("d = {d} must lie in 1..={bound}")));
    }
    let full = MonomialSet::degree_set(params, d);
    check_r(r, full.len())?;
    // Every admissible a1 is tried even for d <= y_cap: a1 = 0 alone is not
    // optimal there (q = 3, s = 2, u = 4, d = 3, r = 3 needs a1 = 1).
    let mut candidates: Vec<MonomialSet> = Vec::new();
    for a1 in 0..=d.min(params.x_max()) {
        if let Ok(Some(n)) = maxcase_candidate(params, d, r, a1) {
            candidates.push(n);
        }
    }
    candidates.retain(|n| n.len() == r && n.is_subset_of(&full));
    let best = candidates.iter().map(|n| (delta_star_raw(params, n.members()), n)).fold(
        None::<(usize, &MonomialSet)>,
        |acc, (v, n)| match acc {
            Some((bv, _)) if bv >= v => acc,
            _ => Some((v, n)),
        },
    );
    match best {
        Some((star, n)) => Ok(GhwResult {
            r,
            value: params.n() - star,
            witness: n.members().to_vec(),
            method: GhwMethod::Maxcase,
            exact: true,
            cartesian_footprint: None,
        }),
        None => ghw_exhaustive(&full, r),
    }
}

/// d_r of the Cartesian code on a (u(q-1)+1) x q^(s-1) grid with total
/// degree at most d: n minus the largest plain footprint of r monomials.
pub fn cartesian_ghw(params: CurveParams, d: u32, r: usize) -> Result<usize> {
    let full = MonomialSet::degree_set(params, d);
    check_r(r, full.len())?;
    let best = search::staircase_value(params, full.members(), r, Objective::Plain)?;
    Ok(params.n() - best)
}

/// [`cartesian_ghw`] with an attaining monomial set.
pub fn cartesian_ghw_witness(params: CurveParams, d: u32, r: usize) -> Result<(usize, Vec<Monomial>)> {
    let full = MonomialSet::degree_set(params, d);
    check_r(r, full.len())?;
    let best = maximize(params, full.members(), r, Objective::Plain, None, &GhwOptions::default())?;
    Ok((params.n() - best.value, best.witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: u32, s: u32, u: u32) -> CurveParams {
        CurveParams::new(q, s, u).unwrap()
    }

    fn ms(list: &[&str]) -> Vec<Monomial> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn small_degree_examples() {
        assert_eq!(ghw_exhaustive(&MonomialSet::degree_set(p(3, 2, 1), 4), 3).unwrap().value, 3);
        assert_eq!(ghw_exhaustive(&MonomialSet::degree_set(p(3, 2, 2), 4), 3).unwrap().value, 6);
        let r = ghw_exhaustive(&MonomialSet::degree_set(p(3, 2, 4), 4), 3).unwrap();
        assert_eq!(r.value, 17);
        let mut w = r.witness.clone();
        w.sort();
        let mut expected = ms(&["x3y1", "x2y1", "x2y2"]);
        expected.sort();
        assert_eq!(w, expected);
    }

    #[test]
    fn strategies_share_values_and_witnesses() {
        let m = MonomialSet::degree_set(p(3, 2, 4), 4);
        for r in 1..=m.len() {
            let scan = GhwOptions { strategy: Strategy::Subsets, prune: false, ..Default::default() };
            let dp = GhwOptions { strategy: Strategy::Staircase, ..Default::default() };
            let a = ghw_exhaustive_with(&m, r, &scan).unwrap();
            let b = ghw_exhaustive_with(&m, r, &dp).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn tiny_hierarchies() {
        let c = p(2, 2, 1);
        let m = MonomialSet::new(c, ms(&["1", "y"])).unwrap();
        let h: Vec<usize> = weight_hierarchy(&m).unwrap().iter().map(|g| g.value).collect();
        assert_eq!(h, vec![3, 4]);
        let one = MonomialSet::new(p(5, 2, 3), ms(&["1"])).unwrap();
        assert_eq!(weight_hierarchy(&one).unwrap()[0].value, 65);
        let l8 = MonomialSet::onepoint_set(p(5, 2, 3), 8);
        let h = weight_hierarchy(&l8).unwrap();
        assert_eq!(h[0].value, 57);
        assert!(h[1].value >= 58);
        let values: Vec<usize> = h.iter().map(|g| g.value).collect();
        assert_eq!(hierarchy_values(&l8).unwrap(), values);
    }

    #[test]
    fn rejects_bad_inputs() {
        let c = p(3, 2, 2);
        let bad = MonomialSet::new(c, ms(&["x1y1"])).unwrap();
        assert_eq!(ghw_exhaustive(&bad, 1).unwrap_err(), Error::NotDecreasing);
        let bound = ghw_exhaustive_with(&bad, 1, &GhwOptions { bound_only: true, ..Default::default() }).unwrap();
        assert!(!bound.exact);
        let m = MonomialSet::degree_set(c, 2);
        assert!(ghw_exhaustive(&m, 0).is_err());
        assert!(ghw_exhaustive(&m, m.len() + 1).is_err());
    }

    #[test]
    fn fast_paths() {
        assert_eq!(ghw_fastpath(p(3, 2, 1), 4, 3).unwrap().value, 3);
        assert_eq!(ghw_fastpath(p(3, 2, 2), 4, 3).unwrap().value, 6);
        assert!(ghw_fastpath(p(3, 2, 4), 4, 3).is_err());
        let r = ghw_maxcase(p(3, 2, 4), 4, 3).unwrap();
        assert_eq!((r.value, r.method), (17, GhwMethod::Maxcase));
        assert!(ghw_maxcase(p(3, 2, 2), 4, 3).is_err());
        assert_eq!(lex_prefix_value(p(3, 2, 4), 4, 3).unwrap(), 18);
        let full = MonomialSet::degree_set(p(3, 2, 4), 4).len();
        assert_eq!(ghw_maxcase(p(3, 2, 4), 4, full).unwrap().value, 27);
        let low = ghw_maxcase(p(3, 2, 4), 3, 3).unwrap();
        assert_eq!(low.value, 20);
        assert_eq!(low.value, ghw_exhaustive(&MonomialSet::degree_set(p(3, 2, 4), 3), 3).unwrap().value);
    }

    #[test]
    fn cartesian_baselines() {
        assert_eq!(cartesian_ghw(p(3, 2, 1), 4, 3).unwrap(), 3);
        assert_eq!(cartesian_ghw(p(3, 2, 2), 4, 3).unwrap(), 5);
        assert_eq!(cartesian_ghw(p(3, 2, 4), 4, 3).unwrap(), 9);
        let (v, w) = cartesian_ghw_witness(p(3, 2, 2), 4, 3).unwrap();
        assert_eq!(v, 5);
        assert_eq!(footprint_count(p(3, 2, 2), &w), 10);
    }
}
