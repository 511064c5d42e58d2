//! Maximization of footprint sizes over r-subsets of a candidate list.
//!
//! Two interchangeable strategies:
//!
//! * a literal scan over all r-subsets in combinadic order, parallelized over
//!   contiguous rank ranges;
//! * a dynamic program over staircases. For a fixed column window, the
//!   footprint of N is determined by the non-increasing thresholds
//!   `t_c = min(q^(s-1), min{b : x^a y^b in N, a <= c})`, and N is feasible
//!   for given thresholds exactly when enough candidates lie on or above them.
//!
//! Both return the lexicographically least optimal subset, where subsets are
//! compared as increasing index lists into the candidate slice.

use rayon::prelude::*;

use crate::curve::CurveParams;
use crate::error::{Error, Result};
use crate::monomial::{delta_star_raw, footprint_count, star_cut, Monomial, MonomialSet};

/// What is being maximized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Objective {
    /// |Δ*(N)|, the shifted footprint with the extra x-generator.
    Star,
    /// |Δ(N, y^(q^(s-1)), x^(u(q-1)+1))|, the plain footprint in the box.
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Maximum {
    pub value: usize,
    pub witness: Vec<Monomial>,
}

pub(crate) fn objective_value(params: CurveParams, objective: Objective, n: &[Monomial]) -> usize {
    match objective {
        Objective::Star => delta_star_raw(params, n),
        Objective::Plain => footprint_count(params, n),
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

// ---------------------------------------------------------------------------
// Literal subset scan

/// The combination of rank `rank` in lexicographic order of r-subsets of 0..m.
fn unrank(m: usize, r: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(r);
    let mut next = 0;
    for slot in 0..r {
        let mut i = next;
        loop {
            let below = binomial(m - i - 1, r - slot - 1);
            if rank < below {
                break;
            }
            rank -= below;
            i += 1;
        }
        out.push(i);
        next = i + 1;
    }
    out
}

fn advance(idx: &mut [usize], m: usize) -> bool {
    let r = idx.len();
    for pos in (0..r).rev() {
        if idx[pos] < m - r + pos {
            idx[pos] += 1;
            for j in pos + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exhaustive scan over all r-subsets of `candidates`.
///
/// With `prune_in = Some(M)` (only meaningful for [`Objective::Star`]), a
/// subset whose least x-exponent is a1 is skipped when x^(a1+u) is in M but
/// not in the subset; such subsets never beat the best unskipped one.
pub(crate) fn scan_subsets(
    params: CurveParams,
    candidates: &[Monomial],
    r: usize,
    objective: Objective,
    prune_in: Option<&MonomialSet>,
    budget: u128,
) -> Result<Maximum> {
    let m = candidates.len();
    if r == 0 || r > m {
        return Err(Error::OutOfRange(format!("r = {r} must lie in 1..={m}")));
    }
    let total = binomial(m, r);
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let chunks = (rayon::current_num_threads() as u128 * 8).min(total).max(1);
    let step = total.div_ceil(chunks);
    let best = (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let start = c * step;
            if start >= total {
                return None;
            }
            let count = step.min(total - start);
            let mut idx = unrank(m, r, start);
            let mut subset: Vec<Monomial> = Vec::with_capacity(r);
            let mut best: Option<(usize, u128)> = None;
            for off in 0..count {
                subset.clear();
                subset.extend(idx.iter().map(|&i| candidates[i]));
                if !pruned(params, &subset, prune_in) {
                    let v = objective_value(params, objective, &subset);
                    if best.is_none_or(|(bv, _)| v > bv) {
                        best = Some((v, start + off));
                    }
                }
                if off + 1 < count {
                    advance(&mut idx, m);
                }
            }
            best
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    let (value, rank) = best.ok_or(Error::EmptySet)?;
    let witness = unrank(m, r, rank).into_iter().map(|i| candidates[i]).collect();
    Ok(Maximum { value, witness })
}

fn pruned(params: CurveParams, subset: &[Monomial], prune_in: Option<&MonomialSet>) -> bool {
    let Some(set) = prune_in else {
        return false;
    };
    let a1 = subset.iter().map(|m| m.a).min().unwrap_or(0);
    let shifted = Monomial::new(a1 + params.u(), 0);
    set.contains(shifted) && !subset.contains(&shifted)
}

// ---------------------------------------------------------------------------
// Staircase dynamic program

/// A column window [lo, hi) evaluated with a fixed contribution `base`.
#[derive(Clone, Copy, Debug)]
struct Frame {
    lo: u32,
    hi: u32,
    base: usize,
    /// Whether N must contain a monomial in column `lo` and none left of it.
    anchored: bool,
}

fn frames(params: CurveParams, candidates: &[Monomial], objective: Objective) -> Vec<Frame> {
    match objective {
        Objective::Plain => vec![Frame { lo: 0, hi: params.x_max() + 1, base: 0, anchored: false }],
        Objective::Star => {
            let mut cols: Vec<u32> = candidates.iter().map(|m| m.a).collect();
            cols.sort_unstable();
            cols.dedup();
            cols.into_iter()
                .map(|a1| Frame {
                    lo: a1,
                    hi: star_cut(params, a1),
                    base: a1 as usize * params.y_cap() as usize,
                    anchored: true,
                })
                .collect()
        }
    }
}

const NEG: i64 = i64::MIN / 4;

/// Best value in `frame` over r-subsets containing all of `fixed`, with the
/// rest drawn from `pool`. `None` when no such subset fits the frame.
fn frame_best(params: CurveParams, frame: Frame, fixed: &[Monomial], pool: &[Monomial], r: usize) -> Option<usize> {
    if fixed.len() > r || fixed.len() + pool.len() < r {
        return None;
    }
    if frame.anchored && fixed.iter().any(|m| m.a < frame.lo) {
        return None;
    }
    let q = params.y_cap() as usize;
    let w = (frame.hi - frame.lo) as usize;
    let mut cap = vec![q; w];
    for m in fixed.iter().filter(|m| m.a >= frame.lo && m.a < frame.hi) {
        let c = (m.a - frame.lo) as usize;
        cap[c] = cap[c].min(m.b as usize);
    }
    let usable = |m: &&Monomial| !frame.anchored || m.a >= frame.lo;
    let right = pool.iter().filter(usable).filter(|m| m.a >= frame.hi).count();
    // cnt[c][t]: pool monomials in column c with y-exponent >= t.
    let mut cnt = vec![vec![0usize; q + 1]; w];
    for m in pool.iter().filter(usable).filter(|m| m.a < frame.hi) {
        let c = (m.a - frame.lo) as usize;
        for slot in cnt[c].iter_mut().take(m.b as usize + 1) {
            *slot += 1;
        }
    }
    if frame.anchored && !fixed.iter().any(|m| m.a == frame.lo) {
        if fixed.len() == r {
            return None;
        }
        let top = pool.iter().filter(|m| m.a == frame.lo).map(|m| m.b as usize).max()?;
        cap[0] = cap[0].min(top);
    }
    let need = r.saturating_sub(fixed.len() + right);
    let width = need + 1;
    let mut cur = vec![NEG; (q + 1) * width];
    for t in 0..=cap[0] {
        let k = need.min(cnt[0][t]);
        let slot = &mut cur[t * width + k];
        *slot = (*slot).max(t as i64);
    }
    let mut suf = vec![NEG; (q + 1) * width];
    for c in 1..w {
        for t in (0..=q).rev() {
            for k in 0..width {
                let above = if t < q { suf[(t + 1) * width + k] } else { NEG };
                suf[t * width + k] = cur[t * width + k].max(above);
            }
        }
        cur.fill(NEG);
        for t in 0..=cap[c] {
            for k in 0..width {
                let prev = suf[t * width + k];
                if prev == NEG {
                    continue;
                }
                let nk = need.min(k + cnt[c][t]);
                let slot = &mut cur[t * width + nk];
                *slot = (*slot).max(prev + t as i64);
            }
        }
    }
    let best = (0..=q).map(|t| cur[t * width + need]).max().unwrap_or(NEG);
    (best > NEG).then(|| frame.base + best as usize)
}

/// Maximum over r-subsets of `candidates` via the staircase program, with the
/// lexicographically least optimal subset.
pub(crate) fn staircase_maximum(
    params: CurveParams,
    candidates: &[Monomial],
    r: usize,
    objective: Objective,
) -> Result<Maximum> {
    let value = staircase_value(params, candidates, r, objective)?;
    let opt: Vec<Frame> = frames(params, candidates, objective)
        .into_iter()
        .filter(|f| frame_best(params, *f, &[], candidates, r) == Some(value))
        .collect();
    let m = candidates.len();
    let mut chosen: Vec<Monomial> = Vec::with_capacity(r);
    let mut start = 0;
    for pos in 0..r {
        let mut picked = None;
        for i in start..=(m - (r - pos)) {
            chosen.push(candidates[i]);
            let ok = opt.par_iter().any(|f| frame_best(params, *f, &chosen, &candidates[i + 1..], r) == Some(value));
            if ok {
                picked = Some(i);
                break;
            }
            chosen.pop();
        }
        let i = picked.expect("an optimal subset extends every optimal prefix");
        start = i + 1;
    }
    Ok(Maximum { value, witness: chosen })
}

/// The optimum value only.
pub(crate) fn staircase_value(
    params: CurveParams,
    candidates: &[Monomial],
    r: usize,
    objective: Objective,
) -> Result<usize> {
    let m = candidates.len();
    if r == 0 || r > m {
        return Err(Error::OutOfRange(format!("r = {r} must lie in 1..={m}")));
    }
    frames(params, candidates, objective)
        .par_iter()
        .filter_map(|f| frame_best(params, *f, &[], candidates, r))
        .max()
        .ok_or(Error::EmptySet)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: u32, s: u32, u: u32) -> CurveParams {
        CurveParams::new(q, s, u).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(40, 20), 137_846_528_820);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn unrank_walks_in_order() {
        let (m, r) = (7, 3);
        let mut idx = unrank(m, r, 0);
        for rank in 0..binomial(m, r) {
            assert_eq!(unrank(m, r, rank), idx);
            advance(&mut idx, m);
        }
    }

    #[test]
    fn strategies_agree_on_small_sets() {
        for (q, s, u) in [(3, 2, 2), (2, 3, 7), (3, 2, 4), (2, 4, 5), (4, 2, 5)] {
            let p = params(q, s, u);
            for d in [2u32, 3, 5] {
                let cands = MonomialSet::degree_set(p, d);
                for r in 1..=cands.len().min(6) {
                    for obj in [Objective::Star, Objective::Plain] {
                        let a = scan_subsets(p, cands.members(), r, obj, None, u128::MAX).unwrap();
                        let b = staircase_maximum(p, cands.members(), r, obj).unwrap();
                        assert_eq!(a, b, "q={q} s={s} u={u} d={d} r={r} {obj:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn pruning_keeps_the_value() {
        let p = params(3, 2, 2);
        let m = MonomialSet::degree_set(p, 4);
        for r in 1..=6 {
            let a = scan_subsets(p, m.members(), r, Objective::Star, None, u128::MAX).unwrap();
            let b = scan_subsets(p, m.members(), r, Objective::Star, Some(&m), u128::MAX).unwrap();
            assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let p = params(3, 2, 2);
        let m = MonomialSet::full_box(p);
        let err = scan_subsets(p, m.members(), 7, Objective::Star, None, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
