//! Brute-force references for the footprint engines: subspace enumeration,
//! explicit polynomial families with counted common zeros, and the Wei
//! identities.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::LinearCode;
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{self, Row};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Default cap on the number of subspaces visited.
pub const DEFAULT_SUBSPACE_BUDGET: u128 = 10_000_000;

/// Number of r-dimensional subspaces of a k-dimensional space over GF(order).
pub fn gaussian_binomial(k: usize, r: usize, order: u64) -> u128 {
    if r > k {
        return 0;
    }
    let order = order as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        let (Some(a), Some(b)) = (order.checked_pow((k - i) as u32), order.checked_pow((i + 1) as u32)) else {
            return u128::MAX;
        };
        num = match num.checked_mul(a - 1) {
            Some(v) => v,
            None => return u128::MAX,
        };
        den *= b - 1;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pivot columns of an r x k reduced echelon form and the positions of its
/// free entries.
fn free_positions(k: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for j in p + 1..k {
            if !pivots.contains(&j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn pivot_patterns(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for c in start..=k - (r - cur.len()) {
            cur.push(c);
            rec(c + 1, k, r, cur, out);
            cur.pop();
        }
    }
    rec(0, k, r, &mut cur, &mut out);
    out
}

/// Visits every r-dimensional subspace of GF(q^s)^k once, as the rows of its
/// reduced row echelon form.
pub struct SubspaceIterator {
    field: FieldSpec,
    k: usize,
    patterns: Vec<Vec<usize>>,
    pattern: usize,
    free: Vec<(usize, usize)>,
    digits: Vec<u32>,
    fresh: bool,
}

impl SubspaceIterator {
    pub fn new(field: &FieldSpec, k: usize, r: usize) -> SubspaceIterator {
        let patterns = if r <= k { pivot_patterns(k, r) } else { Vec::new() };
        let free = patterns.first().map(|p| free_positions(k, p)).unwrap_or_default();
        SubspaceIterator {
            field: field.clone(),
            k,
            digits: vec![0; free.len()],
            free,
            patterns,
            pattern: 0,
            fresh: true,
        }
    }

    fn matrix(&self) -> Vec<Row> {
        let pivots = &self.patterns[self.pattern];
        let mut rows = vec![vec![FieldElement::ZERO; self.k]; pivots.len()];
        for (i, &p) in pivots.iter().enumerate() {
            rows[i][p] = FieldElement::ONE;
        }
        for (&(i, j), &d) in self.free.iter().zip(&self.digits) {
            rows[i][j] = self.field.element(d).expect("in range");
        }
        rows
    }
}

impl Iterator for SubspaceIterator {
    type Item = Vec<Row>;

    fn next(&mut self) -> Option<Vec<Row>> {
        if self.pattern >= self.patterns.len() {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(self.matrix());
        }
        let order = self.field.order();
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < order {
                return Some(self.matrix());
            }
            *d = 0;
        }
        self.pattern += 1;
        if self.pattern >= self.patterns.len() {
            return None;
        }
        self.free = free_positions(self.k, &self.patterns[self.pattern]);
        self.digits = vec![0; self.free.len()];
        Some(self.matrix())
    }
}

/// Walks every echelon matrix with the given pivots whose first free entry
/// (if any) equals `first`, keeping `rows = A · gens` up to date, and folds
/// `visit` over (coefficient matrix, codeword rows).
fn walk_pattern<T>(
    field: &FieldSpec,
    gens: &[Row],
    pivots: &[usize],
    first: Option<u32>,
    init: T,
    mut visit: impl FnMut(T, &[Row], &[Row]) -> T,
) -> T {
    let k = gens.len();
    let free = free_positions(k, pivots);
    let mut coeffs: Vec<Row> = vec![vec![FieldElement::ZERO; k]; pivots.len()];
    let mut rows: Vec<Row> = pivots.iter().map(|&p| gens[p].clone()).collect();
    for (i, &p) in pivots.iter().enumerate() {
        coeffs[i][p] = FieldElement::ONE;
    }
    let fixed = usize::from(first.is_some());
    if let Some(c) = first {
        let (i, j) = free[0];
        let e = field.element(c).expect("in range");
        coeffs[i][j] = e;
        for (a, g) in rows[i].iter_mut().zip(&gens[j]) {
            *a = field.add(*a, field.mul(e, *g));
        }
    }
    let order = field.order();
    let mut acc = init;
    loop {
        acc = visit(acc, &coeffs, &rows);
        let mut pos = fixed;
        loop {
            if pos == free.len() {
                return acc;
            }
            let (i, j) = free[pos];
            let old = coeffs[i][j];
            let next = (old.code() + 1) % order;
            let new = field.element(next).expect("in range");
            let delta = field.sub(new, old);
            coeffs[i][j] = new;
            for (a, g) in rows[i].iter_mut().zip(&gens[j]) {
                *a = field.add(*a, field.mul(delta, *g));
            }
            if next != 0 {
                break;
            }
            pos += 1;
        }
    }
}

/// Work items for parallel enumeration: a pivot pattern and, when it has
/// free entries, the value of the first one.
fn tasks(k: usize, r: usize, order: u32) -> Vec<(Vec<usize>, Option<u32>)> {
    let mut out = Vec::new();
    for pivots in pivot_patterns(k, r) {
        if free_positions(k, &pivots).is_empty() {
            out.push((pivots, None));
        } else {
            out.extend((0..order).map(|c| (pivots.clone(), Some(c))));
        }
    }
    out
}

fn support_size(rows: &[Row]) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    (0..n).filter(|&i| rows.iter().any(|r| !r[i].is_zero())).count()
}

fn check_budget(count: u128, budget: u128) -> Result<()> {
    if count > budget {
        return Err(Error::BudgetExceeded { needed: count, budget });
    }
    Ok(())
}

/// d_r(C) by enumerating every r-dimensional subcode.
pub fn ghw_bruteforce(code: &LinearCode, r: usize, budget: u128) -> Result<usize> {
    let gens = independent_rows(code);
    let k = gens.len();
    if r == 0 || r > k {
        return Err(Error::OutOfRange(format!("r = {r} must lie in 1..={k}")));
    }
    let f = code.field();
    check_budget(gaussian_binomial(k, r, f.order() as u64), budget)?;
    tasks(k, r, f.order())
        .into_par_iter()
        .map(|(pivots, first)| {
            walk_pattern(f, &gens, &pivots, first, usize::MAX, |best, _, rows| best.min(support_size(rows)))
        })
        .min()
        .ok_or(Error::EmptySet)
}

/// The full hierarchy d_1, ..., d_k by enumeration.
pub fn hierarchy_bruteforce(code: &LinearCode, budget: u128) -> Result<Vec<usize>> {
    let k = independent_rows(code).len();
    (1..=k).map(|r| ghw_bruteforce(code, r, budget)).collect()
}

fn independent_rows(code: &LinearCode) -> Vec<Row> {
    linalg::rref(code.field(), code.generators()).0
}

/// Solves x · rows = v, if possible.
fn express(field: &FieldSpec, rows: &[Row], v: &[FieldElement]) -> Option<Row> {
    let k = rows.len();
    let system: Vec<Row> = (0..v.len())
        .map(|j| {
            let mut eq: Row = rows.iter().map(|r| r[j]).collect();
            eq.push(v[j]);
            eq
        })
        .collect();
    let (red, pivots) = linalg::rref(field, &system);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![FieldElement::ZERO; k];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[k];
    }
    Some(x)
}

/// M_r(C1, C2) by enumerating r-dimensional subcodes of C1 meeting C2 only
/// in zero. C2 must be contained in C1.
pub fn rghw_bruteforce(c1: &LinearCode, c2: &LinearCode, r: usize, budget: u128) -> Result<usize> {
    if c1.len() != c2.len() {
        return Err(Error::Mismatch);
    }
    let f = c1.field();
    let g1 = independent_rows(c1);
    let g2 = independent_rows(c2);
    let inner: Vec<Row> = g2.iter().map(|v| express(f, &g1, v)).collect::<Option<_>>().ok_or(Error::NotNested)?;
    let (k1, k2) = (g1.len(), g2.len());
    if r == 0 || r + k2 > k1 {
        return Err(Error::OutOfRange(format!("r = {r} must lie in 1..={}", k1 - k2)));
    }
    check_budget(gaussian_binomial(k1, r, f.order() as u64), budget)?;
    tasks(k1, r, f.order())
        .into_par_iter()
        .map(|(pivots, first)| {
            walk_pattern(f, &g1, &pivots, first, usize::MAX, |best, coeffs, rows| {
                let s = support_size(rows);
                if s >= best {
                    return best;
                }
                let mut stacked: Vec<Row> = coeffs.to_vec();
                stacked.extend(inner.iter().cloned());
                if linalg::rank(f, &stacked) == r + k2 {
                    s
                } else {
                    best
                }
            })
        })
        .min()
        .filter(|&v| v != usize::MAX)
        .ok_or(Error::EmptySet)
}

/// Number of curve points where every polynomial of `family` vanishes.
pub fn common_zero_count(family: &[Polynomial], curve: &Curve) -> Result<usize> {
    if family.is_empty() {
        return Err(Error::EmptySet);
    }
    let f = curve.field();
    Ok(curve.points().iter().filter(|p| family.iter().all(|g| g.eval(f, p.x, p.y).is_zero())).count())
}

/// Element pools for the witness construction, in canonical order.
struct Pools {
    /// x-values of the curve with x^u != γ.
    alpha: Vec<FieldElement>,
    /// x-values with x^u = γ.
    alpha_prime: Vec<FieldElement>,
    /// y-values with Tr(y) = γ.
    beta: Vec<FieldElement>,
}

fn pools(curve: &Curve, gamma: FieldElement) -> Pools {
    let f = curve.field();
    let u = curve.params().u() as u64;
    let mut alpha = Vec::new();
    let mut alpha_prime = Vec::new();
    let mut beta = Vec::new();
    for e in f.elements() {
        let pw = f.pow_u(e, u);
        if pw == gamma {
            alpha_prime.push(e);
        } else if f.is_in_base_field(pw) {
            alpha.push(e);
        }
        if f.trace(e) == gamma {
            beta.push(e);
        }
    }
    Pools { alpha, alpha_prime, beta }
}

fn take<'a>(pool: &'a [FieldElement], count: usize, what: &str) -> Result<&'a [FieldElement]> {
    pool.get(..count).ok_or_else(|| Error::InsufficientElements(format!("need {count} {what}, have {}", pool.len())))
}

fn product(field: &FieldSpec, factors: impl IntoIterator<Item = Polynomial>) -> Polynomial {
    factors.into_iter().fold(Polynomial::constant(FieldElement::ONE), |acc, g| acc.mul(field, &g))
}

/// Polynomials with initial monomials exactly `n` whose common zeros on the
/// curve number |Δ*(n)|. `gamma` must be a nonzero element of GF(q); `None`
/// picks the first one in canonical order.
pub fn witness_family(n: &[Monomial], curve: &Curve, gamma: Option<FieldElement>) -> Result<Vec<Polynomial>> {
    let params = curve.params();
    let f = curve.field();
    if n.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(bad) = n.iter().find(|m| !params.in_box(**m)) {
        return Err(Error::OutsideBox(bad.to_string()));
    }
    let gamma = match gamma {
        Some(g) if g.is_zero() || !f.is_in_base_field(g) => {
            return Err(Error::OutOfRange("gamma must be a nonzero element of GF(q)".into()));
        }
        Some(g) => g,
        None => f.base_field_elements().into_iter().find(|g| !g.is_zero()).expect("GF(q) has a unit"),
    };
    let set: BTreeSet<Monomial> = n.iter().copied().collect();
    let u = params.u();
    let a1 = set.iter().map(|m| m.a).min().expect("nonempty");
    let case_two = a1 >= u * (params.q() - 2) + 2;
    // Corners: minimal elements of N, excluding those divisible by x^(a1+u).
    let mut corners: Vec<Monomial> =
        set.iter().copied().filter(|m| m.a < a1 + u && !set.iter().any(|o| o != m && o.divides(*m))).collect();
    corners.sort_by_key(|m| m.a);
    let b1 = corners[0].b as usize;
    let ar = corners.last().expect("a1 column has a corner").a;
    let pools = pools(curve, gamma);
    let (alpha, alpha_prime) = if case_two {
        let lead = (u * (params.q() - 2) + 1) as usize;
        (
            take(&pools.alpha, lead, "x-values off gamma")?,
            take(&pools.alpha_prime, (ar as usize) - lead, "x-values on gamma")?,
        )
    } else {
        (
            take(&pools.alpha, a1 as usize, "x-values off gamma")?,
            take(&pools.alpha_prime, (ar - a1) as usize, "x-values on gamma")?,
        )
    };
    let beta = take(&pools.beta, b1, "trace-gamma y-values")?;
    let alpha_1 = alpha
        .first()
        .or(pools.alpha.first())
        .copied()
        .ok_or_else(|| Error::InsufficientElements("no x-value off gamma".into()))?;
    let beta_1 = pools.beta[0];

    let corner_poly = |m: Monomial| -> Polynomial {
        let shift = m.a as usize - alpha.len();
        product(
            f,
            alpha
                .iter()
                .chain(&alpha_prime[..shift])
                .map(|&e| Polynomial::x_minus(f, e))
                .chain(beta[..m.b as usize].iter().map(|&e| Polynomial::y_minus(f, e))),
        )
    };
    let x_factor = Polynomial::x_minus(f, alpha_1);
    let y_factor = Polynomial::y_minus(f, beta_1);
    let mut family = Vec::with_capacity(n.len());
    for m in params_sorted(curve, &set) {
        let poly = if let Some(&c) = corners.iter().find(|c| **c == m) {
            corner_poly(c)
        } else if let Some(&c) = corners.iter().find(|c| c.divides(m)) {
            corner_poly(c).mul(f, &x_factor.pow(f, m.a - c.a)).mul(f, &y_factor.pow(f, m.b - c.b))
        } else {
            // Divisible by x^(a1+u), which happens only below case two.
            let xu_minus_gamma = Polynomial::monomial(Monomial::new(u, 0)).add(f, &Polynomial::constant(f.neg(gamma)));
            product(f, alpha.iter().map(|&e| Polynomial::x_minus(f, e)))
                .mul(f, &xu_minus_gamma)
                .mul(f, &x_factor.pow(f, m.a - a1 - u))
                .mul(f, &y_factor.pow(f, m.b))
        };
        family.push(poly);
    }
    Ok(family)
}

fn params_sorted(curve: &Curve, set: &BTreeSet<Monomial>) -> Vec<Monomial> {
    let params = curve.params();
    let mut v: Vec<Monomial> = set.iter().copied().collect();
    v.sort_by(|a, b| params.compare(*a, *b));
    v
}

/// Outcome of the Wei identities on a hierarchy and its dual hierarchy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeiReport {
    pub n: usize,
    pub k: usize,
    pub monotone: bool,
    pub singleton: bool,
    pub duality: bool,
    pub violations: Vec<String>,
}

impl WeiReport {
    pub fn passed(&self) -> bool {
        self.monotone && self.singleton && self.duality
    }
}

/// Checks 1 <= d_1 < ... < d_k <= n, d_r <= n - k + r, and that
/// {d_r(C)} and {n + 1 - d_r(C^perp)} partition {1, ..., n}.
pub fn wei_checks(n: usize, hierarchy: &[usize], dual_hierarchy: &[usize]) -> WeiReport {
    let k = hierarchy.len();
    let mut violations = Vec::new();
    let mut monotone = true;
    for (i, &d) in hierarchy.iter().enumerate() {
        let r = i + 1;
        let prev = if i == 0 { 0 } else { hierarchy[i - 1] };
        if d <= prev || d > n {
            monotone = false;
            violations.push(format!("monotonicity fails at r = {r}: d_r = {d}"));
        }
    }
    let mut singleton = true;
    for (i, &d) in hierarchy.iter().enumerate() {
        let r = i + 1;
        if d + k > n + r {
            singleton = false;
            violations.push(format!("d_{r} = {d} exceeds n - k + r = {}", n + r - k));
        }
    }
    let mut seen = vec![0u32; n + 2];
    for &d in hierarchy {
        if d <= n {
            seen[d] += 1;
        }
    }
    for &d in dual_hierarchy {
        if (1..=n).contains(&d) {
            seen[n + 1 - d] += 1;
        }
    }
    let duality = hierarchy.len() + dual_hierarchy.len() == n && (1..=n).all(|v| seen[v] == 1);
    if !duality {
        violations.push("hierarchy and shifted dual hierarchy do not partition 1..=n".into());
    }
    WeiReport { n, k, monotone, singleton, duality, violations }
}

/// [`wei_checks`] with both hierarchies found by enumeration.
pub fn wei_checks_code(code: &LinearCode, budget: u128) -> Result<WeiReport> {
    let dual = crate::code::dual_nullspace(code);
    let h = hierarchy_bruteforce(code, budget)?;
    let hd = hierarchy_bruteforce(&dual, budget)?;
    Ok(wei_checks(code.len(), &h, &hd))
}
