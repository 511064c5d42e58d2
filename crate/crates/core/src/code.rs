//! Evaluation codes on X_u, Cartesian codes, duals and brute-force minimum
//! weights.

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{self, Row};
use crate::monomial::{Monomial, MonomialSet};

/// Default cap on q^(s k) for [`min_weight_bruteforce`].
pub const DEFAULT_CODEWORD_BUDGET: u128 = 1 << 27;

/// A linear code given by generator rows.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: FieldSpec,
    length: usize,
    generators: Vec<Row>,
    monomial_basis: Option<MonomialSet>,
    twist: Option<Vec<FieldElement>>,
}

/// Generator matrix as element codes, for serialization.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorMatrix {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<Vec<u32>>,
}

impl LinearCode {
    /// A code spanned by `generators`; dependent rows are dropped.
    pub fn from_rows(field: &FieldSpec, length: usize, generators: Vec<Row>) -> Result<LinearCode> {
        if generators.iter().any(|r| r.len() != length) {
            return Err(Error::Mismatch);
        }
        let (basis, _) = linalg::rref(field, &generators);
        Ok(LinearCode { field: field.clone(), length, generators: basis, monomial_basis: None, twist: None })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn generators(&self) -> &[Row] {
        &self.generators
    }

    pub fn monomial_basis(&self) -> Option<&MonomialSet> {
        self.monomial_basis.as_ref()
    }

    pub fn twist(&self) -> Option<&[FieldElement]> {
        self.twist.as_deref()
    }

    /// Number of generator rows; equals the dimension for constructed codes.
    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_matrix(&self) -> GeneratorMatrix {
        GeneratorMatrix {
            n: self.length,
            k: self.dimension(),
            rows: self.generators.iter().map(|r| r.iter().map(|x| x.code()).collect()).collect(),
        }
    }

    /// Whether both codes span the same subspace.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.length == other.length && linalg::same_row_space(&self.field, &self.generators, &other.generators)
    }
}

/// Row rank of the generator matrix.
pub fn code_rank(code: &LinearCode) -> usize {
    linalg::rank(&code.field, &code.generators)
}

/// Evaluation vector of x^a y^b at the curve points.
pub fn evaluate_monomial(curve: &Curve, m: Monomial) -> Row {
    let f = curve.field();
    curve.points().iter().map(|p| f.mul(f.pow_u(p.x, m.a as u64), f.pow_u(p.y, m.b as u64))).collect()
}

/// The evaluation code of the span of `m`, one row per monomial.
pub fn evaluate_code(curve: &Curve, m: &MonomialSet) -> Result<LinearCode> {
    if m.is_empty() {
        return Err(Error::EmptySet);
    }
    if m.params() != curve.params() {
        return Err(Error::Mismatch);
    }
    let generators = m.iter().map(|mono| evaluate_monomial(curve, mono)).collect();
    Ok(LinearCode {
        field: curve.field().clone(),
        length: curve.n(),
        generators,
        monomial_basis: Some(m.clone()),
        twist: None,
    })
}

/// The twist β: u^(-1) at points with nonzero x-coordinate, 1 elsewhere.
pub fn dual_twist(curve: &Curve) -> Vec<FieldElement> {
    let f = curve.field();
    let u_inv = f.inv(f.from_int(curve.params().u() as i64)).expect("u is prime to the characteristic");
    curve.points().iter().map(|p| if p.x.is_zero() { f.one() } else { u_inv }).collect()
}

/// The dual of ev(M) as β ⋆ ev(M^c).
pub fn dual_structural(curve: &Curve, m: &MonomialSet) -> Result<LinearCode> {
    if !m.is_decreasing() {
        return Err(Error::NotDecreasing);
    }
    let f = curve.field();
    let beta = dual_twist(curve);
    let comp = m.complement();
    let generators = comp
        .iter()
        .map(|mono| evaluate_monomial(curve, mono).into_iter().zip(&beta).map(|(v, b)| f.mul(v, *b)).collect())
        .collect();
    Ok(LinearCode { field: f.clone(), length: curve.n(), generators, monomial_basis: Some(comp), twist: Some(beta) })
}

/// The dual computed as the null space of the generator matrix.
pub fn dual_nullspace(code: &LinearCode) -> LinearCode {
    let generators = linalg::nullspace(&code.field, &code.generators, code.length);
    LinearCode { field: code.field.clone(), length: code.length, generators, monomial_basis: None, twist: None }
}

/// The Cartesian code: monomials x^a y^b with a <= u(q-1), b < q^(s-1) and
/// a + b <= d, evaluated on Z1 x Z2 where Z1 and Z2 are the first
/// u(q-1)+1 and q^(s-1) field elements.
pub fn cartesian_code(curve: &Curve, d: u32) -> Result<LinearCode> {
    let params = curve.params();
    let f = curve.field();
    let (w1, w2) = (params.x_max() as u64 + 1, params.y_cap() as u64);
    if w1 > f.order() as u64 || w2 > f.order() as u64 {
        return Err(Error::OutOfRange("Cartesian grid exceeds the field".into()));
    }
    let z1: Vec<FieldElement> = f.elements().take(w1 as usize).collect();
    let z2: Vec<FieldElement> = f.elements().take(w2 as usize).collect();
    let monos = MonomialSet::degree_set(params, d);
    let generators = monos
        .iter()
        .map(|m| {
            let mut row = Vec::with_capacity(z1.len() * z2.len());
            for &x in &z1 {
                for &y in &z2 {
                    row.push(f.mul(f.pow_u(x, m.a as u64), f.pow_u(y, m.b as u64)));
                }
            }
            row
        })
        .collect();
    Ok(LinearCode {
        field: f.clone(),
        length: z1.len() * z2.len(),
        generators,
        monomial_basis: Some(monos),
        twist: None,
    })
}

/// Number of nonzero coordinates.
pub fn weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Exact minimum weight by enumerating messages whose leading nonzero
/// coefficient is 1. Fails when q^(s k) exceeds `budget`.
pub fn min_weight_bruteforce(code: &LinearCode, budget: u128) -> Result<usize> {
    let k = code.dimension();
    if k == 0 {
        return Err(Error::EmptySet);
    }
    let order = code.field.order() as u128;
    let needed = order.checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let f = &code.field;
    let rows = &code.generators;
    // Split the work on the leading position and, when present, the value of
    // the next coefficient.
    let mut tasks: Vec<(usize, Option<u32>)> = Vec::new();
    for lead in 0..k {
        if lead + 1 < k {
            tasks.extend((0..f.order()).map(|c| (lead, Some(c))));
        } else {
            tasks.push((lead, None));
        }
    }
    tasks
        .into_par_iter()
        .map(|(lead, next)| {
            let mut base = rows[lead].clone();
            let mut free_from = lead + 1;
            if let Some(c) = next {
                let coeff = f.element(c).expect("in range");
                for (b, v) in base.iter_mut().zip(&rows[lead + 1]) {
                    *b = f.add(*b, f.mul(coeff, *v));
                }
                free_from += 1;
            }
            min_over_coset(f, base, &rows[free_from..])
        })
        .min()
        .ok_or(Error::EmptySet)
}

/// Minimum nonzero weight of `base + span(rows)` over all coefficient
/// vectors, walked as an odometer that updates the running sum in place.
fn min_over_coset(f: &FieldSpec, base: Row, rows: &[Row]) -> usize {
    let order = f.order();
    let mut digits = vec![0u32; rows.len()];
    let mut acc = base;
    let mut best = usize::MAX;
    loop {
        let w = weight(&acc);
        if w > 0 {
            best = best.min(w);
        }
        let mut pos = 0;
        loop {
            if pos == rows.len() {
                return best;
            }
            let old = f.element(digits[pos]).expect("in range");
            let new_code = (digits[pos] + 1) % order;
            let new = f.element(new_code).expect("in range");
            let delta = f.sub(new, old);
            for (a, v) in acc.iter_mut().zip(&rows[pos]) {
                *a = f.add(*a, f.mul(delta, *v));
            }
            digits[pos] = new_code;
            if new_code != 0 {
                break;
            }
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(curve: &Curve, list: &[&str]) -> MonomialSet {
        MonomialSet::new(curve.params(), list.iter().map(|s| s.parse::<Monomial>().unwrap())).unwrap()
    }

    #[test]
    fn small_self_dual_code() {
        let c = Curve::new(2, 2, 1).unwrap();
        let m = set(&c, &["1", "y"]);
        let code = evaluate_code(&c, &m).unwrap();
        assert_eq!((code.len(), code.dimension(), code_rank(&code)), (4, 2, 2));
        assert_eq!(min_weight_bruteforce(&code, DEFAULT_CODEWORD_BUDGET).unwrap(), 3);
        let dual = dual_structural(&c, &m).unwrap();
        assert_eq!(dual.monomial_basis().unwrap(), &m);
        assert!(dual.same_code(&code));
        assert!(dual_nullspace(&code).same_code(&code));
    }

    #[test]
    fn repetition_code() {
        let c = Curve::new(3, 2, 2).unwrap();
        let code = evaluate_code(&c, &set(&c, &["1"])).unwrap();
        assert_eq!(min_weight_bruteforce(&code, DEFAULT_CODEWORD_BUDGET).unwrap(), 15);
        assert!(evaluate_code(&c, &MonomialSet::empty(c.params())).is_err());
    }

    #[test]
    fn rank_edge_cases() {
        let c = Curve::new(3, 2, 2).unwrap();
        let code = evaluate_code(&c, &MonomialSet::degree_set(c.params(), 2)).unwrap();
        let mut rows = code.generators().to_vec();
        rows.push(rows[0].clone());
        let dup = LinearCode { generators: rows, ..code.clone() };
        assert_eq!(code_rank(&dup), code_rank(&code));
        let empty = LinearCode { generators: vec![], ..code };
        assert_eq!(code_rank(&empty), 0);
        assert_eq!(dual_nullspace(&empty).dimension(), 15);
    }

    #[test]
    fn duals_agree_on_small_curve() {
        let c = Curve::new(3, 2, 2).unwrap();
        for lambda in 0..=24 {
            let m = MonomialSet::onepoint_set(c.params(), lambda);
            let code = evaluate_code(&c, &m).unwrap();
            let dual = dual_structural(&c, &m).unwrap();
            assert_eq!(dual.dimension(), 15 - m.len());
            assert!(dual.same_code(&dual_nullspace(&code)), "lambda = {lambda}");
        }
        let full = MonomialSet::full_box(c.params());
        assert_eq!(dual_structural(&c, &full).unwrap().dimension(), 0);
        let code = evaluate_code(&c, &full).unwrap();
        assert_eq!(dual_nullspace(&code).dimension(), 0);
        assert!(dual_structural(&c, &set(&c, &["x1y1"])).is_err());
    }

    #[test]
    fn cartesian_shapes() {
        let c = Curve::new(3, 2, 2).unwrap();
        let code = cartesian_code(&c, 4).unwrap();
        assert_eq!((code.len(), code_rank(&code)), (15, 12));
        let c = Curve::new(3, 2, 1).unwrap();
        let code = cartesian_code(&c, 4).unwrap();
        assert_eq!((code.len(), code_rank(&code)), (9, 9));
        let rep = cartesian_code(&c, 0).unwrap();
        assert_eq!(min_weight_bruteforce(&rep, DEFAULT_CODEWORD_BUDGET).unwrap(), 9);
    }

    #[test]
    fn budget_guard() {
        let c = Curve::new(3, 2, 2).unwrap();
        let code = evaluate_code(&c, &MonomialSet::full_box(c.params())).unwrap();
        assert!(matches!(min_weight_bruteforce(&code, DEFAULT_CODEWORD_BUDGET), Err(Error::BudgetExceeded { .. })));
    }
}
