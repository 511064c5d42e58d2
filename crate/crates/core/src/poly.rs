//! Sparse bivariate polynomials over a [`FieldSpec`].

use std::collections::BTreeMap;

use crate::curve::{CurveParams, Point};
use crate::field::{FieldElement, FieldSpec};
use crate::monomial::Monomial;

/// A polynomial in x and y with nonzero coefficients keyed by monomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn constant(c: FieldElement) -> Polynomial {
        Polynomial::term(c, Monomial::ONE)
    }

    pub fn term(c: FieldElement, m: Monomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Polynomial {
        Polynomial::term(FieldElement::ONE, m)
    }

    /// x - alpha.
    pub fn x_minus(field: &FieldSpec, alpha: FieldElement) -> Polynomial {
        Polynomial::monomial(Monomial::new(1, 0)).add(field, &Polynomial::constant(field.neg(alpha)))
    }

    /// y - beta.
    pub fn y_minus(field: &FieldSpec, beta: FieldElement) -> Polynomial {
        Polynomial::monomial(Monomial::new(0, 1)).add(field, &Polynomial::constant(field.neg(beta)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, FieldElement)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    pub fn add(&self, field: &FieldSpec, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(*m).or_insert(FieldElement::ZERO);
            *e = field.add(*e, *c);
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Polynomial { terms }
    }

    pub fn mul(&self, field: &FieldSpec, other: &Polynomial) -> Polynomial {
        let mut terms: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = terms.entry(m1.mul(*m2)).or_insert(FieldElement::ZERO);
                *e = field.add(*e, field.mul(*c1, *c2));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { terms }
    }

    pub fn pow(&self, field: &FieldSpec, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::constant(FieldElement::ONE), |acc, _| acc.mul(field, self))
    }

    pub fn eval(&self, field: &FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement {
        self.terms.iter().fold(FieldElement::ZERO, |acc, (m, c)| {
            let t = field.mul(*c, field.mul(field.pow_u(x, m.a as u64), field.pow_u(y, m.b as u64)));
            field.add(acc, t)
        })
    }

    /// Evaluation vector over `points`.
    pub fn evaluate(&self, field: &FieldSpec, points: &[Point]) -> Vec<FieldElement> {
        points.iter().map(|p| self.eval(field, p.x, p.y)).collect()
    }

    /// Leading monomial under the weighted order.
    pub fn initial(&self, params: CurveParams) -> Option<Monomial> {
        self.terms.keys().copied().max_by(|a, b| params.compare(*a, *b))
    }
}
