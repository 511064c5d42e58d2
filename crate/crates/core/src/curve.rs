//! Rational points of the extended norm-trace curve `x^u = Tr(y)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldElement, FieldSpec};
use crate::monomial::Monomial;

/// The triple (q, s, u) defining X_u over GF(q^s).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveParams {
    q: u32,
    s: u32,
    u: u32,
}

impl CurveParams {
    pub fn new(q: u32, s: u32, u: u32) -> Result<CurveParams> {
        prime_power(q as u64)?;
        if s < 2 {
            return Err(Error::InvalidField(format!("extension degree s = {s} must be at least 2")));
        }
        let qs = (q as u64)
            .checked_pow(s)
            .ok_or_else(|| Error::InvalidField(format!("q^s overflows for q = {q}, s = {s}")))?;
        let bound = (qs - 1) / (q as u64 - 1);
        if u == 0 || !bound.is_multiple_of(u as u64) {
            return Err(Error::InvalidU { u, bound });
        }
        Ok(CurveParams { q, s, u })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    /// Field size q^s.
    pub fn field_order(&self) -> u64 {
        (self.q as u64).pow(self.s)
    }

    /// q^(s-1): the y-exponents of the box are `0..y_cap`.
    pub fn y_cap(&self) -> u32 {
        self.q.pow(self.s - 1)
    }

    /// u(q-1): the largest x-exponent in the box.
    pub fn x_max(&self) -> u32 {
        self.u * (self.q - 1)
    }

    /// Number of rational points, u(q-1)q^(s-1) + q^(s-1).
    pub fn n(&self) -> usize {
        (self.x_max() as usize + 1) * self.y_cap() as usize
    }

    pub fn genus(&self) -> u64 {
        (self.u as u64 - 1) * (self.field_order() - 1) / 2
    }

    /// (q^s - 1)/(q - 1).
    pub fn max_u(&self) -> u64 {
        (self.field_order() - 1) / (self.q as u64 - 1)
    }

    /// Whether X_u is the norm-trace curve itself.
    pub fn is_maximal_u(&self) -> bool {
        self.u as u64 == self.max_u()
    }

    /// Weighted degree a q^(s-1) + u b.
    pub fn weight(&self, m: Monomial) -> u64 {
        m.a as u64 * self.y_cap() as u64 + self.u as u64 * m.b as u64
    }

    pub fn in_box(&self, m: Monomial) -> bool {
        m.a <= self.x_max() && m.b < self.y_cap()
    }

    /// x^(u(q-1)) y^(q^(s-1)-1), the largest box monomial.
    pub fn top(&self) -> Monomial {
        Monomial::new(self.x_max(), self.y_cap() - 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

/// The curve X_u with its points in canonical order (by x code, then y code).
#[derive(Clone, Debug)]
pub struct Curve {
    field: FieldSpec,
    params: CurveParams,
    points: Vec<Point>,
}

impl Curve {
    /// Enumerates X_u over `field`, which must be GF(q^s) for some q.
    pub fn enumerate_points(field: &FieldSpec, u: u32) -> Result<Curve> {
        let params = CurveParams::new(field.q(), field.s(), u)?;
        let mut by_trace: BTreeMap<FieldElement, Vec<FieldElement>> = BTreeMap::new();
        let mut by_power: BTreeMap<FieldElement, Vec<FieldElement>> = BTreeMap::new();
        for x in field.elements() {
            by_trace.entry(field.trace(x)).or_default().push(x);
            by_power.entry(field.pow_u(x, u as u64)).or_default().push(x);
        }
        let mut points = Vec::with_capacity(params.n());
        for gamma in field.base_field_elements() {
            let (Some(xs), Some(ys)) = (by_power.get(&gamma), by_trace.get(&gamma)) else {
                continue;
            };
            for &x in xs {
                for &y in ys {
                    points.push(Point { x, y });
                }
            }
        }
        points.sort_unstable();
        debug_assert_eq!(points.len(), params.n());
        Ok(Curve { field: field.clone(), params, points })
    }

    /// X_u over GF(q^s) with the default field modulus.
    pub fn new(q: u32, s: u32, u: u32) -> Result<Curve> {
        CurveParams::new(q, s, u)?;
        let field = FieldSpec::with_q(q, s)?;
        Curve::enumerate_points(&field, u)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn params(&self) -> CurveParams {
        self.params
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn genus(&self) -> u64 {
        self.params.genus()
    }

    /// Partition of the point indices by gamma = x^u = Tr(y).
    pub fn gamma_classes(&self) -> BTreeMap<FieldElement, Vec<usize>> {
        let mut classes: BTreeMap<FieldElement, Vec<usize>> = BTreeMap::new();
        for (i, pt) in self.points.iter().enumerate() {
            classes.entry(self.field.trace(pt.y)).or_default().push(i);
        }
        classes
    }

    /// Point list as `[x-code, y-code]` pairs.
    pub fn point_codes(&self) -> Vec<[u32; 2]> {
        self.points.iter().map(|p| [p.x.code(), p.y.code()]).collect()
    }

    pub fn satisfies_equation(&self, pt: Point) -> bool {
        self.field.pow_u(pt.x, self.params.u as u64) == self.field.trace(pt.y)
    }
}
