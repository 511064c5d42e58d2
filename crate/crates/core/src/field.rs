//! Table-driven arithmetic in GF(q^s) with q = p^a.
//!
//! Every element is stored as its canonical code: the little-endian
//! coefficient vector over GF(p), read as a base-p integer. The subfield
//! GF(q) is never built separately; it is the fixed field of `x -> x^q`,
//! which is all the relative trace and norm need.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec::build_extension`].
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Fields up to this order carry a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

/// An element of GF(q^s), identified by its canonical code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Canonical code (position in the canonical element order).
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Binary operations accepted by [`FieldSpec::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Raise the left operand to the integer code of the right operand.
    Pow,
}

/// Serialized form of a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub a: u32,
    pub s: u32,
    /// Coefficients of the monic modulus, constant term first.
    pub modulus: Vec<u32>,
}

struct Tables {
    p: u32,
    a: u32,
    s: u32,
    degree: u32,
    q: u32,
    order: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(order-1); doubled to skip a reduction in `mul`.
    exp: Vec<u32>,
    /// log[x] for x != 0.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

/// The extension field GF(q^s) together with its lookup tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.t.p)
            .field("a", &self.t.a)
            .field("s", &self.t.s)
            .field("modulus", &self.t.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p
                && self.t.a == other.t.a
                && self.t.s == other.t.s
                && self.t.modulus == other.t.modulus)
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q` into `(p, a)` with `q = p^a`.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut rest = q;
    let mut a = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        a += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, a))
}

// Dense polynomials over GF(p), constant term first, used only while
// building the tables.

fn poly_trim(f: &mut Vec<u32>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    poly_trim(&mut r);
    let dg = g.len() - 1;
    let lead_inv = mod_inv(g[dg], p);
    while r.len() > dg {
        let shift = r.len() - 1 - dg;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &gc) in g.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - c * gc % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(x: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = x as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 || f[deg] != 1 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut g = digits(k, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut k: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = (k % p as u64) as u32;
        k /= p as u64;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Multiplies two reduced residues modulo the monic `modulus`.
fn mulmod(x: &[u32], y: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; x.len() + y.len()];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + xi * yj) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(modulus.len() - 1, 0);
    r
}

/// Lexicographically smallest monic irreducible of the given degree,
/// comparing coefficients from the constant term upward.
fn default_modulus(p: u32, degree: u32) -> Vec<u32> {
    let count = (p as u64).pow(degree);
    for k in 0..count {
        // The constant term is the most significant digit of `k`.
        let mut f = digits(k, p, degree as usize);
        f.reverse();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds GF(p^(a*s)), viewed as a degree-`s` extension of GF(p^a).
    ///
    /// `modulus` lists the coefficients of a monic polynomial of degree
    /// `a*s`, constant term first, including the leading 1. Without one, the
    /// lexicographically smallest monic irreducible is used.
    pub fn build_extension(p: u32, a: u32, s: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if a == 0 || s < 2 {
            return Err(Error::InvalidField(format!("need a >= 1 and s >= 2, got a = {a}, s = {s}")));
        }
        let degree = a * s;
        let order = (p as u64).checked_pow(degree).filter(|&o| o <= MAX_FIELD_ORDER);
        let Some(order) = order else {
            return Err(Error::InvalidField(format!("GF({p}^{degree}) exceeds the supported order {MAX_FIELD_ORDER}")));
        };
        let modulus = match modulus {
            Some(m) => {
                if m.len() != degree as usize + 1 || m.iter().any(|&c| c >= p) || !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus { p, degree });
                }
                m.to_vec()
            }
            None => default_modulus(p, degree),
        };
        let order = order as u32;
        let q = p.pow(a);

        // Find the first primitive element in canonical order.
        let group = order - 1;
        let one = {
            let mut v = vec![0; degree as usize];
            v[0] = 1;
            v
        };
        let mut exp = Vec::new();
        for cand in 1..order {
            let g = digits(cand as u64, p, degree as usize);
            let mut powers = Vec::with_capacity(group as usize);
            let mut cur = one.clone();
            loop {
                powers.push(encode(&cur, p));
                cur = mulmod(&cur, &g, &modulus, p);
                if cur == one {
                    break;
                }
            }
            if powers.len() as u32 == group {
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u32; order as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();

        let neg = (0..order)
            .map(|x| {
                let d = digits(x as u64, p, degree as usize);
                let n: Vec<u32> = d.iter().map(|&c| (p - c) % p).collect();
                encode(&n, p)
            })
            .collect();

        let mut tables = Tables { p, a, s, degree, q, order, modulus, exp: doubled, log, neg, add: None };
        if order <= ADD_TABLE_LIMIT {
            let mut add = vec![0u16; (order * order) as usize];
            for x in 0..order {
                for y in 0..order {
                    add[(x * order + y) as usize] = add_digits(x, y, p) as u16;
                }
            }
            tables.add = Some(add);
        }
        Ok(FieldSpec { t: Arc::new(tables) })
    }

    /// GF(q^s) with `q` given directly as a prime power and the default modulus.
    pub fn with_q(q: u32, s: u32) -> Result<FieldSpec> {
        let (p, a) = prime_power(q as u64)?;
        FieldSpec::build_extension(p, a, s, None)
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn a(&self) -> u32 {
        self.t.a
    }

    pub fn s(&self) -> u32 {
        self.t.s
    }

    /// Size of the base field GF(q).
    pub fn q(&self) -> u32 {
        self.t.q
    }

    /// Degree of the field over its prime subfield.
    pub fn degree(&self) -> u32 {
        self.t.degree
    }

    /// Number of elements, q^s.
    pub fn order(&self) -> u32 {
        self.t.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.t.p, a: self.t.a, s: self.t.s, modulus: self.t.modulus.clone() }
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<FieldSpec> {
        FieldSpec::build_extension(d.p, d.a, d.s, Some(&d.modulus))
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.t.order {
            Ok(FieldElement(code))
        } else {
            Err(Error::ElementOutOfRange { code, order: self.t.order })
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.t.order).map(FieldElement)
    }

    /// Elements of the base field GF(q) in canonical order.
    pub fn base_field_elements(&self) -> Vec<FieldElement> {
        self.elements().filter(|&x| self.frobenius(x) == x).collect()
    }

    pub fn is_in_base_field(&self, x: FieldElement) -> bool {
        self.frobenius(x) == x
    }

    /// The integer `n`, reduced modulo p, as an element of the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.t.p as i64) as u32)
    }

    /// Little-endian coefficient vector over GF(p).
    pub fn coefficients(&self, x: FieldElement) -> Vec<u32> {
        digits(x.0 as u64, self.t.p, self.t.degree as usize)
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let t = &*self.t;
        if t.p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        match &t.add {
            Some(tab) => FieldElement(tab[(x.0 * t.order + y.0) as usize] as u32),
            None => FieldElement(add_digits(x.0, y.0, t.p)),
        }
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[x.0 as usize])
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        FieldElement(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.t;
        let group = t.order - 1;
        Ok(FieldElement(t.exp[((group - t.log[x.0 as usize]) % group) as usize]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e` for any integer exponent; `0^0 = 1`, negative powers of zero fail.
    pub fn pow(&self, x: FieldElement, e: i64) -> Result<FieldElement> {
        if x.is_zero() {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
                std::cmp::Ordering::Equal => Ok(FieldElement::ONE),
                std::cmp::Ordering::Greater => Ok(FieldElement::ZERO),
            };
        }
        let t = &*self.t;
        let group = (t.order - 1) as i64;
        let l = (t.log[x.0 as usize] as i64 * e.rem_euclid(group)).rem_euclid(group);
        Ok(FieldElement(t.exp[l as usize]))
    }

    /// `x^e` for a nonnegative exponent.
    #[inline]
    pub fn pow_u(&self, x: FieldElement, e: u64) -> FieldElement {
        if x.is_zero() {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let t = &*self.t;
        let group = (t.order - 1) as u64;
        let l = (t.log[x.0 as usize] as u64 * (e % group)) % group;
        FieldElement(t.exp[l as usize])
    }

    /// The q-power Frobenius `x -> x^q`.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow_u(x, self.t.q as u64)
    }

    /// Relative trace Tr(x) = x + x^q + ... + x^(q^(s-1)).
    pub fn trace(&self, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut cur = x;
        for _ in 0..self.t.s {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur);
        }
        acc
    }

    /// Relative norm N(x) = x^((q^s - 1)/(q - 1)).
    pub fn norm(&self, x: FieldElement) -> FieldElement {
        let e = (self.t.order as u64 - 1) / (self.t.q as u64 - 1);
        self.pow_u(x, e)
    }

    /// Checked binary operation on raw operands.
    ///
    /// Elements are bare codes, so operands from a different field can only
    /// be detected when their code is out of range for this one.
    pub fn arith(&self, x: FieldElement, y: FieldElement, op: FieldOp) -> Result<FieldElement> {
        self.element(x.0)?;
        match op {
            FieldOp::Pow => self.pow(x, y.0 as i64),
            _ => {
                self.element(y.0)?;
                match op {
                    FieldOp::Add => Ok(self.add(x, y)),
                    FieldOp::Sub => Ok(self.sub(x, y)),
                    FieldOp::Mul => Ok(self.mul(x, y)),
                    FieldOp::Div => self.div(x, y),
                    FieldOp::Pow => unreachable!(),
                }
            }
        }
    }
}

fn add_digits(mut x: u32, mut y: u32, p: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while x > 0 || y > 0 {
        out += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place *= p;
    }
    out
}
