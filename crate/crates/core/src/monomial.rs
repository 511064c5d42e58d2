//! Monomials x^a y^b, the weighted degree lexicographic order, decreasing
//! sets inside the standard box, and footprint counting.
//!
//! The standard box is `{x^a y^b : a <= u(q-1), b < q^(s-1)}`, the footprint
//! of the vanishing ideal of X_u. All footprints here are counted inside it.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::curve::CurveParams;
use crate::error::{Error, Result};

/// The monomial x^a y^b.
///
/// The derived `Ord` compares exponent pairs lexicographically; use
/// [`CurveParams::compare`] for the weighted order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };

    pub const fn new(a: u32, b: u32) -> Monomial {
        Monomial { a, b }
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 0 && self.b == 0 {
            return f.write_str("1");
        }
        if self.a > 0 {
            write!(f, "x{}", self.a)?;
        }
        if self.b > 0 {
            write!(f, "y{}", self.b)?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses `1`, `x3`, `y2`, `x3y2`; a bare `x` or `y` means exponent 1.
    fn from_str(s: &str) -> Result<Monomial> {
        let err = || Error::Parse { what: "monomial", input: s.to_string() };
        let t = s.trim();
        if t == "1" {
            return Ok(Monomial::ONE);
        }
        if t.is_empty() {
            return Err(err());
        }
        let mut m = Monomial::ONE;
        let mut seen_x = false;
        let mut seen_y = false;
        let mut rest = t;
        while !rest.is_empty() {
            let var = rest.as_bytes()[0];
            rest = &rest[1..];
            let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let exp = if end == 0 { 1 } else { rest[..end].parse::<u32>().map_err(|_| err())? };
            rest = &rest[end..];
            match var {
                b'x' if !seen_x && !seen_y => {
                    m.a = exp;
                    seen_x = true;
                }
                b'y' if !seen_y => {
                    m.b = exp;
                    seen_y = true;
                }
                _ => return Err(err()),
            }
        }
        Ok(m)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Monomial, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl CurveParams {
    /// Weighted degree lexicographic order: by weight, ties broken by the
    /// y-exponent.
    pub fn compare(&self, m1: Monomial, m2: Monomial) -> Ordering {
        self.weight(m1).cmp(&self.weight(m2)).then(m1.b.cmp(&m2.b))
    }
}

/// Which exponent a pure lexicographic order compares first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dominant {
    X,
    Y,
}

/// Descending pure lexicographic comparison with `dominant` compared first.
fn lex_desc(dominant: Dominant, m1: Monomial, m2: Monomial) -> Ordering {
    match dominant {
        Dominant::X => (m2.a, m2.b).cmp(&(m1.a, m1.b)),
        Dominant::Y => (m2.b, m2.a).cmp(&(m1.b, m1.a)),
    }
}

/// A finite set of box monomials, kept in ascending weighted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSet {
    params: CurveParams,
    members: Vec<Monomial>,
}

impl MonomialSet {
    /// Builds a set from arbitrary monomials; duplicates are merged.
    pub fn new(params: CurveParams, monomials: impl IntoIterator<Item = Monomial>) -> Result<MonomialSet> {
        let mut members: Vec<Monomial> = monomials.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| !params.in_box(**m)) {
            return Err(Error::OutsideBox(bad.to_string()));
        }
        members.sort_unstable_by(|x, y| params.compare(*x, *y));
        members.dedup();
        Ok(MonomialSet { params, members })
    }

    pub fn empty(params: CurveParams) -> MonomialSet {
        MonomialSet { params, members: Vec::new() }
    }

    /// The whole box Δ(y^(q^(s-1)), x^(u(q-1)+1)); it has n members.
    pub fn full_box(params: CurveParams) -> MonomialSet {
        Self::box_filter(params, |_| true)
    }

    /// Box monomials of total degree at most `d`.
    pub fn degree_set(params: CurveParams, d: u32) -> MonomialSet {
        Self::box_filter(params, |m| m.a + m.b <= d)
    }

    /// Box monomials of weight at most `lambda` (the one-point sets).
    pub fn onepoint_set(params: CurveParams, lambda: u64) -> MonomialSet {
        Self::box_filter(params, |m| params.weight(m) <= lambda)
    }

    fn box_filter(params: CurveParams, keep: impl Fn(Monomial) -> bool) -> MonomialSet {
        let mut members = Vec::new();
        for a in 0..=params.x_max() {
            for b in 0..params.y_cap() {
                let m = Monomial::new(a, b);
                if keep(m) {
                    members.push(m);
                }
            }
        }
        members.sort_unstable_by(|x, y| params.compare(*x, *y));
        MonomialSet { params, members }
    }

    pub fn params(&self) -> CurveParams {
        self.params
    }

    /// Members in ascending weighted order.
    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.members.binary_search_by(|x| self.params.compare(*x, m)).is_ok()
    }

    /// Closed under taking divisors.
    pub fn is_decreasing(&self) -> bool {
        self.members.iter().all(|m| {
            (m.a == 0 || self.contains(Monomial::new(m.a - 1, m.b)))
                && (m.b == 0 || self.contains(Monomial::new(m.a, m.b - 1)))
        })
    }

    pub fn is_subset_of(&self, other: &MonomialSet) -> bool {
        self.members.iter().all(|m| other.contains(*m))
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &MonomialSet) -> MonomialSet {
        MonomialSet {
            params: self.params,
            members: self.members.iter().copied().filter(|m| !other.contains(*m)).collect(),
        }
    }

    /// `{top / m : m in box \ self}` with top = x^(u(q-1)) y^(q^(s-1)-1).
    pub fn complement(&self) -> MonomialSet {
        let top = self.params.top();
        let own: HashSet<Monomial> = self.members.iter().copied().collect();
        let mut members: Vec<Monomial> = MonomialSet::full_box(self.params)
            .members
            .into_iter()
            .filter(|m| !own.contains(m))
            .map(|m| Monomial::new(top.a - m.a, top.b - m.b))
            .collect();
        members.sort_unstable_by(|x, y| self.params.compare(*x, *y));
        MonomialSet { params: self.params, members }
    }

    /// The first `r` members in descending pure lex order with `dominant`
    /// compared first.
    pub fn lex_prefix(&self, r: usize, dominant: Dominant) -> Result<MonomialSet> {
        if r > self.len() {
            return Err(Error::OutOfRange(format!("prefix length {r} exceeds set size {}", self.len())));
        }
        let mut sorted = self.members.clone();
        sorted.sort_unstable_by(|x, y| lex_desc(dominant, *x, *y));
        MonomialSet::new(self.params, sorted.into_iter().take(r))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.members.iter().map(Monomial::to_string).collect()
    }
}

impl fmt::Display for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// Number of box monomials divisible by no generator. Generators may lie
/// outside the box.
pub fn footprint_count(params: CurveParams, generators: &[Monomial]) -> usize {
    let ycap = params.y_cap();
    (0..=params.x_max())
        .map(|a| generators.iter().filter(|g| g.a <= a).map(|g| g.b).min().unwrap_or(ycap).min(ycap) as usize)
        .sum()
}

/// The box monomials counted by [`footprint_count`].
pub fn footprint_members(params: CurveParams, generators: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=params.x_max() {
        for b in 0..params.y_cap() {
            let m = Monomial::new(a, b);
            if !generators.iter().any(|g| g.divides(m)) {
                out.push(m);
            }
        }
    }
    out
}

/// x^v with v = min(a1 + u, u(q-1) + 1), the extra generator in Δ*.
pub(crate) fn star_cut(params: CurveParams, a1: u32) -> u32 {
    (a1 + params.u()).min(params.x_max() + 1)
}

/// |Δ*(N)| without input validation; `n` must be nonempty.
pub(crate) fn delta_star_raw(params: CurveParams, n: &[Monomial]) -> usize {
    let a1 = n.iter().map(|m| m.a).min().expect("nonempty");
    let v = star_cut(params, a1);
    let ycap = params.y_cap();
    (0..v).map(|a| n.iter().filter(|g| g.a <= a).map(|g| g.b).min().unwrap_or(ycap).min(ycap) as usize).sum()
}

/// |Δ(y^(q^(s-1)), x^(min(a1+u, u(q-1)+1)), N)| where a1 is the least
/// x-exponent in `n`.
pub fn delta_star(params: CurveParams, n: &[Monomial]) -> Result<usize> {
    if n.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(bad) = n.iter().find(|m| !params.in_box(**m)) {
        return Err(Error::OutsideBox(bad.to_string()));
    }
    Ok(delta_star_raw(params, n))
}

/// Corners (a_i, b_i) with strictly increasing a and strictly decreasing b.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseProfile {
    corners: Vec<(u32, u32)>,
}

impl StaircaseProfile {
    pub fn new(corners: Vec<(u32, u32)>) -> Result<StaircaseProfile> {
        if corners.is_empty() {
            return Err(Error::InvalidStaircase("no corners".into()));
        }
        if corners.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 <= w[1].1) {
            return Err(Error::InvalidStaircase(
                "x-exponents must strictly increase and y-exponents strictly decrease".into(),
            ));
        }
        Ok(StaircaseProfile { corners })
    }

    pub fn corners(&self) -> &[(u32, u32)] {
        &self.corners
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.corners.iter().map(|&(a, b)| Monomial::new(a, b)).collect()
    }
}

/// Closed-form count of Δ* for a staircase whose x-span is below u:
/// a_1 q^(s-1) + b_r (v - a_1) + sum (a_{i+1} - a_i)(b_i - b_r).
pub fn delta_star_closed_form(params: CurveParams, profile: &StaircaseProfile) -> Result<u64> {
    let c = profile.corners();
    let (a1, _) = c[0];
    let (ar, br) = c[c.len() - 1];
    if ar - a1 >= params.u() {
        return Err(Error::InvalidStaircase(format!("x-span {} is not below u = {}", ar - a1, params.u())));
    }
    if let Some(&(a, b)) = c.iter().find(|&&(a, b)| !params.in_box(Monomial::new(a, b))) {
        return Err(Error::OutsideBox(Monomial::new(a, b).to_string()));
    }
    let v = star_cut(params, a1) as u64;
    let head = a1 as u64 * params.y_cap() as u64 + br as u64 * (v - a1 as u64);
    let steps: u64 = c.windows(2).map(|w| (w[1].0 - w[0].0) as u64 * (w[0].1 - br) as u64).sum();
    Ok(head + steps)
}

/// M^{a1}_{<=d}: monomials of degree at most d - a1 inside Δ(y^(q^(s-1)), x^u).
pub fn shifted_degree_set(params: CurveParams, d: u32, a1: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < a1 {
        return out;
    }
    let budget = d - a1;
    for a in 0..params.u().min(budget + 1) {
        for b in 0..params.y_cap().min(budget - a + 1) {
            out.push(Monomial::new(a, b));
        }
    }
    out
}

/// T_{a1} = {x^a y^b : a1 + u <= a <= d, b <= d - a}, restricted to the box.
pub fn tail_set(params: CurveParams, d: u32, a1: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let lo = a1 + params.u();
    for a in lo..=d.min(params.x_max()) {
        for b in 0..=(d - a).min(params.y_cap() - 1) {
            out.push(Monomial::new(a, b));
        }
    }
    out
}

/// The candidate N_{a1} of the maximal-u search, or `None` when neither
/// branch condition holds.
pub fn maxcase_candidate(params: CurveParams, d: u32, r: usize, a1: u32) -> Result<Option<MonomialSet>> {
    if !params.is_maximal_u() {
        return Err(Error::WrongUKind { u: params.u(), actual: "not" });
    }
    if a1 > d.min(params.x_max()) {
        return Err(Error::OutOfRange(format!("a1 = {a1} exceeds min(d, u(q-1))")));
    }
    let shifted = shifted_degree_set(params, d, a1);
    let prime_prefix = |len: usize| -> Result<Vec<Monomial>> {
        if len > shifted.len() {
            return Err(Error::OutOfRange(format!("prefix length {len} exceeds |M^{a1}_<=d| = {}", shifted.len())));
        }
        let mut sorted = shifted.clone();
        sorted.sort_unstable_by(|x, y| lex_desc(Dominant::Y, *x, *y));
        Ok(sorted.into_iter().take(len).map(|m| Monomial::new(m.a + a1, m.b)).collect())
    };
    if d < a1 + params.u() {
        return MonomialSet::new(params, prime_prefix(r)?).map(Some);
    }
    let tail = tail_set(params, d, a1);
    let r_tail = tail.len() as i64;
    let r_prime = r_tail + d as i64 - params.y_cap() as i64 - a1 as i64 + 2;
    if (r as i64) < r_prime {
        return Ok(None);
    }
    let mut members = prime_prefix(r - tail.len())?;
    members.extend(tail);
    MonomialSet::new(params, members).map(Some)
}

/// Textual monomial-set specification: `deg<=D`, `wdeg<=L`, `box`,
/// `list:x2y1,y3,1` or a bare comma list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialSpec {
    Degree(u32),
    Weight(u64),
    Box,
    List(Vec<Monomial>),
}

impl FromStr for MonomialSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<MonomialSpec> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || Error::Parse { what: "monomial set spec", input: s.to_string() };
        if t == "box" {
            return Ok(MonomialSpec::Box);
        }
        if let Some(rest) = t.strip_prefix("wdeg<=") {
            return rest.parse().map(MonomialSpec::Weight).map_err(|_| err());
        }
        if let Some(rest) = t.strip_prefix("deg<=") {
            return rest.parse().map(MonomialSpec::Degree).map_err(|_| err());
        }
        let list = t.strip_prefix("list:").unwrap_or(&t);
        if list.is_empty() {
            return Err(err());
        }
        list.split(',').map(Monomial::from_str).collect::<Result<Vec<_>>>().map(MonomialSpec::List)
    }
}

impl fmt::Display for MonomialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialSpec::Degree(d) => write!(f, "deg<={d}"),
            MonomialSpec::Weight(l) => write!(f, "wdeg<={l}"),
            MonomialSpec::Box => f.write_str("box"),
            MonomialSpec::List(ms) => {
                f.write_str("list:")?;
                let parts: Vec<String> = ms.iter().map(Monomial::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl MonomialSpec {
    pub fn build(&self, params: CurveParams) -> Result<MonomialSet> {
        match self {
            MonomialSpec::Degree(d) => Ok(MonomialSet::degree_set(params, *d)),
            MonomialSpec::Weight(l) => Ok(MonomialSet::onepoint_set(params, *l)),
            MonomialSpec::Box => Ok(MonomialSet::full_box(params)),
            MonomialSpec::List(ms) => MonomialSet::new(params, ms.iter().copied()),
        }
    }
}
