//! Asymmetric CSS parameters from nested one-point codes.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::CurveParams;
use crate::error::{Error, Result};
use crate::ghw::{ghw_exhaustive, GhwOptions};
use crate::monomial::MonomialSet;
use crate::rghw::rghw_with;

/// How purity is decided, attached to every emitted table.
pub const PURITY_NOTE: &str = "impure means a relative distance strictly exceeds the matching minimum distance: \
delta_z > d1(C1) or delta_x > d1(C2^perp)";

/// A relative distance next to the plain minimum distance it refines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistancePair {
    pub relative_value: usize,
    pub plain_value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuantumParams {
    pub lambda1: u64,
    pub lambda2: u64,
    pub n: usize,
    pub k: usize,
    pub delta_z: usize,
    pub delta_x: usize,
    /// Size of the code alphabet, q^s.
    pub alphabet: u64,
    pub impure: bool,
    /// Both relative distances are exact rather than lower bounds.
    pub exact: bool,
    pub z: DistancePair,
    pub x: DistancePair,
}

impl QuantumParams {
    pub fn d1_c1(&self) -> usize {
        self.z.plain_value
    }

    pub fn d1_c2_perp(&self) -> usize {
        self.x.plain_value
    }
}

impl fmt::Display for QuantumParams {
    /// `[[n,k,dz/dx]]_alphabet`, with a trailing `*` for impure codes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}/{}]]_{}", self.n, self.k, self.delta_z, self.delta_x, self.alphabet)?;
        if self.impure {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// CSS parameters of the pair ev(L_λ2) ⊂ ev(L_λ1).
pub fn css_params(params: CurveParams, lambda1: u64, lambda2: u64) -> Result<QuantumParams> {
    css_params_with(params, lambda1, lambda2, &GhwOptions::default())
}

pub fn css_params_with(params: CurveParams, lambda1: u64, lambda2: u64, options: &GhwOptions) -> Result<QuantumParams> {
    if lambda2 >= lambda1 {
        return Err(Error::OutOfRange(format!("need lambda2 < lambda1, got ({lambda1}, {lambda2})")));
    }
    let l1 = MonomialSet::onepoint_set(params, lambda1);
    let l2 = MonomialSet::onepoint_set(params, lambda2);
    if l1.len() == l2.len() {
        return Err(Error::NotNested);
    }
    let (c1_perp, c2_perp) = (l1.complement(), l2.complement());
    let dz = rghw_with(&l1, &l2, 1, options)?;
    let dx = rghw_with(&c2_perp, &c1_perp, 1, options)?;
    let d1 = ghw_exhaustive(&l1, 1)?.value;
    let d1_dual = ghw_exhaustive(&c2_perp, 1)?.value;
    Ok(QuantumParams {
        lambda1,
        lambda2,
        n: params.n(),
        k: l1.len() - l2.len(),
        delta_z: dz.value,
        delta_x: dx.value,
        alphabet: params.field_order(),
        impure: dz.value > d1 || dx.value > d1_dual,
        exact: dz.exact && dx.exact,
        z: DistancePair { relative_value: dz.value, plain_value: d1 },
        x: DistancePair { relative_value: dx.value, plain_value: d1_dual },
    })
}

/// One row per (λ1, λ2), in input order.
pub fn quantum_table(params: CurveParams, rows: &[(u64, u64)]) -> Result<Vec<QuantumParams>> {
    rows.par_iter().map(|&(l1, l2)| css_params(params, l1, l2)).collect()
}

/// The built-in λ-pair tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Q2S3U7,
    Q2S4U15,
    Q3S2U2,
    Q5S2U2,
    Q5S2U3,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Q2S3U7, Preset::Q2S4U15, Preset::Q3S2U2, Preset::Q5S2U2, Preset::Q5S2U3];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Q2S3U7 => "q2s3u7",
            Preset::Q2S4U15 => "q2s4u15",
            Preset::Q3S2U2 => "q3s2u2",
            Preset::Q5S2U2 => "q5s2u2",
            Preset::Q5S2U3 => "q5s2u3",
        }
    }

    pub fn params(self) -> CurveParams {
        let (q, s, u) = match self {
            Preset::Q2S3U7 => (2, 3, 7),
            Preset::Q2S4U15 => (2, 4, 15),
            Preset::Q3S2U2 => (3, 2, 2),
            Preset::Q5S2U2 => (5, 2, 2),
            Preset::Q5S2U3 => (5, 2, 3),
        };
        CurveParams::new(q, s, u).expect("preset parameters are valid")
    }

    pub fn rows(self) -> &'static [(u64, u64)] {
        match self {
            Preset::Q2S3U7 => {
                &[(4, 0), (8, 7), (11, 8), (15, 14), (19, 18), (23, 22), (7, 0), (12, 8), (16, 14), (8, 0)]
            }
            Preset::Q2S4U15 => &[(8, 0), (16, 15), (23, 16), (31, 30), (24, 16), (32, 30)],
            Preset::Q3S2U2 => &[
                (2, 0),
                (4, 3),
                (5, 4),
                (6, 5),
                (7, 6),
                (8, 7),
                (3, 0),
                (5, 3),
                (6, 4),
                (7, 5),
                (8, 6),
                (4, 0),
                (6, 3),
                (7, 4),
                (8, 5),
                (9, 6),
            ],
            Preset::Q5S2U2 => &[
                (2, 0),
                (4, 2),
                (6, 5),
                (8, 7),
                (9, 8),
                (10, 9),
                (4, 0),
                (7, 5),
                (8, 6),
                (9, 7),
                (5, 0),
                (8, 5),
                (10, 7),
            ],
            Preset::Q5S2U3 => &[
                (3, 0),
                (6, 5),
                (8, 6),
                (11, 10),
                (14, 13),
                (16, 15),
                (5, 0),
                (8, 5),
                (9, 6),
                (12, 10),
                (14, 12),
                (15, 13),
                (6, 0),
                (9, 5),
                (13, 10),
                (15, 12),
                (16, 13),
            ],
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Preset> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse { what: "preset", input: s.to_string() })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_pair() {
        let p = CurveParams::new(5, 2, 3).unwrap();
        let q = css_params(p, 8, 6).unwrap();
        assert_eq!((q.n, q.k, q.delta_z, q.delta_x, q.impure), (65, 1, 57, 4, true));
        assert_eq!((q.d1_c1(), q.d1_c2_perp()), (57, 3));
        assert_eq!(q.to_string(), "[[65,1,57/4]]_25*");
    }

    #[test]
    fn first_rows() {
        let q = css_params(CurveParams::new(3, 2, 2).unwrap(), 2, 0).unwrap();
        assert_eq!((q.n, q.k, q.delta_z, q.delta_x, q.impure), (15, 1, 13, 2, false));
        let q = css_params(CurveParams::new(2, 3, 7).unwrap(), 4, 0).unwrap();
        assert_eq!((q.n, q.k, q.delta_z, q.delta_x), (32, 1, 28, 2));
    }

    #[test]
    fn invalid_pairs() {
        let p = CurveParams::new(3, 2, 2).unwrap();
        assert!(css_params(p, 2, 2).is_err());
        assert!(css_params(p, 1, 0).is_err());
        assert!(css_params(p, 0, 3).is_err());
    }

    #[test]
    fn preset_names_roundtrip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("q7s2u1".parse::<Preset>().is_err());
    }
}
