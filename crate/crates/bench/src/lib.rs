//! Fixed workloads shared by the benchmarks.

use normtrace::{CurveParams, MonomialSet};

/// Curve parameters and one-point thresholds exercised by the benches.
pub const ONE_POINT_CASES: &[((u32, u32, u32), u64)] = &[((3, 2, 2), 9), ((5, 2, 3), 20), ((2, 4, 15), 40)];

/// Total-degree sets for the fast-path comparisons.
pub const DEGREE_CASES: &[((u32, u32, u32), u32)] = &[((3, 2, 4), 4), ((5, 2, 3), 6), ((2, 4, 5), 6)];

pub fn one_point_set(case: ((u32, u32, u32), u64)) -> MonomialSet {
    let ((q, s, u), lambda) = case;
    MonomialSet::onepoint_set(CurveParams::new(q, s, u).expect("valid bench case"), lambda)
}

pub fn degree_set(case: ((u32, u32, u32), u32)) -> MonomialSet {
    let ((q, s, u), d) = case;
    MonomialSet::degree_set(CurveParams::new(q, s, u).expect("valid bench case"), d)
}
