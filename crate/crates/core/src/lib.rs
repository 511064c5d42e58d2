//! Generalized Hamming weights of decreasing norm-trace codes.
//!
//! The curve X_u : x^u = Tr(y) over GF(q^s) (with u dividing
//! (q^s - 1)/(q - 1)) carries evaluation codes spanned by monomial sets.
//! For decreasing sets the r-th generalized Hamming weight equals
//! n - max |Δ*(N)| over r-subsets N, which this crate computes exactly, along
//! with relative weights, structural duals, CSS parameters and brute-force
//! references.

pub mod code;
pub mod curve;
pub mod error;
pub mod field;
pub mod ghw;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod quantum;
pub mod rghw;
mod search;

pub use code::{
    cartesian_code, code_rank, dual_nullspace, dual_structural, evaluate_code, min_weight_bruteforce, LinearCode,
};
pub use curve::{Curve, CurveParams, Point};
pub use error::{Error, Result};
pub use field::{FieldDescriptor, FieldElement, FieldOp, FieldSpec};
pub use ghw::{
    cartesian_ghw, ghw_exhaustive, ghw_fastpath, ghw_maxcase, ghw_value, hierarchy_values, weight_hierarchy, GhwMethod,
    GhwOptions, GhwResult, Strategy,
};
pub use monomial::{
    delta_star, delta_star_closed_form, footprint_count, maxcase_candidate, Dominant, Monomial, MonomialSet,
    MonomialSpec, StaircaseProfile,
};
pub use poly::Polynomial;
pub use quantum::{css_params, quantum_table, Preset, QuantumParams};
pub use rghw::{ordering_condition, rghw, RghwResult};
pub use search::binomial;
