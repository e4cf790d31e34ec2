//! Closed-form separation of dyadic Sobol' prefixes, the bounds that follow
//! from it, and executable versions of the supporting combinatorial facts.

mod formula;
pub mod lemmas;
mod verify;

pub use formula::{
    corollary_bounds, decay_bound_holds, decompose, limsup_constant, separation_formula,
    sobol_distance, witness_pair, BoundCheck, CorollaryBounds, Kind, MDecomposition, QuarterPow2,
};
pub use verify::{
    verify_m, verify_m_with, verify_range, VerifyRow, EXHAUSTIVE_CEILING,
    FORMULA_ONLY_EXHAUSTIVE_MAX,
};
