//! Two-dimensional digital sequences over GF(2).
//!
//! A sequence is defined by a [`GeneratorPair`] `(C1, C2)`; point `n` is
//! `(phi(C1 n), phi(C2 n))` where `n` also denotes the digit vector of the
//! index and `phi` mirrors digits across the binary point. The Sobol'
//! sequence uses `C1 = I` and `C2 = P_m`, the Pascal matrix mod 2. Because
//! the generators are upper triangular, growing `m` only pads indices with
//! leading zeros and rescales points, so prefixes are scale independent.

mod generator;
mod net;
mod point;
mod pointset;

pub use generator::{digital_point, digital_point_naive, phi_numerator, sobol_point, GeneratorPair};
pub use net::{
    check_elementary_intervals, check_elementary_intervals_with, CellFailure, NetReport,
    MAX_NET_SCALE,
};
pub use point::DyadicPoint;
pub use pointset::{prefix, prefix_naive, PointSet, Provenance};
