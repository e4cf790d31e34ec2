//! Exact geometry of two-dimensional digital sequences.
//!
//! The crate builds digital sequences over GF(2) (the two-dimensional Sobol'
//! sequence being the canonical instance), and measures their prefixes with
//! exact integer arithmetic:
//!
//! * [`gf2core`]: bit vectors, bit matrices and the Pascal matrix mod 2.
//! * [`digital`]: generator pairs, point sets and the elementary-interval check.
//! * [`geometry`]: separation radius, certified covering radius and mesh ratio.
//! * [`theory`]: the closed-form separation radius of dyadic Sobol' prefixes,
//!   explicit witness pairs and the derived decay bounds.
//! * [`io`]: the CSV and matrix-file formats used by the command-line tool.
//!
//! Every coordinate is a dyadic rational `k / 2^m`, so distances are compared
//! exactly; floating point only appears in `*_f64` convenience accessors.
//!
//! ```
//! use sobolsep::digital::{prefix, GeneratorPair};
//! use sobolsep::geometry::{separation, Norm};
//! use sobolsep::theory::separation_formula;
//!
//! let points = prefix(&GeneratorPair::sobol(6).unwrap(), 64).unwrap();
//! let report = separation(&points, Norm::LInf).unwrap();
//! assert_eq!(report.radius().value(), separation_formula(6).unwrap());
//! ```

pub mod digital;
pub mod dyadic;
mod error;
pub mod geometry;
pub mod gf2core;
pub mod io;
pub mod theory;

pub use dyadic::{Dyadic, Log2, Magnitude};
pub use error::{Error, Result};

/// Largest scale `m` supported by the point pipeline (numerators fit a `u64`).
pub const MAX_SCALE: u32 = 64;
