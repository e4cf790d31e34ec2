//! Separation radius, covering radius and mesh ratio of finite point sets in
//! `[0, 1]^2` under ℓ1, ℓ2 and ℓ∞.
//!
//! Separation is computed exactly. The covering radius is enclosed in a
//! certified interval from a grid of cell centers. All comparisons use integer
//! numerators at a common scale; ℓ2 quantities are carried as exact squares.

mod covering;
mod mesh;
mod norm;
mod profile;
mod separation;

pub use covering::{
    cell_coradius, covering_certified, covering_certified_with_budget, CoveringInterval,
    NearestIndex, DEFAULT_CENTER_BUDGET, DEFAULT_GRID_EXPONENT,
};
pub use mesh::{mesh_ratio, mesh_ratio_from, MeshRatioInterval};
pub use norm::Norm;
pub use profile::{separation_profile, separation_profile_of, ProfileEntry};
pub use separation::{separation, separation_naive, SeparationReport};
