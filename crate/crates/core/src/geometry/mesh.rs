use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{covering_certified, separation, CoveringInterval, Norm, SeparationReport};
use crate::digital::PointSet;
use crate::error::{domain, Result};

/// Enclosure `lo <= h_p / q_p <= hi` of the mesh ratio.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MeshRatioInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub separation: SeparationReport,
    pub covering: CoveringInterval,
}

impl MeshRatioInterval {
    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }
}

/// Combines the exact separation radius with the certified covering
/// interval. For ℓ2 the radius is bracketed by dyadic square-root bounds,
/// which only widens the interval.
pub fn mesh_ratio(ps: &PointSet, norm: Norm, k: u32) -> Result<MeshRatioInterval> {
    let sep = separation(ps, norm)?;
    let cov = covering_certified(ps, norm, k)?;
    mesh_ratio_from(sep, cov)
}

/// Mesh-ratio enclosure from already computed components.
pub fn mesh_ratio_from(sep: SeparationReport, cov: CoveringInterval) -> Result<MeshRatioInterval> {
    if sep.norm != cov.norm {
        return domain("separation and covering use different norms");
    }
    let (q_lo, q_hi) = sep.radius().length_bounds();
    if q_lo.is_zero() {
        return domain("mesh ratio is undefined for coincident points");
    }
    Ok(MeshRatioInterval {
        lo: cov.lo.to_rational() / q_hi.to_rational(),
        hi: cov.hi.to_rational() / q_lo.to_rational(),
        separation: sep,
        covering: cov,
    })
}
