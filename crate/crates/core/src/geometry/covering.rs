use rayon::prelude::*;

use super::Norm;
use crate::digital::{DyadicPoint, PointSet};
use crate::dyadic::{Dyadic, Magnitude};
use crate::error::{domain, Error, Result};

/// Grid exponent used when none is given: `4^11` cell centers.
pub const DEFAULT_GRID_EXPONENT: u32 = 11;
/// Largest number of grid centers evaluated unless a budget is passed.
pub const DEFAULT_CENTER_BUDGET: u64 = 1 << 26;

/// Certified enclosure `lo <= h_p(Q) <= hi` of the covering radius.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CoveringInterval {
    pub n: usize,
    pub norm: Norm,
    /// Grid exponent: `4^k` cell centers were evaluated.
    pub k: u32,
    /// Exact maximum over grid centers of the distance to the set (its
    /// square for ℓ2).
    pub max_center: Magnitude,
    pub lo: Dyadic,
    pub hi: Dyadic,
}

/// Largest distance from a cell center to a point of its cell, for cells of
/// side `2^-k`: `2^-k-1` in ℓ∞, `2^-k` in ℓ1 and, in ℓ2, the dyadic
/// `1449 / 2^(k+11)`, which exceeds `sqrt(2) 2^-k-1`.
pub fn cell_coradius(norm: Norm, k: u32) -> Dyadic {
    match norm {
        Norm::LInf => Dyadic::pow2(-(k as i32) - 1),
        Norm::L1 => Dyadic::pow2(-(k as i32)),
        Norm::L2 => Dyadic::new(1449, k as i32 + 11),
    }
}

/// Nearest-point queries against a point set on a uniform bucket grid.
pub struct NearestIndex {
    norm: Norm,
    scale: u32,
    grid_bits: u32,
    offsets: Vec<usize>,
    points: Vec<(u64, u64)>,
}

impl NearestIndex {
    /// Indexes `ps` at working scale `scale >= ps.scale()`.
    pub fn new(ps: &PointSet, norm: Norm, scale: u32) -> Result<Self> {
        if ps.is_empty() {
            return domain("nearest-point index over an empty set");
        }
        if scale < ps.scale() {
            return domain(format!("working scale {scale} below set scale {}", ps.scale()));
        }
        norm.check_scale(scale)?;
        let shift = scale - ps.scale();
        let log_n = usize::BITS - 1 - ps.len().leading_zeros();
        let grid_bits = (log_n / 2).min(scale).min(12);
        let cells = 1usize << (2 * grid_bits);
        let cell_of = |p: (u64, u64)| {
            let s = scale - grid_bits;
            let (cx, cy) = if s >= 64 { (0, 0) } else { (p.0 >> s, p.1 >> s) };
            ((cx << grid_bits) | cy) as usize
        };
        let mut pts: Vec<(u64, u64)> = ps
            .points()
            .iter()
            .map(|p| (p.nx() << shift, p.ny() << shift))
            .collect();
        pts.sort_unstable_by_key(|&p| (cell_of(p), p));
        let mut offsets = vec![0usize; cells + 1];
        for &p in &pts {
            offsets[cell_of(p) + 1] += 1;
        }
        for c in 0..cells {
            offsets[c + 1] += offsets[c];
        }
        Ok(NearestIndex {
            norm,
            scale,
            grid_bits,
            offsets,
            points: pts,
        })
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Distance numerator from `q` (at the index scale) to the nearest point.
    pub(crate) fn nearest_numerator(&self, q: (u64, u64)) -> u128 {
        let g = self.grid_bits;
        let side_bits = self.scale - g;
        let cells_per_axis = 1i64 << g;
        let (cx, cy) = if side_bits >= 64 {
            (0, 0)
        } else {
            ((q.0 >> side_bits) as i64, (q.1 >> side_bits) as i64)
        };
        let side: u128 = 1u128 << side_bits;
        let mut best = u128::MAX;
        for r in 0..=cells_per_axis {
            for dx in -r..=r {
                let x = cx + dx;
                if x < 0 || x >= cells_per_axis {
                    continue;
                }
                let step = if dx.abs() == r { 1 } else { 2 * r.max(1) };
                let mut dy = -r;
                while dy <= r {
                    let y = cy + dy;
                    if y >= 0 && y < cells_per_axis {
                        let c = ((x << g) | y) as usize;
                        for &p in &self.points[self.offsets[c]..self.offsets[c + 1]] {
                            best = best.min(self.norm.distance(p, q));
                        }
                    }
                    dy += step;
                }
            }
            // Cells beyond ring r are at least r cell sides away in ℓ∞.
            if self.norm.within_linf(best, r as u128 * side) {
                break;
            }
        }
        best
    }

    /// Distance from `x` to the nearest indexed point.
    pub fn distance(&self, x: &DyadicPoint) -> Result<Magnitude> {
        let x = x.rescale(self.scale)?;
        Ok(self
            .norm
            .magnitude(self.nearest_numerator((x.nx(), x.ny())), self.scale))
    }
}

/// Certified covering radius with the default center budget.
pub fn covering_certified(ps: &PointSet, norm: Norm, k: u32) -> Result<CoveringInterval> {
    covering_certified_with_budget(ps, norm, k, DEFAULT_CENTER_BUDGET)
}

/// Evaluates the distance-to-set function at the `4^k` centers
/// `((2a+1)/2^(k+1), (2b+1)/2^(k+1))`. The maximum is a lower bound on the
/// covering radius; since the function is 1-Lipschitz in the same norm,
/// adding the cell co-radius gives an upper bound. Rows of centers are
/// evaluated in parallel and reduced with an exact integer maximum.
pub fn covering_certified_with_budget(
    ps: &PointSet,
    norm: Norm,
    k: u32,
    budget: u64,
) -> Result<CoveringInterval> {
    if k == 0 {
        return domain("grid exponent k must be >= 1");
    }
    if k >= 32 || 1u64 << (2 * k) > budget {
        return Err(Error::Resource(format!(
            "4^{k} grid centers exceed the budget of {budget}"
        )));
    }
    let scale = ps.scale().max(k + 1);
    let index = NearestIndex::new(ps, norm, scale)?;
    let shift = scale - k - 1;
    let side = 1u64 << k;
    let max = (0..side)
        .into_par_iter()
        .map(|a| {
            let x = (2 * a + 1) << shift;
            (0..side)
                .map(|b| index.nearest_numerator((x, (2 * b + 1) << shift)))
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    let max_center = norm.magnitude(max, scale);
    let (lo, lo_up) = max_center.length_bounds();
    let hi = lo_up
        .checked_add(&cell_coradius(norm, k))
        .expect("covering bounds are below 4");
    Ok(CoveringInterval {
        n: ps.len(),
        norm,
        k,
        max_center,
        lo,
        hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::{prefix, GeneratorPair, Provenance};
    use proptest::prelude::*;

    fn set(scale: u32, pts: &[(u64, u64)]) -> PointSet {
        PointSet::from_numerators(scale, pts.iter().copied(), Provenance::Explicit("t".into()))
            .unwrap()
    }

    /// Max over centers by scanning every point for every center.
    fn brute_max(ps: &PointSet, norm: Norm, k: u32) -> Magnitude {
        let scale = ps.scale().max(k + 1);
        let shift = scale - k - 1;
        let pts: Vec<(u64, u64)> = ps
            .points()
            .iter()
            .map(|p| (p.nx() << (scale - ps.scale()), p.ny() << (scale - ps.scale())))
            .collect();
        let mut max = 0;
        for a in 0..1u64 << k {
            for b in 0..1u64 << k {
                let c = ((2 * a + 1) << shift, (2 * b + 1) << shift);
                let d = pts.iter().map(|&p| norm.distance(p, c)).min().unwrap();
                max = max.max(d);
            }
        }
        norm.magnitude(max, scale)
    }

    #[test]
    fn single_center_point() {
        for k in 1..=6 {
            let c = covering_certified(&set(1, &[(1, 1)]), Norm::LInf, k).unwrap();
            // The farthest center approaches a corner: 1/2 - 2^-k-1 away.
            assert_eq!(
                c.lo.checked_add(&cell_coradius(Norm::LInf, k)).unwrap(),
                Dyadic::new(1, 1)
            );
            assert!(c.lo <= Dyadic::new(1, 1) && Dyadic::new(1, 1) <= c.hi);
        }
    }

    #[test]
    fn quadrant_corners() {
        let ps = set(1, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        // The true value is 1/2, at the corner (1, 1). With k = 4 the farthest
        // center is (31/32, 31/32); with k = 3 it is (15/16, 15/16).
        let c = covering_certified(&ps, Norm::LInf, 4).unwrap();
        assert_eq!(c.lo, Dyadic::new(15, 5));
        assert_eq!(c.hi, Dyadic::new(1, 1));
        assert_eq!(c.max_center, brute_max(&ps, Norm::LInf, 4));
        let c3 = covering_certified(&ps, Norm::LInf, 3).unwrap();
        assert_eq!(c3.lo, Dyadic::new(7, 4));
        assert_eq!(c3.hi, Dyadic::new(1, 1));
    }

    #[test]
    fn sobol_general_bound() {
        let ps = prefix(&GeneratorPair::sobol(6).unwrap(), 64).unwrap();
        let c = covering_certified(&ps, Norm::LInf, 10).unwrap();
        assert!(c.hi >= Dyadic::new(1, 4));
        assert!(c.lo >= Dyadic::new(1, 4));
    }

    #[test]
    fn budget_and_domain() {
        let ps = set(1, &[(0, 0)]);
        assert!(matches!(covering_certified(&ps, Norm::LInf, 14), Err(Error::Resource(_))));
        assert!(matches!(
            covering_certified_with_budget(&ps, Norm::LInf, 3, 63),
            Err(Error::Resource(_))
        ));
        assert!(covering_certified(&ps, Norm::LInf, 0).is_err());
        let empty = set(1, &[]);
        assert!(covering_certified(&empty, Norm::LInf, 2).is_err());
    }

    #[test]
    fn index_matches_brute_force_on_sobol() {
        for m in [2u32, 5, 8] {
            let ps = prefix(&GeneratorPair::sobol(m).unwrap(), 1 << m).unwrap();
            for norm in Norm::ALL {
                let k = 6;
                let c = covering_certified(&ps, norm, k).unwrap();
                assert_eq!(c.max_center, brute_max(&ps, norm, k), "m={m} {norm}");
            }
        }
    }

    fn random_set() -> impl Strategy<Value = PointSet> {
        (1u32..=8, 1usize..=40).prop_flat_map(|(scale, n)| {
            let max = (1u64 << scale) - 1;
            proptest::collection::vec((0..=max, 0..=max), n).prop_map(move |p| set(scale, &p))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn finer_grid_lies_inside(ps in random_set(), k in 1u32..=5) {
            for norm in Norm::ALL {
                let c = covering_certified(&ps, norm, k).unwrap();
                prop_assert_eq!(c.max_center, brute_max(&ps, norm, k));
                let (fine_lo, fine_max) = brute_max(&ps, norm, k + 1).length_bounds();
                let fine_hi = fine_max.checked_add(&cell_coradius(norm, k + 1)).unwrap();
                prop_assert!(c.lo <= fine_hi, "{norm}: {} > {}", c.lo, fine_hi);
                prop_assert!(fine_lo <= c.hi, "{norm}: {} > {}", fine_lo, c.hi);
            }
        }

        #[test]
        fn distance_is_lipschitz(
            ps in random_set(),
            a in (any::<u64>(), any::<u64>()),
            b in (any::<u64>(), any::<u64>()),
        ) {
            let scale = 12;
            let mask = (1u64 << scale) - 1;
            let pa = DyadicPoint::new(scale, a.0 & mask, a.1 & mask).unwrap();
            let pb = DyadicPoint::new(scale, b.0 & mask, b.1 & mask).unwrap();
            for norm in Norm::ALL {
                let idx = NearestIndex::new(&ps, norm, scale).unwrap();
                let da = idx.distance(&pa).unwrap().to_f64();
                let db = idx.distance(&pb).unwrap().to_f64();
                let step = norm
                    .magnitude(norm.distance((pa.nx(), pa.ny()), (pb.nx(), pb.ny())), scale)
                    .to_f64();
                prop_assert!((da - db).abs() <= step + 1e-12);
            }
        }
    }
}
