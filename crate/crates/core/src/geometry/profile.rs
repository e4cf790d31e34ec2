//! Separation radius of every prefix `Q_2, Q_3, ..., Q_N` in one pass.
//!
//! Points are inserted in index order into a uniform grid whose cell side `s`
//! is at least the coordinate window of the current minimum distance, so all
//! points that can improve the minimum lie in the 3×3 block of cells around
//! the new point. The minimum only shrinks; when its window falls to `s/2` or
//! below, the grid is rebuilt with the new side. Each rebuild at least halves
//! `s`, and `s` starts at the first pair's window and stays at least 1, so there
//! are at most `log2(initial window) + 1 <= 65` rebuilds, each O(N); between
//! rebuilds every query touches 9 cells holding O(1) points on average for
//! well-spread sets.

use std::collections::HashMap;

use super::separation::Closest;
use super::Norm;
use crate::digital::{prefix, GeneratorPair, PointSet};
use crate::dyadic::Magnitude;
use crate::error::{domain, Result};

/// Separation of the first `n` points.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ProfileEntry {
    pub n: usize,
    pub min_dist: Magnitude,
    pub witness: (usize, usize),
}

impl ProfileEntry {
    pub fn radius(&self) -> Magnitude {
        self.min_dist.half()
    }
}

struct Grid {
    side: u128,
    cells: HashMap<(u128, u128), Vec<usize>>,
}

impl Grid {
    fn new(side: u128, coords: &[(u64, u64)]) -> Self {
        let mut g = Grid {
            side,
            cells: HashMap::new(),
        };
        for (i, &p) in coords.iter().enumerate() {
            g.insert(i, p);
        }
        g
    }

    fn key(&self, p: (u64, u64)) -> (u128, u128) {
        (p.0 as u128 / self.side, p.1 as u128 / self.side)
    }

    fn insert(&mut self, i: usize, p: (u64, u64)) {
        let k = self.key(p);
        self.cells.entry(k).or_default().push(i);
    }
}

/// Separation of every prefix of `g` up to `n_max` points, in any norm.
pub fn separation_profile(g: &GeneratorPair, n_max: usize, norm: Norm) -> Result<Vec<ProfileEntry>> {
    if n_max < 2 {
        return domain(format!("profile needs N_max >= 2, got {n_max}"));
    }
    separation_profile_of(&prefix(g, n_max)?, norm)
}

/// Separation of every prefix `ps[..n]`, `2 <= n <= ps.len()`.
pub fn separation_profile_of(ps: &PointSet, norm: Norm) -> Result<Vec<ProfileEntry>> {
    if ps.len() < 2 {
        return domain(format!("profile needs at least 2 points, got {}", ps.len()));
    }
    norm.check_scale(ps.scale())?;
    let coords: Vec<(u64, u64)> = ps.points().iter().map(|p| (p.nx(), p.ny())).collect();
    let entry = |n: usize, c: &Closest| ProfileEntry {
        n,
        min_dist: norm.magnitude(c.dist, ps.scale()),
        witness: c.pair,
    };

    let mut best = Closest {
        dist: norm.distance(coords[0], coords[1]),
        pair: (0, 1),
    };
    let mut out = Vec::with_capacity(coords.len() - 1);
    out.push(entry(2, &best));
    if best.dist == 0 {
        // (0, 1) is the smallest pair overall, so it stays the witness.
        out.extend((3..=coords.len()).map(|n| entry(n, &best)));
        return Ok(out);
    }

    let side_for = |d: u128| norm.window(d).max(1);
    let mut grid = Grid::new(side_for(best.dist), &coords[..2]);
    for j in 2..coords.len() {
        let p = coords[j];
        let (kx, ky) = grid.key(p);
        let mut cand = Some(best);
        for cx in kx.saturating_sub(1)..=kx + 1 {
            for cy in ky.saturating_sub(1)..=ky + 1 {
                if let Some(bucket) = grid.cells.get(&(cx, cy)) {
                    for &i in bucket {
                        Closest::offer(&mut cand, norm.distance(coords[i], p), i, j);
                    }
                }
            }
        }
        best = cand.expect("seeded");
        if 2 * side_for(best.dist) <= grid.side {
            grid = Grid::new(side_for(best.dist), &coords[..=j]);
        } else {
            grid.insert(j, p);
        }
        out.push(entry(j + 1, &best));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::Provenance;
    use crate::dyadic::Dyadic;
    use crate::geometry::separation_naive;
    use proptest::prelude::*;

    #[test]
    fn small_sobol_values() {
        let g = GeneratorPair::sobol(6).unwrap();
        let prof = separation_profile(&g, 64, Norm::LInf).unwrap();
        assert_eq!(prof.len(), 63);
        assert_eq!(prof[0].n, 2);
        let at = |n: usize| prof[n - 2].radius().value();
        assert_eq!(at(4), Dyadic::new(1, 3));
        assert_eq!(at(64), Dyadic::pow2(-6));
        assert!(separation_profile(&g, 1, Norm::LInf).is_err());
        assert!(separation_profile(&g, 65, Norm::LInf).is_err());
    }

    #[test]
    fn dyadic_entries_match_sweep() {
        let g = GeneratorPair::sobol(12).unwrap();
        for norm in Norm::ALL {
            let prof = separation_profile(&g, 1 << 12, norm).unwrap();
            for m in 1..=12 {
                let ps = prefix(&g, 1 << m).unwrap();
                let full = crate::geometry::separation(&ps, norm).unwrap();
                let e = prof[(1 << m) - 2];
                assert_eq!((e.min_dist, e.witness), (full.min_dist, full.witness), "m={m} {norm}");
            }
        }
    }

    #[test]
    fn duplicate_start() {
        let ps = PointSet::from_numerators(
            2,
            [(1, 1), (1, 1), (0, 3)],
            Provenance::Explicit("dup".into()),
        )
        .unwrap();
        let prof = separation_profile_of(&ps, Norm::LInf).unwrap();
        assert!(prof.iter().all(|e| e.min_dist.value().is_zero() && e.witness == (0, 1)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn every_prefix_matches_naive(
            scale in 1u32..=10,
            pts in proptest::collection::vec((any::<u64>(), any::<u64>()), 2..80),
        ) {
            let mask = (1u64 << scale) - 1;
            let ps = PointSet::from_numerators(
                scale,
                pts.iter().map(|&(x, y)| (x & mask, y & mask)),
                Provenance::Explicit("rand".into()),
            ).unwrap();
            for norm in Norm::ALL {
                let prof = separation_profile_of(&ps, norm).unwrap();
                for e in &prof {
                    let naive = separation_naive(&ps.head(e.n).unwrap(), norm).unwrap();
                    prop_assert_eq!((e.min_dist, e.witness), (naive.min_dist, naive.witness));
                }
                for w in prof.windows(2) {
                    prop_assert!(w[1].min_dist.value() <= w[0].min_dist.value());
                }
            }
        }
    }
}
