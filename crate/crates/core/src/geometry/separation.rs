use std::collections::BTreeSet;

use super::Norm;
use crate::digital::PointSet;
use crate::dyadic::Magnitude;
use crate::error::{domain, Result};

/// Exact minimum pairwise distance of a point set and half of it, the
/// separation radius.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SeparationReport {
    pub n: usize,
    pub norm: Norm,
    pub scale: u32,
    /// Minimum pairwise distance (its square for ℓ2).
    pub min_dist: Magnitude,
    /// Lexicographically smallest index pair `(i, j)`, `i < j`, attaining it.
    pub witness: (usize, usize),
}

impl SeparationReport {
    pub fn radius(&self) -> Magnitude {
        self.min_dist.half()
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Closest {
    pub dist: u128,
    pub pair: (usize, usize),
}

impl Closest {
    /// Offers pair `(i, j)` at distance `d`; keeps the smaller distance and,
    /// on ties, the lexicographically smaller pair.
    #[inline]
    pub fn offer(best: &mut Option<Closest>, d: u128, i: usize, j: usize) {
        let pair = if i < j { (i, j) } else { (j, i) };
        match best {
            Some(b) if (d, pair) >= (b.dist, b.pair) => {}
            _ => *best = Some(Closest { dist: d, pair }),
        }
    }
}

fn check(ps: &PointSet, norm: Norm) -> Result<()> {
    if ps.len() < 2 {
        return domain(format!("separation needs at least 2 points, got {}", ps.len()));
    }
    norm.check_scale(ps.scale())
}

fn report(ps: &PointSet, norm: Norm, c: Closest) -> SeparationReport {
    SeparationReport {
        n: ps.len(),
        norm,
        scale: ps.scale(),
        min_dist: norm.magnitude(c.dist, ps.scale()),
        witness: c.pair,
    }
}

/// Exact separation by a plane sweep over x with a y-ordered active strip.
///
/// The strip keeps points whose x lies within the current best distance
/// window of the sweep line; candidates are those whose y lies in the same
/// window. Windows are inclusive, so every pair at the final minimum is
/// examined and ties resolve to the lexicographically smallest pair.
/// Coincident points give a zero distance.
pub fn separation(ps: &PointSet, norm: Norm) -> Result<SeparationReport> {
    check(ps, norm)?;
    let coords: Vec<(u64, u64)> = ps.points().iter().map(|p| (p.nx(), p.ny())).collect();
    let mut order: Vec<usize> = (0..coords.len()).collect();
    order.sort_unstable_by_key(|&i| (coords[i], i));

    let mut active: BTreeSet<(u64, usize)> = BTreeSet::new();
    let mut best: Option<Closest> = None;
    let mut left = 0;
    for &i in &order {
        let (x, y) = coords[i];
        let (lo, hi) = match best {
            Some(b) => {
                let w = norm.window(b.dist);
                while x as u128 - coords[order[left]].0 as u128 > w {
                    let j = order[left];
                    active.remove(&(coords[j].1, j));
                    left += 1;
                }
                let w = w.min(u64::MAX as u128) as u64;
                (y.saturating_sub(w), y.saturating_add(w))
            }
            None => (0, u64::MAX),
        };
        for &(_, j) in active.range((lo, 0)..=(hi, usize::MAX)) {
            Closest::offer(&mut best, norm.distance(coords[i], coords[j]), i, j);
        }
        active.insert((y, i));
    }
    Ok(report(ps, norm, best.expect("at least two points")))
}

/// Exact separation by comparing all pairs; the reference for [`separation`].
pub fn separation_naive(ps: &PointSet, norm: Norm) -> Result<SeparationReport> {
    check(ps, norm)?;
    let coords: Vec<(u64, u64)> = ps.points().iter().map(|p| (p.nx(), p.ny())).collect();
    let mut best: Option<Closest> = None;
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            let d = norm.distance(coords[i], coords[j]);
            if best.is_none_or(|b| d < b.dist) {
                best = Some(Closest { dist: d, pair: (i, j) });
            }
        }
    }
    Ok(report(ps, norm, best.expect("at least two points")))
}
