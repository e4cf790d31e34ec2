use super::pointset::PointSet;
use crate::error::{domain, Error, Result};

/// Largest scale the elementary-interval census accepts (one counter per cell).
pub const MAX_NET_SCALE: u32 = 30;

/// A cell `[a/2^k, (a+1)/2^k) × [b/2^l, (b+1)/2^l)` whose count is not one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CellFailure {
    pub k: u32,
    pub l: u32,
    pub a: u64,
    pub b: u64,
    pub count: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NetReport {
    pub scale: u32,
    pub pass: bool,
    /// Number of `(k, l)` splits that were examined.
    pub splits_checked: u32,
    /// First offending cell of each failing split, in increasing `k`.
    pub failures: Vec<CellFailure>,
}

/// Checks that every elementary interval of area `2^-m` holds exactly one
/// point, stopping at the first failing split.
pub fn check_elementary_intervals(ps: &PointSet) -> Result<NetReport> {
    check_elementary_intervals_with(ps, false)
}

/// As [`check_elementary_intervals`]; with `exhaustive` every split is
/// examined even after a failure.
pub fn check_elementary_intervals_with(ps: &PointSet, exhaustive: bool) -> Result<NetReport> {
    let m = ps.scale();
    if m > MAX_NET_SCALE {
        return Err(Error::Resource(format!(
            "elementary-interval census at scale {m} (limit {MAX_NET_SCALE})"
        )));
    }
    if ps.len() != 1usize << m {
        return domain(format!(
            "net check needs 2^{m} = {} points, got {}",
            1u64 << m,
            ps.len()
        ));
    }
    let mut counts = vec![0u64; 1 << m];
    let mut report = NetReport {
        scale: m,
        pass: true,
        splits_checked: 0,
        failures: Vec::new(),
    };
    for k in 0..=m {
        let l = m - k;
        counts.iter_mut().for_each(|c| *c = 0);
        for (x, y) in ps.coords() {
            let a = x >> (m - k);
            let b = y >> (m - l);
            counts[((a << l) | b) as usize] += 1;
        }
        report.splits_checked += 1;
        if let Some(cell) = counts.iter().position(|&c| c != 1) {
            report.pass = false;
            report.failures.push(CellFailure {
                k,
                l,
                a: (cell >> l) as u64,
                b: (cell & ((1 << l) - 1)) as u64,
                count: counts[cell],
            });
            if !exhaustive {
                break;
            }
        }
    }
    Ok(report)
}
