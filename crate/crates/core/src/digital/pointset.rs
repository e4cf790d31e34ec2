use std::fmt;

use super::generator::{digital_point_naive, GeneratorPair};
use super::point::{fits, DyadicPoint};
use crate::error::{domain, Result};
use crate::MAX_SCALE;

/// Where a point set came from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Provenance {
    /// Prefix of a digital sequence, tagged with the generator label and scale.
    Digital { label: String, m: u32 },
    /// Anything else (CSV input, hand-built sets).
    Explicit(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Digital { label, m } => write!(f, "{label}(m={m})"),
            Provenance::Explicit(s) => f.write_str(s),
        }
    }
}

/// An ordered finite point set at a shared scale; for a digital sequence this
/// is the prefix `Q_N = {x_0, ..., x_(N-1)}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    scale: u32,
    points: Vec<DyadicPoint>,
    provenance: Provenance,
}

impl PointSet {
    /// Builds a set from numerator pairs at `scale`.
    pub fn from_numerators<I>(scale: u32, coords: I, provenance: Provenance) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        if !(1..=MAX_SCALE).contains(&scale) {
            return domain(format!("scale {scale} outside 1..={MAX_SCALE}"));
        }
        let points = coords
            .into_iter()
            .map(|(x, y)| DyadicPoint::new(scale, x, y))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointSet {
            scale,
            points,
            provenance,
        })
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[DyadicPoint] {
        &self.points
    }

    pub fn get(&self, i: usize) -> Option<&DyadicPoint> {
        self.points.get(i)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The first `n` points.
    pub fn head(&self, n: usize) -> Result<PointSet> {
        if n == 0 || n > self.len() {
            return domain(format!("prefix of size {n} from a set of {}", self.len()));
        }
        Ok(PointSet {
            scale: self.scale,
            points: self.points[..n].to_vec(),
            provenance: self.provenance.clone(),
        })
    }

    pub(crate) fn coords(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.points.iter().map(|p| (p.nx(), p.ny()))
    }
}

fn check_size(g: &GeneratorPair, n: usize) -> Result<()> {
    if n == 0 || !fits((n - 1) as u64, g.m()) {
        return domain(format!("prefix size {n} outside 1..=2^{}", g.m()));
    }
    Ok(())
}

/// The first `n` points of the sequence defined by `g`, in index order.
///
/// Consecutive indices differ in their trailing ones, so
/// `x_n = x_(n-1) XOR D[t]` with `t` the number of trailing zeros of `n` and
/// `D[t]` the XOR of the first `t + 1` generator columns.
pub fn prefix(g: &GeneratorPair, n: usize) -> Result<PointSet> {
    check_size(g, n)?;
    let (c1, c2) = g.column_numerators();
    let mut carry1 = Vec::with_capacity(c1.len());
    let mut carry2 = Vec::with_capacity(c2.len());
    let (mut a, mut b) = (0u64, 0u64);
    for (x, y) in c1.iter().zip(c2) {
        a ^= x;
        b ^= y;
        carry1.push(a);
        carry2.push(b);
    }
    let mut points = Vec::with_capacity(n);
    let (mut x, mut y) = (0u64, 0u64);
    points.push(DyadicPoint::new_unchecked(g.m(), 0, 0));
    for i in 1..n {
        let t = i.trailing_zeros() as usize;
        x ^= carry1[t];
        y ^= carry2[t];
        points.push(DyadicPoint::new_unchecked(g.m(), x, y));
    }
    Ok(PointSet {
        scale: g.m(),
        points,
        provenance: Provenance::Digital {
            label: g.label().to_string(),
            m: g.m(),
        },
    })
}

/// Reference path for [`prefix`]: one matrix-vector product per index.
pub fn prefix_naive(g: &GeneratorPair, n: usize) -> Result<PointSet> {
    check_size(g, n)?;
    let points = (0..n as u64)
        .map(|i| digital_point_naive(g, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointSet {
        scale: g.m(),
        points,
        provenance: Provenance::Digital {
            label: g.label().to_string(),
            m: g.m(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2core::BitMatrix;
    use proptest::prelude::*;

    fn table(ps: &PointSet) -> Vec<(u64, u64)> {
        ps.coords().collect()
    }

    #[test]
    fn sobol_prefix_tables() {
        let g3 = GeneratorPair::sobol(3).unwrap();
        assert_eq!(
            table(&prefix(&g3, 8).unwrap()),
            [(0, 0), (4, 4), (2, 6), (6, 2), (1, 5), (5, 1), (3, 3), (7, 7)]
        );
        let g2 = GeneratorPair::sobol(2).unwrap();
        assert_eq!(
            table(&prefix(&g2, 4).unwrap()),
            [(0, 0), (2, 2), (1, 3), (3, 1)]
        );
        let g9 = GeneratorPair::sobol(9).unwrap();
        assert_eq!(table(&prefix(&g9, 1).unwrap()), [(0, 0)]);
    }

    #[test]
    fn size_bounds() {
        let g = GeneratorPair::sobol(3).unwrap();
        assert!(prefix(&g, 0).is_err());
        assert!(prefix(&g, 9).is_err());
        assert!(prefix_naive(&g, 9).is_err());
    }

    #[test]
    fn incremental_matches_naive() {
        for m in 1..=11 {
            let g = GeneratorPair::sobol(m).unwrap();
            let n = 1usize << m;
            assert_eq!(prefix(&g, n).unwrap(), prefix_naive(&g, n).unwrap());
        }
    }

    #[test]
    fn injective_coordinates() {
        for m in 1..=14u32 {
            let ps = prefix(&GeneratorPair::sobol(m).unwrap(), 1 << m).unwrap();
            let mut xs: Vec<u64> = ps.coords().map(|c| c.0).collect();
            let mut ys: Vec<u64> = ps.coords().map(|c| c.1).collect();
            xs.sort_unstable();
            ys.sort_unstable();
            assert!(xs.iter().copied().eq(0..1 << m));
            assert!(ys.iter().copied().eq(0..1 << m));
        }
    }

    #[test]
    fn scale_independence() {
        for m in 10..=20u32 {
            let fine = prefix(&GeneratorPair::sobol(m).unwrap(), 1024).unwrap();
            let coarse = prefix(&GeneratorPair::sobol(10).unwrap(), 1024).unwrap();
            for (a, b) in fine.points().iter().zip(coarse.points()) {
                assert_eq!(*a, b.rescale(m).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn prefix_property(m in 1u32..16, a in 1usize..5000, b in 1usize..5000) {
            let g = GeneratorPair::sobol(m).unwrap();
            let cap = 1usize << m;
            let (small, large) = (a.min(b).min(cap), a.max(b).min(cap));
            let big = prefix(&g, large).unwrap();
            prop_assert_eq!(big.head(small).unwrap(), prefix(&g, small).unwrap());
        }

        #[test]
        fn digit_linearity(m in 1u32..40, a in any::<u64>(), b in any::<u64>()) {
            let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
            let (a, b) = (a & mask, b & mask);
            let g = GeneratorPair::sobol(m).unwrap();
            let pa = super::super::digital_point(&g, a).unwrap();
            let pb = super::super::digital_point(&g, b).unwrap();
            let pab = super::super::digital_point(&g, a ^ b).unwrap();
            prop_assert_eq!(pab.nx(), pa.nx() ^ pb.nx());
            prop_assert_eq!(pab.ny(), pa.ny() ^ pb.ny());
        }

        #[test]
        fn random_generators_incremental_matches_naive(
            m in 1usize..9,
            seed in proptest::collection::vec(any::<bool>(), 128),
        ) {
            let c1 = BitMatrix::from_fn(m, m, |i, j| seed[(i * 7 + j) % 128]);
            let c2 = BitMatrix::from_fn(m, m, |i, j| seed[(i * 13 + j * 3 + 64) % 128]);
            let g = GeneratorPair::new(c1, c2, "random").unwrap();
            let n = 1usize << m;
            prop_assert_eq!(prefix(&g, n).unwrap(), prefix_naive(&g, n).unwrap());
        }
    }
}
