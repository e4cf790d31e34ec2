use std::fmt;

use super::point::{fits, DyadicPoint};
use crate::error::{domain, Result};
use crate::gf2core::{pascal_matrix, BitMatrix, BitVector};
use crate::MAX_SCALE;

/// Generator matrices `(C1, C2)` of a two-dimensional digital sequence over
/// GF(2). Point `n` is `(phi(C1 n), phi(C2 n))` with `n` the digit vector of
/// the index.
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorPair {
    m: u32,
    c1: BitMatrix,
    c2: BitMatrix,
    // phi of each column, i.e. the numerator contributed by index digit j.
    cols1: Vec<u64>,
    cols2: Vec<u64>,
    label: String,
}

/// `phi(z)` as a numerator over `2^len`: `sum z[i] 2^(len - i)`.
pub fn phi_numerator(z: &BitVector) -> Result<u64> {
    let len = z.len();
    if len == 0 || len > MAX_SCALE as usize {
        return domain(format!("phi needs 1..={MAX_SCALE} digits, got {len}"));
    }
    Ok(z.ones_positions()
        .into_iter()
        .fold(0u64, |acc, i| acc | 1u64 << (len - i)))
}

impl GeneratorPair {
    /// A pair of `m × m` generator matrices. Singular matrices are accepted;
    /// operations that need distinct points say so.
    pub fn new(c1: BitMatrix, c2: BitMatrix, label: impl Into<String>) -> Result<Self> {
        let m = c1.rows();
        if m == 0 || m > MAX_SCALE as usize {
            return domain(format!("generator size {m} outside 1..={MAX_SCALE}"));
        }
        for (name, c) in [("C1", &c1), ("C2", &c2)] {
            if c.rows() != m || c.cols() != m {
                return domain(format!(
                    "{name} is {}x{}, expected {m}x{m}",
                    c.rows(),
                    c.cols()
                ));
            }
        }
        let numerators = |c: &BitMatrix| {
            (1..=m)
                .map(|j| phi_numerator(c.column(j)))
                .collect::<Result<Vec<_>>>()
        };
        Ok(GeneratorPair {
            m: m as u32,
            cols1: numerators(&c1)?,
            cols2: numerators(&c2)?,
            c1,
            c2,
            label: label.into(),
        })
    }

    /// The two-dimensional Sobol' sequence: `C1 = I`, `C2 = P_m`.
    pub fn sobol(m: u32) -> Result<Self> {
        if !(1..=MAX_SCALE).contains(&m) {
            return domain(format!("m = {m} outside 1..={MAX_SCALE}"));
        }
        let m = m as usize;
        Self::new(BitMatrix::identity(m), pascal_matrix(m)?, "sobol")
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn c1(&self) -> &BitMatrix {
        &self.c1
    }

    pub fn c2(&self) -> &BitMatrix {
        &self.c2
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub(crate) fn check_index(&self, n: u64) -> Result<()> {
        if !fits(n, self.m) {
            return domain(format!("index {n} not below 2^{}", self.m));
        }
        Ok(())
    }

    pub(crate) fn column_numerators(&self) -> (&[u64], &[u64]) {
        (&self.cols1, &self.cols2)
    }
}

impl fmt::Debug for GeneratorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorPair")
            .field("m", &self.m)
            .field("label", &self.label)
            .finish()
    }
}

/// Point `n` of the sequence defined by `g`, by XOR of generator columns.
pub fn digital_point(g: &GeneratorPair, n: u64) -> Result<DyadicPoint> {
    g.check_index(n)?;
    let (c1, c2) = g.column_numerators();
    let (mut nx, mut ny) = (0u64, 0u64);
    let mut bits = n;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        nx ^= c1[j];
        ny ^= c2[j];
        bits &= bits - 1;
    }
    Ok(DyadicPoint::new_unchecked(g.m, nx, ny))
}

/// Reference path for [`digital_point`]: expand, multiply, apply `phi`.
pub fn digital_point_naive(g: &GeneratorPair, n: u64) -> Result<DyadicPoint> {
    g.check_index(n)?;
    let digits = BitVector::binary_expand(n, g.m as usize)?;
    let nx = phi_numerator(&g.c1.matvec(&digits)?)?;
    let ny = phi_numerator(&g.c2.matvec(&digits)?)?;
    DyadicPoint::new(g.m, nx, ny)
}

/// Point `n` of the Sobol' sequence at scale `m`.
///
/// The first coordinate is the bit reversal of `n`; the second XORs, for each
/// digit `j` of `n`, the rows `i` with `i - 1` a binary submask of `j - 1`.
pub fn sobol_point(n: u64, m: u32) -> Result<DyadicPoint> {
    if !(1..=MAX_SCALE).contains(&m) {
        return domain(format!("m = {m} outside 1..={MAX_SCALE}"));
    }
    if !fits(n, m) {
        return domain(format!("index {n} not below 2^{m}"));
    }
    let nx = n.reverse_bits() >> (64 - m);
    let mut ny = 0u64;
    let mut bits = n;
    while bits != 0 {
        let col = bits.trailing_zeros() as u64;
        let mut sub = col;
        loop {
            ny ^= 1 << (m as u64 - 1 - sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & col;
        }
        bits &= bits - 1;
    }
    Ok(DyadicPoint::new_unchecked(m, nx, ny))
}
