use std::fmt;

use super::BitVector;
use crate::error::{domain, Result};

/// An immutable matrix over GF(2), indexed `[i][j]` from 1.
///
/// Stored column-major: a matrix-vector product is the XOR of the columns
/// selected by the vector's ones.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: Vec<BitVector>,
}

impl BitMatrix {
    /// Builds a `rows × cols` matrix from a predicate on 1-based `(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let cols = (1..=cols)
            .map(|j| BitVector::from_bits((1..=rows).map(|i| f(i, j))))
            .collect();
        BitMatrix { rows, cols }
    }

    /// Builds a matrix from its rows; all rows must have the same length.
    pub fn from_rows(rows: &[BitVector]) -> Result<Self> {
        let ncols = rows.first().map_or(0, BitVector::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return domain("rows of unequal length");
        }
        Ok(Self::from_fn(rows.len(), ncols, |i, j| rows[i - 1].get(j)))
    }

    pub fn identity(m: usize) -> Self {
        BitMatrix {
            rows: m,
            cols: (1..=m).map(|j| BitVector::unit(m, j)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols()
    }

    /// Entry `[i][j]` (1-based). Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.column(j).get(i)
    }

    /// Column `j` (1-based).
    pub fn column(&self, j: usize) -> &BitVector {
        assert!(
            (1..=self.cols()).contains(&j),
            "column {j} out of range 1..={}",
            self.cols()
        );
        &self.cols[j - 1]
    }

    /// Row `i` (1-based).
    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_bits(self.cols.iter().map(|c| c.get(i)))
    }

    /// Rows `r1..=r2` and columns `c1..=c2`, 1-based and inclusive.
    pub fn submatrix(&self, r1: usize, r2: usize, c1: usize, c2: usize) -> Result<Self> {
        if r1 < 1 || r1 > r2 || r2 > self.rows || c1 < 1 || c1 > c2 || c2 > self.cols() {
            return domain(format!(
                "submatrix [{r1}..={r2}][{c1}..={c2}] of a {}x{} matrix",
                self.rows,
                self.cols()
            ));
        }
        Ok(BitMatrix {
            rows: r2 - r1 + 1,
            cols: self.cols[c1 - 1..c2]
                .iter()
                .map(|c| c.slice(r1, r2))
                .collect::<Result<_>>()?,
        })
    }

    /// `M · v` over GF(2).
    pub fn matvec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols() {
            return domain(format!(
                "vector of length {} against a matrix with {} columns",
                v.len(),
                self.cols()
            ));
        }
        let mut out = BitVector::zeros(self.rows);
        for j in v.ones_positions() {
            out.xor_assign(&self.cols[j - 1]);
        }
        Ok(out)
    }

    /// Whether the matrix is square with full rank over GF(2).
    pub fn is_nonsingular(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut cols: Vec<BitVector> = self.cols.clone();
        let n = self.rows;
        for pivot_row in 1..=n {
            let Some(p) = (pivot_row - 1..n).find(|&c| cols[c].get(pivot_row)) else {
                return false;
            };
            cols.swap(pivot_row - 1, p);
            let pivot = cols[pivot_row - 1].clone();
            for (c, col) in cols.iter_mut().enumerate() {
                if c != pivot_row - 1 && col.get(pivot_row) {
                    col.xor_assign(&pivot);
                }
            }
        }
        true
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols())?;
        for i in 1..=self.rows {
            write!(f, "  ")?;
            for j in 1..=self.cols() {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BitMatrix {
        let rows: Vec<BitVector> = rows
            .iter()
            .map(|r| BitVector::from_bits(r.chars().map(|c| c == '1')))
            .collect();
        BitMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn matvec_small() {
        let a = m(&["110", "011"]);
        let v = BitVector::from_bits([true, true, true]);
        assert_eq!(a.matvec(&v).unwrap(), BitVector::from_bits([false, false]));
        let e3 = BitVector::unit(3, 3);
        assert_eq!(a.matvec(&e3).unwrap(), BitVector::from_bits([false, true]));
        assert!(a.matvec(&BitVector::zeros(2)).is_err());
        assert!(a.matvec(&BitVector::zeros(3)).unwrap().is_zero());
    }

    #[test]
    fn submatrix_dims() {
        let a = BitMatrix::identity(6);
        let s = a.submatrix(2, 4, 3, 6).unwrap();
        assert_eq!((s.rows(), s.cols()), (3, 4));
        assert!(s.get(2, 1));
        assert!(a.submatrix(0, 1, 1, 1).is_err());
        assert!(a.submatrix(1, 7, 1, 1).is_err());
        assert!(a.submatrix(3, 2, 1, 1).is_err());
    }

    #[test]
    fn rows_and_columns_agree() {
        let a = m(&["1011", "0110", "1101"]);
        assert_eq!(a.row(2), BitVector::from_bits([false, true, true, false]));
        assert_eq!(a.column(4), &BitVector::from_bits([true, false, true]));
        assert!(BitMatrix::from_rows(&[BitVector::zeros(2), BitVector::zeros(3)]).is_err());
    }

    #[test]
    fn nonsingularity() {
        assert!(BitMatrix::identity(5).is_nonsingular());
        assert!(m(&["11", "01"]).is_nonsingular());
        assert!(!m(&["11", "11"]).is_nonsingular());
        assert!(!m(&["110", "011", "101"]).is_nonsingular());
        assert!(!m(&["11"]).is_nonsingular());
    }
}
