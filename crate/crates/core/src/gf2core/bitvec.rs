use std::fmt;
use std::ops::BitXor;

use crate::error::{domain, Result};

const WORD: usize = 64;

/// A column vector over GF(2), indexed from 1.
///
/// Bit `i` is stored at position `i - 1` of the packed words, so entry `i` of
/// [`BitVector::binary_expand`]`(n, m)` is the coefficient of `2^(i-1)` in `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            len,
            words: vec![u64::MAX; len.div_ceil(WORD)],
        };
        v.clear_tail();
        v
    }

    /// Unit vector with a single one at position `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector from bits listed in index order (`bits[0]` is entry 1).
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        BitVector { len, words }
    }

    /// Builds a length-`len` vector whose first 64 entries come from `word`.
    pub fn from_word(word: u64, len: usize) -> Self {
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = word;
            v.clear_tail();
        }
        v
    }

    /// The digit vector of `n`: entry `i` is the coefficient of `2^(i-1)`.
    pub fn binary_expand(n: u64, m: usize) -> Result<Self> {
        if m == 0 {
            return domain("binary_expand needs m >= 1");
        }
        if m < 64 && n >> m != 0 {
            return domain(format!("{n} does not fit in {m} binary digits"));
        }
        Ok(Self::from_word(n, m))
    }

    /// Inverse of [`BitVector::binary_expand`]; `None` if the value needs more than 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.words.iter().skip(1).any(|&w| w != 0) {
            return None;
        }
        Some(self.words.first().copied().unwrap_or(0))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Entry `i` (1-based). Panics when `i` is out of range.
    pub fn get(&self, i: usize) -> bool {
        assert!(
            (1..=self.len).contains(&i),
            "index {i} out of range 1..={}",
            self.len
        );
        let k = i - 1;
        self.words[k / WORD] >> (k % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            (1..=self.len).contains(&i),
            "index {i} out of range 1..={}",
            self.len
        );
        let k = i - 1;
        let mask = 1u64 << (k % WORD);
        if value {
            self.words[k / WORD] |= mask;
        } else {
            self.words[k / WORD] &= !mask;
        }
    }

    /// Entries `i..=j` (1-based, inclusive).
    pub fn slice(&self, i: usize, j: usize) -> Result<Self> {
        if i < 1 || i > j || j > self.len {
            return domain(format!("slice {i}..={j} of a length-{} vector", self.len));
        }
        Ok(Self::from_bits((i..=j).map(|k| self.get(k))))
    }

    /// Vertical concatenation: `self` on top of `other`.
    pub fn concat(&self, other: &Self) -> Self {
        Self::from_bits(self.iter().chain(other.iter()))
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |i| self.get(i))
    }

    /// 1-based positions of the ones.
    pub fn ones_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(w * WORD + bits.trailing_zeros() as usize + 1);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.len
    }

    /// In-place XOR; lengths must agree.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for b in self.iter() {
            write!(f, "{}", b as u8)?;
        }
        write!(f, ")")
    }
}
