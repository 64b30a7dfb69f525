//! Packed vectors and matrices over GF(2).
//!
//! Coordinate `i` lives in word `i / 64` at bit `i % 64`. Bits at or beyond
//! `len` are always zero, so equality and hashing work on the raw words.
//!
//! The hex encoding writes each 64-bit word as 16 big-endian hex digits, words
//! in order, so coordinate 0 is the least significant bit of the first hex word.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use crate::error::{check_len, Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.mask_tail();
        v
    }

    /// Vector with ones exactly at `indices`.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    /// Builds a vector from raw words; bits beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = BitVector { len, words };
        v.mask_tail();
        v
    }

    /// A vector of length `len <= 64` from the low bits of `word`.
    pub fn from_u64(len: usize, word: u64) -> Self {
        assert!(len <= WORD);
        Self::from_words(len, vec![word])
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Euclidean inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Index of the lowest set coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Iterator over the indices of set coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.support() {
            out.set(i, true);
        }
        for i in other.support() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        assert!(start <= end && end <= self.len);
        let mut out = BitVector::zeros(end - start);
        for i in self.support().filter(|&i| i >= start && i < end) {
            out.set(i - start, true);
        }
        out
    }

    /// Cyclic shift by `k` positions towards higher indices.
    pub fn rotate(&self, k: usize) -> BitVector {
        let n = self.len;
        if n == 0 {
            return self.clone();
        }
        BitVector::from_indices(n, self.support().map(|i| (i + k) % n))
    }

    pub fn to_hex(&self) -> String {
        self.words.iter().map(|w| format!("{w:016x}")).collect()
    }

    pub fn from_hex(len: usize, hex: &str) -> Result<Self> {
        let hex = hex.trim();
        let expected = words_for(len) * 16;
        if hex.len() != expected {
            return Err(Error::Parse(format!(
                "hex string of length {} for {len} bits, expected {expected} digits",
                hex.len()
            )));
        }
        let words = (0..words_for(len))
            .map(|i| {
                u64::from_str_radix(&hex[16 * i..16 * i + 16], 16)
                    .map_err(|e| Error::Parse(format!("bad hex word: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let v = BitVector::from_words(len, words.clone());
        if v.words != words {
            return Err(Error::Parse("bits set beyond vector length".into()));
        }
        Ok(v)
    }

    /// Lexicographic comparison of supports (smaller first index wins).
    pub fn support_cmp(&self, other: &BitVector) -> std::cmp::Ordering {
        self.support().cmp(other.support())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&BitVector> for &BitVector {
    type Output = BitVector;
    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

/// A matrix over GF(2) stored as a list of rows of common length.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn empty(ncols: usize) -> Self {
        BitMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            ncols: n,
            rows: (0..n).map(|i| BitVector::from_indices(n, [i])).collect(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            check_len(ncols, r.len())?;
        }
        Ok(BitMatrix { ncols, rows })
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.rows.push(row);
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix {
            ncols: self.nrows(),
            rows: vec![BitVector::zeros(self.nrows()); self.ncols],
        };
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.support() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `M · vᵀ`: bit `i` of the result is `row_i · v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.ncols);
        BitVector::from_indices(
            self.nrows(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(v))
                .map(|(i, _)| i),
        )
    }

    /// `x · M` for a row vector of coefficients `x`.
    pub fn combine(&self, coeffs: &BitVector) -> BitVector {
        assert_eq!(coeffs.len(), self.nrows());
        let mut out = BitVector::zeros(self.ncols);
        for i in coeffs.support() {
            out ^= &self.rows[i];
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.ncols, other.nrows());
        BitMatrix {
            ncols: other.ncols,
            rows: self.rows.iter().map(|r| other.combine(r)).collect(),
        }
    }

    /// Reduced row echelon form and its pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row.get(col) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        (
            BitMatrix {
                ncols: self.ncols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r);
        }
        e.rank()
    }

    /// Basis of `{x : M xᵀ = 0}`, one basis vector per free column.
    pub fn kernel(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = BitMatrix::empty(self.ncols);
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.ncols);
            v.set(free, true);
            for (row, &p) in r.rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            out.rows.push(v);
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix {
            ncols: self.ncols,
            rows,
        }
    }

    /// Text format: an `n=<len>` header followed by one hex row per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.ncols);
        for r in &self.rows {
            s.push_str(&r.to_hex());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let ncols = header
            .strip_prefix("n=")
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad matrix header {header:?}")))?;
        let rows = lines
            .map(|l| BitVector::from_hex(ncols, l))
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix { ncols, rows })
    }

    pub fn to_hex_rows(&self) -> Vec<String> {
        self.rows.iter().map(BitVector::to_hex).collect()
    }

    pub fn from_hex_rows(ncols: usize, rows: &[String]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|h| BitVector::from_hex(ncols, h))
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix { ncols, rows })
    }
}

/// Incrementally built row-echelon basis.
///
/// Each stored row was reduced against all earlier rows before insertion, so a
/// single pass in insertion order reduces any vector to its canonical residue.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &BitMatrix) -> Self {
        let mut e = Echelon::new(m.ncols());
        for r in m.rows() {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r ^= row;
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns the new (reduced) basis row if `v` was
    /// independent of the current basis.
    pub fn insert(&mut self, v: &BitVector) -> Option<BitVector> {
        let r = self.reduce(v);
        let p = r.first_one()?;
        self.rows.push(r.clone());
        self.pivots.push(p);
        Some(r)
    }

    pub fn basis(&self) -> BitMatrix {
        BitMatrix {
            ncols: self.ncols,
            rows: self.rows.clone(),
        }
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weight_support_and_display() {
        let v = BitVector::from_indices(70, [0, 3, 64, 69]);
        assert_eq!(v.weight(), 4);
        assert_eq!(v.support().collect::<Vec<_>>(), vec![0, 3, 64, 69]);
        assert_eq!(v.first_one(), Some(0));
        assert_eq!(BitVector::from_indices(5, [1, 4]).to_string(), "01001");
    }

    #[test]
    fn ones_keeps_padding_clear() {
        let v = BitVector::ones(67);
        assert_eq!(v.weight(), 67);
        assert_eq!(v.words()[1], 0b111);
    }

    #[test]
    fn hex_layout_puts_coordinate_zero_in_lsb() {
        let v = BitVector::from_indices(8, [0]);
        assert_eq!(v.to_hex(), "0000000000000001");
        let w = BitVector::from_indices(65, [64, 1]);
        assert_eq!(w.to_hex(), "00000000000000020000000000000001");
        assert!(BitVector::from_hex(8, "0000000000000100").is_err());
        assert!(BitVector::from_hex(8, "01").is_err());
    }

    #[test]
    fn rotate_is_cyclic() {
        let v = BitVector::from_indices(5, [0, 4]);
        assert_eq!(v.rotate(1), BitVector::from_indices(5, [0, 1]));
    }

    #[test]
    fn kernel_of_parity_row() {
        let m = BitMatrix::from_rows(4, vec![BitVector::ones(4)]).unwrap();
        let k = m.kernel();
        assert_eq!(k.nrows(), 3);
        for r in k.rows() {
            assert!(!r.dot(&BitVector::ones(4)));
        }
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = BitMatrix::from_rows(
            70,
            vec![BitVector::from_indices(70, [1, 69]), BitVector::ones(70)],
        )
        .unwrap();
        let text = m.to_text();
        assert!(text.starts_with("n=70\n"));
        assert_eq!(BitMatrix::from_text(&text).unwrap(), m);
        assert!(BitMatrix::from_text("m=3\n").is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..12, 1usize..80).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMatrix::from_rows(c, rows.iter().map(|b| BitVector::from_bools(b)).collect())
                        .unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.nrows(), m.ncols());
            for v in k.rows() {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn hex_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..200)) {
            let v = BitVector::from_bools(&bits);
            prop_assert_eq!(BitVector::from_hex(v.len(), &v.to_hex()).unwrap(), v);
        }

        #[test]
        fn echelon_membership_matches_rank(m in arb_matrix(), extra in proptest::collection::vec(any::<bool>(), 80)) {
            let e = Echelon::from_matrix(&m);
            let v = BitVector::from_bools(&extra[..m.ncols()]);
            let mut with = m.clone();
            with.push_row(v.clone());
            prop_assert_eq!(e.contains(&v), with.rank() == m.rank());
        }
    }
}
