//! Bit-packed linear algebra over GF(2).
//!
//! Vectors pack 64 positions per machine word; matrices are row-major with
//! every row padded to a whole number of words. All operations keep the
//! padding bits above the logical length zero, so weights and dot products
//! can use plain popcounts.

use std::fmt;

use thiserror::Error;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Mask selecting the valid bits of the last word of a `len`-bit value.
fn tail_mask(len: usize) -> u64 {
    match len % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// Errors from the shared matrix text format.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line 1: expected header \"rows cols\", got {0:?}")]
    BadHeader(String),
    #[error("line {line}: row has {got} characters, expected {expected}")]
    BadRowLength { line: usize, got: usize, expected: usize },
    #[error("line {line}: invalid character {ch:?}, only '0' and '1' allowed")]
    BadCharacter { line: usize, ch: char },
    #[error("expected {expected} rows, found {got}")]
    MissingRows { expected: usize, got: usize },
    #[error("input is empty")]
    Empty,
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    /// Builds a vector from `'0'`/`'1'` characters, index 0 first.
    pub fn from_str01(s: &str) -> Self {
        let mut v = BitVector::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => panic!("BitVector::from_str01: invalid character {ch:?}"),
            }
        }
        v
    }

    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), words_for(len));
        let v = BitVector { len, words };
        debug_assert!(v.padding_is_zero());
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let w = &mut self.words[i / WORD_BITS];
        if value {
            *w |= 1 << (i % WORD_BITS);
        } else {
            *w &= !(1 << (i % WORD_BITS));
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
    }

    /// Number of set bits.
    pub fn weight(&self) -> usize {
        debug_assert!(self.padding_is_zero());
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Bitwise XOR. Panics on length mismatch (caller bug).
    pub fn add(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "BitVector::add: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the bitwise AND. Panics on length mismatch (caller bug).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "BitVector::dot: length mismatch");
        let acc: u64 = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0, |acc, (a, b)| acc ^ (a & b));
        acc.count_ones() % 2 == 1
    }

    pub fn as_words(&self) -> &[u64] {
        &self.words
    }

    /// Reorders bits: output position `perm[i]` receives input bit `i`.
    pub fn permute(&self, perm: &[usize]) -> BitVector {
        assert_eq!(perm.len(), self.len);
        let mut out = BitVector::zeros(self.len);
        for (i, &p) in perm.iter().enumerate() {
            if self.get(i) {
                out.set(p, true);
            }
        }
        out
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    fn padding_is_zero(&self) -> bool {
        if self.len % WORD_BITS == 0 {
            return true;
        }
        self.words.last().map_or(true, |w| w & !tail_mask(self.len) == 0)
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

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// A dense matrix over GF(2), row-major, rows padded to whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols).max(1);
        BitMatrix { rows, cols, stride, words: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from one `'0'`/`'1'` string per row.
    pub fn from_rows_str(rows: &[&str]) -> Self {
        assert!(!rows.is_empty());
        let cols = rows[0].len();
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, s) in rows.iter().enumerate() {
            assert_eq!(s.len(), cols, "ragged row {r}");
            for (c, ch) in s.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    _ => panic!("BitMatrix::from_rows_str: invalid character {ch:?}"),
                }
            }
        }
        m
    }

    pub fn from_row_vectors(rows: &[BitVector]) -> Self {
        assert!(!rows.is_empty());
        let cols = rows[0].len();
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            m.set_row(r, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.words[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let w = &mut self.words[r * self.stride + c / WORD_BITS];
        if value {
            *w |= 1 << (c % WORD_BITS);
        } else {
            *w &= !(1 << (c % WORD_BITS));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.words[r * self.stride + c / WORD_BITS] ^= 1 << (c % WORD_BITS);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.words[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn set_row(&mut self, r: usize, v: &BitVector) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.row_words_mut(r).copy_from_slice(v.as_words());
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Entrywise XOR. Panics on shape mismatch (caller bug).
    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "BitMatrix::add: shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        out
    }

    /// XORs row `src` of `other` into row `dst` of `self`.
    pub fn xor_row_from(&mut self, dst: usize, other: &BitMatrix, src: usize) {
        assert_eq!(self.cols, other.cols);
        let base = dst * self.stride;
        for (k, w) in other.row_words(src).iter().enumerate() {
            self.words[base + k] ^= w;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.words.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// Matrix product. Panics if `self.cols != other.rows` (caller bug).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "BitMatrix::mul: shape mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.xor_row_from(r, other, c);
                }
            }
        }
        out
    }

    /// `self * other^T` via row dot products, no transpose allocation.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "BitMatrix::mul_transpose: shape mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.rows);
        for r in 0..self.rows {
            let a = self.row_words(r);
            for c in 0..other.rows {
                let b = other.row_words(c);
                let parity = a
                    .iter()
                    .zip(b)
                    .fold(0u64, |acc, (x, y)| acc ^ (x & y))
                    .count_ones()
                    % 2;
                if parity == 1 {
                    out.set(r, c, true);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            let row = self.row_words(r);
            for c in 0..self.cols {
                if (row[c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1 {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in r + 1..self.cols {
                if self.get(r, c) != self.get(c, r) {
                    return false;
                }
            }
        }
        true
    }

    /// Row rank by Gaussian elimination, pivoting columns left to right.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for c in 0..work.cols {
            if rank == work.rows {
                break;
            }
            let pivot = (rank..work.rows).find(|&r| work.get(r, c));
            let Some(p) = pivot else { continue };
            work.swap_rows(rank, p);
            for r in rank + 1..work.rows {
                if work.get(r, c) {
                    let (head, tail) = work.words.split_at_mut(r * work.stride);
                    let src = &head[rank * work.stride..rank * work.stride + work.stride];
                    for (k, w) in src.iter().enumerate() {
                        tail[k] ^= w;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        assert_eq!(self.rows, self.cols, "BitMatrix::inverse: not square");
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = BitMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| work.get(r, c))?;
            work.swap_rows(c, p);
            inv.swap_rows(c, p);
            for r in 0..n {
                if r != c && work.get(r, c) {
                    let src = work.row(c);
                    let isrc = inv.row(c);
                    let mut row = work.row(r);
                    row.add_assign(&src);
                    work.set_row(r, &row);
                    let mut irow = inv.row(r);
                    irow.add_assign(&isrc);
                    inv.set_row(r, &irow);
                }
            }
        }
        Some(inv)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &BitMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    /// Stacks `self` above `other`. Panics on column mismatch.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "BitMatrix::vstack: column mismatch");
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    /// Reorders columns: output column `perm[c]` receives input column `c`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.cols);
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, perm[c], true);
                }
            }
        }
        out
    }

    /// True iff `v` is an F2-combination of the rows of `self`.
    pub fn row_space_contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols);
        let stacked = self.vstack(&BitMatrix::from_row_vectors(&[v.clone()]));
        stacked.rank() == self.rank()
    }

    /// Serializes in the shared text format: "rows cols" header, then one
    /// '0'/'1' line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let row = self.row(r);
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the shared text format. Rejects any character outside the
    /// declared grid, reporting 1-based line numbers.
    pub fn from_text(text: &str) -> Result<BitMatrix, ParseError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(ParseError::Empty)?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (rows, cols) = match parts.as_slice() {
            [r, c] => match (r.parse::<usize>(), c.parse::<usize>()) {
                (Ok(r), Ok(c)) if r > 0 && c > 0 => (r, c),
                _ => return Err(ParseError::BadHeader(header.to_string())),
            },
            _ => return Err(ParseError::BadHeader(header.to_string())),
        };
        let mut m = BitMatrix::zeros(rows, cols);
        let mut parsed = 0;
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            if parsed == rows {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(ParseError::MissingRows { expected: rows, got: rows + 1 });
            }
            if line.len() != cols {
                return Err(ParseError::BadRowLength { line: lineno, got: line.len(), expected: cols });
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(parsed, c, true),
                    _ => return Err(ParseError::BadCharacter { line: lineno, ch }),
                }
            }
            parsed += 1;
        }
        if parsed != rows {
            return Err(ParseError::MissingRows { expected: rows, got: parsed });
        }
        Ok(m)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{})\n{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rand_vector(len: usize, seed: u64) -> BitVector {
        // xorshift-ish fill, deterministic for tests
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let mut v = BitVector::zeros(len);
        for i in 0..len {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            if state & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    #[test]
    fn weight_zero_vector() {
        assert_eq!(BitVector::zeros(72).weight(), 0);
    }

    #[test]
    fn weight_of_literal_rows() {
        // row 1 of the first fixture's A and row 4 of the second fixture's B1
        assert_eq!(BitVector::from_str01("010010001").weight(), 3);
        assert_eq!(BitVector::from_str01("001011111").weight(), 6);
    }

    #[test]
    fn add_examples() {
        let a = BitVector::from_str01("1010");
        let b = BitVector::from_str01("0110");
        assert_eq!(a.add(&b), BitVector::from_str01("1100"));
        assert_eq!(a.add(&BitVector::zeros(4)), a);
        assert!(a.add(&a).is_zero());
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn add_length_mismatch_panics() {
        let _ = BitVector::zeros(4).add(&BitVector::zeros(5));
    }

    #[test]
    fn dot_examples() {
        let a = BitVector::from_str01("1100");
        let b = BitVector::from_str01("1010");
        assert!(a.dot(&b));
        assert!(!a.dot(&BitVector::zeros(4)));
    }

    #[test]
    fn mat_mul_identity() {
        let m = BitMatrix::from_rows_str(&["101", "010", "111"]);
        assert_eq!(m.mul(&BitMatrix::identity(3)), m);
        assert_eq!(BitMatrix::identity(3).mul(&m), m);
    }

    #[test]
    fn transpose_involution_and_identity() {
        assert_eq!(BitMatrix::identity(9).transpose(), BitMatrix::identity(9));
        let m = BitMatrix::from_rows_str(&["10110", "01011", "11100"]);
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(9).rank(), 9);
        assert_eq!(BitMatrix::zeros(9, 9).rank(), 0);
        let m = BitMatrix::from_rows_str(&["110", "011", "101"]);
        assert_eq!(m.rank(), 2); // rows sum to zero
    }

    #[test]
    fn inverse_round_trip() {
        let m = BitMatrix::from_rows_str(&["110", "011", "001"]);
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv), BitMatrix::identity(3));
        assert_eq!(inv.mul(&m), BitMatrix::identity(3));
        assert!(BitMatrix::zeros(3, 3).inverse().is_none());
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let m = BitMatrix::from_rows_str(&["101", "010"]);
        assert_eq!(BitMatrix::from_text(&m.to_text()).unwrap(), m);
        assert_eq!(BitMatrix::from_text("2 3\n101\n010").unwrap(), m);
        assert_eq!(BitMatrix::from_text(""), Err(ParseError::Empty));
        assert!(matches!(BitMatrix::from_text("2 x\n"), Err(ParseError::BadHeader(_))));
        assert_eq!(
            BitMatrix::from_text("2 3\n10\n010"),
            Err(ParseError::BadRowLength { line: 2, got: 2, expected: 3 })
        );
        assert_eq!(
            BitMatrix::from_text("2 3\n101\n01a"),
            Err(ParseError::BadCharacter { line: 3, ch: 'a' })
        );
        assert_eq!(
            BitMatrix::from_text("2 3\n101"),
            Err(ParseError::MissingRows { expected: 2, got: 1 })
        );
    }

    #[test]
    fn permute_moves_bits() {
        let v = BitVector::from_str01("1100");
        // send 0->3, 1->2, 2->1, 3->0
        assert_eq!(v.permute(&[3, 2, 1, 0]), BitVector::from_str01("0011"));
    }

    #[test]
    fn row_space_contains_combinations() {
        let m = BitMatrix::from_rows_str(&["1010", "0110"]);
        assert!(m.row_space_contains(&BitVector::from_str01("1100")));
        assert!(!m.row_space_contains(&BitVector::from_str01("0001")));
    }

    #[test]
    fn weight_congruence_lemma_dense_sample() {
        for s in 0..200u64 {
            let u = rand_vector(72, 2 * s);
            let v = rand_vector(72, 2 * s + 1);
            let lhs = u.add(&v).weight() % 4;
            let rhs = (u.weight() + v.weight() + 2 * (u.dot(&v) as usize)) % 4;
            assert_eq!(lhs, rhs, "mod-4 weight congruence failed at seed {s}");
        }
    }

    proptest! {
        #[test]
        fn prop_weight_congruence(bits_u in proptest::collection::vec(any::<bool>(), 1..200),
                                  bits_v in proptest::collection::vec(any::<bool>(), 1..200)) {
            let n = bits_u.len().min(bits_v.len());
            let mut u = BitVector::zeros(n);
            let mut v = BitVector::zeros(n);
            for i in 0..n {
                u.set(i, bits_u[i]);
                v.set(i, bits_v[i]);
            }
            let lhs = u.add(&v).weight() % 4;
            let rhs = (u.weight() + v.weight() + 2 * (u.dot(&v) as usize)) % 4;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn prop_mul_associative_and_distributive(seed in 0u64..500) {
            let a = rand_matrix(7, 5, seed);
            let b = rand_matrix(5, 6, seed + 1000);
            let c = rand_matrix(6, 4, seed + 2000);
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            let b2 = rand_matrix(5, 6, seed + 3000);
            prop_assert_eq!(a.mul(&b.add(&b2)), a.mul(&b).add(&a.mul(&b2)));
        }

        #[test]
        fn prop_rank_transpose(seed in 0u64..500) {
            let m = rand_matrix(33, 47, seed);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn prop_text_round_trip(seed in 0u64..200, rows in 1usize..12, cols in 1usize..20) {
            let m = rand_matrix(rows, cols, seed);
            prop_assert_eq!(BitMatrix::from_text(&m.to_text()).unwrap(), m);
        }
    }

    fn rand_matrix(rows: usize, cols: usize, seed: u64) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            m.set_row(r, &rand_vector(cols, seed.wrapping_add(r as u64 * 7919)));
        }
        m
    }
}
