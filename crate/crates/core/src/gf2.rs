//! Bit-packed linear algebra over GF(2).
//!
//! Rows are stored as runs of 64-bit words. The unused high bits of the last
//! word of every row are always zero, so word-wise XOR and popcount never need
//! masking.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A vector in GF(2)^n.
///
/// Vectors order by length, then lexicographically as bit strings written from
/// coordinate 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_padding();
        v
    }

    /// Unit vector with a single 1 at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
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
        Self { len, words }
    }

    /// Builds a vector from raw words; bits beyond `len` are cleared.
    pub fn from_words(len: usize, words: &[u64]) -> Self {
        let mut w = words.to_vec();
        w.resize(words_for(len), 0);
        let mut v = Self { len, words: w };
        v.clear_padding();
        v
    }

    fn clear_padding(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_all_one(&self) -> bool {
        self.weight() == self.len
    }

    /// Standard inner product: parity of `popcount(self & other)`.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "inner product of unequal lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    /// Index of the lowest set coordinate.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones_indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * WORD + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Self) -> Self {
        Self::from_bools(self.iter().chain(other.iter()))
    }

    /// Drops the listed coordinates (which must be sorted and distinct).
    pub fn remove_coordinates(&self, sorted: &[usize]) -> Self {
        let mut skip = sorted.iter().peekable();
        Self::from_bools((0..self.len).filter_map(|i| {
            if skip.peek() == Some(&&i) {
                skip.next();
                None
            } else {
                Some(self.get(i))
            }
        }))
    }

    pub fn select(&self, coords: &[usize]) -> Self {
        Self::from_bools(coords.iter().map(|&c| self.get(c)))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                let diff = a ^ b;
                if diff != 0 {
                    let low = diff & diff.wrapping_neg();
                    return (a & low).cmp(&(b & low));
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse {
                    line: 0,
                    message: format!("unexpected character {other:?} in bit string"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitVector::from_bools)
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The all-one square matrix.
    pub fn all_ones(n: usize) -> Self {
        Self::from_rows(n, &vec![BitVector::ones(n); n])
    }

    /// `diag(J_2, ..., J_2)` with `pairs` blocks.
    pub fn symplectic(pairs: usize) -> Self {
        let mut m = Self::zeros(2 * pairs, 2 * pairs);
        for p in 0..pairs {
            m.set(2 * p, 2 * p + 1, true);
            m.set(2 * p + 1, 2 * p, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has length {} != {cols}", r.len());
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Parses rows written as `0`/`1` strings; all rows must share a length.
    pub fn parse_rows(rows: &[&str]) -> Result<Self> {
        let vecs = rows
            .iter()
            .map(|r| r.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        let cols = vecs.first().map_or(0, BitVector::len);
        if vecs.iter().any(|v| v.len() != cols) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        Ok(Self::from_rows(cols, &vecs))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i))
    }

    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn set_row(&mut self, i: usize, v: &BitVector) {
        assert_eq!(v.len(), self.cols);
        self.row_words_mut(i).copy_from_slice(v.words());
    }

    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_bools((0..self.rows).map(|i| self.get(i, j)))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let mask = 1u64 << (j % WORD);
        let w = &mut self.data[i * self.stride + j / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, dst: usize, src: usize) {
        assert_ne!(dst, src);
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Adds column `src` into column `dst`.
    pub fn add_column(&mut self, dst: usize, src: usize) {
        for i in 0..self.rows {
            if self.get(i, src) {
                let v = self.get(i, dst);
                self.set(i, dst, !v);
            }
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            let (x, y) = (self.get(i, a), self.get(i, b));
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).ones_indices() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in self.row(i).ones_indices() {
                let s = other.stride;
                let src = &other.data[j * s..(j + 1) * s];
                for (x, y) in out.row_words_mut(i).iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        out
    }

    /// `x * self` for a row vector `x` of length `rows`.
    pub fn left_mul(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.rows);
        let mut acc = vec![0u64; self.stride];
        for i in x.ones_indices() {
            for (a, b) in acc.iter_mut().zip(self.row_words(i)) {
                *a ^= b;
            }
        }
        BitVector::from_words(self.cols, &acc)
    }

    /// `self * x^T` for a vector `x` of length `cols`.
    pub fn mul_vector(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols);
        BitVector::from_bools((0..self.rows).map(|i| {
            self.row_words(i)
                .iter()
                .zip(x.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                & 1
                == 1
        }))
    }

    /// The Gram matrix `self * self^T`.
    pub fn gram(&self) -> Self {
        let mut g = Self::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let ones: u32 = self
                    .row_words(i)
                    .iter()
                    .zip(self.row_words(j))
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                if ones & 1 == 1 {
                    g.set(i, j, true);
                    g.set(j, i, true);
                }
            }
        }
        g
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.rows.min(self.cols)).all(|i| !self.get(i, i))
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && m.get(i, c) {
                    m.add_row(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.rows = r;
        m.data.truncate(r * m.stride);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in r + 1..self.rows {
                if m.get(i, c) {
                    m.add_row(i, r);
                }
            }
            r += 1;
        }
        r
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| a.get(i, c))?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            for i in 0..n {
                if i != c && a.get(i, c) {
                    a.add_row(i, c);
                    inv.add_row(i, c);
                }
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel `{x : self * x^T = 0}`, one vector per row.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }

    /// Finds `x` with `x * self = b`, i.e. the coordinates of `b` in terms of
    /// the rows of `self`. Returns `None` when `b` is outside the row space.
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        assert_eq!(b.len(), self.cols, "right-hand side length must equal column count");
        let mut red = RowReducer::with_tracking(self.cols, self.rows);
        for i in 0..self.rows {
            red.insert_tracked(self.row(i), i);
        }
        let (residual, combo) = red.reduce_tracked(b.clone());
        residual.is_zero().then_some(combo)
    }

    /// Keeps only the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<_> = (0..self.rows).map(|i| self.row(i).select(cols)).collect();
        Self::from_rows(cols.len(), &rows)
    }

    pub fn remove_columns(&self, sorted: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|c| sorted.binary_search(c).is_err()).collect();
        self.select_columns(&keep)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let vecs: Vec<_> = rows.iter().map(|&i| self.row(i)).collect();
        Self::from_rows(self.cols, &vecs)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let rows: Vec<_> = (0..self.rows).map(|i| self.row(i).concat(&other.row(i))).collect();
        Self::from_rows(self.cols + other.cols, &rows)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut m = self.clone();
        m.rows += other.rows;
        m.data.extend_from_slice(&other.data);
        m
    }

    /// Appends `col` as a new last column.
    pub fn append_column(&self, col: &BitVector) -> Self {
        assert_eq!(col.len(), self.rows);
        let c = Self::from_rows(1, &col.iter().map(|b| BitVector::from_bools([b])).collect::<Vec<_>>());
        self.hstack(&c)
    }

    /// Prepends `col` as a new first column.
    pub fn prepend_column(&self, col: &BitVector) -> Self {
        assert_eq!(col.len(), self.rows);
        let c = Self::from_rows(1, &col.iter().map(|b| BitVector::from_bools([b])).collect::<Vec<_>>());
        c.hstack(self)
    }

    /// Reorders rows so that new row `i` is old row `order[i]`.
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        self.select_rows(order)
    }

    /// True when every row has its padding bits clear.
    pub fn padding_is_clear(&self) -> bool {
        let mask = tail_mask(self.cols);
        self.stride == 0 || (0..self.rows).all(|i| self.row_words(i)[self.stride - 1] & !mask == 0)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

/// Serialized as a list of row strings; an empty matrix loses its width.
impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.row_vectors().iter().map(|r| r.to_string()))
    }
}

impl<'de> Deserialize<'de> for BitMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<String>::deserialize(deserializer)?;
        let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
        BitMatrix::parse_rows(&refs).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        f.write_str("]")
    }
}

/// Incremental echelon basis used for span membership and for expressing a
/// vector in terms of previously inserted vectors.
#[derive(Clone, Debug)]
pub struct RowReducer {
    len: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
    combos: Option<Vec<BitVector>>,
    inputs: usize,
}

impl RowReducer {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: None,
            inputs: 0,
        }
    }

    /// Tracks, for each stored row, which inserted inputs (indexed `0..inputs`)
    /// sum to it.
    pub fn with_tracking(len: usize, inputs: usize) -> Self {
        Self {
            combos: Some(Vec::new()),
            inputs,
            ..Self::new(len)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: BitVector) -> BitVector {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Inserts `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: BitVector) -> bool {
        assert!(self.combos.is_none(), "use insert_tracked on a tracking reducer");
        assert_eq!(v.len(), self.len);
        let r = self.reduce(v);
        match r.first_one() {
            Some(p) => {
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    pub fn insert_tracked(&mut self, v: BitVector, input: usize) -> bool {
        assert_eq!(v.len(), self.len);
        let (r, mut combo) = self.reduce_tracked(v);
        combo.flip(input);
        match r.first_one() {
            Some(p) => {
                self.rows.push(r);
                self.pivots.push(p);
                self.combos.as_mut().expect("tracking reducer").push(combo);
                true
            }
            None => false,
        }
    }

    /// Reduces `v`, returning the residual and the input combination that was
    /// subtracted from it.
    pub fn reduce_tracked(&self, mut v: BitVector) -> (BitVector, BitVector) {
        let combos = self.combos.as_ref().expect("tracking reducer");
        let mut combo = BitVector::zeros(self.inputs);
        for ((r, &p), c) in self.rows.iter().zip(&self.pivots).zip(combos) {
            if v.get(p) {
                v.xor_assign(r);
                combo.xor_assign(c);
            }
        }
        (v, combo)
    }
}

/// A basis (rows) together with its Gram matrix, transformed in lockstep by
/// congruence operations so that `gram == basis * basis^T` under the form in
/// use is preserved.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub basis: BitMatrix,
    pub gram: BitMatrix,
}

impl Congruence {
    pub fn new(basis: BitMatrix, gram: BitMatrix) -> Self {
        assert_eq!(basis.rows(), gram.rows());
        Self { basis, gram }
    }

    /// Workspace whose basis rows are plain vectors with Gram matrix `g`.
    pub fn from_gram(basis: BitMatrix) -> Self {
        let gram = basis.gram();
        Self { basis, gram }
    }

    pub fn len(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn form(&self, i: usize, j: usize) -> bool {
        self.gram.get(i, j)
    }

    /// Basis row `dst += src`, with the matching update `E G E^T` on the Gram.
    pub fn add(&mut self, dst: usize, src: usize) {
        self.basis.add_row(dst, src);
        self.gram.add_row(dst, src);
        self.gram.add_column(dst, src);
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        self.basis.swap_rows(a, b);
        self.gram.swap_rows(a, b);
        self.gram.swap_columns(a, b);
    }

    /// New position `i` holds old position `order[i]`.
    pub fn permute(&mut self, order: &[usize]) {
        self.basis = self.basis.permute_rows(order);
        let g = self.gram.permute_rows(order);
        self.gram = g.transpose().permute_rows(order).transpose();
    }
}

/// Outcome of reducing the form on a set of positions of a [`Congruence`].
#[derive(Clone, Debug, Default)]
pub(crate) struct FormBlocks {
    pub radical: Vec<usize>,
    pub orthonormal: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

impl FormBlocks {
    pub fn ordering(&self) -> Vec<usize> {
        let mut out = self.radical.clone();
        out.extend(&self.orthonormal);
        for &(a, b) in &self.pairs {
            out.push(a);
            out.push(b);
        }
        out
    }
}

/// Greedy symmetric reduction restricted to `positions` of `ws`. Seeks a
/// diagonal 1 first, then a hyperbolic pair, lowest index first; whatever is
/// left is the radical. When `merge_pairs` is set and at least one orthonormal
/// vector was found, every pair is folded into orthonormal vectors.
///
/// Only vectors at `positions` are modified, and they are modified only by
/// adding other vectors at `positions`.
pub(crate) fn reduce_form(ws: &mut Congruence, positions: &[usize], merge_pairs: bool) -> FormBlocks {
    let mut remaining: Vec<usize> = positions.to_vec();
    let mut blocks = FormBlocks::default();
    loop {
        if let Some(at) = remaining.iter().position(|&i| ws.form(i, i)) {
            let e = remaining.remove(at);
            for &j in &remaining {
                if ws.form(j, e) {
                    ws.add(j, e);
                }
            }
            blocks.orthonormal.push(e);
            continue;
        }
        let pair = remaining.iter().enumerate().find_map(|(ai, &i)| {
            remaining[ai + 1..]
                .iter()
                .find(|&&j| ws.form(i, j))
                .map(|&j| (i, j))
        });
        let Some((b, bp)) = pair else { break };
        remaining.retain(|&x| x != b && x != bp);
        for &j in &remaining {
            let with_bp = ws.form(j, bp);
            let with_b = ws.form(j, b);
            if with_bp {
                ws.add(j, b);
            }
            if with_b {
                ws.add(j, bp);
            }
        }
        blocks.pairs.push((b, bp));
    }
    blocks.radical = remaining;

    if merge_pairs && !blocks.orthonormal.is_empty() {
        let anchor = *blocks.orthonormal.last().expect("nonempty");
        for (b, bp) in std::mem::take(&mut blocks.pairs) {
            // (e, b, b') -> (e+b+b', e+b', e+b), all three orthonormal.
            ws.add(anchor, b);
            ws.add(anchor, bp);
            ws.add(b, anchor);
            ws.add(bp, anchor);
            blocks.orthonormal.push(b);
            blocks.orthonormal.push(bp);
        }
    }
    blocks
}

/// Result of [`congruent_normal_form`].
#[derive(Clone, Debug)]
pub struct CongruentForm {
    /// Invertible `P` with `P S P^T = normal`.
    pub transform: BitMatrix,
    pub normal: BitMatrix,
    /// Dimension of the radical of the form, `rows - rank(S)`.
    pub radical_dim: usize,
}

/// Brings a symmetric matrix to `diag(0_s, A)` by congruence, where `A` is a
/// direct sum of `J_2` blocks when `S` has zero diagonal and the identity
/// otherwise.
pub fn congruent_normal_form(s: &BitMatrix) -> Result<CongruentForm> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = s.rows();
    let mut ws = Congruence::new(BitMatrix::identity(n), s.clone());
    let positions: Vec<usize> = (0..n).collect();
    let blocks = reduce_form(&mut ws, &positions, true);
    ws.permute(&blocks.ordering());
    Ok(CongruentForm {
        transform: ws.basis,
        normal: ws.gram,
        radical_dim: blocks.radical.len(),
    })
}
