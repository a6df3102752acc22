//! Binary linear codes held as generator matrices.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::distance::{self, Engine};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowReducer};

/// Odd-like / even-like.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    OddLike,
    EvenLike,
}

impl Parity {
    fn letter(self) -> char {
        match self {
            Parity::OddLike => 'o',
            Parity::EvenLike => 'e',
        }
    }
}

/// Parity type of a code and of its dual, plus the hull dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParityClass {
    pub self_parity: Parity,
    pub dual_parity: Parity,
    pub hull_dim: usize,
}

impl ParityClass {
    pub fn is_lcd(&self) -> bool {
        self.hull_dim == 0
    }

    /// `LCD_oo`, `LCD_oe`, `LCD_eo`, or `NotLCD`.
    pub fn label(&self) -> String {
        if self.is_lcd() {
            format!("LCD_{}{}", self.self_parity.letter(), self.dual_parity.letter())
        } else {
            "NotLCD".to_string()
        }
    }

    pub fn is_lcd_oe(&self) -> bool {
        self.is_lcd() && self.self_parity == Parity::OddLike && self.dual_parity == Parity::EvenLike
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A set of coordinates of a length-`n` code, stored 0-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoordinateSet {
    n: usize,
    indices: Vec<usize>,
}

impl CoordinateSet {
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::CoordinateOutOfRange(bad, n));
        }
        Ok(Self { n, indices })
    }

    /// Builds the set from 1-based coordinates as printed in tables.
    pub fn from_one_based(n: usize, coords: &[usize]) -> Result<Self> {
        if let Some(&bad) = coords.iter().find(|&&c| c == 0 || c > n) {
            return Err(Error::CoordinateOutOfRange(bad, n));
        }
        Self::new(n, coords.iter().map(|c| c - 1))
    }

    pub fn single(n: usize, index: usize) -> Result<Self> {
        Self::new(n, [index])
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn ambient_len(&self) -> usize {
        self.n
    }
}

/// A binary `[n, k]` code. The generator is kept exactly as supplied; equality
/// compares row spaces.
#[derive(Clone)]
pub struct LinearCode {
    gen: BitMatrix,
    hull_dim: OnceLock<usize>,
    min_distance: OnceLock<usize>,
}

impl LinearCode {
    /// Wraps a generator matrix, which must have full row rank.
    pub fn new(gen: BitMatrix) -> Result<Self> {
        let rank = gen.rank();
        if rank != gen.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: gen.rows(),
            });
        }
        Ok(Self::from_basis_unchecked(gen))
    }

    pub(crate) fn from_basis_unchecked(gen: BitMatrix) -> Self {
        debug_assert_eq!(gen.rank(), gen.rows());
        Self {
            gen,
            hull_dim: OnceLock::new(),
            min_distance: OnceLock::new(),
        }
    }

    /// The code spanned by `rows`; dependent rows are dropped, earlier rows
    /// are kept in preference to later ones.
    pub fn spanned_by(n: usize, rows: &[BitVector]) -> Self {
        let mut red = RowReducer::new(n);
        let kept: Vec<BitVector> = rows.iter().filter(|r| red.insert((*r).clone())).cloned().collect();
        Self::from_basis_unchecked(BitMatrix::from_rows(n, &kept))
    }

    pub fn from_matrix_span(m: &BitMatrix) -> Self {
        Self::spanned_by(m.cols(), &m.row_vectors())
    }

    /// Convenience constructor from `0`/`1` strings.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        Self::new(BitMatrix::parse_rows(rows)?)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_basis_unchecked(BitMatrix::zeros(0, n))
    }

    pub fn full(n: usize) -> Self {
        Self::from_basis_unchecked(BitMatrix::identity(n))
    }

    /// `[n, 1]` repetition code.
    pub fn repetition(n: usize) -> Self {
        Self::from_basis_unchecked(BitMatrix::from_rows(n, &[BitVector::ones(n)]))
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn rows(&self) -> Vec<BitVector> {
        self.gen.row_vectors()
    }

    /// Same code with a different generator; the new rows must span the same space.
    pub fn with_basis(&self, basis: BitMatrix) -> Result<Self> {
        let c = Self::new(basis)?;
        if c != *self {
            return Err(Error::pre("replacement basis spans a different code"));
        }
        Ok(c)
    }

    pub fn rref(&self) -> BitMatrix {
        self.gen.rref().0
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.n() && self.gen.solve(v).is_some()
    }

    /// Coordinates of `v` with respect to the stored generator rows.
    pub fn coordinates_of(&self, v: &BitVector) -> Option<BitVector> {
        self.gen.solve(v)
    }

    pub fn is_subcode_of(&self, other: &Self) -> bool {
        self.n() == other.n() && self.rows().iter().all(|r| other.contains(r))
    }

    pub fn encode(&self, message: &BitVector) -> BitVector {
        self.gen.left_mul(message)
    }

    pub fn gram(&self) -> BitMatrix {
        self.gen.gram()
    }

    pub fn dual(&self) -> Self {
        Self::from_basis_unchecked(self.gen.nullspace())
    }

    /// `dim(C ∩ C^⊥) = k - rank(G G^T)`.
    pub fn hull_dimension(&self) -> usize {
        *self.hull_dim.get_or_init(|| self.k() - self.gram().rank())
    }

    /// The hull as a code. Its basis is `λ G` for `λ` in the kernel of the Gram matrix.
    pub fn hull(&self) -> Self {
        let kernel = self.gram().nullspace();
        Self::from_basis_unchecked(kernel.mul(&self.gen))
    }

    pub fn is_lcd(&self) -> bool {
        self.hull_dimension() == 0
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.gram().is_zero()
    }

    pub fn is_even_like(&self) -> bool {
        self.rows().iter().all(|r| r.weight() % 2 == 0)
    }

    pub fn contains_all_one(&self) -> bool {
        self.contains(&BitVector::ones(self.n()))
    }

    pub fn parity_class(&self) -> ParityClass {
        let self_parity = if self.is_even_like() { Parity::EvenLike } else { Parity::OddLike };
        let dual_parity = if self.contains_all_one() { Parity::EvenLike } else { Parity::OddLike };
        ParityClass {
            self_parity,
            dual_parity,
            hull_dim: self.hull_dimension(),
        }
    }

    pub fn is_lcd_oe(&self) -> bool {
        self.parity_class().is_lcd_oe()
    }

    /// Exact minimum distance with the automatic engine choice.
    pub fn min_distance(&self) -> Result<usize> {
        if let Some(&d) = self.min_distance.get() {
            return Ok(d);
        }
        let d = distance::min_distance(self, Engine::Auto)?;
        let _ = self.min_distance.set(d);
        Ok(d)
    }

    pub fn min_distance_with(&self, engine: Engine) -> Result<usize> {
        distance::min_distance(self, engine)
    }

    /// Subcode spanned by the codewords of weight exactly `w`; the generator
    /// rows of the result are themselves weight-`w` codewords.
    pub fn codeword_span(&self, w: usize) -> Result<Self> {
        distance::codeword_span(self, w)
    }

    fn check_coords(&self, t: &CoordinateSet) -> Result<()> {
        if t.ambient_len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "coordinate set for length {} applied to length {}",
                t.ambient_len(),
                self.n()
            )));
        }
        if t.len() >= self.n() {
            return Err(Error::pre(format!("cannot delete {} of {} coordinates", t.len(), self.n())));
        }
        Ok(())
    }

    /// Deletes the coordinates in `t`. Rows that become dependent are dropped,
    /// keeping the earliest rows.
    pub fn puncture(&self, t: &CoordinateSet) -> Result<Self> {
        self.check_coords(t)?;
        let m = self.gen.remove_columns(t.indices());
        Ok(Self::from_matrix_span(&m))
    }

    /// The subcode of codewords vanishing on `t`.
    pub fn vanishing_subcode(&self, t: &CoordinateSet) -> Self {
        let restricted = self.gen.select_columns(t.indices());
        // λ G vanishes on t iff λ lies in the left kernel of G restricted to t.
        let lambdas = restricted.transpose().nullspace();
        Self::from_basis_unchecked(lambdas.mul(&self.gen))
    }

    pub fn shorten(&self, t: &CoordinateSet) -> Result<Self> {
        self.check_coords(t)?;
        let sub = self.vanishing_subcode(t);
        Ok(Self::from_basis_unchecked(sub.gen.remove_columns(t.indices())))
    }

    /// Reorders coordinates: new coordinate `j` is old coordinate `perm[j]`.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Self {
        Self::from_basis_unchecked(self.gen.select_columns(perm))
    }

    /// Appends a column (one bit per generator row).
    pub fn append_column(&self, col: &BitVector) -> Result<Self> {
        Self::new(self.gen.append_column(col))
    }

    pub fn append_zero_column(&self) -> Self {
        Self::from_basis_unchecked(self.gen.append_column(&BitVector::zeros(self.k())))
    }

    /// `[n, k, d]` summary when the distance is computable.
    pub fn params(&self) -> Result<(usize, usize, usize)> {
        Ok((self.n(), self.k(), self.min_distance()?))
    }

    /// Columns of the generator at positions `0..k` are linearly independent.
    pub fn leading_columns_independent(&self) -> bool {
        let cols: Vec<usize> = (0..self.k()).collect();
        self.gen.select_columns(&cols).rank() == self.k()
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.k() == other.k() && self.rref() == other.rref()
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}] {:?}", self.n(), self.k(), self.gen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(rows: &[&str]) -> LinearCode {
        LinearCode::from_strs(rows).unwrap()
    }

    fn v(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn hamming7() -> LinearCode {
        code(&["1000110", "0100101", "0010011", "0001111"])
    }

    #[test]
    fn dual_examples() {
        let even = LinearCode::repetition(3).dual();
        assert_eq!(even, code(&["110", "011"]));
        assert_eq!(LinearCode::full(3).dual().k(), 0);
        assert_eq!(code(&["1100", "0110"]).dual(), code(&["0001", "1110"]));
    }

    #[test]
    fn hull_examples() {
        assert_eq!(LinearCode::full(4).hull_dimension(), 0);
        assert_eq!(code(&["11"]).hull_dimension(), 1);
        assert_eq!(hamming7().hull_dimension(), 3);
        assert_eq!(hamming7().hull(), hamming7().dual());
    }

    #[test]
    fn lcd_examples() {
        assert!(code(&["111"]).is_lcd());
        assert!(!code(&["11"]).is_lcd());
        assert!(!hamming7().is_lcd());
    }

    #[test]
    fn parity_class_examples() {
        assert_eq!(code(&["111000", "000111"]).parity_class().label(), "LCD_oe");
        assert_eq!(code(&["1100", "0110"]).parity_class().label(), "LCD_eo");
        let c = code(&["11"]).parity_class();
        assert_eq!(c.hull_dim, 1);
        assert_eq!(c.label(), "NotLCD");
    }

    #[test]
    fn puncture_examples() {
        let rep = LinearCode::repetition(3);
        let t = CoordinateSet::from_one_based(3, &[1]).unwrap();
        assert_eq!(rep.puncture(&t).unwrap(), code(&["11"]));

        let c = code(&["111000", "000111"]);
        let t = CoordinateSet::from_one_based(6, &[1, 4]).unwrap();
        assert_eq!(c.puncture(&t).unwrap(), code(&["1100", "0011"]));

        let full = LinearCode::full(2);
        let p = full.puncture(&CoordinateSet::from_one_based(2, &[1]).unwrap()).unwrap();
        assert_eq!((p.n(), p.k()), (1, 1));
    }

    #[test]
    fn puncture_rejects_bad_coordinates() {
        assert!(CoordinateSet::from_one_based(3, &[4]).is_err());
        let all = CoordinateSet::from_one_based(2, &[1, 2]).unwrap();
        assert!(LinearCode::full(2).puncture(&all).is_err());
    }

    #[test]
    fn shorten_examples() {
        let even = code(&["110", "011"]);
        let t = CoordinateSet::from_one_based(3, &[3]).unwrap();
        assert_eq!(even.shorten(&t).unwrap(), code(&["11"]));

        let rep = LinearCode::repetition(5);
        let s = rep.shorten(&CoordinateSet::from_one_based(5, &[1]).unwrap()).unwrap();
        assert_eq!((s.n(), s.k()), (4, 0));
    }

    #[test]
    fn hamming_shortened_on_three_coordinates() {
        // Some 3-subset leaves a [4,1,>=3] code.
        let h = hamming7();
        let mut found = false;
        for a in 0..7 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    let t = CoordinateSet::new(7, [a, b, c]).unwrap();
                    let s = h.shorten(&t).unwrap();
                    if s.k() == 1 && s.min_distance().unwrap() >= 3 {
                        found = true;
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn codeword_span_examples() {
        let rep = LinearCode::repetition(3);
        assert_eq!(rep.codeword_span(3).unwrap(), rep);
        let c = code(&["1000", "0111"]);
        assert_eq!(c.codeword_span(1).unwrap(), code(&["1000"]));
        assert_eq!(LinearCode::full(2).codeword_span(2).unwrap(), code(&["11"]));
    }

    #[test]
    fn rank_deficient_rejected() {
        assert!(matches!(
            LinearCode::from_strs(&["11", "11"]),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn contains_and_coordinates() {
        let c = code(&["110", "011"]);
        assert!(c.contains(&v("101")));
        assert!(!c.contains(&v("100")));
        assert_eq!(c.coordinates_of(&v("101")).unwrap(), v("11"));
    }
}
