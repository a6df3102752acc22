//! Exact minimum distance and low-weight codeword enumeration.
//!
//! Two engines are available. Full enumeration walks every codeword in Gray
//! order and is used up to dimension [`K_FULL`]. The low-weight engine searches
//! for small sets of dependent parity-check columns and proves `d = w` for any
//! `w <= W_MAX`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, RowReducer};

/// Largest dimension handled by full codeword enumeration.
pub const K_FULL: usize = 26;
/// Largest weight the low-weight engine will certify.
pub const W_MAX: usize = 8;

/// Dimension from which full enumeration is split across threads.
const PARALLEL_FROM: usize = 18;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Engine {
    /// Full enumeration when `k <= K_FULL`, otherwise low-weight search.
    #[default]
    Auto,
    Full,
    LowWeight,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Engine::Auto),
            "full" => Ok(Engine::Full),
            "lowweight" | "low-weight" => Ok(Engine::LowWeight),
            other => Err(Error::pre(format!("unknown engine `{other}`"))),
        }
    }
}

pub fn min_distance(code: &LinearCode, engine: Engine) -> Result<usize> {
    if code.k() == 0 {
        return Err(Error::ZeroDimension);
    }
    match engine {
        Engine::Full => full_min_distance(code.generator()),
        Engine::LowWeight => low_weight_min_distance(code),
        Engine::Auto if code.k() <= K_FULL => full_min_distance(code.generator()),
        Engine::Auto => low_weight_min_distance(code),
    }
}

/// Minimum weight over all nonzero codewords, by Gray-code enumeration.
pub fn full_min_distance(gen: &BitMatrix) -> Result<usize> {
    let k = gen.rows();
    if k == 0 {
        return Err(Error::ZeroDimension);
    }
    if k > K_FULL {
        return Err(Error::pre(format!(
            "dimension {k} exceeds the full-enumeration limit {K_FULL}"
        )));
    }
    let rows: Vec<Vec<u64>> = (0..k).map(|i| gen.row_words(i).to_vec()).collect();
    if k < PARALLEL_FROM {
        return Ok(chunk_min_weight(&rows, 0, k));
    }
    let high = (k - PARALLEL_FROM + 4).min(10);
    let low = k - high;
    let best = (0..1u64 << high)
        .into_par_iter()
        .map(|prefix| chunk_min_weight(&rows, prefix, low))
        .min()
        .expect("at least one chunk");
    Ok(best)
}

/// Minimum weight of the nonzero codewords `prefix-part + span(rows[..low])`,
/// where bit `i` of `prefix` selects row `low + i`.
fn chunk_min_weight(rows: &[Vec<u64>], prefix: u64, low: usize) -> usize {
    let stride = rows[0].len();
    let mut acc = vec![0u64; stride];
    for (i, row) in rows[low..].iter().enumerate() {
        if prefix >> i & 1 == 1 {
            xor_into(&mut acc, row);
        }
    }
    let mut best = usize::MAX;
    if prefix != 0 {
        best = weight(&acc);
    }
    if stride == 1 {
        let mut a = acc[0];
        let r: Vec<u64> = rows[..low].iter().map(|r| r[0]).collect();
        for step in 1u64..1u64 << low {
            a ^= r[step.trailing_zeros() as usize];
            let w = a.count_ones() as usize;
            if w < best {
                best = w;
            }
        }
    } else {
        for step in 1u64..1u64 << low {
            xor_into(&mut acc, &rows[step.trailing_zeros() as usize]);
            let w = weight(&acc);
            if w < best {
                best = w;
            }
        }
    }
    best
}

#[inline]
fn xor_into(acc: &mut [u64], row: &[u64]) {
    for (a, r) in acc.iter_mut().zip(row) {
        *a ^= r;
    }
}

#[inline]
fn weight(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Calls `f` on every nonzero codeword in Gray order; stops when `f` returns false.
pub fn for_each_codeword(gen: &BitMatrix, mut f: impl FnMut(&BitVector) -> bool) {
    let k = gen.rows();
    let n = gen.cols();
    let rows = gen.row_vectors();
    let mut acc = BitVector::zeros(n);
    for step in 1u64..1u64 << k {
        acc.xor_assign(&rows[step.trailing_zeros() as usize]);
        if !f(&acc) {
            return;
        }
    }
}

/// Column-subset search on the parity-check matrix.
struct CheckColumns {
    cols: Vec<Vec<u64>>,
    lookup: HashMap<Vec<u64>, Vec<usize>>,
    stride: usize,
}

impl CheckColumns {
    fn new(code: &LinearCode) -> Self {
        let h = code.dual();
        let ht = h.generator().transpose();
        let n = code.n();
        let stride = (n - code.k()).div_ceil(64).max(1);
        let cols: Vec<Vec<u64>> = (0..n)
            .map(|j| {
                let mut w = ht.row_words(j).to_vec();
                w.resize(stride, 0);
                w
            })
            .collect();
        let mut lookup: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for (j, c) in cols.iter().enumerate() {
            lookup.entry(c.clone()).or_default().push(j);
        }
        Self {
            cols,
            lookup,
            stride,
        }
    }

    /// Visits every `w`-subset of columns summing to zero, in lexicographic
    /// order of index tuples. Stops when `f` returns false.
    fn visit(&self, w: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
        if w == 0 || w > self.cols.len() {
            return;
        }
        let mut chosen = Vec::with_capacity(w);
        let zero = vec![0u64; self.stride];
        self.descend(w - 1, 0, &zero, &mut chosen, f);
    }

    fn descend(
        &self,
        remaining: usize,
        start: usize,
        acc: &[u64],
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = self.cols.len();
        if remaining == 0 {
            if let Some(hits) = self.lookup.get(acc) {
                let from = hits.partition_point(|&j| j < start);
                for &j in &hits[from..] {
                    chosen.push(j);
                    let go = f(chosen);
                    chosen.pop();
                    if !go {
                        return false;
                    }
                }
            }
            return true;
        }
        let mut next = vec![0u64; self.stride];
        for i in start..n.saturating_sub(remaining) {
            for ((x, a), c) in next.iter_mut().zip(acc).zip(&self.cols[i]) {
                *x = a ^ c;
            }
            chosen.push(i);
            let go = self.descend(remaining - 1, i + 1, &next, chosen, f);
            chosen.pop();
            if !go {
                return false;
            }
        }
        true
    }

    fn has_codeword_of_weight(&self, w: usize) -> bool {
        let mut found = false;
        self.visit(w, &mut |_| {
            found = true;
            false
        });
        found
    }
}

/// Proves `d = w` for the least `w <= W_MAX` with a weight-`w` codeword.
pub fn low_weight_min_distance(code: &LinearCode) -> Result<usize> {
    if code.k() == 0 {
        return Err(Error::ZeroDimension);
    }
    let checks = CheckColumns::new(code);
    for w in 1..=W_MAX.min(code.n()) {
        if checks.has_codeword_of_weight(w) {
            return Ok(w);
        }
    }
    Err(Error::DistanceBudget { at_least: W_MAX + 1 })
}

/// All codewords of weight exactly `w`, sorted.
pub fn codewords_of_weight(code: &LinearCode, w: usize) -> Result<Vec<BitVector>> {
    if w == 0 {
        return Ok(Vec::new());
    }
    if code.k() <= K_FULL {
        let mut out = Vec::new();
        for_each_codeword(code.generator(), |c| {
            if c.weight() == w {
                out.push(c.clone());
            }
            true
        });
        out.sort();
        return Ok(out);
    }
    if w > W_MAX {
        return Err(Error::pre(format!(
            "weight {w} above {W_MAX} with dimension {} above {K_FULL}",
            code.k()
        )));
    }
    let n = code.n();
    let mut out = Vec::new();
    CheckColumns::new(code).visit(w, &mut |idx| {
        let mut v = BitVector::zeros(n);
        for &i in idx {
            v.set(i, true);
        }
        out.push(v);
        true
    });
    out.sort();
    Ok(out)
}

/// Span of the weight-`w` codewords. The generator of the result consists of
/// weight-`w` codewords, chosen greedily in lexicographic order of bit strings.
pub fn codeword_span(code: &LinearCode, w: usize) -> Result<LinearCode> {
    let n = code.n();
    if w == 0 || code.k() == 0 {
        return Ok(LinearCode::zero(n));
    }
    let mut red = RowReducer::new(n);
    let mut basis = Vec::new();
    if code.k() <= K_FULL {
        for_each_codeword(code.generator(), |c| {
            if c.weight() == w && red.insert(c.clone()) {
                basis.push(c.clone());
            }
            red.rank() < code.k()
        });
        basis.sort();
    } else {
        for c in codewords_of_weight(code, w)? {
            if red.insert(c.clone()) {
                basis.push(c);
            }
            if red.rank() == code.k() {
                break;
            }
        }
    }
    Ok(LinearCode::spanned_by(n, &basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(rows: &[&str]) -> LinearCode {
        LinearCode::from_strs(rows).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(LinearCode::repetition(5).min_distance().unwrap(), 5);
        let even = LinearCode::repetition(4).dual();
        assert_eq!(even.min_distance().unwrap(), 2);
        let hamming = code(&["1000110", "0100101", "0010011", "0001111"]);
        assert_eq!(hamming.min_distance_with(Engine::Full).unwrap(), 3);
        assert_eq!(hamming.min_distance_with(Engine::LowWeight).unwrap(), 3);
    }

    #[test]
    fn zero_dimension_is_an_error() {
        assert!(matches!(
            LinearCode::zero(4).min_distance(),
            Err(Error::ZeroDimension)
        ));
    }

    #[test]
    fn low_weight_budget_reported() {
        let rep = LinearCode::repetition(12);
        assert!(matches!(
            rep.min_distance_with(Engine::LowWeight),
            Err(Error::DistanceBudget { at_least: 9 })
        ));
    }

    #[test]
    fn full_code_has_distance_one() {
        assert_eq!(LinearCode::full(5).min_distance_with(Engine::LowWeight).unwrap(), 1);
        assert_eq!(LinearCode::full(5).min_distance_with(Engine::Full).unwrap(), 1);
    }

    #[test]
    fn multiword_lengths() {
        let n = 130;
        let rep = LinearCode::repetition(n);
        assert_eq!(rep.min_distance().unwrap(), n);
        let even = rep.dual();
        assert_eq!(even.min_distance().unwrap(), 2);
    }

    #[test]
    fn parallel_path_matches_known_distance() {
        // [24, 19] shortened-style code: identity plus a few parity columns.
        let k = 20;
        let rows: Vec<BitVector> = (0..k)
            .map(|i| {
                let mut v = BitVector::zeros(k + 4);
                v.set(i, true);
                v.set(k + i % 4, true);
                v.set(k + (i + 1) % 4, true);
                v
            })
            .collect();
        let c = LinearCode::new(BitMatrix::from_rows(k + 4, &rows)).unwrap();
        assert_eq!(
            c.min_distance_with(Engine::Full).unwrap(),
            c.min_distance_with(Engine::LowWeight).unwrap()
        );
    }

    #[test]
    fn low_weight_words_enumerated() {
        let hamming = code(&["1000110", "0100101", "0010011", "0001111"]);
        assert_eq!(codewords_of_weight(&hamming, 3).unwrap().len(), 7);
        assert_eq!(codewords_of_weight(&hamming, 4).unwrap().len(), 7);
        assert_eq!(codewords_of_weight(&hamming, 7).unwrap().len(), 1);
    }
}
