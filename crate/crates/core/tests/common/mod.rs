#![allow(dead_code)]

use std::collections::BTreeSet;

use lcdcodes::{BitMatrix, BitVector, LinearCode};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn to_mask(v: &BitVector) -> u64 {
    (0..v.len()).filter(|&i| v.get(i)).fold(0, |acc, i| acc | 1 << i)
}

pub fn from_mask(n: usize, m: u64) -> BitVector {
    BitVector::from_bools((0..n).map(|i| m >> i & 1 == 1))
}

pub fn row_masks(code: &LinearCode) -> Vec<u64> {
    code.rows().iter().map(to_mask).collect()
}

/// Every codeword, by summing all subsets of the generator rows.
pub fn codewords(code: &LinearCode) -> BTreeSet<u64> {
    let rows = row_masks(code);
    (0u64..1 << rows.len())
        .map(|m| {
            rows.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .fold(0, |acc, (_, r)| acc ^ r)
        })
        .collect()
}

pub fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

/// The dual as the set of all length-`n` words orthogonal to every row.
pub fn dual_words(code: &LinearCode) -> BTreeSet<u64> {
    let rows = row_masks(code);
    (0u64..1 << code.n())
        .filter(|&x| rows.iter().all(|r| !parity(r & x)))
        .collect()
}

pub fn log2_exact(size: usize) -> usize {
    assert!(size.is_power_of_two());
    size.trailing_zeros() as usize
}

/// Dimension of `C ∩ C^⊥` by explicit intersection.
pub fn hull_dim_by_intersection(code: &LinearCode) -> usize {
    let c = codewords(code);
    let d = dual_words(code);
    log2_exact(c.intersection(&d).count())
}

pub fn brute_min_distance(code: &LinearCode) -> usize {
    codewords(code)
        .into_iter()
        .filter(|&w| w != 0)
        .map(|w| w.count_ones() as usize)
        .min()
        .expect("nonzero code")
}

pub fn is_lcd_by_intersection(code: &LinearCode) -> bool {
    hull_dim_by_intersection(code) == 0
}

pub fn words_of(code: &LinearCode) -> BTreeSet<u64> {
    codewords(code)
}

/// Random code of length `n` and dimension at most `k_max`, at least one.
pub fn random_code(rng: &mut impl Rng, n: usize, k_max: usize) -> LinearCode {
    loop {
        let k = rng.gen_range(1..=k_max.min(n));
        let rows: Vec<BitVector> = (0..k)
            .map(|_| BitVector::from_bools((0..n).map(|_| rng.gen::<bool>())))
            .collect();
        let m = BitMatrix::from_rows(n, &rows);
        if m.rank() == k {
            return LinearCode::new(m).unwrap();
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn arb_matrix(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BitMatrix> {
    (rows, cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), c), r)
            .prop_map(move |bits| BitMatrix::from_rows(c, &bits.into_iter().map(BitVector::from_bools).collect::<Vec<_>>()))
    })
}

/// Random full-rank code with `n` in `n_range` and `k <= k_max`.
pub fn arb_code(n_range: std::ops::RangeInclusive<usize>, k_max: usize) -> impl Strategy<Value = LinearCode> {
    (n_range, any::<u64>()).prop_map(move |(n, seed)| random_code(&mut seeded(seed), n, k_max))
}

/// Random LCD code, by rejection.
pub fn random_lcd(rng: &mut impl Rng, n: usize, k_max: usize) -> LinearCode {
    loop {
        let c = random_code(rng, n, k_max);
        if c.is_lcd() {
            return c;
        }
    }
}
