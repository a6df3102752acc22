//! Exhaustive search over small binary codes.
//!
//! Every `[n, k]` code is equivalent under a coordinate permutation to one
//! with systematic generator `[I_k | A]`. Permuting the columns of `A`, or
//! permuting its rows together with the matching identity columns, keeps that
//! shape, so it suffices to visit matrices `A` whose columns and rows are both
//! in nondecreasing lexicographic order (alternately sorting rows and columns
//! strictly decreases the row-major reading of `A`, so such a form exists).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::harness::bounds::{BoundEntry, BoundsLedger};

/// Largest length accepted by [`DlcdTable::compute`].
pub const TABLE_N_MAX: usize = 12;
/// Largest dimension the enumerator handles (messages are indexed by `u32`).
const K_LIMIT: usize = 20;

/// A visited systematic code: columns of `A` (bit `k-1-i` holds row `i`),
/// its minimum distance and whether it is LCD.
#[derive(Clone, Debug)]
pub struct SystematicCode {
    pub n: usize,
    pub k: usize,
    pub columns: Vec<u32>,
    pub distance: usize,
    pub lcd: bool,
}

impl SystematicCode {
    /// Rows of `A`, bit `j` of row `i` set when column `j` has a 1 in row `i`.
    fn redundancy_rows(&self) -> Vec<u64> {
        (0..self.k)
            .map(|i| {
                self.columns
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c >> (self.k - 1 - i) & 1 == 1)
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect()
    }

    pub fn generator(&self) -> BitMatrix {
        let r = self.n - self.k;
        let rows: Vec<BitVector> = self
            .redundancy_rows()
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                BitVector::unit(self.k, i).concat(&BitVector::from_bools((0..r).map(|j| a >> j & 1 == 1)))
            })
            .collect();
        BitMatrix::from_rows(self.n, &rows)
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::new(self.generator()).expect("systematic generator has full rank")
    }
}

/// Gram matrix `I + A A^T` of `[I | A]` is nonsingular.
fn systematic_is_lcd(rows: &[u64]) -> bool {
    let k = rows.len();
    let mut g: Vec<u64> = (0..k)
        .map(|i| {
            (0..k).fold(0u64, |acc, j| {
                let bit = ((rows[i] & rows[j]).count_ones() & 1 == 1) ^ (i == j);
                acc | (bit as u64) << j
            })
        })
        .collect();
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| g[i] >> c & 1 == 1) else {
            return false;
        };
        g.swap(c, p);
        for i in 0..k {
            if i != c && g[i] >> c & 1 == 1 {
                g[i] ^= g[c];
            }
        }
    }
    true
}

/// Options for [`enumerate_systematic`].
#[derive(Clone, Copy, Debug)]
pub struct EnumerationSpec {
    pub n: usize,
    pub k: usize,
    /// Only codes with minimum distance at least this are visited.
    pub d_min: usize,
    /// Restrict `A` to odd-weight columns, i.e. codes containing the all-one vector.
    pub odd_columns: bool,
    /// Skip the row-order restriction (columns stay sorted).
    pub sort_rows: bool,
}

impl EnumerationSpec {
    pub fn new(n: usize, k: usize, d_min: usize) -> Self {
        Self {
            n,
            k,
            d_min,
            odd_columns: false,
            sort_rows: true,
        }
    }
}

struct Walker<'a, F> {
    spec: EnumerationSpec,
    candidates: Vec<u32>,
    weights: Vec<u8>,
    columns: Vec<u32>,
    visit: &'a mut F,
}

impl<F: FnMut(&SystematicCode) -> bool> Walker<'_, F> {
    fn min_weight(&self) -> usize {
        self.weights[1..].iter().copied().min().map_or(usize::MAX, usize::from)
    }

    fn apply(&mut self, c: u32, add: bool) {
        for (m, w) in self.weights.iter_mut().enumerate() {
            if (m as u32 & c).count_ones() & 1 == 1 {
                if add {
                    *w += 1;
                } else {
                    *w -= 1;
                }
            }
        }
    }

    /// Returns false when the visitor asked to stop.
    fn walk(&mut self, start: usize, tied: u32) -> bool {
        let k = self.spec.k;
        let r = self.spec.n - k;
        let depth = self.columns.len();
        if depth == r {
            let mut code = SystematicCode {
                n: self.spec.n,
                k,
                columns: self.columns.clone(),
                distance: self.min_weight(),
                lcd: false,
            };
            code.lcd = systematic_is_lcd(&code.redundancy_rows());
            return (self.visit)(&code);
        }
        let remaining = r - depth - 1;
        for idx in start..self.candidates.len() {
            let c = self.candidates[idx];
            let mut next_tied = tied;
            if self.spec.sort_rows {
                let mut ok = true;
                for i in 0..k.saturating_sub(1) {
                    if tied >> i & 1 == 1 {
                        let bi = c >> (k - 1 - i) & 1;
                        let bj = c >> (k - 2 - i) & 1;
                        if bi > bj {
                            ok = false;
                            break;
                        }
                        if bi < bj {
                            next_tied &= !(1 << i);
                        }
                    }
                }
                if !ok {
                    continue;
                }
            }
            self.apply(c, true);
            if self.min_weight() + remaining >= self.spec.d_min {
                self.columns.push(c);
                let go_on = self.walk(idx, next_tied);
                self.columns.pop();
                if !go_on {
                    self.apply(c, false);
                    return false;
                }
            }
            self.apply(c, false);
        }
        true
    }
}

/// Visits systematic codes `[I_k | A]` with sorted columns (and rows, unless
/// disabled) whose minimum distance is at least `d_min`. The visitor returns
/// `false` to stop early; the function returns whether the walk completed.
pub fn enumerate_systematic<F: FnMut(&SystematicCode) -> bool>(spec: EnumerationSpec, visit: &mut F) -> Result<bool> {
    let (n, k) = (spec.n, spec.k);
    if k == 0 || k > n {
        return Err(Error::pre(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    if k > K_LIMIT || n - k > 64 {
        return Err(Error::pre(format!("[{n}, {k}] is outside the enumerator's range")));
    }
    let candidates: Vec<u32> = (0..1u32 << k)
        .filter(|c| !spec.odd_columns || c.count_ones() % 2 == 1)
        .collect();
    let weights: Vec<u8> = (0..1u32 << k).map(|m| m.count_ones() as u8).collect();
    let mut walker = Walker {
        spec,
        candidates,
        weights,
        columns: Vec::with_capacity(n - k),
        visit,
    };
    if walker.min_weight() + (n - k) < spec.d_min {
        return Ok(true);
    }
    let all_tied = if k > 1 { (1u32 << (k - 1)) - 1 } else { 0 };
    Ok(walker.walk(0, all_tied))
}

/// Some LCD `[n, k]` code with minimum distance at least `d`, if one exists.
pub fn find_lcd_code(n: usize, k: usize, d: usize) -> Result<Option<SystematicCode>> {
    let mut found = None;
    enumerate_systematic(EnumerationSpec::new(n, k, d), &mut |c: &SystematicCode| {
        if c.lcd {
            found = Some(c.clone());
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

/// Largest `d` with `sum_{i<k} ceil(d / 2^i) <= n`.
pub fn griesmer_max_distance(n: usize, k: usize) -> usize {
    let fits = |d: usize| (0..k).map(|i| d.div_ceil(1 << i.min(63))).sum::<usize>() <= n;
    (1..=n).take_while(|&d| fits(d)).last().unwrap_or(0)
}

/// `d_LCD(n, k)` with a witness, by descending search from the Griesmer bound.
pub fn dlcd_exact(n: usize, k: usize) -> Result<(usize, SystematicCode)> {
    for d in (1..=griesmer_max_distance(n, k)).rev() {
        if let Some(c) = find_lcd_code(n, k, d)? {
            return Ok((c.distance, c));
        }
    }
    Err(Error::internal(format!("no LCD [{n}, {k}] code found")))
}

/// `d_LCD(n, k)` by brute force over every `k x (n-k)` matrix `A`, with no
/// symmetry reduction. Meant for `n <= 7`.
pub fn dlcd_unpruned(n: usize, k: usize) -> usize {
    let r = n - k;
    let mut best = 0;
    for bits in 0u64..1 << (k * r) {
        let rows: Vec<u64> = (0..k).map(|i| bits >> (i * r) & ((1u64 << r) - 1)).collect();
        if !systematic_is_lcd(&rows) {
            continue;
        }
        let d = (1u32..1 << k)
            .map(|m| {
                let red = (0..k).filter(|&i| m >> i & 1 == 1).fold(0u64, |acc, i| acc ^ rows[i]);
                m.count_ones() as usize + red.count_ones() as usize
            })
            .min()
            .unwrap_or(0);
        best = best.max(d);
    }
    best
}

/// Exact `d_LCD(n, k)` for `1 <= k <= n <= n_max`.
#[derive(Clone, Debug, Serialize)]
pub struct DlcdTable {
    pub n_max: usize,
    values: BTreeMap<(usize, usize), usize>,
    #[serde(skip)]
    witnesses: BTreeMap<(usize, usize), SystematicCode>,
}

impl DlcdTable {
    pub fn compute(n_max: usize) -> Result<Self> {
        if n_max > TABLE_N_MAX {
            return Err(Error::pre(format!(
                "exhaustive table limited to n <= {TABLE_N_MAX}, got {n_max}"
            )));
        }
        let cells: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
        let results: Vec<((usize, usize), Result<(usize, SystematicCode)>)> =
            cells.par_iter().map(|&(n, k)| ((n, k), dlcd_exact(n, k))).collect();
        let mut values = BTreeMap::new();
        let mut witnesses = BTreeMap::new();
        for (key, res) in results {
            let (d, w) = res?;
            values.insert(key, d);
            witnesses.insert(key, w);
        }
        Ok(Self {
            n_max,
            values,
            witnesses,
        })
    }

    pub fn get(&self, n: usize, k: usize) -> Option<usize> {
        self.values.get(&(n, k)).copied()
    }

    pub fn witness(&self, n: usize, k: usize) -> Option<LinearCode> {
        self.witnesses.get(&(n, k)).map(SystematicCode::code)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.values.iter().map(|(&key, &d)| (key, d))
    }

    /// `d_LCD(n, 1)` is `n` for odd `n` and `n - 1` for even `n`.
    pub fn closed_form_violations(&self) -> Vec<String> {
        (1..=self.n_max)
            .filter_map(|n| {
                let expected = if n % 2 == 1 { n } else { n - 1 };
                let got = self.get(n, 1)?;
                (got != expected).then(|| format!("d_LCD({n},1) = {got}, expected {expected}"))
            })
            .collect()
    }

    /// For `k >= 2`: `d_LCD(n+1, k) - d_LCD(n, k)` is 0 or 1.
    pub fn step_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for n in 1..self.n_max {
            for k in 2..=n {
                if let (Some(a), Some(b)) = (self.get(n, k), self.get(n + 1, k)) {
                    if b < a || b > a + 1 {
                        out.push(format!("d_LCD({},{k}) = {b} after d_LCD({n},{k}) = {a}", n + 1));
                    }
                }
            }
        }
        out
    }

    /// Nondecreasing in `n`, nonincreasing in `k`.
    pub fn monotonicity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for ((n, k), d) in self.entries() {
            if let Some(next) = self.get(n + 1, k) {
                if next < d {
                    out.push(format!("d_LCD({},{k}) = {next} < d_LCD({n},{k}) = {d}", n + 1));
                }
            }
            if let Some(next) = self.get(n, k + 1) {
                if next > d {
                    out.push(format!("d_LCD({n},{}) = {next} > d_LCD({n},{k}) = {d}", k + 1));
                }
            }
        }
        out
    }

    pub fn to_bounds_ledger(&self) -> BoundsLedger {
        let mut ledger = BoundsLedger::default();
        for ((n, k), d) in self.entries() {
            ledger.insert(n, k, BoundEntry::exact(d));
        }
        ledger
    }
}

/// Every `LCD_oe` code with `k >= 2` and `d >= 3` and length at most
/// `max_len`, one representative per visited systematic form.
pub fn lcd_oe_corpus(max_len: usize) -> Result<Vec<LinearCode>> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        for k in 2..n {
            let mut spec = EnumerationSpec::new(n, k, 3);
            spec.odd_columns = true;
            enumerate_systematic(spec, &mut |c: &SystematicCode| {
                if c.lcd {
                    let code = c.code();
                    if !code.is_even_like() {
                        out.push(code);
                    }
                }
                true
            })?;
        }
    }
    Ok(out)
}
