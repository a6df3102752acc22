//! Lower and upper bounds on `d_LCD(n, k)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Transcribed bounds for `38 <= n <= 50`, one `n k lower upper flags` line each.
pub const PUBLISHED_BOUNDS: &str = include_str!("../../data/lcd_bounds.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundStatus {
    Exact,
    Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub lower: usize,
    pub upper: usize,
    /// A code meeting the upper bound is known.
    pub optimal: bool,
    /// The lower bound improves on earlier tables.
    pub improved: bool,
}

impl BoundEntry {
    pub fn exact(d: usize) -> Self {
        Self {
            lower: d,
            upper: d,
            optimal: true,
            improved: false,
        }
    }

    pub fn status(&self) -> BoundStatus {
        if self.lower == self.upper {
            BoundStatus::Exact
        } else {
            BoundStatus::Interval
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BoundsLedger {
    entries: BTreeMap<(usize, usize), BoundEntry>,
}

impl BoundsLedger {
    pub fn published() -> Self {
        Self::parse(PUBLISHED_BOUNDS).expect("bundled bounds file parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut ledger = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| Error::Parse {
                line: i + 1,
                message: message.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(err("expected 'n k lower upper flags'"));
            }
            let nums: Vec<usize> = fields[..4]
                .iter()
                .map(|f| f.parse().map_err(|_| err("bound fields must be counts")))
                .collect::<Result<_>>()?;
            let flags = fields[4];
            ledger.insert(
                nums[0],
                nums[1],
                BoundEntry {
                    lower: nums[2],
                    upper: nums[3],
                    optimal: flags.contains('*'),
                    improved: flags.contains('b'),
                },
            );
        }
        Ok(ledger)
    }

    pub fn insert(&mut self, n: usize, k: usize, entry: BoundEntry) {
        self.entries.insert((n, k), entry);
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&BoundEntry> {
        self.entries.get(&(n, k))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &BoundEntry)> {
        self.entries.iter()
    }

    /// Checks that hold for any true values of `d_LCD`: `lower <= upper`,
    /// growth in `n`, decline in `k`, and for `k >= 2` a step of at most one
    /// from `n` to `n + 1`.
    pub fn consistency_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&(n, k), e) in &self.entries {
            if e.lower > e.upper {
                out.push(format!("({n},{k}): lower {} > upper {}", e.lower, e.upper));
            }
            if let Some(next) = self.get(n + 1, k) {
                if e.lower > next.upper {
                    out.push(format!("lower({n},{k}) = {} > upper({},{k}) = {}", e.lower, n + 1, next.upper));
                }
                if k >= 2 && next.lower > e.upper + 1 {
                    out.push(format!("lower({},{k}) = {} > upper({n},{k}) + 1 = {}", n + 1, next.lower, e.upper + 1));
                }
            }
            if let Some(next) = self.get(n, k + 1) {
                if next.lower > e.upper {
                    out.push(format!("lower({n},{}) = {} > upper({n},{k}) = {}", k + 1, next.lower, e.upper));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_bounds_load() {
        let b = BoundsLedger::published();
        assert_eq!(b.len(), 366);
        let e = b.get(41, 6).unwrap();
        assert_eq!((e.lower, e.upper, e.optimal), (19, 19, true));
        assert_eq!(e.status(), BoundStatus::Exact);
        let e = b.get(38, 11).unwrap();
        assert_eq!((e.lower, e.upper, e.improved), (13, 14, true));
        assert_eq!(b.get(50, 44).unwrap().lower, 3);
    }

    #[test]
    fn consistency_detects_bad_entries() {
        let b = BoundsLedger::parse("10 2 5 4 -\n").unwrap();
        assert_eq!(b.consistency_violations().len(), 1);
        assert!(BoundsLedger::parse("10 2 5\n").is_err());
    }
}
