//! Code-to-code constructions: puncturing and shortening guided by the hull,
//! and the extension constructions that add a coordinate, a row, or both.

use serde::{Deserialize, Serialize};

use crate::code::{CoordinateSet, LinearCode};
use crate::combin::Combinations;
use crate::distance::K_FULL;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::normal_form::{hull_normal_basis, orthonormal_basis};

/// Largest length for which the hull-guided searches are exhaustive.
pub const EXHAUSTIVE_SEARCH_LEN: usize = 20;
/// Number of coordinate sets tried before a hull-guided search gives up.
pub const SEARCH_BUDGET: usize = 200_000;

/// Parameters promised by a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub n: usize,
    pub k: usize,
    /// Lower bound on the minimum distance, when the input distance was known.
    pub d_at_least: Option<usize>,
    pub lcd: bool,
}

/// Auxiliary data that lets a construction be replayed exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Basis of the input code the construction was applied to.
    Basis { rows: BitMatrix },
    /// Deleted coordinates, 1-based.
    Coordinates { coords: Vec<usize> },
    /// Shortening coordinate and, when the all-one vector is not in the
    /// code, a coordinate whose puncturing is also LCD (both 1-based).
    ShortenPuncture { shorten: usize, puncture: Option<usize> },
    /// Row prepended as `(1, x)`.
    Row { x: BitVector },
    /// Column prepended or appended, one bit per generator row.
    Column { y: BitVector },
    /// Extension vector with its padded form and the Gram-based verdict.
    Systematic { x: BitVector, padded: BitVector, rows_hit: usize },
    /// Appended column choice `(1, y_2, .., y_k)` in the multi-extension.
    Choice { y: BitVector, basis: BitMatrix },
}

#[derive(Clone, Debug)]
pub struct ConstructionOutcome {
    pub code: LinearCode,
    pub claimed: Claim,
    pub witness: Witness,
}

impl ConstructionOutcome {
    fn new(code: LinearCode, d_at_least: Option<usize>, lcd: bool, witness: Witness) -> Self {
        let claimed = Claim {
            n: code.n(),
            k: code.k(),
            d_at_least,
            lcd,
        };
        Self {
            code,
            claimed,
            witness,
        }
    }

    /// Re-checks the claim on the produced code. The distance is checked only
    /// when it can be computed exactly.
    pub fn verify(&self) -> Result<()> {
        let c = &self.code;
        if (c.n(), c.k()) != (self.claimed.n, self.claimed.k) {
            return Err(Error::internal("construction changed the claimed parameters"));
        }
        if self.claimed.lcd && !c.is_lcd() {
            return Err(Error::internal("construction promised an LCD code"));
        }
        if let Some(bound) = self.claimed.d_at_least {
            if c.k() > 0 {
                match c.min_distance() {
                    Ok(d) if d < bound => {
                        return Err(Error::internal(format!("distance {d} below claimed {bound}")))
                    }
                    Ok(_) | Err(Error::DistanceBudget { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(())
    }
}

fn require_lcd(code: &LinearCode) -> Result<()> {
    if code.is_lcd() {
        Ok(())
    } else {
        Err(Error::pre(format!(
            "code is not LCD (hull dimension {})",
            code.hull_dimension()
        )))
    }
}

/// Minimum distance when computable, `None` when only a budget bound is known.
fn known_distance(code: &LinearCode) -> Result<Option<usize>> {
    if code.k() == 0 {
        return Ok(None);
    }
    match code.min_distance() {
        Ok(d) => Ok(Some(d)),
        Err(Error::DistanceBudget { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn require_odd_distance(code: &LinearCode) -> Result<usize> {
    let d = code.min_distance()?;
    if d % 2 == 0 {
        return Err(Error::pre(format!("minimum distance {d} is even")));
    }
    Ok(d)
}

/// `[n, k, d]` LCD with `k` even and `d` odd to the even-like `[n+1, k, d+1]`
/// LCD code generated by `(1, c_i)` over an orthonormal basis `c_i`.
pub fn extend_even(code: &LinearCode) -> Result<ConstructionOutcome> {
    require_lcd(code)?;
    if code.k() % 2 == 1 {
        return Err(Error::pre("dimension must be even"));
    }
    let d = require_odd_distance(code)?;
    let basis = orthonormal_basis(code)?;
    let gen = basis.prepend_column(&BitVector::ones(code.k()));
    Ok(ConstructionOutcome::new(
        LinearCode::new(gen)?,
        Some(d + 1),
        true,
        Witness::Basis { rows: basis },
    ))
}

/// `[n, k, d]` LCD with `k` and `d` odd to the `[n+2, k, >= d+1]` LCD code
/// generated by `(1, 1, c_i)` over an orthonormal basis `c_i`.
pub fn extend_odd_two(code: &LinearCode) -> Result<ConstructionOutcome> {
    require_lcd(code)?;
    if code.k() % 2 == 0 {
        return Err(Error::pre("dimension must be odd"));
    }
    let d = require_odd_distance(code)?;
    let basis = orthonormal_basis(code)?;
    let ones = BitVector::ones(code.k());
    let gen = basis.prepend_column(&ones).prepend_column(&ones);
    Ok(ConstructionOutcome::new(
        LinearCode::new(gen)?,
        Some(d + 1),
        true,
        Witness::Basis { rows: basis },
    ))
}

/// Punctures an even-like LCD code on one coordinate; the result is LCD.
pub fn puncture_even_lcd(code: &LinearCode, coord: usize) -> Result<ConstructionOutcome> {
    require_lcd(code)?;
    if !code.is_even_like() {
        return Err(Error::pre("code must be even-like"));
    }
    let t = CoordinateSet::single(code.n(), coord)?;
    let d = known_distance(code)?;
    let out = code.puncture(&t)?;
    Ok(ConstructionOutcome::new(
        out,
        d.map(|d| d - 1),
        true,
        Witness::Coordinates { coords: t.one_based() },
    ))
}

/// Shortens an odd-like LCD code on one coordinate so that the result is LCD.
///
/// When the all-one vector lies in the code every coordinate works and the
/// requested one (default: the first) is used. Otherwise coordinates are
/// scanned in ascending order, starting with the requested one, and the
/// witness also records the first coordinate whose puncturing is LCD.
pub fn shorten_odd_lcd(code: &LinearCode, coord: Option<usize>) -> Result<ConstructionOutcome> {
    require_lcd(code)?;
    if code.is_even_like() {
        return Err(Error::pre("code must be odd-like"));
    }
    let n = code.n();
    let d = known_distance(code)?;
    let shorten_at = |i: usize| -> Result<LinearCode> { code.shorten(&CoordinateSet::single(n, i)?) };
    if code.contains_all_one() {
        let i = coord.unwrap_or(0);
        let out = shorten_at(i)?;
        return Ok(ConstructionOutcome::new(
            out,
            d,
            true,
            Witness::ShortenPuncture {
                shorten: i + 1,
                puncture: None,
            },
        ));
    }
    let order: Vec<usize> = coord.into_iter().chain((0..n).filter(|&i| Some(i) != coord)).collect();
    let mut found = None;
    for &i in &order {
        let s = shorten_at(i)?;
        if s.is_lcd() {
            found = Some((i, s));
            break;
        }
    }
    let (i, out) = found.ok_or_else(|| Error::SearchExhausted("no coordinate shortens to an LCD code".into()))?;
    let mut puncture = None;
    for j in 0..n {
        if code.puncture(&CoordinateSet::single(n, j)?)?.is_lcd() {
            puncture = Some(j + 1);
            break;
        }
    }
    if puncture.is_none() {
        return Err(Error::SearchExhausted("no coordinate punctures to an LCD code".into()));
    }
    Ok(ConstructionOutcome::new(
        out,
        d,
        true,
        Witness::ShortenPuncture {
            shorten: i + 1,
            puncture,
        },
    ))
}

/// Coordinates ordered by how often they occur in the supports of the hull
/// basis vectors, most frequent first, ties by index.
fn hull_guided_order(code: &LinearCode) -> Vec<usize> {
    let hull = code.hull();
    let mut freq = vec![0usize; code.n()];
    for row in hull.rows() {
        for i in row.ones_indices() {
            freq[i] += 1;
        }
    }
    let mut order: Vec<usize> = (0..code.n()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(freq[i]), i));
    order
}

fn hull_guided_search(
    code: &LinearCode,
    size: usize,
    mut accept: impl FnMut(&CoordinateSet) -> Result<Option<LinearCode>>,
) -> Result<(CoordinateSet, LinearCode)> {
    let order = hull_guided_order(code);
    let budget = if code.n() <= EXHAUSTIVE_SEARCH_LEN {
        usize::MAX
    } else {
        SEARCH_BUDGET
    };
    for (tried, combo) in Combinations::new(code.n(), size).enumerate() {
        if tried >= budget {
            return Err(Error::SearchExhausted(format!(
                "no suitable {size} coordinates among the first {budget} candidates"
            )));
        }
        let t = CoordinateSet::new(code.n(), combo.iter().map(|&p| order[p]))?;
        if let Some(out) = accept(&t)? {
            return Ok((t, out));
        }
    }
    Err(Error::SearchExhausted(format!("no suitable set of {size} coordinates exists")))
}

/// Shortens on `l = dim Hull(C)` coordinates to an `[n-l, k-l, >= d]` LCD code.
pub fn hull_shorten(code: &LinearCode) -> Result<ConstructionOutcome> {
    let l = code.hull_dimension();
    if l == 0 {
        return Err(Error::pre("code is already LCD"));
    }
    if l == code.k() {
        return Err(Error::pre("code is self-orthogonal; shortening would leave dimension 0"));
    }
    let d = known_distance(code)?;
    let target_k = code.k() - l;
    let (t, out) = hull_guided_search(code, l, |t| {
        let s = code.shorten(t)?;
        Ok((s.k() == target_k && s.is_lcd()).then_some(s))
    })?;
    Ok(ConstructionOutcome::new(out, d, true, Witness::Coordinates { coords: t.one_based() }))
}

/// Punctures on `l = dim Hull(C) < d` coordinates to an `[n-l, k, >= d-l]` LCD code.
pub fn hull_puncture(code: &LinearCode) -> Result<ConstructionOutcome> {
    let l = code.hull_dimension();
    if l == 0 {
        return Err(Error::pre("code is already LCD"));
    }
    let d = code.min_distance()?;
    if l >= d {
        return Err(Error::pre(format!("hull dimension {l} is not below the distance {d}")));
    }
    let (t, out) = hull_guided_search(code, l, |t| {
        let p = code.puncture(t)?;
        Ok((p.k() == code.k() && p.is_lcd()).then_some(p))
    })?;
    Ok(ConstructionOutcome::new(
        out,
        Some(d - l),
        true,
        Witness::Coordinates { coords: t.one_based() },
    ))
}

/// For a code with one-dimensional hull, the support (0-based) of the hull
/// vector; puncturing on any one of these coordinates gives an LCD code.
pub fn hull1_puncture(code: &LinearCode) -> Result<Vec<usize>> {
    if code.hull_dimension() != 1 {
        return Err(Error::pre(format!(
            "hull dimension is {}, expected 1",
            code.hull_dimension()
        )));
    }
    let h = code.hull().rows().remove(0);
    let support = h.ones_indices();
    for &v in &support {
        if !code.puncture(&CoordinateSet::single(code.n(), v)?)?.is_lcd() {
            return Err(Error::internal(format!("puncturing hull support coordinate {} is not LCD", v + 1)));
        }
    }
    Ok(support)
}

fn prepend_row(code: &LinearCode, x: &BitVector) -> BitMatrix {
    let top = BitMatrix::from_rows(code.n() + 1, &[BitVector::ones(1).concat(x)]);
    let body = code.generator().prepend_column(&BitVector::zeros(code.k()));
    top.vstack(&body)
}

/// `[[1, x], [0, G]]` for an LCD code and an even-weight `x` in the dual.
pub fn extend_row_dual(code: &LinearCode, x: &BitVector) -> Result<ConstructionOutcome> {
    require_lcd(code)?;
    if x.len() != code.n() {
        return Err(Error::DimensionMismatch(format!("x has length {}, expected {}", x.len(), code.n())));
    }
    if !code.generator().mul_vector(x).is_zero() {
        return Err(Error::pre("x is not in the dual code"));
    }
    if x.weight() % 2 == 1 {
        return Err(Error::pre("x must have even weight"));
    }
    let out = LinearCode::new(prepend_row(code, x))?;
    Ok(ConstructionOutcome::new(out, None, true, Witness::Row { x: x.clone() }))
}

/// Result of [`extend_systematic`]: the verdict, and the code when it is LCD.
#[derive(Clone, Debug)]
pub struct SystematicExtension {
    pub is_lcd: bool,
    pub outcome: Option<ConstructionOutcome>,
}

/// `[[1, (0_k, x)], [0, G]]` for `x` of length `n - k`.
///
/// The generator must already have identity Gram matrix (odd-like code) or a
/// symplectic one (even-like code), and its first `k` columns must be
/// independent. The verdict is read off `x` alone: for an even-like code the
/// extension is LCD iff `wt(x)` is even; for an odd-like code iff `wt(x)` has
/// the parity of the number of rows not orthogonal to `(0_k, x)`.
pub fn extend_systematic(code: &LinearCode, x: &BitVector) -> Result<SystematicExtension> {
    require_lcd(code)?;
    let (n, k) = (code.n(), code.k());
    if x.len() != n - k {
        return Err(Error::DimensionMismatch(format!("x has length {}, expected {}", x.len(), n - k)));
    }
    let even = code.is_even_like();
    let expected = if even { BitMatrix::symplectic(k / 2) } else { BitMatrix::identity(k) };
    if code.gram() != expected {
        return Err(Error::pre(if even {
            "generator is not a symplectic basis"
        } else {
            "generator is not an orthonormal basis"
        }));
    }
    if !code.leading_columns_independent() {
        return Err(Error::pre("first k columns of the generator are dependent"));
    }
    let padded = BitVector::zeros(k).concat(x);
    let rows_hit = code.rows().iter().filter(|r| r.dot(&padded)).count();
    let is_lcd = if even {
        x.weight() % 2 == 0
    } else {
        x.weight() % 2 == rows_hit % 2
    };
    let witness = Witness::Systematic {
        x: x.clone(),
        padded: padded.clone(),
        rows_hit,
    };
    let outcome = if is_lcd {
        let out = LinearCode::new(prepend_row(code, &padded))?;
        Some(ConstructionOutcome::new(out, None, true, witness))
    } else {
        None
    };
    Ok(SystematicExtension { is_lcd, outcome })
}

fn require_hull_pairing(code: &LinearCode, x: &BitVector) -> Result<usize> {
    let s = code.hull_dimension();
    if s == 0 {
        return Err(Error::pre("code has trivial hull"));
    }
    if x.len() != code.n() {
        return Err(Error::DimensionMismatch(format!("x has length {}, expected {}", x.len(), code.n())));
    }
    if code.hull().rows().iter().all(|h| !h.dot(x)) {
        return Err(Error::pre("x is orthogonal to the whole hull"));
    }
    Ok(s)
}

fn check_hull_drop(out: &LinearCode, s: usize) -> Result<()> {
    if out.hull_dimension() != s - 1 {
        return Err(Error::internal(format!(
            "hull dimension {} after extension, expected {}",
            out.hull_dimension(),
            s - 1
        )));
    }
    Ok(())
}

/// `[[1, x], [0, G]]` where `x` pairs to 1 with some hull vector; the hull
/// dimension drops by exactly one.
pub fn extend_hull_drop(code: &LinearCode, x: &BitVector) -> Result<ConstructionOutcome> {
    let s = require_hull_pairing(code, x)?;
    let out = LinearCode::new(prepend_row(code, x))?;
    check_hull_drop(&out, s)?;
    Ok(ConstructionOutcome::new(out, None, s == 1, Witness::Row { x: x.clone() }))
}

/// `[y^T | G]` with `y_i = <x, r_i>` over the generator rows `r_i`, where `x`
/// pairs to 1 with some hull vector; the hull dimension drops by exactly one.
///
/// `aux` is either `x` (length `n`) or the column `y` itself (length `k`). A
/// column `y` is accepted when some `λ` in the kernel of the Gram matrix has
/// `λ·y = 1`, which is the same condition expressed on `y = G x^T`.
pub fn extend_column_hull_drop(code: &LinearCode, aux: &BitVector) -> Result<ConstructionOutcome> {
    let (n, k) = (code.n(), code.k());
    let s = code.hull_dimension();
    if s == 0 {
        return Err(Error::pre("code has trivial hull"));
    }
    let y = if aux.len() == n {
        require_hull_pairing(code, aux)?;
        code.generator().mul_vector(aux)
    } else if aux.len() == k {
        let kernel = code.gram().nullspace();
        if kernel.row_vectors().iter().all(|l| !l.dot(aux)) {
            return Err(Error::pre("column is orthogonal to every hull coefficient vector"));
        }
        aux.clone()
    } else {
        return Err(Error::DimensionMismatch(format!(
            "auxiliary vector has length {}, expected {n} or {k}",
            aux.len()
        )));
    };
    let d = known_distance(code)?;
    let out = LinearCode::new(code.generator().prepend_column(&y))?;
    check_hull_drop(&out, s)?;
    Ok(ConstructionOutcome::new(out, d, s == 1, Witness::Column { y }))
}

/// All `2^(k-1)` `[n+2, k, >= d+1]` LCD codes from an `[n, k, d]` LCD code
/// with `k` and `d` odd.
///
/// The code is first extended by a parity bit, giving an even-like code with
/// one-dimensional hull. With a basis `g_1', .., g_k'` whose first row spans
/// that hull and whose remaining rows are symplectic, each choice
/// `y = (1, y_2, .., y_k)` yields rows `(g_1', 1)` and `(g_i' + y_i g_1', 0)`.
/// Outputs are ordered by `(y_2, .., y_k)` read as a binary number, `y_2`
/// most significant.
pub fn extend_two_multi(code: &LinearCode) -> Result<Vec<ConstructionOutcome>> {
    require_lcd(code)?;
    let k = code.k();
    if k % 2 == 0 {
        return Err(Error::pre("dimension must be odd"));
    }
    if k > K_FULL {
        return Err(Error::pre(format!("dimension {k} too large to enumerate 2^(k-1) extensions")));
    }
    let d = require_odd_distance(code)?;
    let parity: BitVector = BitVector::from_bools(code.rows().iter().map(|r| r.weight() % 2 == 1));
    let extended = LinearCode::new(code.generator().append_column(&parity))?;
    let cert = hull_normal_basis(&extended);
    if cert.shape.s != 1 {
        return Err(Error::internal(format!(
            "parity extension has hull dimension {}, expected 1",
            cert.shape.s
        )));
    }
    let basis = cert.basis;
    let g1 = basis.row(0);
    let mut out = Vec::with_capacity(1 << (k - 1));
    for bits in 0u64..1 << (k - 1) {
        let mut y = BitVector::zeros(k);
        y.set(0, true);
        for i in 1..k {
            y.set(i, bits >> (k - 1 - i) & 1 == 1);
        }
        let mut rows = Vec::with_capacity(k);
        rows.push(g1.concat(&BitVector::ones(1)));
        for i in 1..k {
            let mut r = basis.row(i);
            if y.get(i) {
                r.xor_assign(&g1);
            }
            rows.push(r.concat(&BitVector::zeros(1)));
        }
        let gen = BitMatrix::from_rows(code.n() + 2, &rows);
        out.push(ConstructionOutcome::new(
            LinearCode::new(gen)?,
            Some(d + 1),
            true,
            Witness::Choice {
                y,
                basis: basis.clone(),
            },
        ));
    }
    Ok(out)
}
