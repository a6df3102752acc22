//! Codes over `F_{2^m}` and their expansion to binary codes through a
//! self-dual basis.
//!
//! Field elements are integers `0..2^m` whose bits are polynomial
//! coefficients (bit `i` is the coefficient of `x^i`) reduced modulo a fixed
//! irreducible polynomial.

use serde::Serialize;

use crate::code::LinearCode;
use crate::combin::Combinations;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest degree for which [`find_self_dual_basis`] searches.
pub const M_MAX: usize = 4;
/// Largest degree accepted for a field.
const M_LIMIT: usize = 16;

pub type Element = u32;

/// The field `F_{2^m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExtField {
    m: usize,
    modulus: u32,
}

impl ExtField {
    /// The field with the standard modulus: `x+1`, `x^2+x+1`, `x^3+x+1`,
    /// `x^4+x+1` for `m = 1..=4`.
    pub fn new(m: usize) -> Result<Self> {
        let modulus = match m {
            1 => 0b11,
            2 => 0b111,
            3 => 0b1011,
            4 => 0b10011,
            _ => {
                return Err(Error::Field(format!(
                    "no standard modulus for degree {m}; use ExtField::with_modulus"
                )))
            }
        };
        Ok(Self { m, modulus })
    }

    /// The field defined by an irreducible `modulus` of degree `m`.
    pub fn with_modulus(m: usize, modulus: u32) -> Result<Self> {
        if m == 0 || m > M_LIMIT {
            return Err(Error::Field(format!("degree {m} outside 1..={M_LIMIT}")));
        }
        if modulus >> m != 1 {
            return Err(Error::Field(format!("modulus {modulus:#b} does not have degree {m}")));
        }
        if !is_irreducible(modulus, m) {
            return Err(Error::Field(format!("modulus {modulus:#b} is reducible")));
        }
        Ok(Self { m, modulus })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        1 << self.m
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..self.order()
    }

    pub fn contains(&self, x: Element) -> bool {
        x < self.order()
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        a ^ b
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        poly_mod(clmul(a, b), self.modulus, self.m)
    }

    pub fn pow(&self, mut a: Element, mut e: u64) -> Element {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Element) -> Option<Element> {
        (a != 0).then(|| self.pow(a, (1u64 << self.m) - 2))
    }

    /// `x + x^2 + .. + x^(2^(m-1))`, which lies in `{0, 1}`.
    pub fn trace(&self, x: Element) -> bool {
        let mut acc = 0;
        let mut p = x;
        for _ in 0..self.m {
            acc ^= p;
            p = self.mul(p, p);
        }
        debug_assert!(acc <= 1);
        acc == 1
    }

    pub fn dot(&self, x: &[Element], y: &[Element]) -> Element {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| acc ^ self.mul(a, b))
    }
}

fn clmul(a: u32, b: u32) -> u64 {
    let mut acc = 0u64;
    for i in 0..32 {
        if b >> i & 1 == 1 {
            acc ^= (a as u64) << i;
        }
    }
    acc
}

fn poly_mod(mut a: u64, modulus: u32, m: usize) -> u32 {
    for i in (m..64).rev() {
        if a >> i & 1 == 1 {
            a ^= (modulus as u64) << (i - m);
        }
    }
    a as u32
}

fn is_irreducible(modulus: u32, m: usize) -> bool {
    // No factor of degree 1..=m/2.
    (2u32..1 << (m / 2 + 1)).all(|f| {
        let deg = 31 - f.leading_zeros() as usize;
        deg == 0 || poly_mod(modulus as u64, f, deg) != 0
    })
}

/// Basis `α_1, .., α_m` of `F_{2^m}` over `F_2` with `Tr(α_i α_j) = δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfDualBasis {
    pub field: ExtField,
    pub alphas: Vec<Element>,
}

impl SelfDualBasis {
    pub fn verify(&self) -> Result<()> {
        let f = &self.field;
        for (i, &a) in self.alphas.iter().enumerate() {
            for (j, &b) in self.alphas.iter().enumerate() {
                if f.trace(f.mul(a, b)) != (i == j) {
                    return Err(Error::Field(format!("Tr(α_{} α_{}) has the wrong value", i + 1, j + 1)));
                }
            }
        }
        if self.alphas.len() != f.degree() {
            return Err(Error::Field("basis has the wrong size".into()));
        }
        Ok(())
    }

    /// `φ(x) = (Tr(x α_1), .., Tr(x α_m))`.
    pub fn expand_element(&self, x: Element) -> BitVector {
        BitVector::from_bools(self.alphas.iter().map(|&a| self.field.trace(self.field.mul(x, a))))
    }
}

/// Lexicographically least self-dual basis, found by exhaustive search.
pub fn find_self_dual_basis(field: &ExtField) -> Result<SelfDualBasis> {
    let m = field.degree();
    if m > M_MAX {
        return Err(Error::Field(format!(
            "self-dual basis search is limited to degree {M_MAX}, got {m}"
        )));
    }
    let nonzero: Vec<Element> = (1..field.order()).collect();
    // The condition is symmetric, so the least tuple is increasing.
    for combo in Combinations::new(nonzero.len(), m) {
        let basis = SelfDualBasis {
            field: *field,
            alphas: combo.iter().map(|&i| nonzero[i]).collect(),
        };
        if basis.verify().is_ok() {
            return Ok(basis);
        }
    }
    Err(Error::internal(format!("no self-dual basis of F_(2^{m})")))
}

/// `φ_n(x) = (φ(x_1), .., φ(x_n))`, of length `m n`.
pub fn expand_vector(basis: &SelfDualBasis, x: &[Element]) -> BitVector {
    let mut out = BitVector::zeros(0);
    for &xi in x {
        out = out.concat(&basis.expand_element(xi));
    }
    out
}

/// A linear code over `F_{2^m}` with a full-rank generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtFieldCode {
    field: ExtField,
    n: usize,
    gen: Vec<Vec<Element>>,
}

impl ExtFieldCode {
    pub fn new(field: ExtField, n: usize, gen: Vec<Vec<Element>>) -> Result<Self> {
        for row in &gen {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!("row has length {}, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| !field.contains(x)) {
                return Err(Error::Field(format!("element {bad} outside F_(2^{})", field.degree())));
            }
        }
        let rank = rank(&field, &gen);
        if rank != gen.len() {
            return Err(Error::RankDeficient { rank, rows: gen.len() });
        }
        Ok(Self { field, n, gen })
    }

    /// The code spanned by `rows`, with a basis chosen from them.
    pub fn spanned_by(field: ExtField, n: usize, rows: &[Vec<Element>]) -> Result<Self> {
        let mut kept: Vec<Vec<Element>> = Vec::new();
        for r in rows {
            kept.push(r.clone());
            if rank(&field, &kept) < kept.len() {
                kept.pop();
            }
        }
        Self::new(field, n, kept)
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn generator(&self) -> &[Vec<Element>] {
        &self.gen
    }

    /// Euclidean Gram matrix `G G^T` over the field.
    pub fn gram(&self) -> Vec<Vec<Element>> {
        self.gen
            .iter()
            .map(|a| self.gen.iter().map(|b| self.field.dot(a, b)).collect())
            .collect()
    }

    pub fn hull_dimension(&self) -> usize {
        self.k() - rank(&self.field, &self.gram())
    }

    pub fn is_lcd(&self) -> bool {
        self.hull_dimension() == 0
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.gram().iter().flatten().all(|&x| x == 0)
    }

    /// The hull, with basis `λ G` over the left kernel of the Gram matrix.
    pub fn hull(&self) -> Self {
        let kernel = nullspace(&self.field, &self.gram(), self.k());
        let rows: Vec<Vec<Element>> = kernel.iter().map(|l| self.combine(l)).collect();
        Self::new(self.field, self.n, rows).expect("hull basis is independent")
    }

    pub fn dual(&self) -> Self {
        let rows = nullspace(&self.field, &self.gen, self.n);
        Self::new(self.field, self.n, rows).expect("kernel basis is independent")
    }

    fn combine(&self, coeffs: &[Element]) -> Vec<Element> {
        let mut out = vec![0; self.n];
        for (row, &c) in self.gen.iter().zip(coeffs) {
            if c != 0 {
                for (o, &x) in out.iter_mut().zip(row) {
                    *o ^= self.field.mul(c, x);
                }
            }
        }
        out
    }

    /// Minimum Hamming distance by enumerating all `2^(mk)` codewords.
    pub fn min_distance(&self) -> Result<usize> {
        let k = self.k();
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        let q = self.field.order() as u64;
        let total = (q as u128).pow(k as u32);
        if total > 1 << 26 {
            return Err(Error::pre(format!("{total} codewords are too many to enumerate")));
        }
        let mut best = usize::MAX;
        let mut coeffs = vec![0 as Element; k];
        for idx in 1..total as u64 {
            let mut r = idx;
            for c in coeffs.iter_mut() {
                *c = (r % q) as Element;
                r /= q;
            }
            let w = self.combine(&coeffs).iter().filter(|&&x| x != 0).count();
            best = best.min(w);
        }
        Ok(best)
    }
}

/// Rank of a matrix over the field.
pub fn rank(field: &ExtField, rows: &[Vec<Element>]) -> usize {
    echelon(field, rows).1.len()
}

fn echelon(field: &ExtField, rows: &[Vec<Element>]) -> (Vec<Vec<Element>>, Vec<usize>) {
    let mut m: Vec<Vec<Element>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let t = field.mul(f, m[r][j]);
                    m[i][j] ^= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{x : M x^T = 0}` for a matrix with `cols` columns.
fn nullspace(field: &ExtField, rows: &[Vec<Element>], cols: usize) -> Vec<Vec<Element>> {
    let (rref, pivots) = echelon(field, rows);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0; cols];
            x[f] = 1;
            for (row, &p) in rref.iter().zip(&pivots) {
                x[p] = row[f];
            }
            x
        })
        .collect()
}

/// Binary `[mn, mk]` code generated by `φ_n(α_j g_i)` over generator rows
/// `g_i` and basis elements `α_j`.
pub fn expand_code(code: &ExtFieldCode, basis: &SelfDualBasis) -> Result<LinearCode> {
    if basis.field != code.field {
        return Err(Error::Field("basis and code are over different fields".into()));
    }
    let f = &code.field;
    let mn = code.n * f.degree();
    let mut rows = Vec::with_capacity(code.k() * f.degree());
    for g in &code.gen {
        for &a in &basis.alphas {
            let scaled: Vec<Element> = g.iter().map(|&x| f.mul(a, x)).collect();
            rows.push(expand_vector(basis, &scaled));
        }
    }
    LinearCode::new(BitMatrix::from_rows(mn, &rows))
}

/// Lower bound on `d_LCD(n, k)` from an LCD code over `F_{2^m}` with
/// parameters `[floor(n/m), ceil(k/m), d_ext]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionBound {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub n_ext: usize,
    pub k_ext: usize,
    pub bound: usize,
}

pub fn expansion_bound(n: usize, k: usize, m: usize, d_ext: usize) -> Result<ExpansionBound> {
    if n == 0 || k == 0 || m == 0 || d_ext == 0 {
        return Err(Error::pre("expansion bound inputs must be positive"));
    }
    if k > n {
        return Err(Error::pre(format!("dimension {k} exceeds length {n}")));
    }
    Ok(ExpansionBound {
        n,
        k,
        m,
        n_ext: n / m,
        k_ext: k.div_ceil(m),
        bound: d_ext,
    })
}
