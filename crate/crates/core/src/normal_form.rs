//! Bases with prescribed Gram matrices.
//!
//! Every routine here works on a [`Congruence`] workspace, so the basis and
//! its Gram matrix move together and the final shape can be checked exactly.

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{reduce_form, BitMatrix, BitVector, Congruence, FormBlocks, RowReducer};

/// Kind of an invertible diagonal block of a Gram matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    /// Direct sum of `[[0,1],[1,0]]` blocks.
    Symplectic,
    /// Identity.
    Orthonormal,
    /// Zero-sized block.
    Absent,
}

impl BlockKind {
    fn of(blocks: &FormBlocks) -> Self {
        if !blocks.orthonormal.is_empty() {
            debug_assert!(blocks.pairs.is_empty());
            BlockKind::Orthonormal
        } else if !blocks.pairs.is_empty() {
            BlockKind::Symplectic
        } else {
            BlockKind::Absent
        }
    }

    fn fill(self, g: &mut BitMatrix, start: usize, len: usize) {
        match self {
            BlockKind::Orthonormal => {
                for i in start..start + len {
                    g.set(i, i, true);
                }
            }
            BlockKind::Symplectic => {
                for i in (start..start + len).step_by(2) {
                    g.set(i, i + 1, true);
                    g.set(i + 1, i, true);
                }
            }
            BlockKind::Absent => assert_eq!(len, 0),
        }
    }
}

/// Block structure of a Gram matrix
///
/// ```text
///  0_s   0    I_s  0
///  0     A_1  0    0
///  I_s   0    A_2  0
///  0     0    0    A_3
/// ```
///
/// with `A_2 = diag(1,..,1,0,..,0)` having `s1` ones. The first `k1` rows
/// (hull rows and the `A_1` block) span the chosen subcode. When the whole
/// code is the subcode (`k1 = k`) the coupling rows and `A_3` are empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GramShape {
    pub k: usize,
    pub k1: usize,
    pub s: usize,
    pub a1: BlockKind,
    pub s1: usize,
    pub a3: BlockKind,
    pub t: usize,
}

impl GramShape {
    /// Number of coupling rows (`s`, or 0 when there is no complement).
    pub fn coupled(&self) -> usize {
        self.k - self.k1 - self.t
    }

    /// Index of the first `A_3` row.
    pub fn a3_start(&self) -> usize {
        self.k1 + self.coupled()
    }

    pub fn expected_gram(&self) -> BitMatrix {
        let mut g = BitMatrix::zeros(self.k, self.k);
        self.a1.fill(&mut g, self.s, self.k1 - self.s);
        let p = self.coupled();
        for i in 0..p {
            g.set(i, self.k1 + i, true);
            g.set(self.k1 + i, i, true);
        }
        for i in 0..self.s1.min(p) {
            g.set(self.k1 + i, self.k1 + i, true);
        }
        self.a3.fill(&mut g, self.a3_start(), self.t);
        g
    }

    fn consistent(&self) -> bool {
        let p = self.k.checked_sub(self.k1 + self.t);
        matches!(p, Some(p) if p == 0 || p == self.s)
            && self.s <= self.k1
            && self.s1 <= self.s
            && (self.a1 == BlockKind::Absent) == (self.k1 == self.s)
            && (self.a3 == BlockKind::Absent) == (self.t == 0)
    }
}

/// A basis together with the block shape of its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormCertificate {
    pub basis: BitMatrix,
    pub shape: GramShape,
}

impl NormalFormCertificate {
    /// Checks that the Gram matrix of the basis is exactly the declared shape.
    pub fn verify(&self) -> Result<()> {
        if !self.shape.consistent() || self.basis.rows() != self.shape.k {
            return Err(Error::internal(format!("inconsistent gram shape {:?}", self.shape)));
        }
        if self.basis.gram() != self.shape.expected_gram() {
            return Err(Error::internal("basis gram does not match its declared shape"));
        }
        Ok(())
    }

    pub fn row(&self, i: usize) -> BitVector {
        self.basis.row(i)
    }

    /// Generator of the subcode spanned by the first `k1` rows.
    pub fn subcode(&self) -> LinearCode {
        let idx: Vec<usize> = (0..self.shape.k1).collect();
        LinearCode::new(self.basis.select_rows(&idx)).expect("basis rows are independent")
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::new(self.basis.clone()).expect("basis rows are independent")
    }
}

/// Basis with Gram matrix `diag(0_s, A)`: the first `s` rows span the hull and
/// `A` is the identity for odd-like codes and a symplectic form otherwise.
pub fn hull_normal_basis(code: &LinearCode) -> NormalFormCertificate {
    let mut ws = Congruence::from_gram(code.generator().clone());
    let positions: Vec<usize> = (0..ws.len()).collect();
    let blocks = reduce_form(&mut ws, &positions, true);
    ws.permute(&blocks.ordering());
    let k = code.k();
    let s = blocks.radical.len();
    let cert = NormalFormCertificate {
        basis: ws.basis,
        shape: GramShape {
            k,
            k1: k,
            s,
            a1: BlockKind::of(&blocks),
            s1: 0,
            a3: BlockKind::Absent,
            t: 0,
        },
    };
    debug_assert!(cert.verify().is_ok());
    cert
}

/// Basis with identity Gram matrix of an odd-like LCD code.
pub fn orthonormal_basis(code: &LinearCode) -> Result<BitMatrix> {
    if !code.is_lcd() {
        return Err(Error::pre("orthonormal basis requires an LCD code"));
    }
    if code.is_even_like() {
        return Err(Error::pre("an even-like code has no orthonormal basis"));
    }
    Ok(hull_normal_basis(code).basis)
}

/// Basis `b_1, b_1', b_2, b_2', ..` with `<b_i, b_i'> = 1` and all other
/// products zero, for an even-like LCD code.
pub fn symplectic_basis(code: &LinearCode) -> Result<BitMatrix> {
    if !code.is_lcd() {
        return Err(Error::pre("symplectic basis requires an LCD code"));
    }
    if !code.is_even_like() {
        return Err(Error::pre("an odd-like code has no symplectic basis"));
    }
    Ok(hull_normal_basis(code).basis)
}

/// Extends the odd-weight codeword `g1` to a basis `g1, g2, .., gk` with
/// `<g1, gi> = 0` for `i >= 2`.
pub fn complete_orthogonal_basis(code: &LinearCode, g1: &BitVector) -> Result<BitMatrix> {
    if g1.weight() % 2 == 0 {
        return Err(Error::pre("first vector must have odd weight"));
    }
    if !code.contains(g1) {
        return Err(Error::pre("first vector is not a codeword"));
    }
    let mut red = RowReducer::new(code.n());
    red.insert(g1.clone());
    let mut rows = vec![g1.clone()];
    for r in code.rows() {
        if red.insert(r.clone()) {
            rows.push(if g1.dot(&r) { r.xor(g1) } else { r });
        }
    }
    Ok(BitMatrix::from_rows(code.n(), &rows))
}

/// Basis of `code` whose first rows span the subcode `sub` and whose Gram
/// matrix has the block shape of [`GramShape`].
///
/// The reduction runs in five passes: clear the products of the complement
/// with the invertible part of the subcode; bring the coupling between the
/// complement and the hull of the subcode to `I_s` by elimination with
/// lowest-index pivots; clear the remaining coupling and the off-diagonal part
/// of the coupled block; sort the coupled diagonal ones-first; and reduce the
/// remaining block.
pub fn subcode_normal_form(code: &LinearCode, sub: &LinearCode) -> Result<NormalFormCertificate> {
    if sub.n() != code.n() || !sub.is_subcode_of(code) {
        return Err(Error::pre("subcode is not contained in the code"));
    }
    if sub.k() >= code.k() {
        return Err(Error::pre("subcode must have smaller dimension than the code"));
    }
    if !code.is_lcd() {
        return Err(Error::pre("subcode normal form requires an LCD code"));
    }
    let k = code.k();
    let k1 = sub.k();
    let hull = hull_normal_basis(sub);
    let s = hull.shape.s;
    let a1 = hull.shape.a1;

    let mut red = RowReducer::new(code.n());
    let mut rows = hull.basis.row_vectors();
    for r in &rows {
        red.insert(r.clone());
    }
    for r in code.rows() {
        if red.insert(r.clone()) {
            rows.push(r);
        }
    }
    let mut ws = Congruence::from_gram(BitMatrix::from_rows(code.n(), &rows));
    let h: Vec<usize> = (0..s).collect();
    let q: Vec<usize> = (k1..k).collect();

    // Complement orthogonal to the invertible part of the subcode.
    for &qi in &q {
        match a1 {
            BlockKind::Orthonormal => {
                for a in s..k1 {
                    if ws.form(qi, a) {
                        ws.add(qi, a);
                    }
                }
            }
            BlockKind::Symplectic => {
                for b in (s..k1).step_by(2) {
                    let bp = b + 1;
                    let with_bp = ws.form(qi, bp);
                    let with_b = ws.form(qi, b);
                    if with_bp {
                        ws.add(qi, b);
                    }
                    if with_b {
                        ws.add(qi, bp);
                    }
                }
            }
            BlockKind::Absent => {}
        }
    }

    // Coupling with the hull brought to I_s.
    for (i, &hi) in h.iter().enumerate() {
        let target = k1 + i;
        let pivot = (target..k)
            .find(|&r| ws.form(r, hi))
            .ok_or_else(|| Error::internal("coupling with the subcode hull is rank deficient"))?;
        ws.swap(target, pivot);
        for r in k1..k {
            if r != target && ws.form(r, hi) {
                ws.add(r, target);
            }
        }
    }
    let p: Vec<usize> = (k1..k1 + s).collect();
    let rest: Vec<usize> = (k1 + s..k).collect();

    // Rest orthogonal to the coupled rows; coupled block made diagonal.
    for &r in &rest {
        for i in 0..s {
            if ws.form(r, p[i]) {
                ws.add(r, h[i]);
            }
        }
    }
    for i in 0..s {
        for j in i + 1..s {
            if ws.form(p[i], p[j]) {
                ws.add(p[i], h[j]);
            }
        }
    }

    // Odd coupled rows first, hull rows permuted alongside.
    let mut perm: Vec<usize> = (0..s).filter(|&i| ws.form(p[i], p[i])).collect();
    let s1 = perm.len();
    perm.extend((0..s).filter(|&i| !ws.form(p[i], p[i])));
    let mut order: Vec<usize> = (0..k).collect();
    for (new, &old) in perm.iter().enumerate() {
        order[new] = old;
        order[k1 + new] = k1 + old;
    }
    ws.permute(&order);

    // Remaining block.
    let blocks = reduce_form(&mut ws, &rest, true);
    if !blocks.radical.is_empty() {
        return Err(Error::internal("complement block is singular"));
    }
    let mut order: Vec<usize> = (0..k1 + s).collect();
    order.extend(blocks.ordering());
    ws.permute(&order);

    let cert = NormalFormCertificate {
        basis: ws.basis,
        shape: GramShape {
            k,
            k1,
            s,
            a1,
            s1,
            a3: BlockKind::of(&blocks),
            t: rest.len(),
        },
    };
    cert.verify()?;
    Ok(cert)
}

/// Indices (0-based) of certificate rows summing to the all-one vector, for a
/// certificate of a code containing it.
///
/// The set is the first `s1` hull rows, plus the `A_1` rows when the subcode is
/// odd-like, plus the `A_3` rows when `A_3` is the identity.
pub fn recover_all_one(cert: &NormalFormCertificate) -> Result<Vec<usize>> {
    let shape = &cert.shape;
    let mut idx: Vec<usize> = (0..shape.s1).collect();
    if shape.a1 == BlockKind::Orthonormal {
        idx.extend(shape.s..shape.k1);
    }
    if shape.a3 == BlockKind::Orthonormal {
        idx.extend(shape.a3_start()..shape.k);
    }
    let mut sum = BitVector::zeros(cert.basis.cols());
    for &i in &idx {
        sum.xor_assign(&cert.row(i));
    }
    if !sum.is_all_one() {
        return Err(Error::internal("selected rows do not sum to the all-one vector"));
    }
    Ok(idx)
}

/// Turns a basis whose Gram matrix is a direct sum of `[1]` blocks and `2x2`
/// blocks with off-diagonal 1 into an orthonormal basis.
///
/// Pairs with exactly one odd row get the even row replaced by the sum of both.
/// Pairs of even rows `u, v` are fixed against an odd anchor `a` by
/// `u + a, v + a, a + u + v`; the anchor for the next pair is the new `a`.
pub fn type_classify_and_orthogonalize(basis: &BitMatrix) -> Result<BitMatrix> {
    let k = basis.rows();
    let mut ws = Congruence::from_gram(basis.clone());
    let mut singles = Vec::new();
    let mut mixed = Vec::new();
    let mut even_pairs = Vec::new();
    for i in 0..k {
        let partners: Vec<usize> = (0..k).filter(|&j| j != i && ws.form(i, j)).collect();
        match partners.as_slice() {
            [] if ws.form(i, i) => singles.push(i),
            [] => return Err(Error::pre(format!("row {i} is orthogonal to the whole basis"))),
            [j] if *j > i => {
                let j = *j;
                let back: usize = (0..k).filter(|&x| x != j && ws.form(j, x)).count();
                if back != 1 {
                    return Err(Error::pre("gram matrix is not block diagonal"));
                }
                match (ws.form(i, i), ws.form(j, j)) {
                    (false, true) => mixed.push((i, j)),
                    (true, false) => mixed.push((j, i)),
                    (false, false) => even_pairs.push((i, j)),
                    (true, true) => return Err(Error::pre("pair of odd rows with nonzero product")),
                }
            }
            [_] => {}
            _ => return Err(Error::pre("gram matrix is not block diagonal")),
        }
    }
    for &(even, odd) in &mixed {
        ws.add(even, odd);
        singles.push(even);
    }
    if !even_pairs.is_empty() {
        let anchor = *singles
            .iter()
            .min()
            .ok_or_else(|| Error::internal("no odd row available to fix even pairs"))?;
        for &(u, v) in &even_pairs {
            ws.add(u, anchor);
            ws.add(v, anchor);
            ws.add(anchor, u);
            ws.add(anchor, v);
        }
    }
    if ws.gram != BitMatrix::identity(k) {
        return Err(Error::internal("orthogonalization did not reach the identity"));
    }
    Ok(ws.basis)
}
