//! Step-down certificates: from a binary `[n+1, k, d]` LCD code of class
//! `LCD_oe` with `k >= 2` and `d >= 3`, build an `[n, k, >= d-1]` LCD code.
//!
//! Either some double puncture `C^{u,v}` is already LCD with distance at
//! least `d-1` and a zero column is appended, or a double puncture whose
//! minimum weight span misses the all-one vector is extended by one column.

use serde::Serialize;
use serde_json::{json, Value};

use crate::code::{CoordinateSet, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::normal_form::{orthonormal_basis, subcode_normal_form, BlockKind};

/// Observed descent depths above this value are flagged in the certificate.
pub const DEPTH_FLAG: usize = 3;

/// Double puncture `C^{u,v}` of a code on coordinates `u != v` (0-based).
#[derive(Clone, Debug)]
pub struct PunctureWitness {
    pub u: usize,
    pub v: usize,
    pub punctured: LinearCode,
    pub lcd: bool,
    pub dmin: usize,
}

impl PunctureWitness {
    pub fn new(code: &LinearCode, u: usize, v: usize) -> Result<Self> {
        if u == v {
            return Err(Error::pre("puncture coordinates must differ"));
        }
        let t = CoordinateSet::new(code.n(), [u, v])?;
        let punctured = code.puncture(&t)?;
        if punctured.k() != code.k() {
            return Err(Error::pre("double puncture lost dimension"));
        }
        let lcd = punctured.is_lcd();
        let dmin = punctured.min_distance()?;
        Ok(Self {
            u,
            v,
            punctured,
            lcd,
            dmin,
        })
    }

    /// Preimage in `code` of a word of the punctured code.
    pub fn lift(&self, code: &LinearCode, word: &BitVector) -> Result<BitVector> {
        let t = [self.u.min(self.v), self.u.max(self.v)];
        let x = code
            .generator()
            .remove_columns(&t)
            .solve(word)
            .ok_or_else(|| Error::pre("word is not in the punctured code"))?;
        Ok(code.encode(&x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    PaddedPuncture,
    Extension,
}

/// One audited step: a descriptive name plus its witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub step: String,
    #[serde(flatten)]
    pub detail: Value,
}

#[derive(Clone, Debug)]
pub struct ConjectureCertificate {
    /// `(n+1, k, d)` of the input code.
    pub input_params: (usize, usize, usize),
    pub route: Route,
    /// Punctured coordinates, 0-based.
    pub pair: (usize, usize),
    pub output: LinearCode,
    pub trace: Vec<TraceStep>,
    /// Number of descents taken through the disjoint-support case.
    pub descent_depth: usize,
    /// The case analysis proposed a pair that failed verification and a
    /// lexicographic scan supplied the pair instead.
    pub fallback_used: bool,
}

impl ConjectureCertificate {
    pub fn depth_flagged(&self) -> bool {
        self.descent_depth > DEPTH_FLAG
    }

    /// Independent re-check of the output parameters.
    pub fn verify(&self) -> Result<()> {
        let (n1, k, d) = self.input_params;
        let out = &self.output;
        if out.n() != n1 - 1 || out.k() != k {
            return Err(Error::internal("certificate output has wrong length or dimension"));
        }
        if !out.is_lcd() {
            return Err(Error::internal("certificate output is not LCD"));
        }
        let got = out.min_distance()?;
        if got + 1 < d {
            return Err(Error::internal(format!("certificate output distance {got} below {}", d - 1)));
        }
        Ok(())
    }

    /// The trace as JSON lines, followed by a summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for step in &self.trace {
            out.push_str(&serde_json::to_string(step).expect("trace serializes"));
            out.push('\n');
        }
        let (n1, k, d) = self.input_params;
        let summary = json!({
            "step": "certificate",
            "input": [n1, k, d],
            "route": self.route,
            "pair": [self.pair.0 + 1, self.pair.1 + 1],
            "output": self.output.generator(),
            "output_params": [self.output.n(), self.output.k(), self.output.min_distance().ok()],
            "descent_depth": self.descent_depth,
            "depth_flagged": self.depth_flagged(),
            "fallback_used": self.fallback_used,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

fn require_step_down_input(code: &LinearCode) -> Result<usize> {
    if !code.is_lcd() {
        return Err(Error::pre(format!(
            "code is not LCD (hull dimension {})",
            code.hull_dimension()
        )));
    }
    if code.is_even_like() {
        return Err(Error::pre("code is not odd-like, so not LCD_oe"));
    }
    if !code.contains_all_one() {
        return Err(Error::pre("dual is not even-like, so not LCD_oe"));
    }
    if code.k() < 2 {
        return Err(Error::pre(format!("dimension k = {} is below 2", code.k())));
    }
    let d = code.min_distance()?;
    if d < 3 {
        return Err(Error::pre(format!("minimum distance d = {d} is below 3")));
    }
    Ok(d)
}

/// Coordinates `v` for which `C^{u,v}` is LCD, read off the hull of the
/// single puncture `C^u`.
///
/// With an orthonormal generator, the rows having a 1 at `u` sum to a vector
/// whose puncture at `u` spans the hull of `C^u`; every other coordinate in
/// its support gives an LCD double puncture. At least `d - 1` are returned.
pub fn good_puncture_pairs(code: &LinearCode, u: usize) -> Result<Vec<PunctureWitness>> {
    let d = require_step_down_input(code)?;
    if u >= code.n() {
        return Err(Error::CoordinateOutOfRange(u, code.n()));
    }
    let g = orthonormal_basis(code)?;
    let mut sum = BitVector::zeros(code.n());
    for i in 0..g.rows() {
        if g.get(i, u) {
            sum.xor_assign(&g.row(i));
        }
    }
    let mut out = Vec::new();
    for v in sum.ones_indices().into_iter().filter(|&v| v != u) {
        let w = PunctureWitness::new(code, u, v)?;
        if !w.lcd {
            return Err(Error::internal(format!(
                "double puncture at ({}, {}) is not LCD",
                u + 1,
                v + 1
            )));
        }
        out.push(w);
    }
    if out.len() + 1 < d {
        return Err(Error::internal(format!(
            "only {} LCD double punctures at coordinate {}, expected at least {}",
            out.len(),
            u + 1,
            d - 1
        )));
    }
    Ok(out)
}

/// Span of the weight-`(d-2)` codewords of the punctured code.
pub fn min_weight_span_punctured(w: &PunctureWitness, d: usize) -> Result<LinearCode> {
    if !w.lcd {
        return Err(Error::pre("punctured code is not LCD"));
    }
    if d < 3 {
        return Err(Error::pre("distance must be at least 3"));
    }
    w.punctured.codeword_span(d - 2)
}

/// Appends a column to an even-like LCD code. The result is LCD for every
/// column `y`: the Gram matrix gains `y^T y`, and `y S^{-1} y^T = 0` for the
/// alternating inverse of the original Gram matrix `S`.
pub fn column_append_even(code: &LinearCode, y: &BitVector) -> Result<LinearCode> {
    if !code.is_lcd() || !code.is_even_like() {
        return Err(Error::pre("code must be an even-like LCD code"));
    }
    if y.len() != code.k() {
        return Err(Error::DimensionMismatch(format!("column has length {}, expected {}", y.len(), code.k())));
    }
    let out = code.append_column(y)?;
    if !out.is_lcd() {
        return Err(Error::internal("column append produced a non-LCD code"));
    }
    Ok(out)
}

/// Appends the column `(y_1, .., y_{k-1}, y_k)` to an odd-like LCD code whose
/// last generator row is orthogonal to the others, choosing `y_k` so that the
/// result is LCD. Returns the code and the full column.
///
/// The chosen bit is `y_D S_D^{-1} y_D^T`, where `S_D` is the Gram matrix of
/// the first `k - 1` rows: 0 when they span an even-like code, and the parity
/// of the prefix when they are orthonormal.
pub fn column_append_odd(code: &LinearCode, y_prefix: &BitVector) -> Result<(LinearCode, BitVector)> {
    let k = code.k();
    if !code.is_lcd() || code.is_even_like() {
        return Err(Error::pre("code must be an odd-like LCD code"));
    }
    if y_prefix.len() + 1 != k {
        return Err(Error::DimensionMismatch(format!(
            "column prefix has length {}, expected {}",
            y_prefix.len(),
            k - 1
        )));
    }
    let gram = code.gram();
    if (0..k - 1).any(|i| gram.get(k - 1, i)) {
        return Err(Error::pre("last generator row is not orthogonal to the others"));
    }
    let head: Vec<usize> = (0..k - 1).collect();
    let s_d = gram.select_rows(&head).select_columns(&head);
    let inv = s_d
        .inverse()
        .ok_or_else(|| Error::internal("leading Gram block is singular"))?;
    let y_k = y_prefix.dot(&inv.mul_vector(y_prefix));
    let y = y_prefix.concat(&BitVector::from_bools([y_k]));
    let out = code.append_column(&y)?;
    if !out.is_lcd() {
        return Err(Error::internal("column append produced a non-LCD code"));
    }
    Ok((out, y))
}

/// Extends an LCD double puncture whose minimum weight span misses the
/// all-one vector to an LCD code one coordinate longer.
///
/// An odd codeword `c` orthogonal to the span and outside it is read off the
/// subcode normal form, the basis is completed with `c` last, the prefix of
/// the new column is solved so that every spanning word gains a trailing 1,
/// and the last bit is fixed by [`column_append_odd`].
pub fn extend_after_puncture(w: &PunctureWitness, span_d2: &LinearCode) -> Result<LinearCode> {
    extend_after_puncture_traced(w, span_d2).map(|(code, _)| code)
}

fn extend_after_puncture_traced(w: &PunctureWitness, span_d2: &LinearCode) -> Result<(LinearCode, Value)> {
    let p = &w.punctured;
    if !w.lcd {
        return Err(Error::pre("punctured code is not LCD"));
    }
    if span_d2.n() != p.n() || !span_d2.is_subcode_of(p) {
        return Err(Error::pre("span is not a subcode of the punctured code"));
    }
    if span_d2.contains_all_one() {
        return Err(Error::pre("span contains the all-one vector"));
    }
    let words = span_d2.rows();
    if words.windows(2).any(|pair| pair[0].weight() != pair[1].weight()) {
        return Err(Error::pre("span generator rows must share one weight"));
    }
    let k = p.k();
    let basis = if span_d2.k() == 0 {
        orthonormal_basis(p)?
    } else {
        let cert = subcode_normal_form(p, span_d2)?;
        if cert.shape.a3 != BlockKind::Orthonormal {
            return Err(Error::internal("no odd codeword orthogonal to the span"));
        }
        let c = cert.shape.a3_start();
        let mut order: Vec<usize> = (0..k).filter(|&i| i != c).collect();
        order.push(c);
        cert.basis.permute_rows(&order)
    };
    let c = basis.row(k - 1);
    let head: Vec<usize> = (0..k - 1).collect();
    let head_basis = basis.select_rows(&head);
    let prefix = if words.is_empty() {
        BitVector::zeros(k - 1)
    } else {
        let mut coords = Vec::with_capacity(words.len());
        for a in &words {
            let x = head_basis
                .solve(a)
                .ok_or_else(|| Error::internal("span is not inside the completed basis"))?;
            coords.push(x);
        }
        // λ_a · y = 1 for every spanning word a, i.e. y L^T = 1.
        let lt = BitMatrix::from_rows(k - 1, &coords).transpose();
        lt.solve(&BitVector::ones(words.len()))
            .ok_or_else(|| Error::internal("no column lifts every spanning word"))?
    };
    let completed = LinearCode::new(basis)?;
    let (out, y) = column_append_odd(&completed, &prefix)?;
    let detail = json!({
        "odd_codeword": c,
        "span_dim": span_d2.k(),
        "column": y,
    });
    Ok((out, detail))
}

struct Engine<'a> {
    code: &'a LinearCode,
    d: usize,
    trace: Vec<TraceStep>,
    pairs: Vec<Option<Vec<PunctureWitness>>>,
}

impl<'a> Engine<'a> {
    fn log(&mut self, step: &str, detail: Value) {
        self.trace.push(TraceStep {
            step: step.to_string(),
            detail,
        });
    }

    fn pairs_at(&mut self, u: usize) -> Result<&[PunctureWitness]> {
        if self.pairs[u].is_none() {
            self.pairs[u] = Some(good_puncture_pairs(self.code, u)?);
        }
        Ok(self.pairs[u].as_deref().expect("filled above"))
    }

    fn witness(&mut self, u: usize, v: usize) -> Result<PunctureWitness> {
        if let Some(w) = self.pairs_at(u)?.iter().find(|w| w.v == v) {
            return Ok(w.clone());
        }
        PunctureWitness::new(self.code, u, v)
    }

    fn padded_puncture(&mut self) -> Result<Option<PunctureWitness>> {
        let d = self.d;
        for u in 0..self.code.n() {
            let found = self.pairs_at(u)?.iter().find(|w| w.dmin + 1 >= d).cloned();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Pair proposed by the case analysis on the weight-`d` span.
    fn propose(&mut self) -> Result<((usize, usize), usize)> {
        let n = self.code.n();
        let cd = self.code.codeword_span(self.d)?;
        let ones = BitVector::ones(n);
        let Some(lambda) = cd.coordinates_of(&ones) else {
            let v = self.pairs_at(0)?[0].v;
            self.log("all_one_outside_weight_d_span", json!({ "pair": [1, v + 1] }));
            return Ok(((0, v), 0));
        };
        let basis = cd.rows();
        let mut r: Vec<BitVector> = lambda.ones_indices().into_iter().map(|i| basis[i].clone()).collect();
        self.log("all_one_decomposition", json!({ "words": r }));
        let mut depth = 0;
        loop {
            if r.len() < 2 {
                return Err(Error::internal("all-one vector is a single minimum weight word"));
            }
            if let Some((u, w1, w2)) = shared_coordinate(&r) {
                let (a, b) = (r[w1].clone(), r[w2].clone());
                let v = self
                    .pairs_at(u)?
                    .iter()
                    .map(|w| w.v)
                    .find(|&v| !a.get(v) || !b.get(v))
                    .ok_or_else(|| Error::internal("no separating coordinate for two weight-d words"))?;
                self.log(
                    "case_shared_coordinate",
                    json!({ "u": u + 1, "words": [w1 + 1, w2 + 1], "v": v + 1, "depth": depth }),
                );
                return Ok(((u, v), depth));
            }
            let v1 = self.pairs_at(0)?[0].v;
            let w0 = r
                .iter()
                .position(|x| x.get(0))
                .ok_or_else(|| Error::internal("decomposition misses coordinate 1"))?;
            if !r[w0].get(v1) {
                self.log("case_disjoint_split", json!({ "v": v1 + 1, "word": w0 + 1, "depth": depth }));
                return Ok(((0, v1), depth));
            }
            let wit = self.witness(0, v1)?;
            let span = min_weight_span_punctured(&wit, self.d)?;
            let t = [0, v1];
            let outside = (0..r.len()).find(|&w| w != w0 && !span.contains(&r[w].remove_coordinates(&t)));
            if let Some(w1) = outside {
                self.log(
                    "case_disjoint_outside_span",
                    json!({ "v": v1 + 1, "word": w1 + 1, "depth": depth }),
                );
                return Ok(((0, v1), depth));
            }
            let ones_p = BitVector::ones(n - 2);
            let Some(mu) = span.coordinates_of(&ones_p) else {
                return Ok(((0, v1), depth));
            };
            let hs = span.rows();
            let mut lifted = Vec::new();
            for i in mu.ones_indices() {
                lifted.push(wit.lift(self.code, &hs[i])?);
            }
            depth += 1;
            self.log("descent", json!({ "v": v1 + 1, "depth": depth, "words": lifted }));
            if depth > n {
                return Err(Error::SearchExhausted(format!("descent exceeded depth {n}")));
            }
            r = lifted;
        }
    }

    fn accepts(&mut self, u: usize, v: usize) -> Result<Option<(PunctureWitness, LinearCode)>> {
        let w = self.witness(u, v)?;
        if !w.lcd {
            return Ok(None);
        }
        let span = min_weight_span_punctured(&w, self.d)?;
        if span.contains_all_one() {
            return Ok(None);
        }
        Ok(Some((w, span)))
    }
}

/// Lowest coordinate covered by two of the words, with the first two such words.
fn shared_coordinate(r: &[BitVector]) -> Option<(usize, usize, usize)> {
    let n = r[0].len();
    (0..n).find_map(|u| {
        let mut hits = (0..r.len()).filter(|&w| r[w].get(u));
        let w1 = hits.next()?;
        let w2 = hits.next()?;
        Some((u, w1, w2))
    })
}

/// Builds a certified `[n, k, >= d-1]` LCD code from an `[n+1, k, d]`
/// `LCD_oe` code with `k >= 2` and `d >= 3`.
///
/// Pairs are tried with `u` ascending and `v` in hull-support order; a padded
/// puncture is preferred. Otherwise the case analysis on a decomposition of
/// the all-one vector into weight-`d` words proposes a pair, which is checked
/// before extension; if the check fails, all pairs are scanned in
/// lexicographic order and the certificate records the fallback.
pub fn certify_step_down(code: &LinearCode) -> Result<ConjectureCertificate> {
    let d = require_step_down_input(code)?;
    let n1 = code.n();
    let k = code.k();
    let mut eng = Engine {
        code,
        d,
        trace: Vec::new(),
        pairs: vec![None; n1],
    };
    eng.log("input", json!({ "n": n1, "k": k, "d": d, "class": "LCD_oe" }));

    if let Some(w) = eng.padded_puncture()? {
        eng.log(
            "padded_puncture",
            json!({ "u": w.u + 1, "v": w.v + 1, "punctured_distance": w.dmin }),
        );
        let output = w.punctured.append_zero_column();
        return finish(eng, Route::PaddedPuncture, (w.u, w.v), output, 0, false);
    }

    let ((u, v), depth) = eng.propose()?;
    let mut fallback = false;
    let chosen = match eng.accepts(u, v)? {
        Some(found) => found,
        None => {
            eng.log("candidate_rejected", json!({ "u": u + 1, "v": v + 1 }));
            fallback = true;
            let mut found = None;
            'scan: for a in 0..n1 {
                for b in 0..n1 {
                    if a != b {
                        if let Some(hit) = eng.accepts(a, b)? {
                            found = Some(hit);
                            break 'scan;
                        }
                    }
                }
            }
            let hit = found.ok_or_else(|| {
                Error::SearchExhausted("no LCD double puncture with all-one vector outside its span".into())
            })?;
            eng.log("fallback_scan", json!({ "u": hit.0.u + 1, "v": hit.0.v + 1 }));
            hit
        }
    };
    let (w, span) = chosen;
    eng.log(
        "minimum_weight_span",
        json!({ "u": w.u + 1, "v": w.v + 1, "weight": d - 2, "dim": span.k() }),
    );
    let (output, detail) = extend_after_puncture_traced(&w, &span)?;
    eng.log("extend_after_puncture", detail);
    finish(eng, Route::Extension, (w.u, w.v), output, depth, fallback)
}

fn finish(
    mut eng: Engine<'_>,
    route: Route,
    pair: (usize, usize),
    output: LinearCode,
    descent_depth: usize,
    fallback_used: bool,
) -> Result<ConjectureCertificate> {
    let dist = output.min_distance()?;
    eng.log(
        "verify_output",
        json!({ "n": output.n(), "k": output.k(), "d": dist, "lcd": output.is_lcd() }),
    );
    let cert = ConjectureCertificate {
        input_params: (eng.code.n(), eng.code.k(), eng.d),
        route,
        pair,
        output,
        trace: eng.trace,
        descent_depth,
        fallback_used,
    };
    cert.verify()?;
    Ok(cert)
}
