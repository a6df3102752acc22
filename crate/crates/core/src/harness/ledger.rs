//! Replayable construction records.
//!
//! A ledger is a JSON-lines file of [`LedgerRecord`]s. Each record names an
//! operation, the source of its input code, optional auxiliary data and the
//! expected `[n, k, d]` of the result. Input sources:
//!
//! * `inline:ROW,ROW,..` binary generator rows;
//! * `inline-ext:M:ROW;ROW;..` rows over `F_{2^M}`, entries separated by spaces;
//! * `search:n,k,d[,class][@seed]` a code found by [`search`];
//! * `external:NAME` the file `NAME.gen1` (or `NAME.extgen1`) in the seed directory;
//! * `ref:ID` the output of an earlier record.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::code::{CoordinateSet, LinearCode};
use crate::constructions::{
    extend_column_hull_drop, extend_even, extend_hull_drop, extend_odd_two, extend_row_dual, extend_systematic,
    extend_two_multi, hull_puncture, hull_shorten, puncture_even_lcd, shorten_odd_lcd,
};
use crate::error::{Error, Result};
use crate::expansion::{expand_code, find_self_dual_basis, Element, ExtField, ExtFieldCode};
use crate::format::{parse_extgen1, parse_gen1};
use crate::gf2::{BitMatrix, BitVector};
use crate::harness::search::{search, CodeClass, SearchRequest};
use crate::normal_form::hull_normal_basis;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerInputs {
    pub code: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRecord {
    pub id: String,
    pub op: String,
    pub inputs: LedgerInputs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<String>,
    /// Expected `[n, k, d]`; `d` is a lower bound.
    pub expect: [usize; 3],
    /// `external` when the input needs a seed file, `builtin` otherwise.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason")]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    /// Length, dimension and LCD-ness verified; the distance is beyond the
    /// engines' budget.
    #[serde(rename = "PASS-UNVERIFIED-D")]
    PassUnverifiedDistance,
    #[serde(rename = "FAIL")]
    Fail(String),
    #[serde(rename = "SKIPPED-MISSING-SEED")]
    SkippedMissingSeed(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::PassUnverifiedDistance => "PASS-UNVERIFIED-D",
            Verdict::Fail(_) => "FAIL",
            Verdict::SkippedMissingSeed(_) => "SKIPPED-MISSING-SEED",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RowOutcome {
    pub id: String,
    pub op: String,
    pub verdict: Verdict,
    /// Output codes (several for `extend_two_multi`).
    pub outputs: Vec<LinearCode>,
    /// Measured `[n, k, d]` of the first output, `d` absent when not computable.
    pub measured: Option<(usize, usize, Option<usize>)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LedgerSummary {
    pub pass: usize,
    pub unverified: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl LedgerSummary {
    pub fn of(outcomes: &[RowOutcome]) -> Self {
        let mut s = Self::default();
        for o in outcomes {
            match o.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::PassUnverifiedDistance => s.unverified += 1,
                Verdict::Fail(_) => s.fail += 1,
                Verdict::SkippedMissingSeed(_) => s.skipped += 1,
            }
        }
        s
    }

    /// 0 all replayed rows pass, 1 some row failed, 2 nothing was replayed.
    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            1
        } else if self.pass + self.unverified == 0 && self.skipped > 0 {
            2
        } else {
            0
        }
    }
}

pub fn parse_ledger(text: &str) -> Result<Vec<LedgerRecord>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rec: LedgerRecord = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push(rec);
    }
    Ok(out)
}

pub fn read_ledger(path: &Path) -> Result<Vec<LedgerRecord>> {
    parse_ledger(&std::fs::read_to_string(path)?)
}

enum Input {
    Binary(LinearCode),
    Extension(ExtFieldCode),
}

enum Resolved {
    Ready(Input),
    Missing(String),
}

/// Replays ledger records in order.
pub struct LedgerRunner {
    seed_dir: Option<PathBuf>,
    outputs: HashMap<String, Option<LinearCode>>,
}

impl LedgerRunner {
    pub fn new(seed_dir: Option<PathBuf>) -> Self {
        Self {
            seed_dir,
            outputs: HashMap::new(),
        }
    }

    pub fn run_all(&mut self, records: &[LedgerRecord]) -> Vec<RowOutcome> {
        records.iter().map(|r| self.run(r)).collect()
    }

    pub fn run(&mut self, rec: &LedgerRecord) -> RowOutcome {
        let outcome = match self.resolve(&rec.inputs.code) {
            Ok(Resolved::Missing(why)) => RowOutcome {
                id: rec.id.clone(),
                op: rec.op.clone(),
                verdict: Verdict::SkippedMissingSeed(why),
                outputs: Vec::new(),
                measured: None,
            },
            Ok(Resolved::Ready(input)) => match apply(rec, input) {
                Ok(outputs) => judge(rec, outputs),
                Err(e) => RowOutcome {
                    id: rec.id.clone(),
                    op: rec.op.clone(),
                    verdict: Verdict::Fail(e.to_string()),
                    outputs: Vec::new(),
                    measured: None,
                },
            },
            Err(e) => RowOutcome {
                id: rec.id.clone(),
                op: rec.op.clone(),
                verdict: Verdict::Fail(format!("input: {e}")),
                outputs: Vec::new(),
                measured: None,
            },
        };
        let keep = match outcome.verdict {
            Verdict::Pass | Verdict::PassUnverifiedDistance => outcome.outputs.first().cloned(),
            _ => None,
        };
        self.outputs.insert(rec.id.clone(), keep);
        outcome
    }

    fn resolve(&self, source: &str) -> Result<Resolved> {
        let (kind, rest) = source
            .split_once(':')
            .ok_or_else(|| Error::pre(format!("input '{source}' has no source kind")))?;
        let ready = |c| Ok(Resolved::Ready(Input::Binary(c)));
        match kind {
            "inline" => {
                let rows: Vec<&str> = rest.split(',').map(str::trim).collect();
                ready(LinearCode::from_strs(&rows)?)
            }
            "inline-ext" => {
                let (m, rows) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::pre("inline-ext needs 'M:ROWS'"))?;
                let field = ExtField::new(m.parse().map_err(|_| Error::pre("bad field degree"))?)?;
                let rows: Vec<Vec<Element>> = rows
                    .split(';')
                    .map(|r| {
                        r.split_whitespace()
                            .map(|t| t.parse().map_err(|_| Error::pre(format!("bad element '{t}'"))))
                            .collect()
                    })
                    .collect::<Result<_>>()?;
                let n = rows.first().map_or(0, Vec::len);
                Ok(Resolved::Ready(Input::Extension(ExtFieldCode::new(field, n, rows)?)))
            }
            "search" => {
                let (spec, seed) = match rest.split_once('@') {
                    Some((s, seed)) => (s, Some(seed.parse().map_err(|_| Error::pre("bad search seed"))?)),
                    None => (rest, None),
                };
                let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
                if parts.len() < 3 {
                    return Err(Error::pre("search source needs n,k,d"));
                }
                let num = |s: &str| s.parse::<usize>().map_err(|_| Error::pre(format!("bad count '{s}'")));
                let mut req = SearchRequest::new(num(parts[0])?, num(parts[1])?, num(parts[2])?);
                if let Some(class) = parts.get(3) {
                    req.class = class.parse::<CodeClass>()?;
                }
                if let Some(seed) = seed {
                    req.seed = seed;
                }
                match search(&req)? {
                    Some(c) => ready(c),
                    None => Err(Error::SearchExhausted(format!("no code for '{source}'"))),
                }
            }
            "external" => {
                let Some(dir) = &self.seed_dir else {
                    return Ok(Resolved::Missing(format!("no seed directory for '{rest}'")));
                };
                let bin = dir.join(format!("{rest}.gen1"));
                let ext = dir.join(format!("{rest}.extgen1"));
                if bin.exists() {
                    ready(parse_gen1(&std::fs::read_to_string(bin)?)?)
                } else if ext.exists() {
                    Ok(Resolved::Ready(Input::Extension(parse_extgen1(&std::fs::read_to_string(ext)?)?)))
                } else {
                    Ok(Resolved::Missing(format!("seed file for '{rest}' not found")))
                }
            }
            "ref" => match self.outputs.get(rest) {
                Some(Some(c)) => ready(c.clone()),
                Some(None) => Ok(Resolved::Missing(format!("referenced row '{rest}' produced no code"))),
                None => Err(Error::pre(format!("reference to unknown or later row '{rest}'"))),
            },
            other => Err(Error::pre(format!("unknown input kind '{other}'"))),
        }
    }
}

fn binary(input: Input) -> Result<LinearCode> {
    match input {
        Input::Binary(c) => Ok(c),
        Input::Extension(_) => Err(Error::pre("operation needs a binary input code")),
    }
}

/// Auxiliary bit vector; a leading `0,...,` stands for enough zeros to reach
/// length `len`.
fn aux_bits(rec: &LedgerRecord, len: usize) -> Result<BitVector> {
    let aux = rec.aux.as_deref().ok_or_else(|| Error::pre("operation needs an auxiliary vector"))?;
    let body = aux.trim().trim_matches(|c| c == '[' || c == ']');
    match body.strip_prefix("0,...,") {
        Some(tail) => {
            let tail: BitVector = tail.parse()?;
            if tail.len() > len {
                return Err(Error::pre(format!("auxiliary vector longer than {len}")));
            }
            Ok(BitVector::zeros(len - tail.len()).concat(&tail))
        }
        None => body.parse(),
    }
}

fn aux_coords(rec: &LedgerRecord) -> Result<Option<Vec<usize>>> {
    let Some(aux) = rec.aux.as_deref() else {
        return Ok(None);
    };
    aux.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::pre(format!("bad coordinate '{s}'"))))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn single_coord(rec: &LedgerRecord) -> Result<Option<usize>> {
    match aux_coords(rec)? {
        None => Ok(None),
        Some(v) if v.len() == 1 && v[0] >= 1 => Ok(Some(v[0] - 1)),
        Some(_) => Err(Error::pre("operation takes one 1-based coordinate")),
    }
}

/// Binary image, under the lex-least self-dual basis, of the code with its
/// columns scaled by `transformation` (`id` or `diag(..)`, see
/// [`parse_transformation`]).
pub fn expand_transformed(code: &ExtFieldCode, transformation: Option<&str>) -> Result<LinearCode> {
    let f = *code.field();
    let scale = parse_transformation(transformation, code.n())?;
    if let Some(&bad) = scale.iter().find(|&&s| s == 0 || !f.contains(s)) {
        return Err(Error::pre(format!("scale {bad} is not a nonzero field element")));
    }
    let rows: Vec<Vec<Element>> = code
        .generator()
        .iter()
        .map(|r| r.iter().zip(&scale).map(|(&x, &s)| f.mul(x, s)).collect())
        .collect();
    let scaled = ExtFieldCode::new(f, code.n(), rows)?;
    expand_code(&scaled, &find_self_dual_basis(&f)?)
}

/// Column scaling `diag(a_1, .., a_r, 1, .., 1)` written with `w` for the
/// generator `2` of `F_4`, `w^2` or `w2` for `3`, and `...` for trailing ones.
pub fn parse_transformation(aux: Option<&str>, n: usize) -> Result<Vec<Element>> {
    let Some(aux) = aux.map(str::trim).filter(|a| !a.is_empty() && *a != "id") else {
        return Ok(vec![1; n]);
    };
    let inner = aux
        .strip_prefix("diag(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::pre(format!("bad transformation '{aux}'")))?;
    let mut out = Vec::new();
    for tok in inner.split(',').map(str::trim) {
        match tok {
            "..." => break,
            "w" => out.push(2),
            "w^2" | "w2" => out.push(3),
            t => out.push(t.parse().map_err(|_| Error::pre(format!("bad scale '{t}'")))?),
        }
    }
    if out.len() > n {
        return Err(Error::pre("transformation longer than the code"));
    }
    out.resize(n, 1);
    Ok(out)
}

/// `extend_systematic` wants an orthonormal or symplectic generator; a seed
/// given in another basis is rewritten explicitly here.
fn normalized(code: &LinearCode) -> Result<LinearCode> {
    if !code.is_lcd() {
        return Err(Error::pre("input code is not LCD"));
    }
    LinearCode::new(hull_normal_basis(code).basis)
}

fn apply(rec: &LedgerRecord, input: Input) -> Result<Vec<LinearCode>> {
    let one = |o: crate::constructions::ConstructionOutcome| Ok(vec![o.code]);
    match rec.op.as_str() {
        "expand_code" => {
            let Input::Extension(c) = input else {
                return Err(Error::pre("expand_code needs a code over an extension field"));
            };
            Ok(vec![expand_transformed(&c, rec.aux.as_deref())?])
        }
        "extend_even" => one(extend_even(&binary(input)?)?),
        "extend_odd_two" => one(extend_odd_two(&binary(input)?)?),
        "extend_two_multi" => Ok(extend_two_multi(&binary(input)?)?.into_iter().map(|o| o.code).collect()),
        "puncture_even_lcd" => {
            let c = binary(input)?;
            one(puncture_even_lcd(&c, single_coord(rec)?.unwrap_or(0))?)
        }
        "puncture_lcd" => {
            let c = binary(input)?;
            let coords = aux_coords(rec)?.ok_or_else(|| Error::pre("puncture_lcd needs coordinates"))?;
            let t = CoordinateSet::from_one_based(c.n(), &coords)?;
            Ok(vec![c.puncture(&t)?])
        }
        "shorten_odd_lcd" => {
            let c = binary(input)?;
            one(shorten_odd_lcd(&c, single_coord(rec)?)?)
        }
        "hull_shorten" | "hull_puncture" => {
            let c = binary(input)?;
            match aux_coords(rec)? {
                Some(coords) => {
                    if coords.len() != c.hull_dimension() {
                        return Err(Error::pre(format!(
                            "{} coordinates given for hull dimension {}",
                            coords.len(),
                            c.hull_dimension()
                        )));
                    }
                    let t = CoordinateSet::from_one_based(c.n(), &coords)?;
                    Ok(vec![if rec.op == "hull_shorten" {
                        c.shorten(&t)?
                    } else {
                        c.puncture(&t)?
                    }])
                }
                None if rec.op == "hull_shorten" => one(hull_shorten(&c)?),
                None => one(hull_puncture(&c)?),
            }
        }
        "extend_row_dual" => {
            let c = binary(input)?;
            one(extend_row_dual(&c, &aux_bits(rec, c.n())?)?)
        }
        "extend_systematic" => {
            let c = normalized(&binary(input)?)?;
            let res = extend_systematic(&c, &aux_bits(rec, c.n() - c.k())?)?;
            match res.outcome {
                Some(o) => Ok(vec![o.code]),
                None => Err(Error::pre("extension vector gives a non-LCD code")),
            }
        }
        "extend_hull_drop" => {
            let c = binary(input)?;
            one(extend_hull_drop(&c, &aux_bits(rec, c.n())?)?)
        }
        "extend_column_hull_drop" => {
            let c = binary(input)?;
            one(extend_column_hull_drop(&c, &aux_bits(rec, c.k())?)?)
        }
        other => Err(Error::pre(format!("unknown operation '{other}'"))),
    }
}

fn judge(rec: &LedgerRecord, outputs: Vec<LinearCode>) -> RowOutcome {
    let [n, k, d] = rec.expect;
    let mut verdict = Verdict::Pass;
    let mut measured = None;
    if outputs.is_empty() {
        verdict = Verdict::Fail("operation produced no code".into());
    }
    for (i, c) in outputs.iter().enumerate() {
        let dist = match c.min_distance() {
            Ok(v) => Some(v),
            Err(Error::DistanceBudget { .. }) => None,
            Err(e) => {
                verdict = Verdict::Fail(e.to_string());
                break;
            }
        };
        if i == 0 {
            measured = Some((c.n(), c.k(), dist));
        }
        if (c.n(), c.k()) != (n, k) {
            verdict = Verdict::Fail(format!("got [{}, {}], expected [{n}, {k}]", c.n(), c.k()));
            break;
        }
        if !c.is_lcd() {
            verdict = Verdict::Fail(format!("output has hull dimension {}", c.hull_dimension()));
            break;
        }
        match dist {
            Some(got) if got < d => {
                verdict = Verdict::Fail(format!("distance {got} below expected {d}"));
                break;
            }
            Some(_) => {}
            None => verdict = Verdict::PassUnverifiedDistance,
        }
    }
    RowOutcome {
        id: rec.id.clone(),
        op: rec.op.clone(),
        verdict,
        outputs,
        measured,
    }
}

/// Generator rows of the outputs of a row, for writing to disk.
pub fn output_matrices(outcome: &RowOutcome) -> Vec<&BitMatrix> {
    outcome.outputs.iter().map(LinearCode::generator).collect()
}
