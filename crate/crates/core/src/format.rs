//! Text formats for generator matrices.
//!
//! `GEN1`: a header line `n k`, then `k` rows of `n` characters from `{0,1}`.
//! `EXTGEN1`: a header line `n k m`, then `k` rows of `n` integers in
//! `0..2^m`. In both, blank lines and everything after `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::expansion::{Element, ExtField, ExtFieldCode};
use crate::gf2::{BitMatrix, BitVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Gen1,
    ExtGen1,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gen1" => Ok(Format::Gen1),
            "extgen1" => Ok(Format::ExtGen1),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown format '{other}'"),
            }),
        }
    }
}

/// A parsed generator file of either format.
#[derive(Clone, Debug)]
pub enum CodeFile {
    Binary(LinearCode),
    Extension(ExtFieldCode),
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_header(line: usize, body: &str, expected: usize) -> Result<Vec<usize>> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != expected {
        return Err(parse_err(
            line,
            format!("header must have {expected} fields, found {}", fields.len()),
        ));
    }
    fields
        .iter()
        .map(|f| f.parse().map_err(|_| parse_err(line, format!("'{f}' is not a count"))))
        .collect()
}

fn check_row_count(found: usize, k: usize, last_line: usize) -> Result<()> {
    if found != k {
        return Err(parse_err(last_line, format!("expected {k} rows, found {found}")));
    }
    Ok(())
}

pub fn parse_gen1(text: &str) -> Result<LinearCode> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let hdr = parse_header(hl, header, 2)?;
    let (n, k) = (hdr[0], hdr[1]);
    if k > n {
        return Err(parse_err(hl, format!("dimension {k} exceeds length {n}")));
    }
    let mut rows = Vec::with_capacity(k);
    let mut last = hl;
    for (line, body) in lines {
        last = line;
        let bits: String = body.split_whitespace().collect();
        if bits.len() != n {
            return Err(parse_err(line, format!("row has {} symbols, expected {n}", bits.len())));
        }
        let row: BitVector = bits
            .parse()
            .map_err(|_| parse_err(line, "row may contain only '0' and '1'"))?;
        rows.push(row);
    }
    check_row_count(rows.len(), k, last)?;
    LinearCode::new(BitMatrix::from_rows(n, &rows))
}

pub fn parse_extgen1(text: &str) -> Result<ExtFieldCode> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let hdr = parse_header(hl, header, 3)?;
    let (n, k, m) = (hdr[0], hdr[1], hdr[2]);
    let field = ExtField::new(m).map_err(|e| parse_err(hl, e.to_string()))?;
    let mut rows = Vec::with_capacity(k);
    let mut last = hl;
    for (line, body) in lines {
        last = line;
        let row: Vec<Element> = body
            .split_whitespace()
            .map(|t| {
                t.parse::<Element>()
                    .ok()
                    .filter(|&x| field.contains(x))
                    .ok_or_else(|| parse_err(line, format!("'{t}' is not an element of F_(2^{m})")))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(parse_err(line, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    check_row_count(rows.len(), k, last)?;
    ExtFieldCode::new(field, n, rows)
}

/// Parses either format, chosen by the header field count unless forced.
pub fn parse_code_file(text: &str, format: Option<Format>) -> Result<CodeFile> {
    let format = match format {
        Some(f) => f,
        None => {
            let (line, header) = content_lines(text).next().ok_or_else(|| parse_err(1, "missing header"))?;
            match header.split_whitespace().count() {
                2 => Format::Gen1,
                3 => Format::ExtGen1,
                c => return Err(parse_err(line, format!("header has {c} fields, expected 2 or 3"))),
            }
        }
    };
    Ok(match format {
        Format::Gen1 => CodeFile::Binary(parse_gen1(text)?),
        Format::ExtGen1 => CodeFile::Extension(parse_extgen1(text)?),
    })
}

pub fn read_code_file(path: &Path, format: Option<Format>) -> Result<CodeFile> {
    parse_code_file(&std::fs::read_to_string(path)?, format)
}

pub fn read_gen1(path: &Path) -> Result<LinearCode> {
    parse_gen1(&std::fs::read_to_string(path)?)
}

pub fn write_gen1(code: &LinearCode) -> String {
    let mut out = format!("{} {}\n", code.n(), code.k());
    for row in code.rows() {
        let _ = writeln!(out, "{row}");
    }
    out
}

pub fn write_extgen1(code: &ExtFieldCode) -> String {
    let mut out = format!("{} {} {}\n", code.n(), code.k(), code.field().degree());
    for row in code.generator() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen1_round_trip() {
        let text = "# example\n6 2\n111000\n\n000111  # second row\n";
        let c = parse_gen1(text).unwrap();
        assert_eq!((c.n(), c.k()), (6, 2));
        assert_eq!(parse_gen1(&write_gen1(&c)).unwrap(), c);
    }

    #[test]
    fn gen1_errors_carry_lines() {
        match parse_gen1("3 1\n1101\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_gen1("3 2\n110\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_gen1("2 1\n1a\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_gen1("2 2\n11\n11\n"), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn extgen1_round_trip() {
        let text = "2 1 2\n1 2\n";
        let c = parse_extgen1(text).unwrap();
        assert_eq!((c.n(), c.k()), (2, 1));
        assert_eq!(parse_extgen1(&write_extgen1(&c)).unwrap(), c);
        assert!(matches!(parse_extgen1("2 1 2\n1 4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_code_file(text, None), Ok(CodeFile::Extension(_))));
        assert!(matches!(parse_code_file("1 1\n1\n", None), Ok(CodeFile::Binary(_))));
    }
}
