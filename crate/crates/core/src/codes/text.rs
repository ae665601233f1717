//! Code files: a field block, then
//!
//! ```text
//! code n=<n> k=<k> kind=rs|explicit
//! gen <element>          (n lines, kind=rs)
//! row <element> …        (k lines, kind=explicit)
//! ```
//!
//! Lines starting with `#` are comments and carry provenance.

use super::{vandermonde, CodeError, CodeKind, CodeSpec};
use crate::fields::{parse_element, parse_field, write_field};
use crate::linalg::MatrixF;

pub fn write_code(code: &CodeSpec, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        out.push_str(&format!("# {line}\n"));
    }
    out.push_str(&write_field(code.field()));
    match code.kind() {
        CodeKind::Rs(gens) => {
            out.push_str(&format!("code n={} k={} kind=rs\n", code.n(), code.k()));
            for g in gens {
                out.push_str(&format!("gen {g}\n"));
            }
        }
        CodeKind::Explicit(m) => {
            out.push_str(&format!("code n={} k={} kind=explicit\n", code.n(), code.k()));
            for r in 0..m.rows() {
                let row: Vec<String> = m.row(r).iter().map(|e| e.to_string()).collect();
                out.push_str(&format!("row {}\n", row.join(" ")));
            }
        }
    }
    out
}

fn kv(tok: Option<&str>, key: &str) -> Result<String, CodeError> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .map(str::to_string)
        .ok_or_else(|| CodeError::Parse(format!("expected `{key}=...`")))
}

fn num(s: String) -> Result<usize, CodeError> {
    s.parse().map_err(|_| CodeError::Parse(format!("bad number `{s}`")))
}

/// Parses a code file. An `rs` code whose generators repeat is returned as
/// the explicit code spanned by its Vandermonde rows, so that checkers can
/// report on it.
pub fn parse_code(text: &str) -> Result<CodeSpec, CodeError> {
    let lines: Vec<&str> = text.lines().collect();
    let (field, used) = parse_field(lines.iter().copied())?;
    let mut body = lines[used..]
        .iter()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = body.next().ok_or_else(|| CodeError::Parse("missing `code` line".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("code") {
        return Err(CodeError::Parse(format!("expected `code ...`, found `{header}`")));
    }
    let n = num(kv(toks.next(), "n")?)?;
    let k = num(kv(toks.next(), "k")?)?;
    let kind = kv(toks.next(), "kind")?;
    let entries: Vec<&str> = body.collect();
    match kind.as_str() {
        "rs" => {
            if entries.len() != n {
                return Err(CodeError::Parse(format!("expected {n} `gen` lines, found {}", entries.len())));
            }
            let gens = entries
                .iter()
                .map(|l| {
                    let v = l
                        .strip_prefix("gen")
                        .ok_or_else(|| CodeError::Parse(format!("expected `gen`, found `{l}`")))?;
                    Ok(parse_element(&field, v)?)
                })
                .collect::<Result<Vec<_>, CodeError>>()?;
            match CodeSpec::rs(&field, gens.clone(), k) {
                Err(CodeError::RepeatedGenerator(..)) => CodeSpec::explicit(vandermonde(&field, &gens, k)),
                other => other,
            }
        }
        "explicit" => {
            if entries.len() != k {
                return Err(CodeError::Parse(format!("expected {k} `row` lines, found {}", entries.len())));
            }
            let rows = entries
                .iter()
                .map(|l| {
                    let v = l
                        .strip_prefix("row")
                        .ok_or_else(|| CodeError::Parse(format!("expected `row`, found `{l}`")))?;
                    let row = v
                        .split_whitespace()
                        .map(|e| parse_element(&field, e))
                        .collect::<Result<Vec<_>, _>>()?;
                    if row.len() != n {
                        return Err(CodeError::Parse(format!("row has {} entries, expected {n}", row.len())));
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>, CodeError>>()?;
            let m = if k == 0 {
                MatrixF::zeros(&field, 0, n)
            } else {
                MatrixF::from_rows(&field, &rows)?
            };
            CodeSpec::explicit(m)
        }
        other => Err(CodeError::Parse(format!("unknown code kind `{other}`"))),
    }
}
