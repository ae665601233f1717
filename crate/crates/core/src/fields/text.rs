//! Text form of fields and elements.
//!
//! ```text
//! field p=7
//! ext d=3 poly=5,0,0,1
//! ```
//!
//! Each `ext` line lists the `d + 1` coefficients of the minimal polynomial,
//! low to high, each coefficient written as its full coefficient vector over
//! the level below. Elements are comma-separated coefficient vectors of
//! length `D`.

use super::{Extension, FieldElement, FieldError, FieldSpec};

fn parse_kv<'a>(token: &'a str, key: &str) -> Result<&'a str, FieldError> {
    token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| FieldError::Parse(format!("expected `{key}=...`, found `{token}`")))
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>, FieldError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| FieldError::Parse(format!("bad integer `{t}`")))
        })
        .collect()
}

/// Parses a field block from the start of `lines`, returning the field and
/// the number of lines consumed. Blank lines and `#` comments are skipped
/// before the block.
pub fn parse_field<'a, I>(lines: I) -> Result<(FieldSpec, usize), FieldError>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut iter = lines.into_iter().enumerate().peekable();
    let mut consumed;
    let header = loop {
        let Some((i, line)) = iter.next() else {
            return Err(FieldError::Parse("missing `field` line".into()));
        };
        consumed = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        break line;
    };
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("field") {
        return Err(FieldError::Parse(format!("expected `field p=<p>`, found `{header}`")));
    }
    let p_tok = tokens
        .next()
        .ok_or_else(|| FieldError::Parse("missing characteristic".into()))?;
    let p = parse_kv(p_tok, "p")?
        .parse::<u64>()
        .map_err(|_| FieldError::Parse(format!("bad characteristic `{p_tok}`")))?;
    let mut field = FieldSpec::prime(p)?;
    while let Some(&(i, line)) = iter.peek() {
        let line = line.trim();
        if !line.starts_with("ext ") {
            break;
        }
        iter.next();
        consumed = i + 1;
        let mut tokens = line.split_whitespace().skip(1);
        let d_tok = tokens.next().unwrap_or("");
        let poly_tok = tokens.next().unwrap_or("");
        let degree = parse_kv(d_tok, "d")?
            .parse::<usize>()
            .map_err(|_| FieldError::Parse(format!("bad degree `{d_tok}`")))?;
        let flat = parse_u64_list(parse_kv(poly_tok, "poly")?)?;
        let sub = field.degree();
        if flat.len() != (degree + 1) * sub {
            return Err(FieldError::Parse(format!(
                "level {} polynomial has {} entries, expected {}",
                field.levels() + 1,
                flat.len(),
                (degree + 1) * sub
            )));
        }
        let coeffs = flat.chunks(sub).map(|c| c.to_vec()).collect();
        field = field.extend(&Extension::with_poly(degree, coeffs))?;
    }
    Ok((field, consumed))
}

pub fn write_field(field: &FieldSpec) -> String {
    let mut out = format!("field p={}\n", field.characteristic());
    for level in 1..=field.levels() {
        let flat: Vec<String> = field
            .min_poly(level)
            .concat()
            .iter()
            .map(|c| c.to_string())
            .collect();
        out.push_str(&format!(
            "ext d={} poly={}\n",
            field.level_degrees()[level - 1],
            flat.join(",")
        ));
    }
    out
}

pub fn parse_element(field: &FieldSpec, s: &str) -> Result<FieldElement, FieldError> {
    field.element(parse_u64_list(s.trim())?)
}
