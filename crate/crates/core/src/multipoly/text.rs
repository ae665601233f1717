//! `c*x1^e1*...*xv^ev` terms joined by `+`. The parser also accepts `-`
//! between terms, omitted unit coefficients and arbitrary whitespace.

use super::{lane, MonomialOrder, MultipolyError, SparsePoly};

pub(crate) fn format_poly(f: &SparsePoly, order: &MonomialOrder) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(u128, u64)> = f.packed_terms().to_vec();
    terms.sort_by(|a, b| order.cmp(b.0, a.0));
    let parts: Vec<String> = terms
        .iter()
        .map(|&(m, c)| {
            let mut s = c.to_string();
            for i in 0..f.nvars() {
                match lane(m, i) {
                    0 => {}
                    1 => s.push_str(&format!("*x{}", i + 1)),
                    e => s.push_str(&format!("*x{}^{e}", i + 1)),
                }
            }
            s
        })
        .collect();
    parts.join(" + ")
}

/// Parses a polynomial over `F_p` in variables `x1 … x{nvars}`; integer
/// coefficients may be negative and are reduced modulo `p`.
pub fn parse_poly(p: u64, nvars: usize, s: &str) -> Result<SparsePoly, MultipolyError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(MultipolyError::Parse("empty input".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'^' | b'+' | b'-')) {
            terms.push(parse_term(nvars, &compact[start..i])?);
            start = i;
        }
    }
    SparsePoly::from_terms(p, nvars, terms)
}

fn parse_term(nvars: usize, t: &str) -> Result<(Vec<u32>, i64), MultipolyError> {
    let bad = || MultipolyError::Parse(format!("bad term `{t}`"));
    let (sign, body) = match t.as_bytes().first() {
        Some(b'+') => (1, &t[1..]),
        Some(b'-') => (-1, &t[1..]),
        _ => (1, t),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut coef: i64 = 1;
    let mut exps = vec![0u32; nvars];
    for factor in body.split('*') {
        if let Some(var) = factor.strip_prefix('x') {
            let (idx, e) = match var.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
                None => (var, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx == 0 || idx > nvars {
                return Err(MultipolyError::Parse(format!("variable x{idx} out of range in `{t}`")));
            }
            exps[idx - 1] += e;
        } else {
            let c: i64 = factor.parse().map_err(|_| bad())?;
            coef = coef.checked_mul(c).ok_or_else(bad)?;
        }
    }
    Ok((exps, sign * coef))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let f = parse_poly(7, 3, "3*x1^2*x3 - x2 + 10 + -2*x1^2*x3").unwrap();
        let order = MonomialOrder::degrevlex(3);
        assert_eq!(f.to_text(&order), "1*x1^2*x3 + 6*x2 + 3");
        let g = parse_poly(7, 3, &f.to_text(&order)).unwrap();
        assert_eq!(f, g);
        assert_eq!(parse_poly(7, 3, "0").unwrap(), SparsePoly::zero(7, 3));
        assert!(parse_poly(7, 3, "x4").is_err());
        assert!(parse_poly(7, 3, "x1^").is_err());
        assert!(parse_poly(7, 3, "").is_err());
    }
}
