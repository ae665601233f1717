use crate::fields::{Extension, FieldElement, FieldError, FieldSpec};

/// Levels over fields of at most this degree may fall back to the
/// lexicographically smallest irreducible.
const SEARCH_MAX_DEGREE: usize = 8;

/// Constants tried in `x^p − x − c` and `x^d − c`, built from the previous
/// generator `g`: `∏ g_i^{p−1}` over all generators so far, `g^{p−1}`, `g`,
/// `g + t`, `t·g`, then prime-field `t`.
///
/// In an Artin–Schreier tower over `F_p` the first one always works: the relative
/// trace of `a·g^{p−1}` is `−a`, so its absolute trace is `±1`.
fn candidates(field: &FieldSpec) -> Vec<FieldElement> {
    let p = field.characteristic();
    let mut out = Vec::new();
    if field.levels() > 0 {
        let g = field.generator(field.levels());
        let all = (1..=field.levels()).fold(field.one(), |acc, l| acc * field.generator(l).pow(p as u128 - 1));
        out.push(all);
        out.push(g.pow(p as u128 - 1));
        out.push(g.clone());
        out.extend((1..p).map(|t| &g + &field.from_u64(t)));
        out.extend((2..p).map(|t| g.scale(t)));
    }
    out.extend((1..p).map(|t| field.from_u64(t)));
    out
}

fn artin_schreier(field: &FieldSpec, c: &FieldElement) -> Extension {
    let p = field.characteristic() as usize;
    let mut coeffs = vec![field.zero().coeffs().to_vec(); p + 1];
    coeffs[0] = (-c).coeffs().to_vec();
    coeffs[1] = field.from_i64(-1).coeffs().to_vec();
    coeffs[p] = field.one().coeffs().to_vec();
    Extension::with_poly(p, coeffs)
}

fn binomial(field: &FieldSpec, d: usize, c: &FieldElement) -> Extension {
    let mut coeffs = vec![field.zero().coeffs().to_vec(); d + 1];
    coeffs[0] = (-c).coeffs().to_vec();
    coeffs[d] = field.one().coeffs().to_vec();
    Extension::with_poly(d, coeffs)
}

/// Extends `base` by `levels` levels of degree `d`, each with a minimal
/// polynomial carrying a cheap irreducibility certificate:
/// `x^p − x − c` when `d` is the characteristic, otherwise `x^d − c`, with
/// `c` from a short candidate list. Small fields fall back to the smallest
/// irreducible.
pub fn certified_tower(base: &FieldSpec, levels: usize, d: usize) -> Result<FieldSpec, FieldError> {
    let mut field = base.clone();
    for _ in 0..levels {
        field = extend_once(&field, d)?;
    }
    Ok(field)
}

fn extend_once(field: &FieldSpec, d: usize) -> Result<FieldSpec, FieldError> {
    if d == 1 {
        return field.extend(&Extension::auto(1));
    }
    let p = field.characteristic() as usize;
    for c in candidates(field) {
        let ext = if d == p { artin_schreier(field, &c) } else { binomial(field, d, &c) };
        if let Ok(next) = field.extend(&ext) {
            return Ok(next);
        }
    }
    if field.degree() <= SEARCH_MAX_DEGREE {
        return field.extend(&Extension::auto(d));
    }
    Err(FieldError::IrreducibilityUndecided {
        level: field.levels() + 1,
        reason: format!("no certified degree-{d} polynomial among the candidates"),
    })
}
