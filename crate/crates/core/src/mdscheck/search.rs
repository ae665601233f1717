use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use super::{is_mds, is_mds_ell, CheckError};
use crate::codes::CodeSpec;
use crate::fields::{prime_power, Extension, FieldSpec};
use crate::linalg::MatrixF;

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub field: FieldSpec,
    /// Distinct codes (row spaces) passing `MDS(3)`.
    pub count: usize,
    /// Up to ten passing codes, in order of their reduced echelon form.
    pub exemplars: Vec<CodeSpec>,
    /// Systematic matrices enumerated, over all placements.
    pub matrices: u128,
    /// Distinct MDS codes met during the enumeration.
    pub mds_codes: usize,
    pub elapsed: Duration,
}

/// Enumerates every generator matrix with `I_k` on an information set and
/// arbitrary entries elsewhere, over `F_q`, and counts the distinct codes
/// that are `MDS(3)`. With `all_placements` every `k`-subset of columns is
/// used as the information set; otherwise only the first `k` columns.
pub fn exhaustive_code_search(
    n: usize,
    k: usize,
    q: u64,
    all_placements: bool,
    budget: u128,
) -> Result<SearchReport, CheckError> {
    let start = Instant::now();
    if k > n {
        return Err(CheckError::InvalidParameters(format!("k = {k} exceeds n = {n}")));
    }
    let (p, e) = prime_power(q).ok_or_else(|| CheckError::InvalidParameters(format!("{q} is not a prime power")))?;
    let field = FieldSpec::prime(p).map_err(crate::codes::CodeError::from)?;
    let field = if e > 1 {
        field
            .extend(&Extension::auto(e as usize))
            .map_err(crate::codes::CodeError::from)?
    } else {
        field
    };
    let free = (k * (n - k)) as u32;
    let per_placement = (q as u128)
        .checked_pow(free)
        .ok_or(CheckError::BudgetExceeded { needed: u128::MAX, budget })?;
    let placements: Vec<Vec<usize>> = if all_placements {
        (0..n).combinations(k).collect()
    } else {
        vec![(0..k).collect()]
    };
    let needed = per_placement.saturating_mul(placements.len() as u128);
    if needed > budget {
        return Err(CheckError::BudgetExceeded { needed, budget });
    }
    let elements: Vec<_> = field.elements().collect();

    // reduced echelon form (flattened) -> generator matrix, for MDS codes
    let mut mds_codes: BTreeMap<Vec<u64>, MatrixF> = BTreeMap::new();
    for info in &placements {
        let rest: Vec<usize> = (0..n).filter(|c| !info.contains(c)).collect();
        let found: Vec<(Vec<u64>, MatrixF)> = (0..per_placement)
            .into_par_iter()
            .filter_map(|idx| {
                let mut digits = idx;
                let mut g = MatrixF::zeros(&field, k, n);
                for (r, &c) in info.iter().enumerate() {
                    g.set(r, c, &field.one());
                }
                for &c in &rest {
                    for r in 0..k {
                        g.set(r, c, &elements[(digits % q as u128) as usize]);
                        digits /= q as u128;
                    }
                }
                let code = CodeSpec::explicit(g.clone()).expect("identity block gives full rank");
                if !is_mds(&code).passed() {
                    return None;
                }
                let key: Vec<u64> = {
                    let (r, _) = g.rref();
                    (0..k).flat_map(|i| r.row(i)).flat_map(|x| x.coeffs().to_vec()).collect()
                };
                Some((key, g))
            })
            .collect();
        for (key, g) in found {
            mds_codes.entry(key).or_insert(g);
        }
    }
    let candidates: Vec<&MatrixF> = mds_codes.values().collect();
    let passing: Vec<CodeSpec> = candidates
        .par_iter()
        .filter_map(|g| {
            let code = CodeSpec::explicit((*g).clone()).expect("full rank");
            is_mds_ell(&code, 3).passed().then_some(code)
        })
        .collect();
    Ok(SearchReport {
        field,
        count: passing.len(),
        exemplars: passing.into_iter().take(10).collect(),
        matrices: needed,
        mds_codes: mds_codes.len(),
        elapsed: start.elapsed(),
    })
}
