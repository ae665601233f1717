//! List-decoding and maximally-recoverable tensor code checks, decided by
//! exhaustive enumeration at small sizes.

mod tensor;

use std::collections::HashMap;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;

use crate::codes::{dual_code, parity_check_matrix, CodeSpec, SetTuple};
use crate::fields::{binomial, FieldElement};
use crate::linalg::MatrixF;
use crate::mdscheck::{is_mds_ell, CheckError, CheckReport};

pub use tensor::{correctable, mr_check, mr_generic_correctable, tensor_parity, ErasurePattern, TensorCodeSpec};

/// Number of vectors of weight at most `w` in `F_q^n`.
pub fn ball_size(n: usize, q: u128, w: usize) -> u128 {
    (0..=w.min(n)).fold(0u128, |acc, i| {
        acc.saturating_add(binomial(n as u64, i as u64).saturating_mul((q - 1).saturating_pow(i as u32)))
    })
}

/// A sparse vector: support and nonzero values.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Sparse {
    support: Vec<usize>,
    values: Vec<FieldElement>,
}

/// Every vector of weight at most `w`, grouped by syndrome `H e`.
fn syndrome_buckets(h: &MatrixF, w: usize) -> HashMap<Vec<u64>, Vec<Sparse>> {
    let field = h.field().clone();
    let n = h.cols();
    let nonzero: Vec<FieldElement> = field.elements().skip(1).collect();
    let supports: Vec<Vec<usize>> = (0..=w.min(n)).flat_map(|s| (0..n).combinations(s)).collect();
    let shards: Vec<Vec<(Vec<u64>, Sparse)>> = supports
        .par_iter()
        .map(|support| {
            let mut out = Vec::new();
            let iter = (0..support.len()).map(|_| nonzero.iter()).multi_cartesian_product();
            let mut push = |values: Vec<FieldElement>| {
                let mut syn = vec![field.zero(); h.rows()];
                for (&c, v) in support.iter().zip(&values) {
                    for (r, s) in syn.iter_mut().enumerate() {
                        *s += &(&h.get(r, c) * v);
                    }
                }
                let key = syn.iter().flat_map(|x| x.coeffs().to_vec()).collect();
                out.push((
                    key,
                    Sparse {
                        support: support.clone(),
                        values,
                    },
                ));
            };
            if support.is_empty() {
                push(Vec::new());
            } else {
                for values in iter {
                    push(values.into_iter().cloned().collect());
                }
            }
            out
        })
        .collect();
    let mut buckets: HashMap<Vec<u64>, Vec<Sparse>> = HashMap::new();
    for (key, v) in shards.into_iter().flatten() {
        buckets.entry(key).or_default().push(v);
    }
    buckets
}

fn dense(v: &Sparse, n: usize, zero: &FieldElement) -> String {
    let mut out = vec![zero.clone(); n];
    for (&c, x) in v.support.iter().zip(&v.values) {
        out[c] = x.clone();
    }
    out.iter().map(|x| format!("({x})")).join("")
}

/// `LD-MDS(L)`: no `L + 1` distinct vectors with a common syndrome and total
/// weight at most `L(n − k)`. Only vectors of weight `≤ L(n − k)` can take
/// part, so those are bucketed by syndrome and each bucket's `L + 1`
/// lightest members are compared with the bound.
pub fn ld_mds_check(code: &CodeSpec, l: usize, budget: u128) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let (n, k) = (code.n(), code.k());
    let bound = l * (n - k);
    let q = code.field().size().unwrap_or(u128::MAX);
    let needed = ball_size(n, q, bound);
    if needed > budget {
        return Err(CheckError::BudgetExceeded { needed, budget });
    }
    let h = parity_check_matrix(code);
    let buckets = syndrome_buckets(&h, bound);
    let mut keys: Vec<&Vec<u64>> = buckets.keys().collect();
    keys.sort();
    let mut report = CheckReport::new(&format!("ld-mds{l}"), needed as u64, start);
    for key in keys {
        let mut bucket: Vec<&Sparse> = buckets[key].iter().collect();
        if bucket.len() < l + 1 {
            continue;
        }
        bucket.sort_by_key(|v| (v.support.len(), v.support.clone()));
        let lightest = &bucket[..l + 1];
        let total: usize = lightest.iter().map(|v| v.support.len()).sum();
        if total <= bound {
            let zero = code.field().zero();
            report.extra.push((
                "vectors".into(),
                lightest.iter().map(|v| dense(v, n, &zero)).join(";"),
            ));
            report.extra.push(("total_weight".into(), total.to_string()));
            report.fail(SetTuple::new(lightest.iter().map(|v| v.support.clone()).collect(), n - k));
            break;
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `LD-MDS(ℓ)` for every `1 ≤ ℓ ≤ L`; the first failing `ℓ` is reported.
pub fn ld_mds_upto(code: &CodeSpec, l: usize, budget: u128) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let mut total = 0u64;
    for ell in 1..=l {
        let mut r = ld_mds_check(code, ell, budget)?;
        total += r.tuples;
        if !r.passed() || ell == l {
            r.property = format!("ld-mds-upto{l}");
            r.tuples = total;
            r.elapsed = start.elapsed();
            if !r.passed() {
                r.extra.insert(0, ("failing_ell".into(), ell.to_string()));
            }
            return Ok(r);
        }
    }
    // l == 0: nothing to check
    Ok(CheckReport::new(&format!("ld-mds-upto{l}"), 0, start))
}

/// Decides `MDS(ℓ + 1)` of `code` and `LD-MDS(≤ ℓ)` of its dual separately
/// and passes iff they agree. Both verdicts are recorded.
pub fn duality_test(code: &CodeSpec, ell: usize, budget: u128) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let mds = is_mds_ell(code, ell + 1);
    let dual = dual_code(code);
    let ld = ld_mds_upto(&dual, ell, budget)?;
    let mut report = CheckReport::new(&format!("duality{ell}"), mds.tuples + ld.tuples, start);
    report.extra.push((format!("mds{}", ell + 1), mds.verdict.to_string()));
    report.extra.push((format!("dual_ld_mds_upto{ell}"), ld.verdict.to_string()));
    if mds.verdict != ld.verdict {
        let w = mds
            .witness
            .or(ld.witness)
            .expect("one of two disagreeing verdicts is a failure");
        report.fail(w);
    }
    Ok(report)
}

/// `(L, ρ)` worst-case list decodability with `ρ = num/den`: every Hamming
/// ball of radius `⌊ρn⌋` holds at most `L` codewords. The codewords within
/// radius `r` of `y` are `y − e` for the vectors `e` of weight `≤ r` with
/// the syndrome of `y`, so the largest such bucket decides it.
pub fn worst_case_ld_check(code: &CodeSpec, l: usize, num: usize, den: usize, budget: u128) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    if den == 0 {
        return Err(CheckError::InvalidParameters("radius denominator is zero".into()));
    }
    let n = code.n();
    let radius = num * n / den;
    let q = code.field().size().unwrap_or(u128::MAX);
    let needed = ball_size(n, q, radius);
    if needed > budget {
        return Err(CheckError::BudgetExceeded { needed, budget });
    }
    let h = parity_check_matrix(code);
    let buckets = syndrome_buckets(&h, radius);
    let mut keys: Vec<&Vec<u64>> = buckets.keys().collect();
    keys.sort();
    let mut report = CheckReport::new(&format!("worst-case-ld{l}"), needed as u64, start);
    report.extra.push(("radius".into(), radius.to_string()));
    if let Some(key) = keys.into_iter().find(|key| buckets[*key].len() > l) {
        let mut bucket: Vec<&Sparse> = buckets[key].iter().collect();
        bucket.sort_by_key(|v| (v.support.len(), v.support.clone()));
        let zero = code.field().zero();
        let y = &bucket[0];
        let codewords: Vec<String> = bucket
            .iter()
            .map(|e| {
                let mut c = vec![zero.clone(); n];
                for (&i, x) in y.support.iter().zip(&y.values) {
                    c[i] = &c[i] + x;
                }
                for (&i, x) in e.support.iter().zip(&e.values) {
                    c[i] = &c[i] - x;
                }
                c.iter().map(|x| format!("({x})")).join("")
            })
            .collect();
        report.extra.push(("y".into(), dense(y, n, &zero)));
        report.extra.push(("codewords".into(), codewords.join(";")));
        report.fail(SetTuple::new(bucket.iter().map(|v| v.support.clone()).collect(), code.k()));
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests;
