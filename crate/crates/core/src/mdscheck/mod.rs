//! Exact `MDS(ℓ)` decisions, the Reed–Solomon fast paths, the projective
//! lower-bound witness and exhaustive search over tiny fields.
//!
//! Tuple lists are checked in parallel; the reported counterexample is
//! always the first failing tuple in enumeration order, whatever the number
//! of threads.

mod report;
mod rs;
mod search;

use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::codes::{canonical_tuples, CodeError, CodeSpec, SetTuple};
use crate::fields::{binomial, FieldElement};
use crate::linalg::{reduced_block_matrix, LinalgError, MatrixF};

pub use report::{CheckReport, Verdict};
pub use rs::{is_mds3_rs_fast, pairing_determinant, prod_mat_nonzero, weak_reduce};
pub use search::{exhaustive_code_search, SearchReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("operation needs a Reed–Solomon code")]
    WrongKind,
    #[error("code is not MDS: {0}")]
    NotMds(String),
    #[error("search budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Index of the first element failing `ok`, scanning in parallel.
fn first_failure<T: Sync>(items: &[T], ok: impl Fn(&T) -> bool + Sync + Send) -> Option<usize> {
    items.par_iter().position_first(|t| !ok(t))
}

/// `∏_{i<j} (b_j − b_i)` over the chosen generators is nonzero.
fn distinct(gens: &[FieldElement], cols: &[usize]) -> bool {
    cols.iter().tuple_combinations().all(|(&a, &b)| gens[a] != gens[b])
}

/// All `k × k` minors of the generator matrix are nonzero. For Reed–Solomon
/// codes each minor is a Vandermonde determinant, nonzero iff its
/// generators are distinct.
pub fn is_mds(code: &CodeSpec) -> CheckReport {
    let start = Instant::now();
    let (n, k) = (code.n(), code.k());
    let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let failure = match code.generators() {
        Some(gens) => first_failure(&subsets, |s| distinct(gens, s)),
        None => {
            let g = code.generator_matrix();
            first_failure(&subsets, |s| !g.select_columns(s).det().expect("square").is_zero())
        }
    };
    let examined = failure.map_or(subsets.len(), |i| i + 1) as u64;
    let mut report = CheckReport::new("mds", examined, start);
    if let Some(i) = failure {
        let s = &subsets[i];
        let (last, head) = s.split_last().expect("k ≥ 1 when a minor vanishes");
        report.fail(SetTuple::new(vec![head.to_vec(), vec![*last]], k));
    }
    report
}

/// `V_{A_1} ∩ … ∩ V_{A_ℓ} = 0`, decided by the block determinant.
pub fn block_test(v: &MatrixF, tuple: &SetTuple) -> Result<bool, CheckError> {
    Ok(!reduced_block_matrix(v, &tuple.sets)?.det()?.is_zero())
}

/// The tuples the `MDS(ℓ)` decision examines once the code is known to be
/// MDS: canonical orderings of the generically-zero tuples, with sizes at
/// most `k − 1` when `ℓ = 3`.
pub fn mds_ell_tuples(n: usize, k: usize, ell: usize) -> Vec<SetTuple> {
    let max = if ell == 3 { k.saturating_sub(1) } else { k };
    canonical_tuples(n, k, ell, max, true)
}

/// Full `MDS(ℓ)` decision. The code is first checked to be MDS; then every
/// tuple from [`mds_ell_tuples`] must give a nonzero block determinant.
pub fn is_mds_ell(code: &CodeSpec, ell: usize) -> CheckReport {
    let start = Instant::now();
    let name = format!("mds{ell}");
    let mds = is_mds(code);
    if !mds.passed() || ell <= 2 {
        let mut r = mds;
        r.property = name;
        r.elapsed = start.elapsed();
        return r;
    }
    let v = code.generator_matrix();
    let tuples = mds_ell_tuples(code.n(), code.k(), ell);
    let failure = first_failure(&tuples, |t| block_test(&v, t).expect("tuple sizes are valid"));
    let examined = failure.map_or(tuples.len(), |i| i + 1) as u64;
    let mut report = CheckReport::new(&name, examined, start);
    if let Some(i) = failure {
        let t = tuples[i].clone();
        if ell == 3 && code.generators().is_some() {
            let (reduced, _) = weak_reduce(&t);
            report.extra.push(("reduced".into(), reduced.to_string()));
        }
        report.fail(t);
    }
    report
}

/// `max(0, C(n−2, k−1) − 1)`: the field size forced by the `MDS(3)` tests
/// with `A_1 = {1, 2}`.
pub fn implied_field_bound(n: usize, k: usize) -> u128 {
    if n < 2 || k < 1 {
        return 0;
    }
    binomial((n - 2) as u64, (k - 1) as u64).saturating_sub(1)
}

/// The projective points `(det[v_1 | V_A] : det[v_2 | V_A])` for every
/// `(k−1)`-subset `A ⊆ {3, …, n}`, which are the first two coordinates of
/// `V_A^⊥` once columns 1 and 2 are normalised to `e_1, e_2`. All of them
/// must be distinct for an `MDS(3)` code. Passing also records the implied
/// lower bound on the field size.
pub fn lb_witness_projective(code: &CodeSpec) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let (n, k) = (code.n(), code.k());
    if k < 2 || n < k + 2 {
        return Err(CheckError::InvalidParameters(format!(
            "need k ≥ 2 and n ≥ k + 2, got n = {n}, k = {k}"
        )));
    }
    let mds = is_mds(code);
    if let Some(w) = mds.witness {
        return Err(CheckError::NotMds(format!("vanishing minor on columns {w}")));
    }
    let v = code.generator_matrix();
    let subsets: Vec<Vec<usize>> = (2..n).combinations(k - 1).collect();
    let points: Vec<(FieldElement, FieldElement)> = subsets
        .par_iter()
        .map(|a| {
            let coord = |c: usize| {
                let mut cols = vec![c];
                cols.extend_from_slice(a);
                v.select_columns(&cols).det().expect("square")
            };
            (coord(0), coord(1))
        })
        .collect();
    if let Some(i) = points.iter().position(|(a, b)| a.is_zero() && b.is_zero()) {
        return Err(CheckError::NotMds(format!(
            "columns {:?} do not span a hyperplane with columns 1 and 2",
            subsets[i].iter().map(|x| x + 1).collect::<Vec<_>>()
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..points.len()).tuple_combinations().collect();
    let failure = first_failure(&pairs, |&(i, j)| {
        let ((a1, b1), (a2, b2)) = (&points[i], &points[j]);
        &(a1 * b2) != &(a2 * b1)
    });
    let mut report = CheckReport::new("lb-witness", points.len() as u64, start);
    let bound = implied_field_bound(n, k);
    report.extra.push(("bound".into(), bound.to_string()));
    if let Some(idx) = failure {
        let (i, j) = pairs[idx];
        report.fail(SetTuple::new(vec![vec![0, 1], subsets[i].clone(), subsets[j].clone()], k));
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
