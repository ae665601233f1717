//! Reed–Solomon shortcuts for `MDS(3)`.

use std::time::Instant;

use itertools::Itertools;

use super::{first_failure, is_mds, mds_ell_tuples, CheckError, CheckReport};
use crate::codes::{CodeSpec, SetTuple};
use crate::fields::FieldElement;
use crate::linalg::MatrixF;

/// Drops every element shared by two of the three sets. Returns the
/// disjoint tuple and its dimension `k' = (|A'_1| + |A'_2| + |A'_3|) / 2`;
/// for a triple with empty common intersection the zero-intersection
/// question is unchanged when `k` is replaced by `k'` on the same
/// generators.
pub fn weak_reduce(tuple: &SetTuple) -> (SetTuple, usize) {
    let sets: Vec<Vec<usize>> = (0..tuple.ell())
        .map(|i| {
            tuple.sets[i]
                .iter()
                .copied()
                .filter(|x| (0..tuple.ell()).all(|j| j == i || tuple.sets[j].binary_search(x).is_err()))
                .collect()
        })
        .collect();
    let total: usize = sets.iter().map(Vec::len).sum();
    let k = total / 2;
    (SetTuple::new(sets, k), k)
}

/// `∏_{i∈A} (x − β_i)` evaluated at `x`.
fn pi_at(gens: &[FieldElement], set: &[usize], x: &FieldElement) -> FieldElement {
    set.iter().fold(x.field().one(), |acc, &i| acc * &(x - &gens[i]))
}

/// The product-polynomial test: with `δ_i = k − |A_i|`, the square matrix
/// whose row for `j ∈ A_1` is `(Π_{A_i}(β_j) β_j^t)_{i ≥ 2, t < δ_i}` is
/// nonsingular iff `V_{A_1} ∩ … ∩ V_{A_ℓ} = 0` for the Reed–Solomon code on
/// `gens`.
pub fn prod_mat_nonzero(gens: &[FieldElement], tuple: &SetTuple) -> Result<bool, CheckError> {
    let k = tuple.k;
    let total: usize = tuple.sizes().iter().sum();
    if tuple.ell() == 0 || total != (tuple.ell() - 1) * k || tuple.sets.iter().any(|s| s.len() > k) {
        return Err(CheckError::InvalidParameters(format!("sizes {:?} with k = {k}", tuple.sizes())));
    }
    let field = gens
        .first()
        .map(|g| g.field().clone())
        .ok_or_else(|| CheckError::InvalidParameters("no generators".into()))?;
    let rows = &tuple.sets[0];
    let size = rows.len();
    if size == 0 {
        return Ok(true);
    }
    let mut m = MatrixF::zeros(&field, size, size);
    for (r, &j) in rows.iter().enumerate() {
        let x = &gens[j];
        let mut col = 0;
        for set in &tuple.sets[1..] {
            let mut e = pi_at(gens, set, x);
            for _ in 0..k - set.len() {
                m.set(r, col, &e);
                e = &e * x;
                col += 1;
            }
        }
    }
    Ok(!m.det()?.is_zero())
}

/// The zero-intersection test for one triple through the disjointness
/// reduction and the product-polynomial matrix.
fn triple_nonzero(gens: &[FieldElement], tuple: &SetTuple) -> bool {
    let (reduced, k) = weak_reduce(tuple);
    if k == 0 || reduced.sets.iter().any(|s| s.len() >= k) {
        // one span is everything (or the space is zero); the other two
        // meet trivially in an MDS code
        return true;
    }
    let mut sets = reduced.sets;
    sets.sort_by_key(Vec::len);
    prod_mat_nonzero(gens, &SetTuple::new(sets, k)).expect("reduced sizes are consistent")
}

/// `det [1, β_a + β_b, β_a β_b]` over the rows `(a, b) = (b[0], b[1]), …`.
pub fn pairing_determinant(b: &[FieldElement; 6]) -> FieldElement {
    let rows: Vec<(FieldElement, FieldElement)> =
        (0..3).map(|i| (&b[2 * i] + &b[2 * i + 1], &b[2 * i] * &b[2 * i + 1])).collect();
    let minor = |i: usize, j: usize| &(&rows[i].0 * &rows[j].1) - &(&rows[j].0 * &rows[i].1);
    // expansion along the all-ones column
    &(&minor(1, 2) - &minor(0, 2)) + &minor(0, 1)
}

/// The 15 perfect matchings of six labels, each as three pairs.
fn matchings(labels: &[usize]) -> Vec<[[usize; 2]; 3]> {
    let mut out = Vec::with_capacity(15);
    let a = labels[0];
    for i in 1..6 {
        let rest: Vec<usize> = labels[1..].iter().copied().filter(|&x| x != labels[i]).collect();
        for j in 1..4 {
            let tail: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != rest[j]).collect();
            out.push([[a, labels[i]], [rest[0], rest[j]], [tail[0], tail[1]]]);
        }
    }
    out
}

/// `MDS(3)` for Reed–Solomon codes without block determinants. For `k = 3`
/// every six-point subset and each of its 15 pairings gives one 3×3
/// determinant; otherwise the triples of [`mds_ell_tuples`] are reduced to
/// disjoint ones and tested with [`prod_mat_nonzero`].
pub fn is_mds3_rs_fast(code: &CodeSpec) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let gens = code.generators().ok_or(CheckError::WrongKind)?;
    let mds = is_mds(code);
    if !mds.passed() {
        let mut r = mds;
        r.property = "mds3".into();
        return Ok(r);
    }
    let (n, k) = (code.n(), code.k());
    if k == 3 {
        let units: Vec<[[usize; 2]; 3]> = (0..n).combinations(6).flat_map(|s| matchings(&s)).collect();
        let failure = first_failure(&units, |m| {
            let b: [FieldElement; 6] = std::array::from_fn(|i| gens[m[i / 2][i % 2]].clone());
            !pairing_determinant(&b).is_zero()
        });
        let examined = failure.map_or(units.len(), |i| i + 1) as u64;
        let mut report = CheckReport::new("mds3", examined, start);
        if let Some(i) = failure {
            let sets = units[i].iter().map(|p| p.to_vec()).collect();
            report.fail(SetTuple::new(sets, 3));
        }
        return Ok(report);
    }
    let tuples = mds_ell_tuples(n, k, 3);
    let failure = first_failure(&tuples, |t| triple_nonzero(gens, t));
    let examined = failure.map_or(tuples.len(), |i| i + 1) as u64;
    let mut report = CheckReport::new("mds3", examined, start);
    if let Some(i) = failure {
        let t = tuples[i].clone();
        report.extra.push(("reduced".into(), weak_reduce(&t).0.to_string()));
        report.fail(t);
    }
    Ok(report)
}
