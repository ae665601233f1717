use std::fmt;
use std::time::Instant;

use itertools::Itertools;
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codes::{parity_check_matrix, CodeError, CodeSpec, SetTuple};
use crate::fields::FieldSpec;
use crate::linalg::MatrixF;
use crate::mdscheck::{CheckError, CheckReport};

/// Prime of the field the generic oracle samples component codes from.
pub const MR_ORACLE_PRIME: u64 = 2_147_483_647;

/// Set of cells of an `m × n` grid, sorted row-major. The text form is
/// `r,c;r,c;…` with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ErasurePattern {
    pub m: usize,
    pub n: usize,
    pub cells: Vec<(usize, usize)>,
}

impl ErasurePattern {
    pub fn new(m: usize, n: usize, mut cells: Vec<(usize, usize)>) -> Result<Self, CodeError> {
        if let Some(&(r, c)) = cells.iter().find(|&&(r, c)| r >= m || c >= n) {
            return Err(CodeError::InvalidParameters(format!("cell ({}, {}) outside the {m}×{n} grid", r + 1, c + 1)));
        }
        cells.sort_unstable();
        cells.dedup();
        Ok(ErasurePattern { m, n, cells })
    }

    pub fn parse(text: &str, m: usize, n: usize) -> Result<Self, CodeError> {
        let text = text.trim();
        if text.is_empty() {
            return ErasurePattern::new(m, n, Vec::new());
        }
        let cells = text
            .split(';')
            .map(|cell| {
                let (r, c) = cell
                    .split_once(',')
                    .ok_or_else(|| CodeError::Parse(format!("cell `{cell}` is not `r,c`")))?;
                let parse = |s: &str| {
                    s.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1)
                        .ok_or_else(|| CodeError::Parse(format!("bad index `{s}`")))
                };
                Ok((parse(r)? - 1, parse(c)? - 1))
            })
            .collect::<Result<Vec<_>, CodeError>>()?;
        ErasurePattern::new(m, n, cells)
    }

    /// Coordinates in the row-major vectorisation of the grid.
    pub fn coordinates(&self) -> Vec<usize> {
        self.cells.iter().map(|&(r, c)| r * self.n + c).collect()
    }

    /// The pattern as one set of erased columns per row.
    pub fn rows(&self, k: usize) -> SetTuple {
        let mut sets = vec![Vec::new(); self.m];
        for &(r, c) in &self.cells {
            sets[r].push(c);
        }
        SetTuple::new(sets, k)
    }
}

impl fmt::Display for ErasurePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cells.iter().map(|(r, c)| format!("{},{}", r + 1, c + 1)).join(";"))
    }
}

/// `C_col ⊗ C_row` with `C_col` an `[m, m − a]` code and `C_row` an
/// `[n, n − b]` code over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorCodeSpec {
    pub col: CodeSpec,
    pub row: CodeSpec,
}

impl TensorCodeSpec {
    pub fn new(col: CodeSpec, row: CodeSpec) -> Result<Self, CodeError> {
        if col.field() != row.field() {
            return Err(crate::fields::FieldError::FieldMismatch.into());
        }
        Ok(TensorCodeSpec { col, row })
    }

    /// Column code the `[m, m − 1]` single-parity code.
    pub fn with_parity_columns(row: CodeSpec, m: usize) -> Result<Self, CodeError> {
        if m < 2 {
            return Err(CodeError::InvalidParameters("need m ≥ 2".into()));
        }
        let field = row.field().clone();
        let g = MatrixF::from_fn(&field, m - 1, m, |r, c| {
            if c == r {
                field.one()
            } else if c == m - 1 {
                field.from_i64(-1)
            } else {
                field.zero()
            }
        });
        TensorCodeSpec::new(CodeSpec::explicit(g)?, row)
    }

    pub fn m(&self) -> usize {
        self.col.n()
    }

    pub fn n(&self) -> usize {
        self.row.n()
    }

    pub fn a(&self) -> usize {
        self.col.n() - self.col.k()
    }

    pub fn b(&self) -> usize {
        self.row.n() - self.row.k()
    }
}

/// Checks of the tensor code on the row-major vectorisation: each column
/// check of `H_col` applied to every column, each row check of `H_row` to
/// every row, reduced to a basis of `mn − (m − a)(n − b)` rows.
fn parity_from_checks(h_col: &MatrixF, h_row: &MatrixF) -> MatrixF {
    let field = h_col.field().clone();
    let (m, n) = (h_col.cols(), h_row.cols());
    let mut rows = Vec::new();
    for i in 0..h_col.rows() {
        for c in 0..n {
            let mut v = vec![field.zero(); m * n];
            for r in 0..m {
                v[r * n + c] = h_col.get(i, r);
            }
            rows.push(v);
        }
    }
    for j in 0..h_row.rows() {
        for r in 0..m {
            let mut v = vec![field.zero(); m * n];
            for c in 0..n {
                v[r * n + c] = h_row.get(j, c);
            }
            rows.push(v);
        }
    }
    if rows.is_empty() {
        return MatrixF::zeros(&field, 0, m * n);
    }
    let stacked = MatrixF::from_rows(&field, &rows).expect("equal lengths");
    let (reduced, pivots) = stacked.rref();
    reduced.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

pub fn tensor_parity(spec: &TensorCodeSpec) -> MatrixF {
    parity_from_checks(&parity_check_matrix(&spec.col), &parity_check_matrix(&spec.row))
}

/// `E` is correctable iff the parity-check columns it indexes are
/// independent.
pub fn correctable(h: &MatrixF, pattern: &ErasurePattern) -> bool {
    let cols = pattern.coordinates();
    cols.len() <= h.rows() && h.select_columns(&cols).rank() == cols.len()
}

/// Correctability under random components over `F_{2^31 − 1}`: majority
/// over `trials` independent draws.
pub fn mr_generic_correctable(
    m: usize,
    n: usize,
    a: usize,
    b: usize,
    patterns: &[ErasurePattern],
    trials: usize,
    seed: u64,
) -> Vec<bool> {
    let field = FieldSpec::prime(MR_ORACLE_PRIME).expect("prime");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<MatrixF> = (0..trials.max(1))
        .map(|_| {
            let h_col = MatrixF::from_fn(&field, a, m, |_, _| field.random(&mut rng));
            let h_row = MatrixF::from_fn(&field, b, n, |_, _| field.random(&mut rng));
            parity_from_checks(&h_col, &h_row)
        })
        .collect();
    patterns
        .par_iter()
        .map(|e| {
            let yes = draws.iter().filter(|h| correctable(h, e)).count();
            2 * yes > draws.len()
        })
        .collect()
}

/// Erasure patterns of size at most `max_size`, by size then
/// lexicographically.
fn all_patterns(m: usize, n: usize, max_size: usize) -> Vec<ErasurePattern> {
    let cells: Vec<(usize, usize)> = (0..m).cartesian_product(0..n).collect();
    (0..=max_size.min(m * n))
        .flat_map(|s| cells.iter().copied().combinations(s))
        .map(|cells| ErasurePattern { m, n, cells })
        .collect()
}

/// `count` patterns drawn uniformly from those of size at most `max_size`
/// (size weighted by `C(mn, s)`, then a uniform subset), sorted by size then
/// lexicographically with repeats removed.
fn sampled_patterns(m: usize, n: usize, max_size: usize, count: usize, seed: u64) -> Vec<ErasurePattern> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = m * n;
    let weights: Vec<f64> = (0..=max_size.min(cells))
        .map(|s| crate::fields::binomial(cells as u64, s as u64) as f64)
        .collect();
    let sizes = WeightedIndex::new(&weights).expect("positive weights");
    let mut out: Vec<ErasurePattern> = (0..count)
        .map(|_| {
            let s = sizes.sample(&mut rng);
            let mut chosen: Vec<(usize, usize)> = sample(&mut rng, cells, s).into_iter().map(|i| (i / n, i % n)).collect();
            chosen.sort_unstable();
            ErasurePattern { m, n, cells: chosen }
        })
        .collect();
    out.sort_by(|x, y| (x.cells.len(), &x.cells).cmp(&(y.cells.len(), &y.cells)));
    out.dedup();
    out
}

/// Maximal recoverability: every erasure pattern is correctable exactly
/// when it is for generic components. Patterns larger than the number of
/// checks are never correctable and are skipped. Over `budget` patterns a
/// fixed-seed sample of `budget` is used instead and `coverage` reports the
/// fraction covered.
pub fn mr_check(spec: &TensorCodeSpec, budget: u128, seed: u64) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let (m, n, a, b) = (spec.m(), spec.n(), spec.a(), spec.b());
    let h = tensor_parity(spec);
    let max_size = h.rows();
    let total: u128 = (0..=max_size.min(m * n))
        .map(|s| crate::fields::binomial((m * n) as u64, s as u64))
        .sum();
    let (patterns, sampled) = if total <= budget {
        (all_patterns(m, n, max_size), false)
    } else {
        let count = usize::try_from(budget).map_err(|_| CheckError::BudgetExceeded { needed: total, budget })?;
        (sampled_patterns(m, n, max_size, count, seed), true)
    };
    let generic = mr_generic_correctable(m, n, a, b, &patterns, 5, seed);
    let failure = patterns
        .par_iter()
        .zip(generic.par_iter())
        .position_first(|(e, &g)| correctable(&h, e) != g);
    let examined = failure.map_or(patterns.len(), |i| i + 1) as u64;
    let mut report = CheckReport::new("mr", examined, start);
    report.extra.push(("m".into(), m.to_string()));
    report.extra.push(("a".into(), a.to_string()));
    report.extra.push(("b".into(), b.to_string()));
    if sampled {
        report.extra.push(("coverage".into(), format!("{:.6}", patterns.len() as f64 / total as f64)));
    }
    if let Some(i) = failure {
        let e = &patterns[i];
        report.extra.push(("pattern".into(), e.to_string()));
        report.extra.push(("generic_correctable".into(), generic[i].to_string()));
        report.fail(e.rows(spec.row.k()));
    }
    Ok(report)
}
