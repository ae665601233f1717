//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Entries are stored as one flat array of coefficient vectors, so the hot
//! loops work on slices and never touch the field's reference count.

use std::fmt;

use thiserror::Error;

use crate::fields::tower::Tower;
use crate::fields::{FieldElement, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("system has no solution")]
    NoSolution,
    #[error("size constraint violated: {0}")]
    SizeConstraintViolated(String),
}

/// Above this extension degree, small determinants avoid inversions.
const DIVISION_FREE_MIN_DEGREE: usize = 1024;
const DIVISION_FREE_MAX_ORDER: usize = 14;

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixF {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for MatrixF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixF {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join("; "))?;
        }
        Ok(())
    }
}

impl MatrixF {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixF {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols * field.degree()],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entry_mut(i, i)[0] = 1;
        }
        m
    }

    pub fn from_fn(field: &FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert!(v.field() == field, "entry from a different field");
                m.entry_mut(r, c).copy_from_slice(v.coeffs());
            }
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<FieldElement>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        if rows.iter().flatten().any(|v| v.field() != field) {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(Self::from_fn(field, rows.len(), cols, |r, c| rows[r][c].clone()))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn stride(&self) -> usize {
        self.field.degree()
    }

    pub(crate) fn entry(&self, r: usize, c: usize) -> &[u64] {
        let s = self.stride();
        let at = (r * self.cols + c) * s;
        &self.data[at..at + s]
    }

    pub(crate) fn entry_mut(&mut self, r: usize, c: usize) -> &mut [u64] {
        let s = self.stride();
        let at = (r * self.cols + c) * s;
        &mut self.data[at..at + s]
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.entry(r, c).to_vec()).expect("stored entries are reduced")
    }

    pub fn set(&mut self, r: usize, c: usize, v: &FieldElement) {
        assert!(v.field() == &self.field, "entry from a different field");
        self.entry_mut(r, c).copy_from_slice(v.coeffs());
    }

    pub fn row(&self, r: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> MatrixF {
        let mut m = Self::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.entry_mut(r, j).copy_from_slice(self.entry(r, c));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> MatrixF {
        let mut m = Self::zeros(&self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                m.entry_mut(i, c).copy_from_slice(self.entry(r, c));
            }
        }
        m
    }

    pub fn transpose(&self) -> MatrixF {
        let mut m = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.entry_mut(c, r).copy_from_slice(self.entry(r, c));
            }
        }
        m
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &MatrixF) -> Result<MatrixF, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch(format!("{} vs {} rows", self.rows, other.rows)));
        }
        let mut m = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.entry_mut(r, c).copy_from_slice(self.entry(r, c));
            }
            for c in 0..other.cols {
                m.entry_mut(r, self.cols + c).copy_from_slice(other.entry(r, c));
            }
        }
        Ok(m)
    }

    pub fn mul(&self, other: &MatrixF) -> Result<MatrixF, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let t = self.field.tower();
        let lvl = self.field.levels();
        let mut m = Self::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(r, k);
                if Tower::is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.entry(k, c);
                    if Tower::is_zero(b) {
                        continue;
                    }
                    let prod = t.mul(lvl, a, b);
                    t.add_assign(m.entry_mut(r, c), &prod);
                }
            }
        }
        Ok(m)
    }

    /// `self · v` for a column vector.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!("vector of length {}", v.len())));
        }
        let col = MatrixF::from_fn(&self.field, v.len(), 1, |r, _| v[r].clone());
        Ok(self.mul(&col)?.column(0))
    }

    pub fn is_zero(&self) -> bool {
        Tower::is_zero(&self.data)
    }

    /// Determinant. Orders up to 3 use the explicit expansion; very large
    /// extension fields use a division-free expansion; everything else uses
    /// elimination pivoting on the first nonzero entry.
    pub fn det(&self) -> Result<FieldElement, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let coeffs = if n <= 3 {
            self.det_small()
        } else if self.stride() >= DIVISION_FREE_MIN_DEGREE && n <= DIVISION_FREE_MAX_ORDER {
            self.det_division_free()
        } else {
            self.det_elimination()
        };
        Ok(self.field.element(coeffs).unwrap())
    }

    fn det_small(&self) -> Vec<u64> {
        let t = self.field.tower();
        let lvl = self.field.levels();
        let e = |r, c| self.entry(r, c);
        let mul = |a: &[u64], b: &[u64]| t.mul(lvl, a, b);
        match self.rows {
            0 => t.one(lvl),
            1 => e(0, 0).to_vec(),
            2 => {
                let mut d = mul(e(0, 0), e(1, 1));
                t.sub_assign(&mut d, &mul(e(0, 1), e(1, 0)));
                d
            }
            3 => {
                let minor = |c1, c2| {
                    let mut d = mul(e(1, c1), e(2, c2));
                    t.sub_assign(&mut d, &mul(e(1, c2), e(2, c1)));
                    d
                };
                let mut d = mul(e(0, 0), &minor(1, 2));
                t.sub_assign(&mut d, &mul(e(0, 1), &minor(0, 2)));
                t.add_assign(&mut d, &mul(e(0, 2), &minor(0, 1)));
                d
            }
            _ => unreachable!(),
        }
    }

    /// Laplace expansion along rows, memoised over column subsets:
    /// `O(n 2^n)` products and no inversions.
    fn det_division_free(&self) -> Vec<u64> {
        let t = self.field.tower();
        let lvl = self.field.levels();
        let n = self.rows;
        let mut layer: std::collections::HashMap<u32, Vec<u64>> = std::collections::HashMap::new();
        layer.insert(0, t.one(lvl));
        for r in 0..n {
            let mut next: std::collections::HashMap<u32, Vec<u64>> = std::collections::HashMap::new();
            for (&mask, val) in &layer {
                if Tower::is_zero(val) {
                    continue;
                }
                for c in 0..n {
                    if mask & (1 << c) != 0 {
                        continue;
                    }
                    let a = self.entry(r, c);
                    if Tower::is_zero(a) {
                        continue;
                    }
                    let mut term = t.mul(lvl, a, val);
                    // sign of placing column c after the columns already used
                    if (mask >> c).count_ones() % 2 == 1 {
                        t.neg_assign(&mut term);
                    }
                    let slot = next.entry(mask | (1 << c)).or_insert_with(|| t.zero(lvl));
                    t.add_assign(slot, &term);
                }
            }
            layer = next;
        }
        layer.remove(&((1u32 << n) - 1)).unwrap_or_else(|| t.zero(lvl))
    }

    fn det_elimination(&self) -> Vec<u64> {
        let t = self.field.tower();
        let lvl = self.field.levels();
        let n = self.rows;
        let mut m: Vec<Vec<Vec<u64>>> = (0..n)
            .map(|r| (0..n).map(|c| self.entry(r, c).to_vec()).collect())
            .collect();
        let mut det = t.one(lvl);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !Tower::is_zero(&m[r][col])) else {
                return t.zero(lvl);
            };
            if piv != col {
                m.swap(piv, col);
                t.neg_assign(&mut det);
            }
            det = t.mul(lvl, &det, &m[col][col]);
            let inv = t.inv(lvl, &m[col][col]).unwrap();
            let (top, bottom) = m.split_at_mut(col + 1);
            let pivot_row = &top[col];
            for row in bottom.iter_mut() {
                if Tower::is_zero(&row[col]) {
                    continue;
                }
                let factor = t.mul(lvl, &row[col], &inv);
                for c in col + 1..n {
                    if Tower::is_zero(&pivot_row[c]) {
                        continue;
                    }
                    let prod = t.mul(lvl, &factor, &pivot_row[c]);
                    t.sub_assign(&mut row[c], &prod);
                }
            }
        }
        det
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (MatrixF, Vec<usize>) {
        let t = self.field.tower();
        let lvl = self.field.levels();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| !Tower::is_zero(m.entry(r, col))) else {
                continue;
            };
            m.swap_rows(piv, row);
            let inv = t.inv(lvl, m.entry(row, col)).unwrap();
            for c in col..self.cols {
                let v = t.mul(lvl, m.entry(row, c), &inv);
                m.entry_mut(row, c).copy_from_slice(&v);
            }
            for r in 0..self.rows {
                if r == row || Tower::is_zero(m.entry(r, col)) {
                    continue;
                }
                let factor = m.entry(r, col).to_vec();
                for c in col..self.cols {
                    if Tower::is_zero(m.entry(row, c)) {
                        continue;
                    }
                    let prod = t.mul(lvl, &factor, m.entry(row, c));
                    t.sub_assign(m.entry_mut(r, c), &prod);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.cols * self.stride();
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * w);
        head[lo * w..(lo + 1) * w].swap_with_slice(&mut tail[..w]);
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}` read off the reduced echelon form: one vector
    /// per free column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let t = self.field.tower();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    let mut x = r.entry(i, f).to_vec();
                    t.neg_assign(&mut x);
                    v[pc] = self.field.element(x).unwrap();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let rhs = MatrixF::from_fn(&self.field, self.rows, 1, |r, _| b[r].clone());
        let (r, pivots) = self.hstack(&rhs)?.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(x)
    }

    /// A matrix whose columns form a basis of this matrix's column span.
    pub fn column_basis(&self) -> MatrixF {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }
}

/// `dim(span B_1 ∩ … ∩ span B_m)` for column spans in a common `F^k`.
pub fn subspace_intersection_dim(bases: &[MatrixF]) -> Result<usize, LinalgError> {
    let Some(first) = bases.first() else {
        return Err(LinalgError::DimensionMismatch("no subspaces given".into()));
    };
    let k = first.rows;
    if bases.iter().any(|b| b.field != first.field) {
        return Err(LinalgError::FieldMismatch);
    }
    if bases.iter().any(|b| b.rows != k) {
        return Err(LinalgError::DimensionMismatch("ambient dimensions differ".into()));
    }
    let mut current = first.column_basis();
    for b in &bases[1..] {
        if current.cols == 0 {
            return Ok(0);
        }
        let c = current.cols;
        let kernel = current.hstack(b)?.kernel();
        // x_C ranges over the first c coordinates of the kernel vectors
        let coords = MatrixF::from_fn(&first.field, c, kernel.len(), |r, j| kernel[j][r].clone());
        current = current.mul(&coords)?.column_basis();
    }
    Ok(current.cols)
}

/// The `ℓk × ℓk` matrix with `I_k` stacked in the first column block and
/// `V|_{A_i}` in the `i`-th diagonal block; it is nonsingular iff the column
/// spans of the `V|_{A_i}` meet only in zero.
pub fn block_mds_matrix(v: &MatrixF, sets: &[Vec<usize>]) -> Result<MatrixF, LinalgError> {
    let k = v.rows;
    let ell = sets.len();
    let total: usize = sets.iter().map(|s| s.len()).sum();
    if ell == 0 || total != (ell - 1) * k || sets.iter().any(|s| s.len() > k) {
        return Err(LinalgError::SizeConstraintViolated(format!(
            "set sizes {:?} for k = {k}",
            sets.iter().map(|s| s.len()).collect::<Vec<_>>()
        )));
    }
    if let Some(&bad) = sets.iter().flatten().find(|&&c| c >= v.cols) {
        return Err(LinalgError::DimensionMismatch(format!("column {bad} out of range")));
    }
    let size = ell * k;
    let mut m = MatrixF::zeros(&v.field, size, size);
    let mut col0 = k;
    for (i, set) in sets.iter().enumerate() {
        for r in 0..k {
            m.entry_mut(i * k + r, r)[0] = 1;
            for (j, &c) in set.iter().enumerate() {
                m.entry_mut(i * k + r, col0 + j).copy_from_slice(v.entry(r, c));
            }
        }
        col0 += set.len();
    }
    Ok(m)
}

/// The `(ℓ−1)k × (ℓ−1)k` matrix left after subtracting the first block row
/// of [`block_mds_matrix`] from the others and expanding along the identity
/// block: row block `i` is `[-V|_{A_1} … V|_{A_{i+1}} …]`. Its determinant
/// equals that of the full block matrix.
pub fn reduced_block_matrix(v: &MatrixF, sets: &[Vec<usize>]) -> Result<MatrixF, LinalgError> {
    let k = v.rows;
    let ell = sets.len();
    let total: usize = sets.iter().map(|s| s.len()).sum();
    if ell == 0 || total != (ell - 1) * k || sets.iter().any(|s| s.len() > k) {
        return Err(LinalgError::SizeConstraintViolated(format!(
            "set sizes {:?} for k = {k}",
            sets.iter().map(|s| s.len()).collect::<Vec<_>>()
        )));
    }
    if let Some(&bad) = sets.iter().flatten().find(|&&c| c >= v.cols) {
        return Err(LinalgError::DimensionMismatch(format!("column {bad} out of range")));
    }
    let size = (ell - 1) * k;
    let tower = v.field.tower();
    let mut m = MatrixF::zeros(&v.field, size, size);
    let mut col0 = sets[0].len();
    for (i, set) in sets.iter().enumerate().skip(1) {
        let r0 = (i - 1) * k;
        for r in 0..k {
            for (j, &c) in sets[0].iter().enumerate() {
                let dst = m.entry_mut(r0 + r, j);
                dst.copy_from_slice(v.entry(r, c));
                tower.neg_assign(dst);
            }
            for (j, &c) in set.iter().enumerate() {
                m.entry_mut(r0 + r, col0 + j).copy_from_slice(v.entry(r, c));
            }
        }
        col0 += set.len();
    }
    Ok(m)
}
