//! Linear codes and the combinatorics of the `MDS(ℓ)` definition.

mod generic;
mod text;
mod tuples;

use std::collections::HashSet;

use thiserror::Error;

use crate::fields::{FieldElement, FieldError, FieldSpec};
use crate::linalg::{LinalgError, MatrixF};

pub use generic::GenericOracle;
pub use text::{parse_code, write_code};
pub use tuples::{
    bell_partitions, canonical_tuples, enumerate_tuples, generically_zero, profiles, SetTuple, TupleIter,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("operation needs a Reed–Solomon code")]
    WrongKind,
    #[error("generator matrix has rank {rank}, expected {expected}")]
    RankLoss { rank: usize, expected: usize },
    #[error("generators {0} and {1} coincide")]
    RepeatedGenerator(usize, usize),
    #[error("no tuples for size profile {0:?}")]
    InfeasibleProfile(Vec<usize>),
    #[error("size constraint violated: {0}")]
    SizeConstraintViolated(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("malformed code file: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeKind {
    /// Evaluation points `β_1 … β_n`; row `i` of the generator matrix is
    /// `(β_1^i, …, β_n^i)`.
    Rs(Vec<FieldElement>),
    Explicit(MatrixF),
}

/// An `[n, k]` linear code over an exactly represented field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    field: FieldSpec,
    n: usize,
    k: usize,
    kind: CodeKind,
}

impl CodeSpec {
    /// Reed–Solomon code with pairwise distinct generators.
    pub fn rs(field: &FieldSpec, generators: Vec<FieldElement>, k: usize) -> Result<Self, CodeError> {
        let n = generators.len();
        if k > n {
            return Err(CodeError::InvalidParameters(format!("k = {k} exceeds n = {n}")));
        }
        if generators.iter().any(|g| g.field() != field) {
            return Err(FieldError::FieldMismatch.into());
        }
        let mut seen = std::collections::HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if let Some(&j) = seen.get(g.coeffs()) {
                return Err(CodeError::RepeatedGenerator(j, i));
            }
            seen.insert(g.coeffs().to_vec(), i);
        }
        Ok(CodeSpec {
            field: field.clone(),
            n,
            k,
            kind: CodeKind::Rs(generators),
        })
    }

    /// Code spanned by the rows of `g`, which must have full row rank.
    pub fn explicit(g: MatrixF) -> Result<Self, CodeError> {
        let rank = g.rank();
        if rank != g.rows() {
            return Err(CodeError::RankLoss {
                rank,
                expected: g.rows(),
            });
        }
        Ok(CodeSpec {
            field: g.field().clone(),
            n: g.cols(),
            k: g.rows(),
            kind: CodeKind::Explicit(g),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> &CodeKind {
        &self.kind
    }

    pub fn generators(&self) -> Option<&[FieldElement]> {
        match &self.kind {
            CodeKind::Rs(g) => Some(g),
            CodeKind::Explicit(_) => None,
        }
    }

    pub fn generator_matrix(&self) -> MatrixF {
        match &self.kind {
            CodeKind::Rs(g) => vandermonde(&self.field, g, self.k),
            CodeKind::Explicit(m) => m.clone(),
        }
    }

    /// Codewords `m G` for every message `m`, in message-index order.
    /// Only sensible for tiny codes.
    pub fn codewords(&self) -> Vec<Vec<FieldElement>> {
        let g = self.generator_matrix();
        let q = self.field.size().expect("codeword listing needs a small field");
        let count = q.pow(self.k as u32);
        (0..count)
            .map(|idx| {
                let mut rest = idx;
                let msg: Vec<FieldElement> = (0..self.k)
                    .map(|_| {
                        let e = self.field.element_from_index(rest % q);
                        rest /= q;
                        e
                    })
                    .collect();
                (0..self.n)
                    .map(|c| {
                        let mut acc = self.field.zero();
                        for (r, m) in msg.iter().enumerate() {
                            acc += &(m * &g.get(r, c));
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }
}

/// `k × n` matrix with rows `β_j^i`.
pub fn vandermonde(field: &FieldSpec, generators: &[FieldElement], k: usize) -> MatrixF {
    let mut m = MatrixF::zeros(field, k, generators.len());
    for (c, b) in generators.iter().enumerate() {
        let mut pw = field.one();
        for r in 0..k {
            m.set(r, c, &pw);
            if r + 1 < k {
                pw = &pw * b;
            }
        }
    }
    m
}

pub fn rs_generator_matrix(code: &CodeSpec) -> Result<MatrixF, CodeError> {
    match code.kind {
        CodeKind::Rs(_) => Ok(code.generator_matrix()),
        CodeKind::Explicit(_) => Err(CodeError::WrongKind),
    }
}

/// The dual code, generated by the reduced-echelon kernel basis of `G`.
pub fn dual_code(code: &CodeSpec) -> CodeSpec {
    let basis = code.generator_matrix().kernel();
    let h = if basis.is_empty() {
        MatrixF::zeros(&code.field, 0, code.n)
    } else {
        MatrixF::from_rows(&code.field, &basis).expect("kernel vectors share a length")
    };
    CodeSpec {
        field: code.field.clone(),
        n: code.n,
        k: h.rows(),
        kind: CodeKind::Explicit(h),
    }
}

/// Parity-check matrix of `code`.
pub fn parity_check_matrix(code: &CodeSpec) -> MatrixF {
    dual_code(code).generator_matrix()
}

/// Restricts the code to the coordinates in `keep` (in the given order).
pub fn puncture(code: &CodeSpec, keep: &[usize]) -> Result<CodeSpec, CodeError> {
    if let Some(&bad) = keep.iter().find(|&&c| c >= code.n) {
        return Err(CodeError::InvalidParameters(format!("coordinate {bad} out of range")));
    }
    if keep.iter().collect::<HashSet<_>>().len() != keep.len() {
        return Err(CodeError::InvalidParameters("repeated coordinate".into()));
    }
    match &code.kind {
        CodeKind::Rs(g) => {
            if keep.len() < code.k {
                return Err(CodeError::RankLoss {
                    rank: keep.len(),
                    expected: code.k,
                });
            }
            CodeSpec::rs(&code.field, keep.iter().map(|&i| g[i].clone()).collect(), code.k)
        }
        CodeKind::Explicit(m) => CodeSpec::explicit(m.select_columns(keep)),
    }
}

/// Whether two codes have the same row space.
pub fn same_code(a: &CodeSpec, b: &CodeSpec) -> bool {
    a.field == b.field && a.n == b.n && a.k == b.k && a.generator_matrix().rref().0 == b.generator_matrix().rref().0
}

#[cfg(test)]
mod tests;
