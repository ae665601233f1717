use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CodeError, SetTuple};
use crate::fields::{Extension, FieldSpec};
use crate::linalg::{subspace_intersection_dim, MatrixF};

/// Estimates generic behaviour by sampling uniformly random matrices over a
/// field of at least `2^31` elements.
#[derive(Debug, Clone)]
pub struct GenericOracle {
    field: FieldSpec,
    trials: usize,
    seed: u64,
}

impl GenericOracle {
    /// Oracle over the smallest extension of `F_p` with at least `2^31`
    /// elements.
    pub fn for_characteristic(p: u64, trials: usize, seed: u64) -> Result<Self, CodeError> {
        let base = FieldSpec::prime(p)?;
        let mut d = 1usize;
        while (d as f64) * (p as f64).log2() < 31.0 {
            d += 1;
        }
        let field = if d == 1 { base } else { base.extend(&Extension::auto(d))? };
        Ok(GenericOracle { field, trials, seed })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    /// Fresh generator for one query; queries are reproducible on their own.
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    /// Smallest intersection dimension of the column spans `W_{A_i}` seen
    /// over the trials.
    pub fn intersection_dim(&self, n: usize, tuple: &SetTuple, salt: u64) -> Result<usize, CodeError> {
        let mut rng = self.rng(salt);
        let mut best = usize::MAX;
        for _ in 0..self.trials.max(1) {
            let w = MatrixF::from_fn(&self.field, tuple.k, n, |_, _| self.field.random(&mut rng));
            let spans: Vec<MatrixF> = tuple.sets.iter().map(|s| w.select_columns(s)).collect();
            best = best.min(subspace_intersection_dim(&spans)?);
        }
        Ok(best)
    }

    pub fn generically_zero(&self, n: usize, tuple: &SetTuple, salt: u64) -> Result<bool, CodeError> {
        Ok(self.intersection_dim(n, tuple, salt)? == 0)
    }
}
