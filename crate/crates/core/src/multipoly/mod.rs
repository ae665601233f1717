//! Sparse multivariate polynomials over `F_p`, Groebner bases, and the
//! polynomial certificates for the `k = 3` constructions.
//!
//! Monomials are packed into a `u128`: byte `i` holds the exponent of
//! variable `i` (at most 15 variables) and the top byte holds the total
//! degree. Every exponent and the total degree must stay below 128, which
//! leaves a spare bit per byte for branch-free divisibility tests.

mod certificates;
mod groebner;
mod order;
mod text;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::fields::primes::{add_mod, inv_mod, mul_mod, neg_mod, pow_mod, sub_mod};
use crate::fields::{FieldElement, FieldSpec};

pub use certificates::{
    char2_target, claim_q_data, gamma_expand_det3, groebner_claim, groebner_claim_target, verify_char2_membership,
    verify_claim_q_identity, verify_p1_factorization, Char2Report, ClaimQData, GroebnerClaimReport,
    CLAIM_Q_DATA,
};
pub use groebner::{buchberger, gb_reduce, GroebnerBasis, DEFAULT_PAIR_BUDGET};
pub use order::{MonomialOrder, OrderKind};
pub use text::parse_poly;

pub const MAX_VARS: usize = 15;
pub const MAX_EXPONENT: u32 = 127;

pub(crate) const DEG_SHIFT: u32 = 120;
/// High bit of every byte.
pub(crate) const HIGH_BITS: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultipolyError {
    #[error("characteristics differ ({0} vs {1})")]
    CharacteristicMismatch(u64, u64),
    #[error("variable counts differ ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("exponent or total degree exceeds {MAX_EXPONENT}")]
    ExponentOverflow,
    #[error("gamma-degree of an entry is {0}, at most 1 is supported")]
    DegreeTooHigh(u32),
    #[error("the certificate divides by 2 and needs odd characteristic")]
    EvenCharacteristic,
    #[error("characteristic 2 required, got {0}")]
    NotCharacteristicTwo(u64),
    #[error("pair budget of {0} exhausted")]
    BudgetExceeded(u64),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("certificate data checksum mismatch (expected {expected}, found {found})")]
    ChecksumMismatch { expected: String, found: String },
    #[error("evaluation point belongs to characteristic {0}")]
    FieldMismatch(u64),
}

#[inline]
pub(crate) fn lane(m: u128, i: usize) -> u32 {
    ((m >> (8 * i)) & 0xff) as u32
}

/// Packs an exponent vector in natural layout.
pub(crate) fn pack(exps: &[u32]) -> Result<u128, MultipolyError> {
    if exps.len() > MAX_VARS {
        return Err(MultipolyError::TooManyVariables(exps.len()));
    }
    let deg: u32 = exps.iter().sum();
    if deg > MAX_EXPONENT {
        return Err(MultipolyError::ExponentOverflow);
    }
    let mut m = (deg as u128) << DEG_SHIFT;
    for (i, &e) in exps.iter().enumerate() {
        m |= (e as u128) << (8 * i);
    }
    Ok(m)
}

/// `a | b` for packed monomials (lane-wise `a_i <= b_i`).
#[inline]
pub(crate) fn mono_divides(a: u128, b: u128) -> bool {
    ((b | HIGH_BITS) - a) & HIGH_BITS == HIGH_BITS
}

pub(crate) fn mono_lcm(a: u128, b: u128, nvars: usize) -> u128 {
    let mut m = 0u128;
    let mut deg = 0;
    for i in 0..nvars {
        let e = lane(a, i).max(lane(b, i));
        deg += e;
        m |= (e as u128) << (8 * i);
    }
    assert!(deg <= MAX_EXPONENT, "monomial exponent overflow");
    m | (deg as u128) << DEG_SHIFT
}

/// A polynomial in `nvars` variables over `F_p`. Terms are kept with
/// nonzero coefficients, sorted by descending packed monomial (graded, then
/// by the highest-numbered variable), so structural equality is equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    p: u64,
    nvars: usize,
    terms: Vec<(u128, u64)>,
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&MonomialOrder::degrevlex(self.nvars)))
    }
}

impl SparsePoly {
    pub fn zero(p: u64, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        SparsePoly {
            p,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(p: u64, nvars: usize, c: i64) -> Self {
        let mut out = Self::zero(p, nvars);
        let c = (c as i128).rem_euclid(p as i128) as u64;
        if c != 0 {
            out.terms.push((0, c));
        }
        out
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(p: u64, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(p, &exps, 1).unwrap()
    }

    pub fn monomial(p: u64, exps: &[u32], c: i64) -> Result<Self, MultipolyError> {
        Self::from_terms(p, exps.len(), [(exps.to_vec(), c)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed and coefficients reduced modulo `p`.
    pub fn from_terms(
        p: u64,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Result<Self, MultipolyError> {
        if nvars > MAX_VARS {
            return Err(MultipolyError::TooManyVariables(nvars));
        }
        let mut acc: HashMap<u128, u64> = HashMap::new();
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(MultipolyError::ArityMismatch(nvars, exps.len()));
            }
            let m = pack(&exps)?;
            let c = (c as i128).rem_euclid(p as i128) as u64;
            let slot = acc.entry(m).or_insert(0);
            *slot = add_mod(*slot, c, p);
        }
        Ok(Self::from_map(p, nvars, acc))
    }

    pub(crate) fn from_map(p: u64, nvars: usize, map: HashMap<u128, u64>) -> Self {
        let mut terms: Vec<(u128, u64)> = map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        SparsePoly { p, nvars, terms }
    }

    pub(crate) fn from_sorted(p: u64, nvars: usize, terms: Vec<(u128, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        SparsePoly { p, nvars, terms }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn packed_terms(&self) -> &[(u128, u64)] {
        &self.terms
    }

    /// Terms as `(exponent vector, coefficient)` in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, u64)> + '_ {
        self.terms.iter().map(|&(m, c)| ((0..self.nvars).map(|i| lane(m, i)).collect(), c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|&(m, _)| (m >> DEG_SHIFT) as u32)
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|&(m, _)| lane(m, i)).max().unwrap_or(0)
    }

    fn compatible(&self, other: &Self) -> Result<(), MultipolyError> {
        if self.p != other.p {
            return Err(MultipolyError::CharacteristicMismatch(self.p, other.p));
        }
        if self.nvars != other.nvars {
            return Err(MultipolyError::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let p = self.p;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let b_coef = |c: u64| if negate { neg_mod(c, p) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = self.terms[i];
            let (mb, cb) = other.terms[j];
            match ma.cmp(&mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma, ca));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb, b_coef(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { sub_mod(ca, cb, p) } else { add_mod(ca, cb, p) };
                    if c != 0 {
                        out.push((ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|&(m, c)| (m, b_coef(c))));
        SparsePoly::from_sorted(p, self.nvars, out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, MultipolyError> {
        self.compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, MultipolyError> {
        self.compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, MultipolyError> {
        self.compatible(other)?;
        let p = self.p;
        let mut acc: HashMap<u128, u64> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let s = ma + mb;
                if s & HIGH_BITS != 0 {
                    return Err(MultipolyError::ExponentOverflow);
                }
                let slot = acc.entry(s).or_insert(0);
                *slot = add_mod(*slot, mul_mod(ca, cb, p), p);
            }
        }
        Ok(Self::from_map(p, self.nvars, acc))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("incompatible polynomials")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("incompatible polynomials")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("incompatible polynomials")
    }

    pub fn neg(&self) -> Self {
        self.scale(self.p - 1)
    }

    pub fn scale(&self, s: u64) -> Self {
        let s = s % self.p;
        if s == 0 {
            return Self::zero(self.p, self.nvars);
        }
        let p = self.p;
        SparsePoly::from_sorted(p, self.nvars, self.terms.iter().map(|&(m, c)| (m, mul_mod(c, s, p))).collect())
    }

    /// Multiplies by `1/2`; needs odd characteristic.
    pub fn halve(&self) -> Result<Self, MultipolyError> {
        let half = inv_mod(2, self.p).filter(|_| self.p != 2).ok_or(MultipolyError::EvenCharacteristic)?;
        Ok(self.scale(half))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.p, self.nvars, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Product of a sequence of polynomials (the constant 1 when empty).
    pub fn product<'a>(p: u64, nvars: usize, factors: impl IntoIterator<Item = &'a SparsePoly>) -> Self {
        factors
            .into_iter()
            .fold(Self::constant(p, nvars, 1), |acc, f| acc.mul(f))
    }

    /// Substitutes each variable by a polynomial in a (possibly different)
    /// ring of the same characteristic.
    pub fn compose(&self, images: &[SparsePoly]) -> Result<SparsePoly, MultipolyError> {
        if images.len() != self.nvars {
            return Err(MultipolyError::ArityMismatch(self.nvars, images.len()));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let (p, nv) = (first.p, first.nvars);
        for img in images {
            if img.p != self.p {
                return Err(MultipolyError::CharacteristicMismatch(self.p, img.p));
            }
            if img.nvars != nv {
                return Err(MultipolyError::ArityMismatch(nv, img.nvars));
            }
        }
        let mut powers: Vec<Vec<SparsePoly>> = images
            .iter()
            .enumerate()
            .map(|(i, img)| {
                let mut v = vec![SparsePoly::constant(p, nv, 1)];
                for _ in 0..self.degree_in(i) {
                    let next = v.last().unwrap().try_mul(img)?;
                    v.push(next);
                }
                Ok(v)
            })
            .collect::<Result<_, MultipolyError>>()?;
        let mut acc = SparsePoly::zero(p, nv);
        for &(m, c) in &self.terms {
            let mut t = SparsePoly::constant(p, nv, c as i64);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = lane(m, i) as usize;
                if e > 0 {
                    t = t.try_mul(&pw[e])?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Evaluates at a point of any extension of `F_p`.
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement, MultipolyError> {
        if point.len() != self.nvars {
            return Err(MultipolyError::ArityMismatch(self.nvars, point.len()));
        }
        let field: FieldSpec = match point.first() {
            Some(x) => x.field().clone(),
            None => FieldSpec::prime(self.p).map_err(|_| MultipolyError::FieldMismatch(self.p))?,
        };
        if field.characteristic() != self.p || point.iter().any(|x| x.field() != &field) {
            return Err(MultipolyError::FieldMismatch(field.characteristic()));
        }
        let mut powers: Vec<Vec<FieldElement>> = point
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let mut v = vec![field.one()];
                for _ in 0..self.degree_in(i) {
                    let next = v.last().unwrap() * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = field.zero();
        for &(m, c) in &self.terms {
            let mut t = field.from_u64(c);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = lane(m, i) as usize;
                if e > 0 {
                    t = t * &pw[e];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Evaluates at a point of `F_p` given as residues.
    pub fn eval_prime(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars);
        let p = self.p;
        let mut acc = 0;
        for &(m, c) in &self.terms {
            let mut t = c;
            for (i, &x) in point.iter().enumerate() {
                let e = lane(m, i);
                if e > 0 {
                    t = mul_mod(t, pow_mod(x, e as u128, p), p);
                }
            }
            acc = add_mod(acc, t, p);
        }
        acc
    }

    /// Coefficients of the powers of variable `i`, each a polynomial in the
    /// remaining variables (variable `i` removed, later indices shifted down).
    pub fn split_by_var(&self, i: usize) -> Vec<SparsePoly> {
        let deg = self.degree_in(i) as usize;
        let mut parts: Vec<HashMap<u128, u64>> = vec![HashMap::new(); deg + 1];
        for &(m, c) in &self.terms {
            let exps: Vec<u32> = (0..self.nvars).filter(|&j| j != i).map(|j| lane(m, j)).collect();
            parts[lane(m, i) as usize].insert(pack(&exps).unwrap(), c);
        }
        parts
            .into_iter()
            .map(|map| SparsePoly::from_map(self.p, self.nvars - 1, map))
            .collect()
    }

    /// Reinterprets the polynomial in a ring with more variables.
    pub fn with_nvars(&self, nvars: usize) -> SparsePoly {
        assert!(nvars >= self.nvars && nvars <= MAX_VARS);
        SparsePoly {
            p: self.p,
            nvars,
            terms: self.terms.clone(),
        }
    }

    /// Text form with terms in descending order under `order`.
    pub fn to_text(&self, order: &MonomialOrder) -> String {
        text::format_poly(self, order)
    }
}

pub fn poly_add(f: &SparsePoly, g: &SparsePoly) -> Result<SparsePoly, MultipolyError> {
    f.try_add(g)
}

pub fn poly_mul(f: &SparsePoly, g: &SparsePoly) -> Result<SparsePoly, MultipolyError> {
    f.try_mul(g)
}

pub fn poly_eval(f: &SparsePoly, point: &[FieldElement]) -> Result<FieldElement, MultipolyError> {
    f.eval(point)
}

#[cfg(test)]
mod tests;
