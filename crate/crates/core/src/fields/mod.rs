//! Exact arithmetic in `F_p`, simple extensions, and towers of extensions.
//!
//! A [`FieldSpec`] is immutable once built and cheap to clone (it is an
//! `Arc`). [`FieldElement`]s carry their field and a canonical coefficient
//! vector of length `D`, so equality is plain vector equality.

mod irreducible;
pub(crate) mod primes;
mod text;
pub(crate) mod tower;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

pub use irreducible::{find_irreducible, IrreducibilityProof};
pub use primes::{binomial, is_prime, next_prime_power, prime_power};
use tower::Tower;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("minimal polynomial of level {level} is reducible")]
    ReduciblePolynomial { level: usize },
    #[error("level {level}: {reason}")]
    DegreeMismatch { level: usize, reason: String },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot certify irreducibility at level {level}: {reason}")]
    IrreducibilityUndecided { level: usize, reason: String },
    #[error("coefficient {value} out of range for characteristic {p}")]
    CoefficientOutOfRange { value: u64, p: u64 },
    #[error("malformed field text: {0}")]
    Parse(String),
}

/// One requested tower level: its degree and how to pick the minimal
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub degree: usize,
    pub min_poly: MinPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinPoly {
    /// Lexicographically smallest monic irreducible.
    Auto,
    /// Prime-field coefficients as signed integers, low to high
    /// (`x^3 - 2` is `[-2, 0, 0, 1]`), lifted into the field below.
    Prime(Vec<i64>),
    /// `degree + 1` coefficient vectors over the field below, low to high.
    Full(Vec<Vec<u64>>),
}

impl Extension {
    pub fn auto(degree: usize) -> Self {
        Extension {
            degree,
            min_poly: MinPoly::Auto,
        }
    }

    pub fn with_poly(degree: usize, coeffs: Vec<Vec<u64>>) -> Self {
        Extension {
            degree,
            min_poly: MinPoly::Full(coeffs),
        }
    }

    pub fn prime_poly(degree: usize, coeffs: &[i64]) -> Self {
        Extension {
            degree,
            min_poly: MinPoly::Prime(coeffs.to_vec()),
        }
    }

    fn resolve(&self, p: u64, sub: usize) -> Option<Vec<Vec<u64>>> {
        match &self.min_poly {
            MinPoly::Auto => None,
            MinPoly::Full(c) => Some(c.clone()),
            MinPoly::Prime(c) => Some(
                c.iter()
                    .map(|&v| {
                        let mut block = vec![0; sub];
                        block[0] = (v as i128).rem_euclid(p as i128) as u64;
                        block
                    })
                    .collect(),
            ),
        }
    }
}

/// A finite field `F_{p^D}` presented as a tower of extensions.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    tower: Tower,
    proofs: Vec<IrreducibilityProof>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.tower == other.inner.tower
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.characteristic(), self.degree())?;
        if self.levels() > 1 {
            write!(f, " {:?}", self.level_degrees())?;
        }
        Ok(())
    }
}

impl FieldSpec {
    /// Builds `F_p` followed by the requested extensions. Omitted minimal
    /// polynomials are chosen by [`find_irreducible`]; supplied ones are
    /// checked for shape and certified irreducible.
    pub fn new(p: u64, extensions: &[Extension]) -> Result<FieldSpec, FieldError> {
        let mut field = FieldSpec::prime(p)?;
        for ext in extensions {
            field = field.extend(ext)?;
        }
        Ok(field)
    }

    pub fn prime(p: u64) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec {
            inner: Arc::new(FieldInner {
                tower: Tower::prime(p),
                proofs: Vec::new(),
            }),
        })
    }

    /// Adjoins one more level on top of this field.
    pub fn extend(&self, ext: &Extension) -> Result<FieldSpec, FieldError> {
        let level = self.levels() + 1;
        if ext.degree == 0 {
            return Err(FieldError::DegreeMismatch {
                level,
                reason: "degree must be at least 1".into(),
            });
        }
        let p = self.characteristic();
        let sub = self.degree();
        let (coeffs, proof) = match ext.resolve(p, sub) {
            None => {
                let poly = find_irreducible(self, ext.degree);
                let coeffs: Vec<Vec<u64>> = poly.iter().map(|c| c.coeffs().to_vec()).collect();
                (coeffs, IrreducibilityProof::DistinctDegree)
            }
            Some(coeffs) => {
                self.validate_poly_shape(level, ext.degree, &coeffs)?;
                let proof = irreducible::certify(&self.inner.tower, &coeffs, level)?;
                (coeffs, proof)
            }
        };
        let mut tower = self.inner.tower.clone();
        tower.push_level(ext.degree, coeffs.concat());
        let mut proofs = self.inner.proofs.clone();
        proofs.push(proof);
        Ok(FieldSpec {
            inner: Arc::new(FieldInner { tower, proofs }),
        })
    }

    fn validate_poly_shape(&self, level: usize, degree: usize, coeffs: &[Vec<u64>]) -> Result<(), FieldError> {
        let p = self.characteristic();
        if coeffs.len() != degree + 1 {
            return Err(FieldError::DegreeMismatch {
                level,
                reason: format!("expected {} coefficients, got {}", degree + 1, coeffs.len()),
            });
        }
        for c in coeffs {
            if c.len() != self.degree() {
                return Err(FieldError::DegreeMismatch {
                    level,
                    reason: format!("coefficient has length {}, expected {}", c.len(), self.degree()),
                });
            }
            if let Some(&bad) = c.iter().find(|&&v| v >= p) {
                return Err(FieldError::CoefficientOutOfRange { value: bad, p });
            }
        }
        let lead = coeffs.last().unwrap();
        if lead[0] != 1 || lead[1..].iter().any(|&v| v != 0) {
            return Err(FieldError::DegreeMismatch {
                level,
                reason: "minimal polynomial must be monic".into(),
            });
        }
        Ok(())
    }

    pub(crate) fn tower(&self) -> &Tower {
        &self.inner.tower
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.tower.p
    }

    /// Total degree `D` over the prime field.
    pub fn degree(&self) -> usize {
        *self.inner.tower.dims.last().unwrap()
    }

    /// Number of extension levels above `F_p`.
    pub fn levels(&self) -> usize {
        self.inner.tower.top()
    }

    pub fn level_degrees(&self) -> Vec<usize> {
        self.inner.tower.levels.iter().map(|l| l.degree).collect()
    }

    /// Minimal polynomial of a level (1-based) as coefficient vectors over
    /// the level below.
    pub fn min_poly(&self, level: usize) -> Vec<Vec<u64>> {
        let sub = self.inner.tower.dims[level - 1];
        self.inner.tower.levels[level - 1]
            .min_poly
            .chunks(sub)
            .map(|c| c.to_vec())
            .collect()
    }

    /// How each level's minimal polynomial was shown irreducible.
    pub fn irreducibility_proofs(&self) -> &[IrreducibilityProof] {
        &self.inner.proofs
    }

    /// `p^D` when it fits in a `u128`.
    pub fn size(&self) -> Option<u128> {
        let p = self.characteristic() as u128;
        let mut acc: u128 = 1;
        for _ in 0..self.degree() {
            acc = acc.checked_mul(p)?;
        }
        Some(acc)
    }

    pub fn log2_size(&self) -> f64 {
        self.degree() as f64 * (self.characteristic() as f64).log2()
    }

    /// The subfield `L_level` of this tower as a field of its own.
    pub fn subfield(&self, level: usize) -> FieldSpec {
        let mut tower = Tower::prime(self.characteristic());
        for l in &self.inner.tower.levels[..level] {
            tower.push_level(l.degree, l.min_poly.clone());
        }
        FieldSpec {
            inner: Arc::new(FieldInner {
                tower,
                proofs: self.inner.proofs[..level].to_vec(),
            }),
        }
    }

    fn wrap(&self, coeffs: Vec<u64>) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(vec![0; self.degree()])
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(self.inner.tower.one(self.levels()))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, v: i64) -> FieldElement {
        let p = self.characteristic() as i128;
        self.wrap(self.inner.tower.scalar(self.levels(), (v as i128).rem_euclid(p) as u64))
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        self.wrap(self.inner.tower.scalar(self.levels(), v % self.characteristic()))
    }

    /// Element from its normal-form coefficient vector.
    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.degree() {
            return Err(FieldError::DegreeMismatch {
                level: self.levels(),
                reason: format!("element has {} coefficients, expected {}", coeffs.len(), self.degree()),
            });
        }
        let p = self.characteristic();
        if let Some(&bad) = coeffs.iter().find(|&&v| v >= p) {
            return Err(FieldError::CoefficientOutOfRange { value: bad, p });
        }
        Ok(self.wrap(coeffs))
    }

    /// Embeds an element of the subfield `L_level` (given by coefficients).
    pub fn embed(&self, coeffs: &[u64]) -> FieldElement {
        let mut v = coeffs.to_vec();
        v.resize(self.degree(), 0);
        self.wrap(v)
    }

    /// The generator `x_level` of level `level` (1-based).
    pub fn generator(&self, level: usize) -> FieldElement {
        let g = self.inner.tower.generator(level);
        self.embed(&g)
    }

    /// The `index`-th element in counting order: base-`p` digits of `index`
    /// are the coefficients, lowest first.
    pub fn element_from_index(&self, mut index: u128) -> FieldElement {
        let p = self.characteristic() as u128;
        let mut coeffs = vec![0; self.degree()];
        for c in coeffs.iter_mut() {
            if index == 0 {
                break;
            }
            *c = (index % p) as u64;
            index /= p;
        }
        self.wrap(coeffs)
    }

    /// All elements in counting order. Panics if the field is too large to
    /// enumerate.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.size().expect("field too large to enumerate");
        (0..q).map(move |i| self.element_from_index(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let p = self.characteristic();
        self.wrap((0..self.degree()).map(|_| rng.gen_range(0..p)).collect())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// `true` if `poly` (coefficients low to high, monic or not) is
    /// irreducible over this field, by the distinct-degree gcd test.
    pub fn is_irreducible(&self, poly: &[FieldElement]) -> bool {
        let coeffs: Vec<Vec<u64>> = poly.iter().map(|c| c.coeffs.clone()).collect();
        irreducible::distinct_degree_test(&self.inner.tower, &coeffs)
    }
}

/// An element of a [`FieldSpec`] in normal form.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.coeffs {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        Tower::is_zero(&self.coeffs)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Prime-field value when the element lies in `F_p`.
    pub fn as_prime(&self) -> Option<u64> {
        Tower::as_scalar(&self.coeffs)
    }

    /// Position in the field's counting order, if it fits in a `u128`.
    pub fn index(&self) -> Option<u128> {
        let p = self.field.characteristic() as u128;
        let mut acc: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(p)?.checked_add(c as u128)?;
        }
        Some(acc)
    }

    fn check_same(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn tower(&self) -> &Tower {
        self.field.tower()
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same(other)?;
        let mut out = self.coeffs.clone();
        self.tower().add_assign(&mut out, &other.coeffs);
        Ok(self.field.wrap(out))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same(other)?;
        let mut out = self.coeffs.clone();
        self.tower().sub_assign(&mut out, &other.coeffs);
        Ok(self.field.wrap(out))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same(other)?;
        let out = self.tower().mul(self.field.levels(), &self.coeffs, &other.coeffs);
        Ok(self.field.wrap(out))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse (extended Euclid on the top level, recursing
    /// into the coefficient field).
    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        self.tower()
            .inv(self.field.levels(), &self.coeffs)
            .map(|c| self.field.wrap(c))
            .ok_or(FieldError::DivisionByZero)
    }

    /// Inverse as `a^(q-2)`; only for fields whose size fits in a `u128`.
    pub fn inv_fermat(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let q = self.field.size().expect("field too large for Fermat inversion");
        Ok(self.pow(q - 2))
    }

    pub fn pow(&self, exp: u128) -> FieldElement {
        self.field.wrap(self.tower().pow(self.field.levels(), &self.coeffs, exp))
    }

    /// `a^p`.
    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.characteristic() as u128)
    }

    pub fn scale(&self, s: u64) -> FieldElement {
        let mut out = self.coeffs.clone();
        self.tower().scale_assign(&mut out, s % self.field.characteristic());
        self.field.wrap(out)
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self) -> u64 {
        self.tower().trace(self.field.levels(), &self.coeffs)
    }

    /// Absolute norm to `F_p`.
    pub fn norm(&self) -> u64 {
        self.tower().norm(self.field.levels(), &self.coeffs)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$checked(&rhs).expect("field mismatch")
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$checked(rhs).expect("field mismatch")
            }
        }
        impl $assign_trait<&FieldElement> for FieldElement {
            fn $assign(&mut self, rhs: &FieldElement) {
                *self = (&*self).$checked(rhs).expect("field mismatch");
            }
        }
    };
}

forward_binop!(Add, add, checked_add, AddAssign, add_assign);
forward_binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let mut out = self.coeffs.clone();
        self.tower().neg_assign(&mut out);
        self.field.wrap(out)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// `a + b`, failing on mismatched fields.
pub fn ff_add(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    a.checked_add(b)
}

pub fn ff_mul(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    a.checked_mul(b)
}

pub fn ff_neg(a: &FieldElement) -> FieldElement {
    -a
}

pub fn ff_inv(a: &FieldElement) -> Result<FieldElement, FieldError> {
    a.inv()
}

pub use text::{parse_element, parse_field, write_field};
