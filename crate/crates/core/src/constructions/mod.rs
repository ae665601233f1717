//! Explicit Reed–Solomon constructions of higher-order MDS codes over
//! exactly constructed extension fields.
//!
//! Every builder is deterministic: base-field elements are taken in the
//! field's counting order and minimal polynomials are either fixed or the
//! lexicographically smallest irreducible. The returned [`Construction`]
//! carries the code and the derived parameters as `key=value` provenance.

mod tower;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::codes::{CodeError, CodeSpec};
use crate::fields::{next_prime_power, Extension, FieldElement, FieldError, FieldSpec};

pub use tower::certified_tower;

/// Largest tower degree (coefficients per element) the general construction
/// will build.
pub const MAX_TOWER_DEGREE: u128 = 1 << 18;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no Sidon set of size {n} found in fields of size up to {max_q}")]
    SidonSetNotFound { n: usize, max_q: u64 },
    #[error("tower degree {degree} exceeds the cap {cap}")]
    BudgetExceeded { degree: u128, cap: u128 },
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionName {
    K3N4,
    K3N3,
    K4General,
    K5Weak,
    GeneralEll,
}

impl ConstructionName {
    pub const ALL: [ConstructionName; 5] = [
        ConstructionName::K3N4,
        ConstructionName::K3N3,
        ConstructionName::K4General,
        ConstructionName::K5Weak,
        ConstructionName::GeneralEll,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionName::K3N4 => "k3-n4",
            ConstructionName::K3N3 => "k3-n3",
            ConstructionName::K4General => "k4-general",
            ConstructionName::K5Weak => "k5-weak",
            ConstructionName::GeneralEll => "general-ell",
        }
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionName {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "k4" => Ok(ConstructionName::K4General),
            _ => ConstructionName::ALL
                .into_iter()
                .find(|c| c.as_str() == s)
                .ok_or_else(|| ConstructionError::UnknownConstruction(s.to_string())),
        }
    }
}

/// Parameters for [`construct`]. `k` and `ell` are ignored by the
/// constructions that fix them; `degree` overrides the extension degree of
/// `k5-weak` and the per-level degree of `general-ell`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams {
    pub name: ConstructionName,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub degree: Option<usize>,
}

impl ConstructionParams {
    pub fn new(name: ConstructionName, n: usize) -> Self {
        let k = match name {
            ConstructionName::K3N4 | ConstructionName::K3N3 => 3,
            ConstructionName::K4General => 4,
            ConstructionName::K5Weak => 5,
            ConstructionName::GeneralEll => 2,
        };
        ConstructionParams {
            name,
            n,
            k,
            ell: 3,
            degree: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub name: ConstructionName,
    pub code: CodeSpec,
    /// Size of the field the `α`'s (or `β`'s) are drawn from.
    pub base_q: u64,
    /// `ℓ` the code is built for (3 except for `general-ell`).
    pub ell: usize,
    pub provenance: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

impl Construction {
    /// `key=value` lines for a code file header.
    pub fn header(&self) -> Vec<String> {
        let mut lines: Vec<String> = self.provenance.iter().map(|(k, v)| format!("{k}={v}")).collect();
        lines.extend(self.warnings.iter().map(|w| format!("warning: {w}")));
        lines
    }

    pub fn provenance(&self, key: &str) -> Option<&str> {
        self.provenance.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

pub fn construct(params: &ConstructionParams) -> Result<Construction, ConstructionError> {
    match params.name {
        ConstructionName::K3N4 => construct_k3_n4(params.n),
        ConstructionName::K3N3 => construct_k3_n3(params.n),
        ConstructionName::K4General => construct_k4(params.n, params.k),
        ConstructionName::K5Weak => construct_k5_weak(params.n, params.k, params.degree),
        ConstructionName::GeneralEll => construct_general(params.n, params.k, params.ell, params.degree),
    }
}

/// `F_q` for a prime power `q = p^e`, with the lexicographically smallest
/// modulus when `e > 1`.
pub fn base_field(p: u64, e: u32) -> Result<FieldSpec, FieldError> {
    let field = FieldSpec::prime(p)?;
    if e > 1 {
        field.extend(&Extension::auto(e as usize))
    } else {
        Ok(field)
    }
}

fn join(elems: &[FieldElement]) -> String {
    elems.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

struct Builder {
    name: ConstructionName,
    provenance: Vec<(String, String)>,
    warnings: Vec<String>,
}

impl Builder {
    fn new(name: ConstructionName, n: usize, k: usize) -> Self {
        let provenance = vec![
            ("construction".into(), name.to_string()),
            ("n".into(), n.to_string()),
            ("k".into(), k.to_string()),
        ];
        Builder {
            name,
            provenance,
            warnings: Vec::new(),
        }
    }

    fn record(&mut self, key: &str, value: impl ToString) {
        self.provenance.push((key.to_string(), value.to_string()));
    }

    fn finish(
        mut self,
        field: &FieldSpec,
        gens: Vec<FieldElement>,
        k: usize,
        base_q: u64,
        ell: usize,
    ) -> Result<Construction, ConstructionError> {
        self.record("field_degree", field.degree());
        self.record("levels", field.level_degrees().iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        let k = if k > gens.len() {
            self.warnings.push(format!("k = {k} exceeds n = {}; built the full space instead", gens.len()));
            gens.len()
        } else {
            k
        };
        Ok(Construction {
            name: self.name,
            code: CodeSpec::rs(field, gens, k)?,
            base_q,
            ell,
            provenance: self.provenance,
            warnings: self.warnings,
        })
    }
}

/// The first `n` elements of `base` in counting order, embedded in `top`.
fn first_elements(base: &FieldSpec, top: &FieldSpec, n: usize) -> Vec<(FieldElement, FieldElement)> {
    (0..n as u128)
        .map(|i| {
            let a = base.element_from_index(i);
            let up = top.embed(a.coeffs());
            (a, up)
        })
        .collect()
}

/// `[n, 3]` code on `β_i = α_i + γ α_i²`, `α_i` the first `n` elements of
/// the smallest odd `F_q` with `q ≥ n` and `γ` generating a degree-4
/// extension of it.
pub fn construct_k3_n4(n: usize) -> Result<Construction, ConstructionError> {
    let mut b = Builder::new(ConstructionName::K3N4, n, 3);
    let (q, p, e) = next_prime_power(n as u64, |p, _| p % 2 == 1);
    let base = base_field(p, e)?;
    let field = base.extend(&Extension::auto(4))?;
    let gamma = field.generator(field.levels());
    let pairs = first_elements(&base, &field, n);
    let gens = pairs.iter().map(|(_, a)| a + &(&gamma * &(a * a))).collect();
    let alphas: Vec<FieldElement> = pairs.into_iter().map(|(a, _)| a).collect();
    b.record("q", q);
    b.record("p", p);
    b.record("e", e);
    b.record("extension_degree", 4);
    b.record("alpha", join(&alphas));
    b.finish(&field, gens, 3, q, 3)
}

/// Smallest `q = 7^e ≥ 7n` for which `x³ − 2` stays irreducible over
/// `F_q`, i.e. `3 ∤ e`. Also returns the exponents that were skipped.
pub fn k3_n3_exponent(n: usize) -> (u32, Vec<u32>) {
    let mut skipped = Vec::new();
    let mut e = 1u32;
    loop {
        if 7u128.pow(e) >= 7 * n as u128 {
            if e % 3 != 0 {
                return (e, skipped);
            }
            skipped.push(e);
        }
        e += 1;
    }
}

/// The elements of `F_{7^e}` whose top coordinate is 1, in counting order.
/// Six of them always sum to an element with top coordinate 6.
pub fn no_six_sum_set(base: &FieldSpec, n: usize) -> Vec<FieldElement> {
    let top = base.degree() as u32 - 1;
    let offset = (base.characteristic() as u128).pow(top);
    let count = offset.min(n as u128);
    (0..count).map(|j| base.element_from_index(offset + j)).collect()
}

/// `[n, 3]` code on `β_α = α + γ α²` for `α` in a no-six-sum set of
/// `F_{7^e}`, with `γ³ = 2`.
pub fn construct_k3_n3(n: usize) -> Result<Construction, ConstructionError> {
    let mut b = Builder::new(ConstructionName::K3N3, n, 3);
    let (e, skipped) = k3_n3_exponent(n);
    for s in skipped {
        b.warnings.push(format!(
            "7^{s} skipped: x^3 - 2 has a root in F_(7^{s}), so gamma^3 = 2 would not define an extension"
        ));
    }
    let base = base_field(7, e)?;
    let field = base.extend(&Extension::prime_poly(3, &[-2, 0, 0, 1]))?;
    let gamma = field.generator(field.levels());
    let s = no_six_sum_set(&base, n);
    let gens = s
        .iter()
        .map(|a| {
            let a = field.embed(a.coeffs());
            &a + &(&gamma * &(&a * &a))
        })
        .collect();
    let q = 7u64.pow(e);
    b.record("q", q);
    b.record("p", 7);
    b.record("e", e);
    b.record("extension_degree", 3);
    b.record("S", join(&s));
    b.finish(&field, gens, 3, q, 3)
}

/// `[n, k]` code on `β_i = γ α_i − α_i²` over a degree-`(2k−1)` extension of
/// the smallest `F_q`, `q ≥ n`, of characteristic at least `k`.
pub fn construct_k4(n: usize, k: usize) -> Result<Construction, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::InvalidParameters("k must be positive".into()));
    }
    let mut b = Builder::new(ConstructionName::K4General, n, k);
    let (q, p, e) = next_prime_power(n as u64, |p, _| p >= k as u64);
    assert!(p >= k as u64);
    let base = base_field(p, e)?;
    let degree = 2 * k - 1;
    let field = base.extend(&Extension::auto(degree))?;
    let gamma = field.generator(field.levels());
    let pairs = first_elements(&base, &field, n);
    let gens = pairs.iter().map(|(_, a)| &(&gamma * a) - &(a * a)).collect();
    let alphas: Vec<FieldElement> = pairs.into_iter().map(|(a, _)| a).collect();
    b.record("q", q);
    b.record("p", p);
    b.record("e", e);
    b.record("extension_degree", degree);
    b.record("alpha", join(&alphas));
    b.finish(&field, gens, k, q, 3)
}

/// Greedy first-fit over the counting order of `base`: an element is kept
/// when its sums with the kept elements are new. Sums are over unordered
/// pairs of distinct elements.
pub fn greedy_sidon(base: &FieldSpec, n: usize) -> Option<Vec<FieldElement>> {
    let mut chosen: Vec<FieldElement> = Vec::with_capacity(n);
    let mut sums: HashSet<Vec<u64>> = HashSet::new();
    for x in base.elements() {
        if chosen.len() == n {
            break;
        }
        let new: Vec<Vec<u64>> = chosen.iter().map(|a| (a + &x).coeffs().to_vec()).collect();
        if new.iter().any(|s| sums.contains(s)) {
            continue;
        }
        sums.extend(new);
        chosen.push(x);
    }
    (chosen.len() == n).then_some(chosen)
}

/// All sums `α_i + α_j`, `i < j`, are distinct.
pub fn is_sidon(elems: &[FieldElement]) -> bool {
    let mut sums = HashSet::new();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if !sums.insert((&elems[i] + &elems[j]).coeffs().to_vec()) {
                return false;
            }
        }
    }
    true
}

/// `[n, k]` code on `β_i = α_i x − α_i²` where the `α_i` form a Sidon set
/// of the smallest `F_q` in which the greedy scan finds `n` of them, and
/// `x` generates a degree-`k²` extension (or `degree`).
pub fn construct_k5_weak(n: usize, k: usize, degree: Option<usize>) -> Result<Construction, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::InvalidParameters("k must be positive".into()));
    }
    let mut b = Builder::new(ConstructionName::K5Weak, n, k);
    if k > 5 {
        b.warnings.push(format!("k = {k} > 5: only the profiles with a set of size k - 1 are covered"));
    }
    let max_q = (2 * n * n).max(16) as u64;
    let mut lower = n.max(2) as u64;
    let (q, p, e, base, alphas) = loop {
        let (q, p, e) = next_prime_power(lower, |_, _| true);
        if q > max_q {
            return Err(ConstructionError::SidonSetNotFound { n, max_q });
        }
        let base = base_field(p, e)?;
        if let Some(alphas) = greedy_sidon(&base, n) {
            break (q, p, e, base, alphas);
        }
        lower = q + 1;
    };
    let degree = degree.unwrap_or(k * k);
    if degree == 0 {
        return Err(ConstructionError::InvalidParameters("extension degree must be positive".into()));
    }
    let field = base.extend(&Extension::auto(degree))?;
    let x = field.generator(field.levels());
    let gens = alphas
        .iter()
        .map(|a| {
            let a = field.embed(a.coeffs());
            &(&a * &x) - &(&a * &a)
        })
        .collect();
    b.record("q", q);
    b.record("p", p);
    b.record("e", e);
    b.record("extension_degree", degree);
    b.record("alpha", join(&alphas));
    b.finish(&field, gens, k, q, 3)
}

/// Smallest per-level degree accepted by [`construct_general`]:
/// `ℓk(k−1) + 1`.
pub fn general_degree_floor(k: usize, ell: usize) -> usize {
    ell * k * k.saturating_sub(1) + 1
}

/// `[n, k]` code for `MDS(ℓ)` with generators
/// `p_i = Σ_{j=1}^{ℓk} β_i^{j−1} α_j`, where `β_1, …, β_n` are distinct in a
/// base field of size at least `n + k − 1` and `α_j` generates level `j` of
/// a tower of `ℓk` extensions of degree `D` (default `ℓk²`).
pub fn construct_general(
    n: usize,
    k: usize,
    ell: usize,
    degree: Option<usize>,
) -> Result<Construction, ConstructionError> {
    if k == 0 || ell == 0 || n < k {
        return Err(ConstructionError::InvalidParameters(format!(
            "need n ≥ k ≥ 1 and ℓ ≥ 1, got n = {n}, k = {k}, ℓ = {ell}"
        )));
    }
    let mut b = Builder::new(ConstructionName::GeneralEll, n, k);
    b.record("ell", ell);
    let levels = ell * k;
    let d = degree.unwrap_or(ell * k * k);
    let floor = general_degree_floor(k, ell);
    if d < floor {
        return Err(ConstructionError::InvalidParameters(format!(
            "per-level degree {d} is below ℓk(k−1) + 1 = {floor}"
        )));
    }
    let (q, p, e) = next_prime_power((n + k - 1) as u64, |_, _| true);
    let base = base_field(p, e)?;
    let total = (d as u128)
        .checked_pow(levels as u32)
        .and_then(|t| t.checked_mul(base.degree() as u128))
        .unwrap_or(u128::MAX);
    if total > MAX_TOWER_DEGREE {
        return Err(ConstructionError::BudgetExceeded {
            degree: total,
            cap: MAX_TOWER_DEGREE,
        });
    }
    let field = certified_tower(&base, levels, d)?;
    let first = base.levels();
    let gens = (0..n as u128)
        .map(|i| {
            let beta = field.embed(base.element_from_index(i).coeffs());
            let mut power = field.one();
            let mut acc = field.zero();
            for j in 1..=levels {
                acc += &(&power * &field.generator(first + j));
                power = &power * &beta;
            }
            acc
        })
        .collect();
    let betas: Vec<FieldElement> = (0..n as u128).map(|i| base.element_from_index(i)).collect();
    b.record("q", q);
    b.record("p", p);
    b.record("e", e);
    b.record("per_level_degree", d);
    b.record("tower_levels", levels);
    let proofs: Vec<String> = field.irreducibility_proofs()[first..].iter().map(|p| format!("{p:?}")).collect();
    b.record("certificates", proofs.join(","));
    b.record("beta", join(&betas));
    if d < ell * k * k {
        b.warnings.push(format!("per-level degree {d} is below the default ℓk² = {}", ell * k * k));
    }
    b.finish(&field, gens, k, q, ell)
}
