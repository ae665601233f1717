//! Irreducibility of monic polynomials over the top level of a tower.
//!
//! The general test is Ben-Or's: `f` of degree `d` over `F_Q` is irreducible
//! iff `gcd(x^{Q^i} - x, f) = 1` for every `i <= d/2`. Its cost grows with the
//! square of the base field's degree, so two shapes with closed-form criteria
//! are recognised first:
//!
//! * `x^p - x - c` (Artin–Schreier) is irreducible iff `Tr(c) != 0`;
//! * `x^d - c` is irreducible iff for every prime `r | d`, `r | Q - 1` and
//!   `c^{(Q-1)/r} != 1`, and additionally `Q ≡ 1 (mod 4)` when `4 | d`.

use super::primes::{pow_mod, prime_factors};
use super::tower::{PolyRing, Tower, UPoly};
use super::{FieldElement, FieldError, FieldSpec};

/// Work above which the general test is refused (roughly base-field
/// multiplications times their cost).
const GENERIC_TEST_BUDGET: f64 = 2e9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IrreducibilityProof {
    Linear,
    DistinctDegree,
    ArtinSchreier,
    Kummer,
}

/// Certifies that `coeffs` (monic, `degree + 1` entries over the tower's top
/// level) is irreducible; `level` is only used for error messages.
pub(crate) fn certify(tower: &Tower, coeffs: &[Vec<u64>], level: usize) -> Result<IrreducibilityProof, FieldError> {
    let d = coeffs.len() - 1;
    if d == 1 {
        return Ok(IrreducibilityProof::Linear);
    }
    if let Some(c) = artin_schreier_constant(tower, coeffs) {
        return if tower.trace(tower.top(), &c) != 0 {
            Ok(IrreducibilityProof::ArtinSchreier)
        } else {
            Err(FieldError::ReduciblePolynomial { level })
        };
    }
    if let Some(c) = binomial_constant(tower, coeffs) {
        if let Some(irreducible) = binomial_criterion(tower, d, &c) {
            return if irreducible {
                Ok(IrreducibilityProof::Kummer)
            } else {
                Err(FieldError::ReduciblePolynomial { level })
            };
        }
    }
    let cost = generic_cost(tower, d);
    if cost > GENERIC_TEST_BUDGET {
        return Err(FieldError::IrreducibilityUndecided {
            level,
            reason: format!("general test needs about {cost:.1e} operations and no closed-form criterion applies"),
        });
    }
    if distinct_degree_test(tower, coeffs) {
        Ok(IrreducibilityProof::DistinctDegree)
    } else {
        Err(FieldError::ReduciblePolynomial { level })
    }
}

fn generic_cost(tower: &Tower, d: usize) -> f64 {
    let sub = tower.dims[tower.top()] as f64;
    let bits = (tower.p as f64).log2().ceil().max(1.0) * 2.0;
    let d = d as f64;
    (d / 2.0).max(1.0) * sub * bits * d * d * sub * sub
}

/// `c` when `coeffs` is `x^p - x - c` with `p` the characteristic.
fn artin_schreier_constant(tower: &Tower, coeffs: &[Vec<u64>]) -> Option<Vec<u64>> {
    let p = tower.p;
    let d = coeffs.len() - 1;
    if d as u64 != p {
        return None;
    }
    let minus_one = tower.scalar(tower.top(), p - 1);
    if coeffs[1] != minus_one || coeffs[2..d].iter().any(|c| !Tower::is_zero(c)) {
        return None;
    }
    let mut c = coeffs[0].clone();
    tower.neg_assign(&mut c);
    Some(c)
}

/// `c` when `coeffs` is `x^d - c`.
fn binomial_constant(tower: &Tower, coeffs: &[Vec<u64>]) -> Option<Vec<u64>> {
    let d = coeffs.len() - 1;
    if coeffs[1..d].iter().any(|c| !Tower::is_zero(c)) {
        return None;
    }
    let mut c = coeffs[0].clone();
    tower.neg_assign(&mut c);
    Some(c)
}

/// `Some(verdict)` when the binomial criterion can be evaluated cheaply.
fn binomial_criterion(tower: &Tower, d: usize, c: &[u64]) -> Option<bool> {
    if Tower::is_zero(c) {
        return Some(false);
    }
    let p = tower.p;
    let big_d = tower.dims[tower.top()] as u128;
    let q_mod = |m: u64| pow_mod(p, big_d, m);
    if d % 4 == 0 && q_mod(4) != 1 {
        return Some(false);
    }
    let q = (p as u128).checked_pow(big_d as u32).filter(|_| big_d <= u32::MAX as u128);
    let mut norm = None;
    for r in prime_factors(d as u64) {
        if q_mod(r) != 1 % r {
            return Some(false);
        }
        let is_one = if (p - 1) % r == 0 {
            // c^{(Q-1)/r} = N(c)^{(p-1)/r} because (Q-1)/(p-1) is the norm exponent
            let n = *norm.get_or_insert_with(|| tower.norm(tower.top(), c));
            pow_mod(n, ((p - 1) / r) as u128, p) == 1
        } else {
            let q = q?;
            let e = (q - 1) / r as u128;
            let v = tower.pow(tower.top(), c, e);
            Tower::as_scalar(&v) == Some(1)
        };
        if is_one {
            return Some(false);
        }
    }
    Some(true)
}

/// Ben-Or's test over the tower's top level. Works for non-monic input.
pub(crate) fn distinct_degree_test(tower: &Tower, coeffs: &[Vec<u64>]) -> bool {
    let level = tower.top();
    let ring = PolyRing::new(tower, level);
    let f: UPoly = PolyRing::trim(coeffs.to_vec());
    let d = f.len().saturating_sub(1);
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = ring.x();
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = ring.pow_field_size(&h, &f);
        let diff = ring.sub_poly(&h, &x);
        if ring.gcd_degree(&f, &diff) != 0 {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `d` over
/// `base`: lower coefficients are counted like digits with the constant
/// term varying fastest, each coefficient in the field's counting order.
/// Returns `d + 1` coefficients, low to high.
pub fn find_irreducible(base: &FieldSpec, d: usize) -> Vec<FieldElement> {
    assert!(d >= 1, "degree must be positive");
    let tower = base.tower();
    let p = tower.p;
    let sub = base.degree();
    let mut digits = vec![0u64; d * sub];
    loop {
        let mut coeffs: Vec<Vec<u64>> = digits.chunks(sub).map(|c| c.to_vec()).collect();
        coeffs.push(tower.one(tower.top()));
        if d == 1 || distinct_degree_test(tower, &coeffs) {
            return coeffs.into_iter().map(|c| base.embed(&c)).collect();
        }
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < digits.len(), "no irreducible polynomial found");
        }
    }
}
