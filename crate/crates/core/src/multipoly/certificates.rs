//! The polynomial certificates behind the `k = 3` constructions.
//!
//! For generators `β_i = β(x_i, γ)` the pairing determinant
//! `det [1, β_a + β_b, β_a β_b]` (rows `(1,2), (3,4), (5,6)`) is a polynomial
//! in `γ` of degree at most 3 whose coefficients `p_0 … p_3` live in
//! `F_p[x_1 … x_6]`.

use sha2::{Digest, Sha256};

use super::{
    buchberger, parse_poly, GroebnerBasis, MonomialOrder, MultipolyError, SparsePoly,
};

/// Transcribed certificate polynomials, with a checksum line guarding the
/// body.
pub const CLAIM_Q_DATA: &str = include_str!("../../data/claim_q.txt");

const NX: usize = 6;

/// `S`: the factors `x_i - x_j` of the product certified by the Q-data.
const CLAIM_PAIRS: [(usize, usize); 8] = [(3, 6), (2, 4), (2, 6), (3, 5), (4, 5), (4, 6), (2, 5), (2, 3)];

fn x(p: u64, i: usize) -> SparsePoly {
    SparsePoly::var(p, NX, i - 1)
}

/// `(p_0, p_1, p_2, p_3)` for a generator template `β(x, γ)` given as a
/// polynomial in two variables (`x1 = x`, `x2 = γ`).
pub fn gamma_expand_det3(beta: &SparsePoly) -> Result<[SparsePoly; 4], MultipolyError> {
    if beta.nvars() != 2 {
        return Err(MultipolyError::ArityMismatch(2, beta.nvars()));
    }
    let gdeg = beta.degree_in(1);
    if gdeg > 1 {
        return Err(MultipolyError::DegreeTooHigh(gdeg));
    }
    let p = beta.characteristic();
    let nv = NX + 1;
    let gamma = SparsePoly::var(p, nv, NX);
    let betas: Vec<SparsePoly> = (0..NX)
        .map(|i| beta.compose(&[SparsePoly::var(p, nv, i), gamma.clone()]))
        .collect::<Result<_, _>>()?;
    let one = SparsePoly::constant(p, nv, 1);
    let rows: Vec<[SparsePoly; 3]> = (0..3)
        .map(|r| {
            let (a, b) = (&betas[2 * r], &betas[2 * r + 1]);
            [one.clone(), a.add(b), a.mul(b)]
        })
        .collect();
    let minor = |c1: usize, c2: usize| rows[1][c1].mul(&rows[2][c2]).sub(&rows[1][c2].mul(&rows[2][c1]));
    let det = rows[0][0]
        .mul(&minor(1, 2))
        .sub(&rows[0][1].mul(&minor(0, 2)))
        .add(&rows[0][2].mul(&minor(0, 1)));
    let mut parts = det.split_by_var(NX).into_iter();
    Ok(std::array::from_fn(|_| parts.next().unwrap_or_else(|| SparsePoly::zero(p, NX))))
}

/// `x + γ x^deg` over `F_p`.
fn beta_template(p: u64, deg: u32) -> SparsePoly {
    SparsePoly::var(p, 2, 0).add(&SparsePoly::monomial(p, &[deg, 1], 1).unwrap())
}

/// The transcribed certificate reduced modulo `p`.
#[derive(Debug, Clone)]
pub struct ClaimQData {
    pub g: SparsePoly,
    pub q0: SparsePoly,
    pub q2: SparsePoly,
    pub q3: SparsePoly,
}

/// Parses certificate data (normally [`CLAIM_Q_DATA`]) after checking its
/// `# sha256:` line against the body.
pub fn claim_q_data(text: &str, p: u64) -> Result<ClaimQData, MultipolyError> {
    if p == 2 {
        return Err(MultipolyError::EvenCharacteristic);
    }
    let mut expected = None;
    let mut body = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(h) = rest.trim().strip_prefix("sha256:") {
                expected = Some(h.trim().to_string());
            }
        } else if !line.is_empty() {
            body.push(line);
        }
    }
    let found = hex::encode(Sha256::digest(body.join("\n").as_bytes()));
    let expected = expected.ok_or_else(|| MultipolyError::Parse("missing `# sha256:` line".into()))?;
    if expected != found {
        return Err(MultipolyError::ChecksumMismatch { expected, found });
    }
    let field = |name: &str| -> Result<SparsePoly, MultipolyError> {
        let line = body
            .iter()
            .find_map(|l| l.strip_prefix(name).and_then(|r| r.trim_start().strip_prefix('=')))
            .ok_or_else(|| MultipolyError::Parse(format!("missing `{name}` entry")))?;
        parse_poly(p, NX, line)
    };
    let g = field("g")?;
    let q0 = field("two_q0")?.halve()?;
    let q2 = x(p, 2).mul(&g);
    let q3 = g.halve()?.neg();
    Ok(ClaimQData { g, q0, q2, q3 })
}

/// Checks `∏_{(i,j)∈S} (x_i - x_j) = Q_0 p_0 + Q_2 p_2 + Q_3 p_3` exactly
/// over `F_p` for `β = x + γ x^2`.
pub fn verify_claim_q_identity(data: &str, p: u64) -> Result<bool, MultipolyError> {
    let q = claim_q_data(data, p)?;
    let [p0, _, p2, p3] = gamma_expand_det3(&beta_template(p, 2))?;
    let h = CLAIM_PAIRS
        .iter()
        .fold(SparsePoly::constant(p, NX, 1), |acc, &(i, j)| acc.mul(&x(p, i).sub(&x(p, j))));
    let rhs = q.q0.mul(&p0).add(&q.q2.mul(&p2)).add(&q.q3.mul(&p3));
    Ok(rhs == h)
}

/// Checks `p_1 = p_0 (x_1 + … + x_6)` for `β = x + γ x^2`.
pub fn verify_p1_factorization(p: u64) -> Result<bool, MultipolyError> {
    let [p0, p1, _, _] = gamma_expand_det3(&beta_template(p, 2))?;
    let sum = (1..=NX).fold(SparsePoly::zero(p, NX), |acc, i| acc.add(&x(p, i)));
    Ok(p1 == p0.mul(&sum))
}

/// `(x_1 + … + x_6) ∏_{i<j} (x_j - x_i)` over `F_p`.
pub fn groebner_claim_target(p: u64) -> SparsePoly {
    SparsePoly::product(p, NX, &claim_target_factors(p))
}

fn claim_target_factors(p: u64) -> Vec<SparsePoly> {
    let mut out = vec![(1..=NX).fold(SparsePoly::zero(p, NX), |acc, i| acc.add(&x(p, i)))];
    for i in 1..=NX {
        for j in i + 1..=NX {
            out.push(x(p, j).sub(&x(p, i)));
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct GroebnerClaimReport {
    /// `None` when every order ran out of budget.
    pub basis: Option<GroebnerBasis>,
    /// Orders attempted, in order, with whether each finished.
    pub attempts: Vec<(MonomialOrder, bool)>,
    pub target_remainder_zero: Option<bool>,
    pub one_remainder_zero: Option<bool>,
}

/// Groebner basis of `J = (p_0 + 2 p_3, p_1, p_2)` over `F_7` for
/// `β = x + γ x^2` (using `γ^3 = 2`), trying degrevlex and then lex, and
/// the reductions of the target product and of `1`.
pub fn groebner_claim(budget: u64) -> Result<GroebnerClaimReport, MultipolyError> {
    let p = 7;
    let [p0, p1, p2, p3] = gamma_expand_det3(&beta_template(p, 2))?;
    let gens = vec![p0.add(&p3.scale(2)), p1, p2];
    let mut attempts = Vec::new();
    for order in [MonomialOrder::degrevlex(NX), MonomialOrder::lex(NX)] {
        match buchberger(&gens, &order, budget) {
            Ok(basis) => {
                attempts.push((order, true));
                let target = basis.reduce_product(&claim_target_factors(p)).is_zero();
                let one = basis.contains(&SparsePoly::constant(p, NX, 1));
                return Ok(GroebnerClaimReport {
                    basis: Some(basis),
                    attempts,
                    target_remainder_zero: Some(target),
                    one_remainder_zero: Some(one),
                });
            }
            Err(MultipolyError::BudgetExceeded(_)) => attempts.push((order, false)),
            Err(e) => return Err(e),
        }
    }
    Ok(GroebnerClaimReport {
        basis: None,
        attempts,
        target_remainder_zero: None,
        one_remainder_zero: None,
    })
}

/// `∏_{i<j} (x_i + x_j) ∏_{i<j<k} (x_i + x_j + x_k)` over `F_2`, optionally
/// leaving out the factor at position `skip` (pairs first, then triples).
pub fn char2_target(skip: Option<usize>) -> SparsePoly {
    SparsePoly::product(2, NX, &char2_factors(skip))
}

fn char2_factors(skip: Option<usize>) -> Vec<SparsePoly> {
    let p = 2;
    let mut factors = Vec::new();
    for i in 1..=NX {
        for j in i + 1..=NX {
            factors.push(x(p, i).add(&x(p, j)));
        }
    }
    for i in 1..=NX {
        for j in i + 1..=NX {
            for k in j + 1..=NX {
                factors.push(x(p, i).add(&x(p, j)).add(&x(p, k)));
            }
        }
    }
    factors
        .into_iter()
        .enumerate()
        .filter(|&(idx, _)| Some(idx) != skip)
        .map(|(_, f)| f)
        .collect()
}

#[derive(Debug, Clone)]
pub struct Char2Report {
    pub basis: GroebnerBasis,
    pub member: bool,
    pub one_remainder_zero: bool,
}

/// Membership of the characteristic-2 product in the ideal
/// `(p_0, p_1, p_2, p_3)` for `β = x + γ x^3` over `F_2`.
pub fn verify_char2_membership(budget: u64) -> Result<Char2Report, MultipolyError> {
    let gens: Vec<SparsePoly> = gamma_expand_det3(&beta_template(2, 3))?
        .into_iter()
        .filter(|f| !f.is_zero())
        .collect();
    let basis = buchberger(&gens, &MonomialOrder::degrevlex(NX), budget)?;
    let member = basis.reduce_product(&char2_factors(None)).is_zero();
    let one = basis.contains(&SparsePoly::constant(2, NX, 1));
    Ok(Char2Report {
        basis,
        member,
        one_remainder_zero: one,
    })
}
