use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fields::Extension;
use crate::linalg::MatrixF;

fn v(p: u64, n: usize, i: usize) -> SparsePoly {
    SparsePoly::var(p, n, i)
}

#[test]
fn ring_examples() {
    let (x1, x2) = (v(7, 2, 0), v(7, 2, 1));
    let f = x1.add(&x2).mul(&x1.sub(&x2));
    assert_eq!(f, x1.pow(2).sub(&x2.pow(2)));
    assert_eq!(f.num_terms(), 2);
    assert_eq!(f.total_degree(), Some(2));
    assert_eq!(x1.mul(&x2).eval_prime(&[3, 5]), 1);
    let g = SparsePoly::zero(7, 2).add(&x1.scale(7));
    assert!(g.is_zero());
    assert_eq!(x1.try_add(&v(5, 2, 0)), Err(MultipolyError::CharacteristicMismatch(7, 5)));
    assert_eq!(x1.try_add(&v(7, 3, 0)), Err(MultipolyError::ArityMismatch(2, 3)));
    assert_eq!(
        SparsePoly::monomial(7, &[100, 30], 1),
        Err(MultipolyError::ExponentOverflow)
    );
}

fn vandermonde(p: u64, n: usize) -> SparsePoly {
    let mut acc = SparsePoly::constant(p, n, 1);
    for i in 0..n {
        for j in i + 1..n {
            acc = acc.mul(&v(p, n, j).sub(&v(p, n, i)));
        }
    }
    acc
}

#[test]
fn vandermonde_product_vanishes_only_on_repeats() {
    let f = vandermonde(11, 4);
    assert_ne!(f.eval_prime(&[1, 2, 3, 4]), 0);
    assert_eq!(f.eval_prime(&[1, 2, 1, 4]), 0);
    // against the determinant of the Vandermonde matrix
    let f11 = FieldSpec::prime(11).unwrap();
    let pts = [2u64, 7, 5, 9];
    let m = MatrixF::from_fn(&f11, 4, 4, |r, c| f11.from_u64(pts[r]).pow(c as u128));
    assert_eq!(m.det().unwrap().as_prime(), Some(f.eval_prime(&pts)));
}

fn beta(p: u64, deg: u32) -> SparsePoly {
    v(p, 2, 0).add(&SparsePoly::monomial(p, &[deg, 1], 1).unwrap())
}

#[test]
fn gamma_expansion_vanishes_on_repeated_pair() {
    let parts = gamma_expand_det3(&beta(7, 2)).unwrap();
    // x1 = x3 and x2 = x4 make two rows equal
    for f in &parts {
        assert_eq!(f.eval_prime(&[1, 2, 1, 2, 3, 4]), 0);
    }
    assert!(parts.iter().any(|f| f.eval_prime(&[1, 2, 3, 4, 5, 6]) != 0));
    let too_high = SparsePoly::monomial(7, &[1, 2], 1).unwrap();
    assert_eq!(gamma_expand_det3(&too_high).unwrap_err(), MultipolyError::DegreeTooHigh(2));
}

#[test]
fn gamma_expansion_matches_direct_determinant() {
    let base = FieldSpec::prime(7).unwrap();
    let fld = base.extend(&Extension::prime_poly(3, &[-2, 0, 0, 1])).unwrap();
    let big = fld.extend(&Extension::auto(4)).unwrap();
    let gamma = big.embed(fld.generator(1).coeffs());
    let parts = gamma_expand_det3(&beta(7, 2)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let xs: Vec<FieldElement> = (0..6).map(|_| big.random(&mut rng)).collect();
        let b: Vec<FieldElement> = xs.iter().map(|x| x + &(&gamma * &(x * x))).collect();
        let m = MatrixF::from_fn(&big, 3, 3, |r, c| {
            let (a, bb) = (&b[2 * r], &b[2 * r + 1]);
            match c {
                0 => big.one(),
                1 => a + bb,
                _ => a * bb,
            }
        });
        let mut via_parts = big.zero();
        for (i, f) in parts.iter().enumerate() {
            via_parts += &(f.eval(&xs).unwrap() * gamma.pow(i as u128));
        }
        assert_eq!(m.det().unwrap(), via_parts);
    }
}

#[test]
fn certificate_identity_holds_in_small_characteristics() {
    for p in [7, 11, 13] {
        assert!(verify_claim_q_identity(CLAIM_Q_DATA, p).unwrap(), "p = {p}");
        assert!(verify_p1_factorization(p).unwrap(), "p = {p}");
    }
    assert_eq!(
        verify_claim_q_identity(CLAIM_Q_DATA, 2).unwrap_err(),
        MultipolyError::EvenCharacteristic
    );
}

#[test]
fn mutated_certificate_is_rejected() {
    // replace a coefficient inside the two_q0 line while keeping the checksum
    let line = CLAIM_Q_DATA.lines().find(|l| l.starts_with("two_q0")).unwrap();
    let mutated_line = line.replacen("x1", "x1^2", 1);
    let text = CLAIM_Q_DATA.replace(line, &mutated_line);
    assert!(matches!(
        verify_claim_q_identity(&text, 7),
        Err(MultipolyError::ChecksumMismatch { .. })
    ));
    let body: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let hash = hex::encode(<sha2::Sha256 as sha2::Digest>::digest(body.join("\n").as_bytes()));
    let resigned = format!("# sha256: {hash}\n{}\n", body.join("\n"));
    assert!(!verify_claim_q_identity(&resigned, 7).unwrap());
}

#[test]
fn groebner_small_examples() {
    let (x1, x2) = (v(7, 2, 0), v(7, 2, 1));
    let gb = buchberger(&[x1.clone(), x2.clone()], &MonomialOrder::lex(2), 100).unwrap();
    assert!(gb.contains(&x1.mul(&x2).add(&x2)));
    assert!(!gb.contains(&SparsePoly::constant(7, 2, 1)));

    // x^2 - y and x^3 - 1: the lex basis eliminates x
    let f = x1.pow(2).sub(&x2);
    let g = x1.pow(3).sub(&SparsePoly::constant(7, 2, 1));
    for order in [MonomialOrder::lex(2), MonomialOrder::degrevlex(2)] {
        let gb = buchberger(&[f.clone(), g.clone()], &order, 1000).unwrap();
        assert!(gb.s_pairs_reduce_to_zero());
        assert!(gb.contains(&f) && gb.contains(&g));
        assert!(gb.contains(&x2.pow(3).sub(&SparsePoly::constant(7, 2, 1))));
        let again = buchberger(&gb.polys, &order, 1000).unwrap();
        assert_eq!(again.polys, gb.polys);
    }

    let unit = buchberger(&[x1.clone(), x1.sub(&SparsePoly::constant(7, 2, 1))], &MonomialOrder::lex(2), 10).unwrap();
    assert!(unit.is_unit_ideal());
}

#[test]
fn groebner_budget_is_enforced() {
    let n = 4;
    let gens: Vec<SparsePoly> = (0..n)
        .map(|i| v(5, n, i).pow(3).add(&v(5, n, (i + 1) % n).mul(&v(5, n, (i + 2) % n))))
        .collect();
    assert!(matches!(
        buchberger(&gens, &MonomialOrder::lex(n), 2),
        Err(MultipolyError::BudgetExceeded(2))
    ));
}

#[test]
fn groebner_basis_is_a_basis_for_random_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    use rand::Rng;
    for _ in 0..20 {
        let n = 3;
        let gens: Vec<SparsePoly> = (0..3)
            .map(|_| {
                let terms: Vec<(Vec<u32>, i64)> = (0..4)
                    .map(|_| ((0..n).map(|_| rng.gen_range(0..3)).collect(), rng.gen_range(0..5)))
                    .collect();
                SparsePoly::from_terms(5, n, terms).unwrap()
            })
            .filter(|f| !f.is_zero())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let gb = buchberger(&gens, &MonomialOrder::degrevlex(n), 100_000).unwrap();
        assert!(gb.s_pairs_reduce_to_zero());
        for g in &gens {
            assert!(gb.contains(g));
        }
        // products of generators with arbitrary polynomials lie in the ideal
        let combo = gens[0].mul(&v(5, n, 1).add(&SparsePoly::constant(5, n, 3)));
        assert!(gb.contains(&combo));
    }
}

fn arb_poly(p: u64, n: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::collection::vec(0u32..4, n), 0i64..p as i64), 0..6)
        .prop_map(move |terms| SparsePoly::from_terms(p, n, terms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in arb_poly(7, 3), b in arb_poly(7, 3), c in arb_poly(7, 3)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_poly(11, 3), b in arb_poly(11, 3), pt in prop::collection::vec(0u64..11, 3)) {
        let (ea, eb) = (a.eval_prime(&pt), b.eval_prime(&pt));
        prop_assert_eq!(a.add(&b).eval_prime(&pt), (ea + eb) % 11);
        prop_assert_eq!(a.mul(&b).eval_prime(&pt), ea * eb % 11);
        let f11 = FieldSpec::prime(11).unwrap();
        let ept: Vec<FieldElement> = pt.iter().map(|&x| f11.from_u64(x)).collect();
        prop_assert_eq!(a.eval(&ept).unwrap().as_prime(), Some(ea));
    }

    #[test]
    fn text_round_trip(a in arb_poly(13, 4)) {
        let order = MonomialOrder::degrevlex(4);
        prop_assert_eq!(parse_poly(13, 4, &a.to_text(&order)).unwrap(), a);
    }
}

#[test]
fn groebner_claim_over_f7() {
    let report = groebner_claim(DEFAULT_PAIR_BUDGET).unwrap();
    let basis = report.basis.expect("degrevlex run finishes");
    assert_eq!(report.attempts.len(), 1);
    assert_eq!(basis.order.kind, OrderKind::DegRevLex);
    assert!(basis.s_pairs_reduce_to_zero());
    assert_eq!(report.target_remainder_zero, Some(true));
    assert_eq!(report.one_remainder_zero, Some(false));
    // the incremental reduction agrees with reducing the expanded product
    assert!(basis.contains(&groebner_claim_target(7)));
}

#[test]
fn char2_product_lies_in_ideal() {
    let report = verify_char2_membership(DEFAULT_PAIR_BUDGET).unwrap();
    assert!(report.member);
    assert!(!report.one_remainder_zero);
}
