use itertools::Itertools;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::codes::dual_code;
use crate::fields::{Extension, FieldSpec};
use crate::linalg::subspace_intersection_dim;

fn field(q: u64) -> FieldSpec {
    let (p, e) = crate::fields::prime_power(q).unwrap();
    if e == 1 {
        FieldSpec::prime(p).unwrap()
    } else {
        FieldSpec::new(p, &[Extension::auto(e as usize)]).unwrap()
    }
}

fn rs_int(p: u64, gens: &[u64], k: usize) -> CodeSpec {
    let fld = field(p);
    CodeSpec::rs(&fld, gens.iter().map(|&g| fld.from_u64(g)).collect(), k).unwrap()
}

fn random_rs(rng: &mut impl Rng, q: u64, n: usize, k: usize) -> CodeSpec {
    let fld = field(q);
    let mut all: Vec<_> = fld.elements().collect();
    all.shuffle(rng);
    all.truncate(n);
    CodeSpec::rs(&fld, all, k).unwrap()
}

fn random_explicit(rng: &mut impl Rng, q: u64, n: usize, k: usize) -> CodeSpec {
    let fld = field(q);
    loop {
        let g = MatrixF::from_fn(&fld, k, n, |_, _| fld.random(rng));
        if let Ok(code) = CodeSpec::explicit(g) {
            return code;
        }
    }
}

fn min_distance(code: &CodeSpec) -> usize {
    code.codewords()
        .iter()
        .map(|w| w.iter().filter(|x| !x.is_zero()).count())
        .filter(|&w| w > 0)
        .min()
        .unwrap()
}

/// The spans meet only in zero and every `V|_{A_i}` has independent columns,
/// which is what a nonzero block determinant certifies.
fn intersection_is_zero(code: &CodeSpec, tuple: &SetTuple) -> bool {
    let v = code.generator_matrix();
    let bases: Vec<MatrixF> = tuple.sets.iter().map(|s| v.select_columns(s)).collect();
    bases.iter().all(|b| b.rank() == b.cols()) && subspace_intersection_dim(&bases).unwrap() == 0
}

const SMALL_FIELDS: [u64; 6] = [11, 13, 16, 25, 27, 49];

#[test]
fn mds_examples() {
    let code = rs_int(11, &[0, 1, 2, 3, 4, 5, 6, 7], 3);
    let r = is_mds(&code);
    assert!(r.passed());
    assert_eq!(r.tuples, 56);
    assert_eq!(r.to_line(true), "property=mds verdict=pass tuples=56 time_ms=0");

    let fld = field(7);
    let e = |v: i64| fld.from_i64(v);
    let g = MatrixF::from_rows(
        &fld,
        &[vec![e(1), e(0), e(1), e(1)], vec![e(0), e(1), e(2), e(2)]],
    )
    .unwrap();
    let r = is_mds(&CodeSpec::explicit(g).unwrap());
    assert!(!r.passed());
    assert_eq!(r.witness.as_ref().unwrap().to_string(), "3;4");
    assert!(r.to_line(true).starts_with("property=mds verdict=fail tuples=6 time_ms=0 witness=3;4"));
}

#[test]
fn mds_matches_minimum_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = [0usize; 2];
    for _ in 0..120 {
        let (q, n, k) = [(4, 6, 3), (4, 5, 3), (5, 6, 3), (5, 5, 2)][rng.gen_range(0..4)];
        let code = random_explicit(&mut rng, q, n, k);
        let brute = min_distance(&code) == n - k + 1;
        assert_eq!(is_mds(&code).passed(), brute);
        seen[brute as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn ell_two_is_mds() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..60 {
        let k = rng.gen_range(1..=4);
        let code = random_explicit(&mut rng, 5, 5, k);
        let a = is_mds(&code);
        let b = is_mds_ell(&code, 2);
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.witness, b.witness);
        assert_eq!(b.property, "mds2");
    }
}

#[test]
fn block_test_matches_intersection_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let q = *SMALL_FIELDS.choose(&mut rng).unwrap();
        let k = rng.gen_range(1..=4);
        let n = rng.gen_range(k + 1..=8);
        let ell = rng.gen_range(2..=4);
        let code = random_explicit(&mut rng, q, n, k);
        let sets = crate::linalg::tests::random_sets(&mut rng, n, k, ell);
        let t = SetTuple::new(sets, k);
        assert_eq!(block_test(&code.generator_matrix(), &t).unwrap(), intersection_is_zero(&code, &t), "{t}");
    }
}

#[test]
fn weak_reduce_gives_disjoint_sets() {
    let t = SetTuple::parse("1,2,3;1,4,5;2,4,6", 4).unwrap();
    let (r, k) = weak_reduce(&t);
    assert_eq!(r.to_string(), "3;5;6");
    assert_eq!(k, 1);
    for t in mds_ell_tuples(8, 4, 3) {
        let (r, k) = weak_reduce(&t);
        let total: usize = r.sizes().iter().sum();
        assert_eq!(total, 2 * k);
        assert!(r.sets.iter().tuple_combinations().all(|(a, b)| a.iter().all(|x| !b.contains(x))));
    }
}

#[test]
fn weak_reduce_preserves_rs_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut seen = [0usize; 2];
    for _ in 0..40 {
        let q = *SMALL_FIELDS.choose(&mut rng).unwrap();
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(k + 2..=8);
        let code = random_rs(&mut rng, q, n, k);
        let gens = code.generators().unwrap();
        for t in mds_ell_tuples(n, k, 3) {
            let direct = intersection_is_zero(&code, &t);
            let (r, kr) = weak_reduce(&t);
            let reduced = if kr == 0 || r.sets.iter().any(|s| s.len() >= kr) {
                true
            } else {
                let sub = CodeSpec::rs(code.field(), gens.to_vec(), kr).unwrap();
                intersection_is_zero(&sub, &r)
            };
            assert_eq!(direct, reduced, "{t} on {gens:?}");
            seen[direct as usize] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn prod_mat_matches_block_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let q = *SMALL_FIELDS.choose(&mut rng).unwrap();
        let k = rng.gen_range(1..=4);
        let n = rng.gen_range(k + 1..=8);
        let ell = rng.gen_range(2..=4);
        let code = random_rs(&mut rng, q, n, k);
        let mut sets = crate::linalg::tests::random_sets(&mut rng, n, k, ell);
        sets.sort_by_key(Vec::len);
        let t = SetTuple::new(sets, k);
        assert_eq!(
            prod_mat_nonzero(code.generators().unwrap(), &t).unwrap(),
            block_test(&code.generator_matrix(), &t).unwrap(),
            "{t}"
        );
    }
}

#[test]
fn rs_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut seen = [0usize; 2];
    for _ in 0..60 {
        let q = *SMALL_FIELDS.choose(&mut rng).unwrap();
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(k + 1..=8);
        let code = random_rs(&mut rng, q, n, k);
        let slow = is_mds_ell(&code, 3);
        let fast = is_mds3_rs_fast(&code).unwrap();
        assert_eq!(slow.verdict, fast.verdict, "q={q} n={n} k={k}");
        if let Some(w) = &fast.witness {
            assert!(!intersection_is_zero(&code, w), "{w}");
        }
        seen[slow.passed() as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn pairing_path_examples() {
    // n = 8, k = 3 needs more than C(6, 2) - 1 = 14 elements
    let code = rs_int(11, &[0, 1, 2, 3, 4, 5, 6, 7], 3);
    let r = is_mds3_rs_fast(&code).unwrap();
    assert!(!r.passed());
    assert!(!intersection_is_zero(&code, r.witness.as_ref().unwrap()));
    let six = rs_int(11, &[0, 1, 2, 3, 4, 5], 3);
    assert_eq!(is_mds3_rs_fast(&six).unwrap().verdict, is_mds_ell(&six, 3).verdict);
    assert!(matches!(
        is_mds3_rs_fast(&CodeSpec::explicit(code.generator_matrix()).unwrap()),
        Err(CheckError::WrongKind)
    ));
}

#[test]
fn failing_rs_report_has_reduced_tuple() {
    let code = rs_int(11, &[0, 1, 2, 3, 4, 5, 6, 7], 4);
    let r = is_mds_ell(&code, 3);
    assert!(!r.passed());
    let w = r.witness.as_ref().unwrap();
    assert!(!intersection_is_zero(&code, w));
    assert_eq!(r.extra("reduced").unwrap(), weak_reduce(w).0.to_string());
}

#[test]
fn lb_witness_agrees_with_mds3() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut seen = [0usize; 2];
    for _ in 0..60 {
        let q = *SMALL_FIELDS.choose(&mut rng).unwrap();
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(k + 2..=8);
        let code = random_rs(&mut rng, q, n, k);
        let full = is_mds_ell(&code, 3);
        let lb = lb_witness_projective(&code).unwrap();
        assert_eq!(lb.extra("bound").unwrap(), implied_field_bound(n, k).to_string());
        if full.passed() {
            assert!(lb.passed());
        }
        if let Some(w) = &lb.witness {
            assert!(!full.passed());
            assert!(!intersection_is_zero(&code, w), "{w}");
            assert!(!block_test(&code.generator_matrix(), w).unwrap());
        }
        seen[lb.passed() as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
    assert_eq!(implied_field_bound(8, 3), 14);
    assert_eq!(implied_field_bound(3, 1), 0);
    let bad = CodeSpec::explicit(rs_int(7, &[0, 1, 2], 2).generator_matrix().select_columns(&[0, 1, 2, 2])).unwrap();
    assert!(matches!(lb_witness_projective(&bad), Err(CheckError::NotMds(_))));
    let short = rs_int(7, &[0, 1, 2], 2);
    assert!(matches!(lb_witness_projective(&short), Err(CheckError::InvalidParameters(_))));
}

#[test]
fn lb_witness_fails_below_the_bound() {
    // every [8, 3] code over F_13 sits below C(6, 2) - 1 = 14
    let code = rs_int(13, &[0, 1, 2, 3, 4, 5, 6, 7], 3);
    let r = lb_witness_projective(&code).unwrap();
    assert!(!r.passed());
    assert_eq!(r.witness.as_ref().unwrap().sets[0], vec![0, 1]);
}

#[test]
fn mds4_implies_mds3() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..25 {
        let q = *SMALL_FIELDS.choose(&mut rng).unwrap();
        let k = rng.gen_range(2..=3);
        let n = rng.gen_range(k + 1..=6);
        let code = random_rs(&mut rng, q, n, k);
        if is_mds_ell(&code, 4).passed() {
            assert!(is_mds_ell(&code, 3).passed());
        }
    }
}

#[test]
fn mds3_is_preserved_by_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = [0usize; 2];
    for _ in 0..40 {
        let q = *SMALL_FIELDS.choose(&mut rng).unwrap();
        let k = rng.gen_range(2..=5);
        let n = rng.gen_range(k + 1..=8);
        let code = random_rs(&mut rng, q, n, k);
        let dual = dual_code(&code);
        if dual.k() == 0 {
            continue;
        }
        let a = is_mds_ell(&code, 3).passed();
        assert_eq!(a, is_mds_ell(&dual, 3).passed(), "q={q} n={n} k={k}");
        seen[a as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn search_small_cases() {
    let r = exhaustive_code_search(5, 2, 4, false, 1 << 20).unwrap();
    assert!(r.count > 0);
    assert_eq!(r.count, r.mds_codes);
    for code in &r.exemplars {
        assert!(lb_witness_projective(code).unwrap().passed());
    }
    let square = exhaustive_code_search(3, 3, 5, true, 10).unwrap();
    assert_eq!(square.count, 1);
    assert!(matches!(
        exhaustive_code_search(6, 3, 4, true, 1000),
        Err(CheckError::BudgetExceeded { needed: 5242880, budget: 1000 })
    ));
    assert!(matches!(exhaustive_code_search(4, 2, 6, false, 1000), Err(CheckError::InvalidParameters(_))));
}

#[test]
fn no_mds3_code_of_length_six_over_f4() {
    // C(4, 2) - 1 = 5 > 4
    let r = exhaustive_code_search(6, 3, 4, false, 1 << 20).unwrap();
    assert_eq!(r.matrices, 262144);
    assert!(r.mds_codes > 0);
    assert_eq!(r.count, 0);
}

#[test]
fn search_counts_match_direct_enumeration() {
    // [4, 2] over F_3: every systematic matrix on the first two columns
    let r = exhaustive_code_search(4, 2, 3, true, 1 << 20).unwrap();
    let fld = field(3);
    let mut spaces = std::collections::BTreeSet::new();
    for entries in (0..4).map(|_| fld.elements().collect::<Vec<_>>()).multi_cartesian_product() {
        let g = MatrixF::from_fn(&fld, 2, 4, |r, c| match c {
            0 | 1 if r == c => fld.one(),
            0 | 1 => fld.zero(),
            _ => entries[r * 2 + c - 2].clone(),
        });
        let code = CodeSpec::explicit(g.clone()).unwrap();
        if min_distance(&code) == 3 {
            let (rr, _) = g.rref();
            spaces.insert(format!("{rr:?}"));
        }
    }
    // any MDS code is systematic on its first k columns
    assert_eq!(r.mds_codes, spaces.len());
    assert_eq!(r.count, spaces.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn verdict_ignores_column_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = *SMALL_FIELDS.choose(&mut rng).unwrap();
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(k + 1..=7);
        let code = random_rs(&mut rng, q, n, k);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let permuted = CodeSpec::explicit(code.generator_matrix().select_columns(&perm)).unwrap();
        prop_assert_eq!(is_mds_ell(&code, 3).verdict, is_mds_ell(&permuted, 3).verdict);
    }
}
