use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::constructions::construct_k3_n4;
use crate::fields::{prime_power, Extension, FieldSpec};
use crate::mdscheck::is_mds;

fn field(q: u64) -> FieldSpec {
    let (p, e) = prime_power(q).unwrap();
    if e == 1 {
        FieldSpec::prime(p).unwrap()
    } else {
        FieldSpec::new(p, &[Extension::auto(e as usize)]).unwrap()
    }
}

fn random_code(rng: &mut impl Rng, q: u64, n: usize, k: usize) -> CodeSpec {
    let fld = field(q);
    loop {
        let g = MatrixF::from_fn(&fld, k, n, |_, _| fld.random(rng));
        if let Ok(c) = CodeSpec::explicit(g) {
            return c;
        }
    }
}

fn random_rs(rng: &mut impl Rng, q: u64, n: usize, k: usize) -> CodeSpec {
    let fld = field(q);
    let mut all: Vec<_> = fld.elements().collect();
    all.shuffle(rng);
    all.truncate(n);
    CodeSpec::rs(&fld, all, k).unwrap()
}

fn all_words(code: &CodeSpec) -> Vec<Vec<FieldElement>> {
    let fld = code.field();
    (0..code.n()).map(|_| fld.elements().collect::<Vec<_>>()).multi_cartesian_product().collect()
}

fn distance(a: &[FieldElement], b: &[FieldElement]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Some `y` has `L + 1` distinct codewords with summed distance at most
/// `L(n − k)`.
fn brute_ld_fails(code: &CodeSpec, l: usize) -> bool {
    let words = code.codewords();
    if words.len() < l + 1 {
        return false;
    }
    let bound = l * (code.n() - code.k());
    all_words(code).iter().any(|y| {
        let mut d: Vec<usize> = words.iter().map(|c| distance(c, y)).collect();
        d.sort_unstable();
        d[..l + 1].iter().sum::<usize>() <= bound
    })
}

/// Largest number of codewords in a Hamming ball of radius `r`.
fn brute_max_list(code: &CodeSpec, r: usize) -> usize {
    let words = code.codewords();
    all_words(code)
        .iter()
        .map(|y| words.iter().filter(|c| distance(c, y) <= r).count())
        .max()
        .unwrap()
}

const BUDGET: u128 = 1 << 24;

#[test]
fn ball_sizes() {
    assert_eq!(ball_size(6, 4, 6), 4096);
    assert_eq!(ball_size(6, 4, 1), 1 + 6 * 3);
    assert_eq!(ball_size(5, 2, 0), 1);
}

#[test]
fn ld_mds_one_is_mds() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut seen = [0usize; 2];
    for _ in 0..40 {
        let code = random_code(&mut rng, 4, 5, 2);
        let r = ld_mds_check(&code, 1, BUDGET).unwrap();
        assert_eq!(r.passed(), is_mds(&code).passed());
        seen[r.passed() as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
    let full = random_code(&mut rng, 5, 4, 4);
    assert!(ld_mds_check(&full, 3, BUDGET).unwrap().passed());
}

#[test]
fn ld_mds_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut seen = [0usize; 2];
    for _ in 0..30 {
        let (q, n, k) = [(3, 4, 2), (4, 4, 2), (3, 5, 2), (4, 5, 3), (5, 4, 2)][rng.gen_range(0..5)];
        let code = if rng.gen_bool(0.5) { random_rs(&mut rng, q, n, k) } else { random_code(&mut rng, q, n, k) };
        let l = rng.gen_range(1..=3);
        let r = ld_mds_check(&code, l, BUDGET).unwrap();
        assert_eq!(!r.passed(), brute_ld_fails(&code, l), "q={q} n={n} k={k} L={l}");
        if let Some(w) = &r.witness {
            let total: usize = w.sizes().iter().sum();
            assert!(total <= l * (n - k));
            assert_eq!(w.ell(), l + 1);
        }
        seen[r.passed() as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn duality_examples() {
    let fld = field(7);
    let rs = CodeSpec::rs(&fld, (0..5).map(|i| fld.from_u64(i)).collect(), 2).unwrap();
    let r = duality_test(&rs, 2, BUDGET).unwrap();
    assert!(r.passed(), "{r}");
    let square = random_code(&mut ChaCha8Rng::seed_from_u64(0), 5, 3, 3);
    for ell in 1..=3 {
        assert!(duality_test(&square, ell, BUDGET).unwrap().passed());
    }
}

#[test]
fn dual_list_decoding_matches_mds3() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut seen = [0usize; 2];
    for i in 0..30 {
        let code = match i % 3 {
            0 => random_code(&mut rng, 4, 6, 3),
            1 => random_rs(&mut rng, 5, 5, 2),
            _ => random_rs(&mut rng, 5, 5, 3),
        };
        let mds3 = is_mds_ell(&code, 3).passed();
        let ld = ld_mds_upto(&dual_code(&code), 2, BUDGET).unwrap();
        assert_eq!(mds3, ld.passed());
        seen[mds3 as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn worst_case_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let (q, n, k) = [(3, 4, 2), (4, 4, 2), (3, 5, 2), (5, 4, 2)][rng.gen_range(0..4)];
        let code = random_code(&mut rng, q, n, k);
        let l = rng.gen_range(1..=3);
        let r = rng.gen_range(0..=n);
        let report = worst_case_ld_check(&code, l, r, n, BUDGET).unwrap();
        assert_eq!(report.passed(), brute_max_list(&code, r) <= l);
        if !report.passed() {
            let cws = report.extra("codewords").unwrap().split(';').count();
            assert!(cws > l);
        }
    }
}

#[test]
fn worst_case_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..20 {
        let code = random_code(&mut rng, 5, 6, 3);
        let (n, k) = (6, 3);
        assert!(worst_case_ld_check(&code, 1, 0, 1, BUDGET).unwrap().passed());
        if is_mds(&code).passed() {
            // unique decoding radius (d − 1)/2
            assert!(worst_case_ld_check(&code, 1, n - k, 2 * n, BUDGET).unwrap().passed());
        }
        for l in 1..=2 {
            let avg = ld_mds_check(&code, l, BUDGET).unwrap().passed();
            let worst = worst_case_ld_check(&code, l, l * (n - k), (l + 1) * n, BUDGET).unwrap().passed();
            assert!(!avg || worst);
        }
        let verdicts: Vec<bool> = (0..=n).map(|r| worst_case_ld_check(&code, 2, r, n, BUDGET).unwrap().passed()).collect();
        assert!(verdicts.windows(2).all(|w| w[0] || !w[1]), "{verdicts:?}");
    }
    assert!(matches!(
        worst_case_ld_check(&random_code(&mut rng, 5, 6, 3), 1, 1, 1, 100),
        Err(CheckError::BudgetExceeded { .. })
    ));
}

#[test]
fn erasure_patterns() {
    let e = ErasurePattern::parse("2,3;1,1", 3, 5).unwrap();
    assert_eq!(e.cells, vec![(0, 0), (1, 2)]);
    assert_eq!(e.to_string(), "1,1;2,3");
    assert_eq!(e.coordinates(), vec![0, 7]);
    assert!(ErasurePattern::parse("4,1", 3, 5).is_err());
    assert!(ErasurePattern::parse("0,1", 3, 5).is_err());
    assert!(ErasurePattern::parse("", 3, 5).unwrap().cells.is_empty());
}

#[test]
fn tensor_parity_shape_and_simple_patterns() {
    let row = construct_k3_n4(5).unwrap().code;
    let spec = TensorCodeSpec::with_parity_columns(row, 3).unwrap();
    let h = tensor_parity(&spec);
    assert_eq!((h.rows(), h.cols()), (15 - 2 * 3, 15));
    assert!(correctable(&h, &ErasurePattern::new(3, 5, vec![]).unwrap()));
    // every row loses one cell, which its two checks recover
    let column = ErasurePattern::new(3, 5, (0..3).map(|r| (r, 2)).collect()).unwrap();
    assert!(correctable(&h, &column));
    // a full row is recovered by the column parities
    let row = ErasurePattern::new(3, 5, (0..5).map(|c| (1, c)).collect()).unwrap();
    assert!(correctable(&h, &row));
    // the 3×3 block carries a product of a weight-2 column word and a
    // weight-3 row word
    let block = ErasurePattern::new(3, 5, (0..3).cartesian_product(0..3).collect()).unwrap();
    assert!(!correctable(&h, &block));
    // one cell per column with a single parity row each
    let diagonal = ErasurePattern::new(3, 5, (0..5).map(|c| (c % 3, c)).collect()).unwrap();
    assert!(correctable(&h, &diagonal));
}

#[test]
fn mr_matches_mds_of_row_code() {
    let good = construct_k3_n4(5).unwrap().code;
    assert!(is_mds_ell(&good, 3).passed());
    let spec = TensorCodeSpec::with_parity_columns(good, 3).unwrap();
    let r = mr_check(&spec, BUDGET, 0).unwrap();
    assert!(r.passed(), "{r}");

    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut failing = 0;
    for _ in 0..8 {
        let row = random_code(&mut rng, 7, 5, 3);
        let expect = is_mds_ell(&row, 3).passed();
        let spec = TensorCodeSpec::with_parity_columns(row.clone(), 3).unwrap();
        let r = mr_check(&spec, BUDGET, 0).unwrap();
        assert_eq!(r.passed(), expect, "{r}");
        if !r.passed() {
            failing += 1;
            let e = ErasurePattern::parse(r.extra("pattern").unwrap(), 3, 5).unwrap();
            assert_ne!(correctable(&tensor_parity(&spec), &e), r.extra("generic_correctable").unwrap() == "true");
        }
    }
    assert!(failing > 0);
}

#[test]
fn mr_sampling_reports_coverage() {
    let row = construct_k3_n4(5).unwrap().code;
    let spec = TensorCodeSpec::with_parity_columns(row, 3).unwrap();
    let r = mr_check(&spec, 500, 7).unwrap();
    assert!(r.passed());
    let coverage: f64 = r.extra("coverage").unwrap().parse().unwrap();
    assert!(coverage > 0.0 && coverage < 0.05);
}
