use std::collections::HashSet;

use itertools::Itertools;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn f(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn rs_int(p: u64, gens: &[u64], k: usize) -> CodeSpec {
    let fld = f(p);
    CodeSpec::rs(&fld, gens.iter().map(|&g| fld.from_u64(g)).collect(), k).unwrap()
}

fn all_minors_nonzero(g: &MatrixF) -> bool {
    (0..g.cols())
        .combinations(g.rows())
        .all(|cols| !g.select_columns(&cols).det().unwrap().is_zero())
}

#[test]
fn generator_matrix_examples() {
    let code = rs_int(7, &[0, 1, 2], 2);
    let g = rs_generator_matrix(&code).unwrap();
    let expect: Vec<u64> = vec![1, 1, 1, 0, 1, 2];
    let got: Vec<u64> = (0..2).flat_map(|r| (0..3).map(move |c| (r, c))).map(|(r, c)| g.get(r, c).as_prime().unwrap()).collect();
    assert_eq!(got, expect);
    let ones = rs_generator_matrix(&rs_int(7, &[3, 4, 5], 1)).unwrap();
    assert!((0..3).all(|c| ones.get(0, c).is_one()));
    assert_eq!(rs_generator_matrix(&rs_int(7, &[1, 2, 3], 3)).unwrap().rank(), 3);
    let explicit = CodeSpec::explicit(g).unwrap();
    assert_eq!(rs_generator_matrix(&explicit), Err(CodeError::WrongKind));
    assert_eq!(
        CodeSpec::rs(&f(7), vec![f(7).from_u64(1), f(7).from_u64(1)], 1),
        Err(CodeError::RepeatedGenerator(0, 1))
    );
}

#[test]
fn rs_codes_have_nonzero_minors() {
    let code = rs_int(13, &(0..12).collect::<Vec<_>>(), 4);
    assert!(all_minors_nonzero(&code.generator_matrix()));
}

#[test]
fn dual_examples() {
    let code = rs_int(7, &[0, 1, 2], 2);
    let dual = dual_code(&code);
    assert_eq!(dual.k(), 1);
    let h: Vec<u64> = dual.generator_matrix().row(0).iter().map(|e| e.as_prime().unwrap()).collect();
    assert_eq!(h, vec![1, 5, 1]);
    let g = code.generator_matrix();
    assert!(g.mul(&dual.generator_matrix().transpose()).unwrap().is_zero());
    assert!(same_code(&dual_code(&dual), &CodeSpec::explicit(g).unwrap()));
    let full = rs_int(7, &[1, 2, 3], 3);
    let zero = dual_code(&full);
    assert_eq!((zero.k(), zero.n()), (0, 3));
}

#[test]
fn puncture_examples() {
    let code = rs_int(11, &[0, 1, 2, 3, 4, 5], 2);
    assert_eq!(puncture(&code, &[0, 1, 2, 3, 4, 5]).unwrap(), code);
    let short = puncture(&code, &[0, 1, 2]).unwrap();
    assert_eq!(short, rs_int(11, &[0, 1, 2], 2));
    assert!(matches!(puncture(&code, &[0]), Err(CodeError::RankLoss { .. })));
    // a punctured MDS explicit code stays MDS
    let g = rs_int(11, &[1, 3, 4, 7, 9, 10], 3).generator_matrix();
    let explicit = CodeSpec::explicit(g).unwrap();
    let p = puncture(&explicit, &[5, 0, 2, 3]).unwrap();
    assert!(all_minors_nonzero(&p.generator_matrix()));
}

#[test]
fn generically_zero_examples() {
    let t = SetTuple::new(vec![vec![0, 1], vec![2, 3], vec![4, 5]], 3);
    assert!(generically_zero(&t).unwrap());
    let shared = SetTuple::new(vec![vec![0, 1], vec![0, 3], vec![0, 5]], 3);
    assert!(!generically_zero(&shared).unwrap());
    let bad = SetTuple::new(vec![vec![0, 1], vec![2, 3]], 3);
    assert!(matches!(generically_zero(&bad), Err(CodeError::SizeConstraintViolated(_))));
    // pairwise overlap 2 with a third set of size 2 exceeds k = 3
    let heavy = SetTuple::new(vec![vec![0, 1], vec![0, 1], vec![2, 3]], 3);
    assert!(!generically_zero(&heavy).unwrap());
    let fits = SetTuple::new(vec![vec![0, 1, 2], vec![0, 1], vec![3]], 3);
    assert!(generically_zero(&fits).unwrap());
}

#[test]
fn bell_numbers() {
    let counts: Vec<usize> = (0..7).map(|l| bell_partitions(l).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
}

/// Direct transcription of the partition inequality, used as an oracle for
/// the specialised triple path.
fn partition_oracle(t: &SetTuple) -> bool {
    bell_partitions(t.ell()).iter().all(|blocks| {
        let lhs: usize = blocks
            .iter()
            .map(|b| {
                let mut common: HashSet<usize> = t.sets[b[0]].iter().copied().collect();
                for &j in &b[1..] {
                    common.retain(|x| t.sets[j].contains(x));
                }
                common.len()
            })
            .sum();
        lhs <= (blocks.len() - 1) * t.k
    })
}

fn random_tuple(rng: &mut impl Rng, n: usize, k: usize, ell: usize) -> SetTuple {
    let sets = crate::linalg::tests::random_sets(rng, n, k, ell);
    SetTuple::new(sets, k)
}

#[test]
fn triple_path_matches_partition_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let k = rng.gen_range(1..=4);
        let n = rng.gen_range(k..=9);
        let t = random_tuple(&mut rng, n, k, 3);
        assert_eq!(generically_zero(&t).unwrap(), partition_oracle(&t), "{t}");
    }
}

#[test]
fn predicate_matches_generic_oracle() {
    let oracle = GenericOracle::for_characteristic(2_147_483_647, 5, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for i in 0..150 {
        let ell = [2, 3, 4][i % 3];
        let k = rng.gen_range(1..=4);
        let n = rng.gen_range(k.max(2)..=10);
        let t = random_tuple(&mut rng, n, k, ell);
        assert_eq!(
            generically_zero(&t).unwrap(),
            oracle.generically_zero(n, &t, i as u64).unwrap(),
            "{t} k={k}"
        );
    }
}

#[test]
fn small_characteristic_oracle_field() {
    let o = GenericOracle::for_characteristic(7, 5, 0).unwrap();
    assert!(o.field().log2_size() >= 31.0);
    assert_eq!(o.field().characteristic(), 7);
}

#[test]
fn enumeration_counts() {
    assert_eq!(enumerate_tuples(6, 3, 3, Some(&[2, 2, 2])).unwrap().count(), 3375);
    let disjoint = enumerate_tuples(6, 3, 3, Some(&[2, 2, 2]))
        .unwrap()
        .filter(|t| t.sets.iter().flatten().collect::<HashSet<_>>().len() == 6)
        .count();
    assert_eq!(disjoint, 90);
    assert_eq!(profiles(4, 3, 3), vec![vec![2, 3, 3], vec![3, 2, 3], vec![3, 3, 2]]);
    assert!(matches!(
        enumerate_tuples(6, 3, 3, Some(&[3, 3, 1])),
        Err(CodeError::InfeasibleProfile(_))
    ));
    // lexicographic and duplicate-free
    let all: Vec<SetTuple> = enumerate_tuples(5, 2, 3, None).unwrap().collect();
    let distinct: HashSet<&SetTuple> = all.iter().collect();
    assert_eq!(distinct.len(), all.len());
    let expected: usize = profiles(2, 3, 2)
        .iter()
        .map(|p| p.iter().map(|&s| crate::fields::binomial(5, s as u64) as usize).product::<usize>())
        .sum();
    assert_eq!(all.len(), expected);
}

#[test]
fn canonical_tuples_are_orbit_representatives() {
    for (n, k) in [(6, 3), (7, 3), (6, 4)] {
        let canon = canonical_tuples(n, k, 3, k - 1, true);
        let mut orbits = HashSet::new();
        for t in enumerate_tuples(n, k, 3, None).unwrap() {
            if t.sets.iter().any(|s| s.len() > k - 1) || !generically_zero(&t).unwrap() {
                continue;
            }
            let mut sets = t.sets.clone();
            sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
            orbits.insert(sets);
        }
        assert_eq!(canon.len(), orbits.len(), "n={n} k={k}");
        for t in &canon {
            assert!(orbits.contains(&t.sets));
        }
    }
    assert_eq!(canonical_tuples(6, 3, 3, 2, true).len(), 395);
}

#[test]
fn tuple_text_round_trip() {
    let t = SetTuple::new(vec![vec![0, 1], vec![], vec![4, 2]], 2);
    assert_eq!(t.to_string(), "1,2;;3,5");
    assert_eq!(SetTuple::parse(&t.to_string(), 2).unwrap(), t);
    assert!(SetTuple::parse("0,1;2", 2).is_err());
}

#[test]
fn code_file_round_trip() {
    use crate::fields::Extension;
    let fld = FieldSpec::new(7, &[Extension::prime_poly(3, &[-2, 0, 0, 1])]).unwrap();
    let gens: Vec<FieldElement> = (0..6).map(|i| fld.element_from_index(i * 37 + 1)).collect();
    let code = CodeSpec::rs(&fld, gens, 3).unwrap();
    let text = write_code(&code, &["construction=test".into()]);
    assert!(text.starts_with("# construction=test\nfield p=7\n"));
    assert_eq!(parse_code(&text).unwrap(), code);
    let explicit = CodeSpec::explicit(code.generator_matrix()).unwrap();
    assert_eq!(parse_code(&write_code(&explicit, &[])).unwrap(), explicit);
    let dual = dual_code(&rs_int(5, &[0, 1, 2], 3));
    assert_eq!(parse_code(&write_code(&dual, &[])).unwrap(), dual);

    let repeated = "field p=7\ncode n=4 k=2 kind=rs\ngen 1\ngen 2\ngen 1\ngen 3\n";
    let parsed = parse_code(repeated).unwrap();
    assert!(matches!(parsed.kind(), CodeKind::Explicit(_)));
    assert_eq!(parsed.generator_matrix().column(0), parsed.generator_matrix().column(2));
    assert!(parse_code("field p=7\ncode n=2 k=1 kind=rs\ngen 1\n").is_err());
    assert!(parse_code("field p=7\ncode n=1 k=1 kind=weird\n").is_err());
}

#[test]
fn codewords_of_tiny_code() {
    let words = rs_int(3, &[0, 1, 2], 2).codewords();
    assert_eq!(words.len(), 9);
    let distinct: HashSet<Vec<u64>> = words.iter().map(|w| w.iter().map(|e| e.as_prime().unwrap()).collect()).collect();
    assert_eq!(distinct.len(), 9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn predicate_is_symmetric(seed in any::<u64>(), ell in 2usize..=4, k in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(k.max(2)..=9);
        let t = random_tuple(&mut rng, n, k, ell);
        let base = generically_zero(&t).unwrap();
        let mut sets = t.sets.clone();
        sets.shuffle(&mut rng);
        prop_assert_eq!(generically_zero(&SetTuple::new(sets, k)).unwrap(), base);
        let mut relabel: Vec<usize> = (0..n).collect();
        relabel.shuffle(&mut rng);
        let moved: Vec<Vec<usize>> = t.sets.iter().map(|s| s.iter().map(|&x| relabel[x]).collect()).collect();
        prop_assert_eq!(generically_zero(&SetTuple::new(moved, k)).unwrap(), base);
    }
}
