//! Acceptance suite: every headline claim checked end to end by exhaustive
//! computation at desk scale, with exact integer arithmetic throughout.
//! Each test prints one PASS line when its criterion holds; a failure is a
//! counterexample to the corresponding claim.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use chordsieve_core::*;

fn all_subsets(n: usize, k: usize) -> Vec<LabelSubset> {
    symmetric_subsets(n, k, 2 * n).unwrap()
}

#[test]
fn criterion_1_counting_formulas() {
    for n in 3..=8 {
        let brute = enumerate_matchings(n, Some(1)).count();
        assert_eq!(BigInt::from(brute), closed_count(n, 1), "k=1 n={n}");
    }
    assert_eq!(closed_count(7, 1), BigInt::from(2002));
    for n in 4..=8 {
        let brute = enumerate_matchings(n, Some(2)).count();
        assert_eq!(BigInt::from(brute), closed_count(n, 2), "k=2 n={n}");
    }
    assert_eq!(closed_count(5, 2), BigInt::from(180));
    for n in 4..=8 {
        let brute = enumerate_matchings(n, Some(3)).count();
        assert_eq!(BigInt::from(brute), closed_count(n, 3), "k=3 n={n}");
    }
    assert_eq!(closed_count(4, 3), BigInt::from(20));
    println!("criterion 1 PASS: class sizes match the closed forms exactly for n <= 8");
}

#[test]
fn criterion_2_sieving_verdicts() {
    for k in 1..=2 {
        for n in 3..=8 {
            let report = verify_csp(n, k);
            assert!(report.verdict, "k={k} n={n}: {}", report.to_json());
        }
    }
    for n in 4..=9 {
        let report = verify_csp(n, 3);
        assert!(report.verdict, "k=3 n={n}: {}", report.to_json());
        if n == 9 {
            assert_eq!(report.row(6).brute, 45);
            assert_eq!(report.row(6).poly, Some(BigInt::from(45)));
            assert_eq!(report.row(12).brute, 45);
        }
    }
    println!(
        "criterion 2 PASS: polynomial values equal fixed-point counts for every \
         rotation, k=1,2 at n<=8 and k=3 at n<=9 (third-turn count 45 at n=9)"
    );
}

#[test]
fn criterion_3_fixed_point_lemmas() {
    let binom = |a: i64, b: i64| binomial(a, b);
    for n in 3..=9usize {
        let n_i = n as i64;
        let hist1 = period_histogram(n, 1);
        let half1 = fixed_from_histogram(&hist1, 2 * n, n as i64);
        let expected_half1 = if n % 2 == 0 {
            binom(n_i, (n_i - 2) / 2)
        } else {
            BigInt::ZERO
        };
        assert_eq!(BigInt::from(half1), expected_half1, "half-turn k=1 n={n}");
        if n % 2 == 0 {
            let quarter = fixed_from_histogram(&hist1, 2 * n, n as i64 / 2);
            let expected_quarter = if n % 4 == 2 {
                binom(n_i / 2, (n_i - 2) / 4)
            } else {
                BigInt::ZERO
            };
            assert_eq!(BigInt::from(quarter), expected_quarter, "quarter k=1 n={n}");
        }

        let hist2 = period_histogram(n, 2);
        let half2 = fixed_from_histogram(&hist2, 2 * n, n as i64);
        let expected_half2 = if n % 2 == 1 {
            BigInt::from((n_i - 1) / 2) * binom(n_i, (n_i - 1) / 2)
        } else {
            BigInt::from((n_i - 2) / 2) * binom(n_i, (n_i - 2) / 2)
        };
        assert_eq!(BigInt::from(half2), expected_half2, "half-turn k=2 n={n}");

        let hist3 = period_histogram(n, 3);
        let half3 = fixed_from_histogram(&hist3, 2 * n, n as i64);
        let expected_half3 = if n % 2 == 1 {
            binom(n_i, (n_i - 3) / 2)
        } else {
            BigInt::from((n_i + 4) / 2) * binom(n_i, (n_i - 4) / 2)
        };
        assert_eq!(BigInt::from(half3), expected_half3, "half-turn k=3 n={n}");
        let f3 = csp_polynomial(n, 3).unwrap();
        assert_eq!(
            eval_at_unity(&f3, 2 * n, n as i64).as_integer,
            Some(expected_half3),
            "f(-1) k=3 n={n}"
        );

        if n % 3 == 0 {
            let third = fixed_from_histogram(&hist3, 2 * n, 2 * n as i64 / 3);
            assert_eq!(BigInt::from(third), third_turn_fixed_count(n), "third n={n}");
        }
    }
    println!(
        "criterion 3 PASS: half-turn, quarter-turn, and third-turn fixed counts \
         match their case formulas for n <= 9"
    );
}

#[test]
fn criterion_4_bijection_round_trip() {
    for n in 3..=6usize {
        let subsets = all_subsets(n, n - 2);
        assert_eq!(
            BigInt::from(subsets.len()),
            binomial(2 * n as i64, n as i64 - 2)
        );
        let mut images = BTreeSet::new();
        for s in &subsets {
            let m = one_crossing_from_subset(n, s).unwrap();
            assert_eq!(m.crossing_number(), 1, "n={n} s={s}");
            assert_eq!(&subset_from_one_crossing(&m).unwrap(), s, "n={n} s={s}");
            images.insert(m);
        }
        assert_eq!(images.len(), subsets.len(), "injective at n={n}");
        for m in enumerate_matchings(n, Some(1)) {
            let s = subset_from_one_crossing(&m).unwrap();
            assert_eq!(one_crossing_from_subset(n, &s).unwrap(), m, "n={n} m={m}");
        }
    }
    println!("criterion 4 PASS: subset <-> one-crossing maps are mutually inverse for n <= 6");
}

#[test]
fn criterion_5_type_census() {
    for n in 3..=8usize {
        let mut census: BTreeMap<usize, u64> = BTreeMap::new();
        let mut total = 0u64;
        for m in enumerate_matchings(n, Some(2)) {
            total += 1;
            match classify(&m).unwrap().kind {
                CrossingKind::T(k) => *census.entry(k).or_insert(0) += 1,
                other => panic!("{m} classified as {other:?}"),
            }
        }
        for k in 3..=n {
            let expected = BigInt::from(k as i64) * binomial(2 * n as i64, n as i64 - k as i64);
            assert_eq!(
                BigInt::from(census.get(&k).copied().unwrap_or(0)),
                expected,
                "n={n} k={k}"
            );
        }
        assert_eq!(census.values().sum::<u64>(), total, "partition at n={n}");
        assert_eq!(BigInt::from(total), closed_count(n, 2), "total at n={n}");
    }

    for n in [3usize, 6, 9] {
        let shift = 2 * n as i64 / 3;
        let mut census: BTreeMap<usize, u64> = BTreeMap::new();
        for m in enumerate_matchings(n, Some(3)).filter(|m| m.rotate(shift) == *m) {
            match classify(&m).unwrap().kind {
                CrossingKind::R(k) => *census.entry(k).or_insert(0) += 1,
                other => panic!("{m} classified as {other:?}"),
            }
        }
        let thirds = n as i64 / 3;
        let mut expected: BTreeMap<usize, u64> = BTreeMap::new();
        expected.insert(1, binomial(2 * thirds, thirds - 1).to_u64().unwrap());
        for k in 2..=n / 3 {
            let count = BigInt::from(2 * k as i64)
                * binomial(2 * thirds, thirds - k as i64);
            expected.insert(k, count.to_u64().unwrap());
        }
        expected.retain(|_, v| *v > 0);
        census.retain(|_, v| *v > 0);
        assert_eq!(census, expected, "symmetric census at n={n}");
        assert_eq!(
            BigInt::from(census.values().sum::<u64>()),
            third_turn_fixed_count(n),
            "n={n}"
        );
    }
    println!(
        "criterion 5 PASS: two-crossing classes have size k*C(2n, n-k) for n <= 8 \
         and the symmetric three-crossing classes match at n = 3, 6, 9"
    );
}

#[test]
fn criterion_6_q_analog_identities() {
    // Values of the q-integers at -1 and at primitive cube roots.
    for m in 1..=50usize {
        let at_minus_one = eval_at_unity(&q_int(m), 2, 1).as_integer.unwrap();
        assert_eq!(at_minus_one, BigInt::from((m % 2) as i64), "m={m}");
        let at_cube = eval_at_unity(&q_int(m), 3, 1);
        match m % 3 {
            0 => assert_eq!(at_cube.as_integer, Some(BigInt::ZERO), "m={m}"),
            1 => assert_eq!(at_cube.as_integer, Some(BigInt::from(1)), "m={m}"),
            _ => assert_eq!(at_cube.residue, q_int(2), "m={m}"),
        }
    }
    // Ratio laws through exact division, then evaluation.
    for m in (2..=50).step_by(2) {
        let half = q_int(m).exact_div(&q_int(2)).unwrap();
        assert_eq!(
            eval_at_unity(&half, 2, 1).as_integer,
            Some(BigInt::from(m as i64 / 2))
        );
    }
    for m in (3..=48).step_by(3) {
        let third = q_int(m).exact_div(&q_int(3)).unwrap();
        assert_eq!(
            eval_at_unity(&third, 3, 1).as_integer,
            Some(BigInt::from(m as i64 / 3))
        );
    }
    // The recurrence route and the product route agree.
    for m in 0..=20usize {
        for r in 0..=m {
            assert_eq!(
                q_binomial(m, r as i64),
                q_binomial_product(m, r as i64).unwrap(),
                "m={m} r={r}"
            );
        }
    }
    // Summation identities behind the class sizes, exact for n <= 60.
    for n in 3..=60 {
        let (sum, closed) = two_crossing_sum_identity(n);
        assert_eq!(sum, closed, "n={n}");
    }
    for n in (3..=60).step_by(3) {
        let (sum, closed) = three_crossing_sum_identity(n);
        assert_eq!(sum, closed, "n={n}");
    }
    println!(
        "criterion 6 PASS: q-integer evaluation facts (m <= 50), dual q-binomial \
         routes (m <= 20), and both summation identities (n <= 60) hold exactly"
    );
}

#[test]
fn criterion_7_worked_examples() {
    let seed = LabelSubset::from_labels(7, &[1, 2, 3, 9, 12]).unwrap();
    let pm = ncc(7, &seed).unwrap();
    assert_eq!(pm.to_string(), "(1,6)(2,5)(3,4)(9,10)(12,13)");
    assert_eq!(pm.unmatched(), vec![7, 8, 11, 14]);

    let completed = complete_one_crossing(&pm).unwrap();
    assert_eq!(
        completed.to_string(),
        "(1,6)(2,5)(3,4)(7,11)(8,14)(9,10)(12,13)"
    );

    let second = ncc(7, &LabelSubset::from_labels(7, &[1, 2, 5, 9]).unwrap()).unwrap();
    assert_eq!(second.to_string(), "(1,4)(2,3)(5,6)(9,10)");
    let completions = list_completions(&second, CrossingTypeClass::t(3)).unwrap();
    let got: BTreeSet<String> = completions.iter().map(|m| m.to_string()).collect();
    let expected: BTreeSet<String> = [
        [(7, 12), (8, 14), (11, 13)],
        [(8, 13), (7, 11), (12, 14)],
        [(11, 14), (8, 12), (7, 13)],
    ]
    .iter()
    .map(|ext| second.complete_with(ext).unwrap().to_string())
    .collect();
    assert_eq!(got, expected);

    let running: Matching = "(2,3)(1,4)(6,7)(9,10)(8,12)(13,14)(5,11)".parse().unwrap();
    assert_eq!(running.crossing_number(), 1);
    assert_eq!(
        running.rotate(1).to_string(),
        "(1,14)(2,5)(3,4)(6,12)(7,8)(9,13)(10,11)"
    );
    println!(
        "criterion 7 PASS: the worked construction trace, its completion, the three \
         shared-chord completions, and the unit rotation reproduce byte-exactly"
    );
}

#[test]
fn criterion_8_property_suites() {
    // Rotation is a group action and the crossing statistic is invariant.
    for n in 1..=5usize {
        for m in enumerate_matchings(n, None) {
            assert_eq!(m.rotate(0), m);
            assert_eq!(m.rotate(2 * n as i64), m);
            let c = m.crossing_number();
            for i in 0..=2 * n as i64 {
                let mi = m.rotate(i);
                assert_eq!(mi.crossing_number(), c, "n={n} m={m} i={i}");
                for j in 0..=2 * n as i64 {
                    assert_eq!(mi.rotate(j), m.rotate(i + j), "n={n} m={m} i={i} j={j}");
                }
            }
        }
    }
    // Skeleton reduction is deletion-order independent.
    for n in 1..=5usize {
        for m in enumerate_matchings(n, None).filter(|m| m.crossing_number() <= 3) {
            let inc = reduce_to_skeleton_ordered(&m, DeletionOrder::IncreasingMin);
            let dec = reduce_to_skeleton_ordered(&m, DeletionOrder::DecreasingMin);
            assert_eq!(inc.skeleton, dec.skeleton, "m={m}");
        }
    }
    // The noncrossing construction terminates with a noncrossing output.
    for n in 1..=6usize {
        for size in 0..=n {
            for s in all_subsets(n, size) {
                let pm = ncc(n, &s).unwrap_or_else(|e| panic!("n={n} s={s}: {e}"));
                assert!(pm.is_noncrossing(), "n={n} s={s}");
            }
        }
    }
    // Pruned and unpruned enumeration agree.
    for n in 1..=6usize {
        let mut unpruned: Vec<BTreeSet<Matching>> = vec![BTreeSet::new(); 4];
        for m in enumerate_matchings(n, None) {
            let c = m.crossing_number();
            if c <= 3 {
                unpruned[c].insert(m);
            }
        }
        for (k, expected) in unpruned.iter().enumerate() {
            let pruned: BTreeSet<Matching> = enumerate_matchings(n, Some(k)).collect();
            assert_eq!(&pruned, expected, "n={n} k={k}");
        }
    }
    println!(
        "criterion 8 PASS: action laws, crossing invariance, skeleton confluence, \
         construction termination, and prune-correctness hold exhaustively"
    );
}
