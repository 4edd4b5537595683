//! Exhaustive structural properties at small n, beyond the per-module unit
//! tests: period case splits, bijection equivariance, completion-count
//! guarantees, the two-crossing tiling, and the vanishing pattern of
//! fixed-point counts.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use chordsieve_core::*;

/// All size-`k` subsets of the 2n labels, via the degenerate shift 2n whose
/// orbits are singletons.
fn all_subsets(n: usize, k: usize) -> Vec<LabelSubset> {
    symmetric_subsets(n, k, 2 * n).unwrap()
}

#[test]
fn one_crossing_periods_follow_the_case_split() {
    for n in 3..=8 {
        let allowed: Vec<usize> = if n % 2 == 1 {
            vec![2 * n]
        } else if n % 4 == 0 {
            vec![2 * n, n]
        } else {
            vec![2 * n, n, n / 2]
        };
        for m in enumerate_matchings(n, Some(1)) {
            assert!(allowed.contains(&m.period()), "n={n} m={m}");
        }
    }
}

#[test]
fn subset_recovery_is_rotation_equivariant() {
    for n in 3..=6 {
        for m in enumerate_matchings(n, Some(1)) {
            let rotated = subset_from_one_crossing(&m.rotate(1)).unwrap();
            let shifted = subset_from_one_crossing(&m).unwrap().shift(1);
            assert_eq!(rotated, shifted, "n={n} m={m}");
        }
    }
}

#[test]
fn completion_counts_are_guaranteed() {
    for n in 3..=6 {
        for k in 3..=n {
            for s in all_subsets(n, n - k) {
                let pm = ncc(n, &s).unwrap();
                let completions = list_completions(&pm, CrossingTypeClass::t(k)).unwrap();
                assert_eq!(completions.len(), k, "n={n} k={k} s={s}");
                for m in &completions {
                    assert_eq!(m.crossing_number(), 2);
                }
            }
        }
    }
    for n in [3, 6] {
        for k in 1..=n / 3 {
            for s in symmetric_subsets(n, n - 3 * k, 2 * n / 3).unwrap() {
                let pm = ncc(n, &s).unwrap();
                let completions = list_completions(&pm, CrossingTypeClass::r(k)).unwrap();
                let expected = if k == 1 { 1 } else { 2 * k };
                assert_eq!(completions.len(), expected, "n={n} k={k} s={s}");
                for m in &completions {
                    assert_eq!(m.crossing_number(), 3);
                    assert_eq!(m.rotate(2 * n as i64 / 3), *m);
                }
            }
        }
    }
}

#[test]
fn subset_completion_pairs_tile_the_two_crossing_class() {
    for n in 3..=7 {
        let mut seen: BTreeSet<Matching> = BTreeSet::new();
        let mut produced = 0usize;
        for k in 3..=n {
            for s in all_subsets(n, n - k) {
                let pm = ncc(n, &s).unwrap();
                for m in list_completions(&pm, CrossingTypeClass::t(k)).unwrap() {
                    produced += 1;
                    assert!(seen.insert(m), "duplicate image at n={n} k={k} s={s}");
                }
            }
        }
        let class: BTreeSet<Matching> = enumerate_matchings(n, Some(2)).collect();
        assert_eq!(seen, class, "n={n}");
        assert_eq!(BigInt::from(produced), closed_count(n, 2), "n={n}");
    }
}

#[test]
fn construction_output_is_noncrossing_up_to_full_size() {
    for n in 1..=6 {
        for size in 0..=n {
            for s in all_subsets(n, size) {
                let pm = ncc(n, &s).unwrap();
                assert!(pm.is_noncrossing(), "n={n} s={s}");
                assert_eq!(pm.pairs().len(), size, "n={n} s={s}");
                assert_eq!(pm.unmatched().len(), 2 * n - 2 * size, "n={n} s={s}");
            }
        }
    }
}

#[test]
fn fixed_counts_vanish_off_the_allowed_rotations() {
    for n in 3..=8 {
        let hist1 = period_histogram(n, 1);
        let hist2 = period_histogram(n, 2);
        for j in 1..=2 * n {
            let multiple_of_possible_period = j == 2 * n
                || (n % 2 == 0 && j % n == 0)
                || (n % 4 == 2 && j % (n / 2) == 0);
            if !multiple_of_possible_period {
                assert_eq!(fixed_from_histogram(&hist1, 2 * n, j as i64), 0, "k=1 n={n} j={j}");
            }
            if j % n != 0 {
                assert_eq!(fixed_from_histogram(&hist2, 2 * n, j as i64), 0, "k=2 n={n} j={j}");
            }
        }
    }
    for n in 4..=8 {
        let hist3 = period_histogram(n, 3);
        for j in 1..=2 * n {
            let allowed =
                j == 2 * n || j == n || (n % 3 == 0 && (3 * j == 2 * n || 3 * j == 4 * n));
            if !allowed {
                assert_eq!(fixed_from_histogram(&hist3, 2 * n, j as i64), 0, "k=3 n={n} j={j}");
            }
        }
    }
}

#[test]
fn formula_brute_and_polynomial_agree_where_covered() {
    for n in 3..=7 {
        for k in 1..=3 {
            let hist = period_histogram(n, k);
            let f = csp_polynomial(n, k).unwrap();
            for j in 1..=2 * n as i64 {
                let brute = BigInt::from(fixed_from_histogram(&hist, 2 * n, j));
                let poly = eval_at_unity(&f, 2 * n, j).as_integer.unwrap();
                assert_eq!(poly, brute, "n={n} k={k} j={j}");
                if let Some(formula) = fixed_count_formula(n, k, j) {
                    assert_eq!(formula, brute, "n={n} k={k} j={j}");
                }
            }
        }
    }
}

#[test]
fn audit_is_clean_through_n7() {
    let report = lemma_audit(7);
    for check in &report.checks {
        assert!(check.passed, "{} at n={}: {}", check.lemma, check.n, check.detail);
    }
    assert!(report.all_passed);
}

#[test]
fn class_sizes_fit_the_histogram_totals() {
    for n in 3..=7 {
        for k in 0..=3 {
            let brute = enumerate_matchings(n, Some(k)).count();
            assert_eq!(
                closed_count(n, k).to_usize().unwrap(),
                brute,
                "n={n} k={k}"
            );
        }
    }
    // The unpruned n=7 confirmation of the one-crossing class size.
    let unpruned = enumerate_matchings(7, None)
        .filter(|m| m.crossing_number() == 1)
        .count();
    assert_eq!(unpruned, 2002);
}

#[test]
fn crossing_classes_partition_everything() {
    for n in 1..=6 {
        let per_class: u64 = (0..=n * (n - 1) / 2)
            .map(|k| enumerate_matchings(n, Some(k)).count() as u64)
            .sum();
        assert_eq!(per_class, double_factorial_odd(n), "n={n}");
    }
}
