//! Library results checked against slow, independent reimplementations.

mod common;

use std::collections::BTreeSet;

use common::*;
use cyclemat::enumerate::{enumerate_classes, enumerate_raw};
use cyclemat::{
    automorphisms, canonical_form, determinant, determinant_of, is_transpose_cycle_matrix,
    point_orbits, validate, validate_rows, CycleMatrix, LabelMatrix,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rows_of(m: &CycleMatrix) -> Rows {
    m.rows()
}

#[test]
fn validation_agrees_on_every_label_matrix_up_to_order_three() {
    for n in 1..=3usize {
        let cells = n * n;
        let total = n.pow(cells as u32);
        let mut valid = 0;
        for code in 0..total {
            let mut c = code;
            let rows: Rows = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let v = c % n + 1;
                            c /= n;
                            v
                        })
                        .collect()
                })
                .collect();
            let report = validate_rows(&rows).unwrap();
            assert_eq!(report.valid, is_cycle_set(&rows), "{rows:?}");
            assert_eq!(report.valid, report.violation.is_none());
            valid += usize::from(report.valid);
        }
        let expected = RAW_COUNTS.iter().find(|&&(k, _)| k == n).unwrap().1;
        assert_eq!(valid as u64, expected, "order {n}");
    }
}

#[test]
fn validation_agrees_on_random_row_permutation_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa11_0e5);
    for _ in 0..3000 {
        let n = rng.gen_range(2..=6usize);
        let perms = all_perms(n);
        let rows: Rows = (0..n)
            .map(|_| perms[rng.gen_range(0..perms.len())].clone())
            .collect();
        let lm = LabelMatrix::from_rows(&rows).unwrap();
        assert_eq!(validate(&lm).valid, is_cycle_set(&rows), "{rows:?}");
    }
}

#[test]
fn raw_enumeration_matches_brute_force() {
    for n in 1..=4 {
        let mut fast: Vec<Rows> = enumerate_raw(n).map(|m| m.rows()).collect();
        fast.sort();
        assert_eq!(fast, naive_enumeration(n), "order {n}");
    }
}

#[test]
fn classes_match_brute_force_orbit_minima() {
    for n in 1..=4 {
        let minima: BTreeSet<Rows> = naive_enumeration(n).iter().map(brute_canonical).collect();
        let classes: Vec<Rows> = enumerate_classes(n).iter().map(rows_of).collect();
        assert_eq!(classes, minima.into_iter().collect::<Vec<_>>(), "order {n}");
    }
}

#[test]
fn canonical_form_is_the_orbit_minimum() {
    for n in 1..=4 {
        for raw in naive_enumeration(n) {
            let m = CycleMatrix::from_rows(&raw).unwrap();
            let (canon, sigma) = canonical_form(&m);
            assert_eq!(canon.rows(), brute_canonical(&raw));
            assert_eq!(relabel(&sigma.images(), &raw), canon.rows());
        }
    }
}

#[test]
fn automorphism_groups_match_brute_force() {
    for n in 1..=5 {
        for m in enumerate_classes(n) {
            let raw = m.rows();
            let auts = automorphisms(&m);
            assert_eq!(auts.len(), brute_stabilizer_order(&raw), "{raw:?}");
            for a in &auts {
                assert_eq!(relabel(&a.images(), &raw), raw);
            }
        }
    }
}

#[test]
fn orbit_stabilizer_sums_give_raw_counts() {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    for &(n, raw) in &RAW_COUNTS {
        let sum: u64 = enumerate_classes(n)
            .iter()
            .map(|m| fact(n) / brute_stabilizer_order(&m.rows()) as u64)
            .sum();
        assert_eq!(sum, raw, "order {n}");
    }
}

#[test]
fn determinants_match_leibniz() {
    for n in 1..=5 {
        for m in enumerate_classes(n) {
            let ints = m.labels().to_integer_rows();
            assert_eq!(determinant(&m), BigInt::from(leibniz_det(&ints)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xde7);
    for _ in 0..500 {
        let n = rng.gen_range(1..=6usize);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rng.gen_range(-1_000_000..=1_000_000))
                    .collect()
            })
            .collect();
        assert_eq!(determinant_of(&rows), BigInt::from(leibniz_det(&rows)));
    }
}

#[test]
fn fixture_determinants() {
    let a = fixture("eight_by_eight_a.txt");
    let b = fixture("eight_by_eight_b.txt");
    assert_eq!(
        determinant(&a),
        BigInt::from(leibniz_det(&a.labels().to_integer_rows()))
    );
    assert_eq!(
        determinant(&b),
        BigInt::from(leibniz_det(&b.labels().to_integer_rows()))
    );
    assert_eq!(determinant(&a), BigInt::from(0));
    assert_eq!(determinant(&b), BigInt::from(-147_456));
}

#[test]
fn orbits_match_naive_merging() {
    for n in 1..=5 {
        for m in enumerate_classes(n) {
            assert_eq!(point_orbits(&m), naive_orbits(&m.rows()));
        }
    }
    for name in [
        "union5.txt",
        "theta9_a.txt",
        "theta9_b.txt",
        "eight_by_eight_a.txt",
    ] {
        let m = fixture(name);
        assert_eq!(point_orbits(&m), naive_orbits(&m.rows()), "{name}");
    }
}

#[test]
fn transpose_detection_matches_literal_check() {
    for n in 1..=5 {
        for m in enumerate_classes(n) {
            assert_eq!(
                is_transpose_cycle_matrix(&m),
                is_cycle_set(&transpose(&m.rows()))
            );
        }
    }
}
