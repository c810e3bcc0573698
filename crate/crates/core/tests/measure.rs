//! Euclid's algorithm on lengths and continued fractions.

use compasskit::measure::{convergents, euclid_on_lengths, golden_ratio_cf_demo, Convergent, DEFAULT_STOP_EPS};
use proptest::prelude::*;

/// Textbook integer Euclid, the oracle for quotients of integer lengths.
fn integer_quotients(mut a: u64, mut b: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while b != 0 {
        out.push(a / b);
        (a, b) = (b, a % b);
    }
    out
}

proptest! {
    #[test]
    fn integer_lengths_match_integer_euclid(a in 1u64..1_000_000, b in 1u64..1_000_000) {
        let cf = euclid_on_lengths(a as f64, b as f64, 64, DEFAULT_STOP_EPS).unwrap();
        prop_assert!(cf.terminated);
        prop_assert_eq!(&cf.quotients, &integer_quotients(a, b));
        let want = a as f64 / b as f64;
        prop_assert!((cf.value() - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn scaling_both_lengths_keeps_the_quotients(a in 1u64..10_000, b in 1u64..10_000, k in 0.01..100.0f64) {
        let cf = euclid_on_lengths(a as f64 * k, b as f64 * k, 64, DEFAULT_STOP_EPS).unwrap();
        prop_assert!(cf.terminated);
        let want = a as f64 / b as f64;
        prop_assert!((cf.value() - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn last_convergent_is_the_reduced_fraction(a in 1u64..100_000, b in 1u64..100_000) {
        let cf = euclid_on_lengths(a as f64, b as f64, 64, DEFAULT_STOP_EPS).unwrap();
        let last = *convergents(&cf, cf.len()).unwrap().last().unwrap();
        let g = gcd(a, b);
        prop_assert_eq!(last, Convergent { p: a / g, q: b / g });
    }

    #[test]
    fn convergent_determinant_is_unit(x in 1.01..50.0f64) {
        let cf = euclid_on_lengths(x, 1.0, 10, DEFAULT_STOP_EPS).unwrap();
        let c = convergents(&cf, cf.len()).unwrap();
        for w in c.windows(2) {
            let det = w[1].p as i128 * w[0].q as i128 - w[0].p as i128 * w[1].q as i128;
            prop_assert_eq!(det.abs(), 1);
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn seventeen_twelfths_is_a_best_approximation() {
    let root2 = 2f64.sqrt();
    let best = (root2 - 17.0 / 12.0).abs();
    for q in 1..=12u64 {
        for p in 0..=3 * q {
            if (p, q) != (17, 12) {
                assert!((root2 - p as f64 / q as f64).abs() > best, "{p}/{q}");
            }
        }
    }
}

#[test]
fn square_diagonal_never_terminates() {
    for steps in [1, 5, 12, 20] {
        let cf = euclid_on_lengths(2f64.sqrt(), 1.0, steps, DEFAULT_STOP_EPS).unwrap();
        assert_eq!(cf.len(), steps);
        assert!(!cf.terminated);
        assert!(cf.quotients[1..].iter().all(|&q| q == 2));
    }
}

#[test]
fn golden_triangle_gives_all_ones() {
    let cf = golden_ratio_cf_demo(12).unwrap();
    assert_eq!(cf.quotients, vec![1; 12]);
    assert!(!cf.terminated);
    let c = convergents(&cf, 12).unwrap();
    // convergents of the golden ratio are ratios of Fibonacci numbers
    let fib: Vec<u64> = (0..14).scan((1u64, 1u64), |s, _| {
        let out = s.0;
        *s = (s.1, s.0 + s.1);
        Some(out)
    })
    .collect();
    for (k, conv) in c.iter().enumerate() {
        assert_eq!((conv.p, conv.q), (fib[k + 1], fib[k]));
    }
}

#[test]
fn convergent_overflow_is_reported() {
    let cf = compasskit::measure::CFExpansion {
        quotients: vec![u64::MAX, u64::MAX, u64::MAX],
        terminated: true,
        remainder_bound: 0.0,
    };
    assert!(convergents(&cf, 3).is_err());
}
