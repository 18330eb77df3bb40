mod common;

use deginv::theta::*;
use deginv::Error;
use num_complex::Complex64;
use proptest::prelude::*;

const ZERO2: [Complex64; 2] = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];

fn acc() -> AccuracyTarget {
    AccuracyTarget::default()
}

fn w(re: f64, im: f64) -> UpperHalfPoint {
    UpperHalfPoint::new(re, im).unwrap()
}

#[test]
fn eta_examples() {
    let a = log_abs_eta(w(0.37, 1.2), acc()).unwrap();
    let b = log_abs_eta(w(1.37, 1.2), acc()).unwrap();
    assert!((a - b).abs() < 1e-13);

    let v = log_abs_eta(w(0.0, 10.0), acc()).unwrap();
    assert!((v - -2.6179938779914944).abs() < 1e-12);

    let v = log_abs_eta(w(0.0, 2.0), acc()).unwrap();
    assert!((v - common::log_abs_eta(w(0.0, 2.0))).abs() < 2e-12);

    assert!(matches!(log_abs_eta(w(0.0, 0.04), acc()), Err(Error::Domain(_))));
}

#[test]
fn genus_one_examples() {
    let i = w(0.0, 1.0);
    assert!(theta_odd_genus1(Complex64::new(0.0, 0.0), i, acc()).unwrap().norm() < 1e-14);

    let z = Complex64::new(0.3, 0.1);
    let s = theta_odd_genus1(z, i, acc()).unwrap() + theta_odd_genus1(-z, i, acc()).unwrap();
    assert!(s.norm() < 1e-13);

    let z = Complex64::new(0.3, 0.0);
    let d = theta_odd_genus1(z, i, acc()).unwrap() - common::theta_odd_genus1(z, i);
    assert!(d.norm() < 2e-12);
}

#[test]
fn genus_two_examples() {
    let h = CharEntry::Half;
    let o = CharEntry::Zero;
    let omega =
        SiegelPoint2::new(Complex64::new(0.0, 1.0), Complex64::new(0.1, 0.0), Complex64::new(0.0, 2.0)).unwrap();
    let odd = ThetaChar2::new([h, o], [h, o]);
    assert!(theta_char_genus2(odd, ZERO2, &omega, acc()).unwrap().norm() < 1e-13);

    let d = Complex64::new(0.2, 0.1);
    let omega = SiegelPoint2::new(Complex64::new(0.0, 1.1), d, Complex64::new(0.0, 1.3)).unwrap();
    let zero = ThetaChar2::new([o, o], [o, o]);
    let diff = theta_char_genus2(zero, ZERO2, &omega, acc()).unwrap() - common::theta_genus2(zero, ZERO2, &omega);
    assert!(diff.norm() < 2e-12);
}

#[test]
fn splitting_at_i_and_three_halves_i() {
    let (w1, w2) = (w(0.0, 1.0), w(0.0, 1.5));
    let omega = SiegelPoint2::diagonal(w1, w2);
    let zero = Complex64::new(0.0, 0.0);
    for alpha in common::all_characteristics() {
        let whole = theta_char_genus2(alpha, ZERO2, &omega, acc()).unwrap();
        let [a1, a2] = alpha.a_values();
        let [b1, b2] = alpha.b_values();
        let f1 = common::theta_genus1(a1, b1, zero, w1);
        let f2 = common::theta_genus1(a2, b2, zero, w2);
        assert!((whole - f1 * f2).norm() < 1e-12, "{alpha:?}");
    }
}

#[test]
fn even_characteristics_match_parity_scan() {
    let scanned: Vec<_> = common::all_characteristics().into_iter().filter(|a| common::parity(a) == 1).collect();
    let listed = even_characteristics();
    assert_eq!(listed.len(), 10);
    assert_eq!(listed, scanned, "lexicographic order with 0 < ½");
    assert!(listed.iter().all(|a| a.parity() == 1));
    let h = CharEntry::Half;
    assert!(listed.contains(&ThetaChar2::new([h, h], [h, h])));
    assert_eq!(odd_characteristics().len(), 6);
}

#[test]
fn truncation_radius_examples() {
    let n1 = truncation_radius(1.0, 1.0, 1e-14).unwrap();
    assert!(n1 <= 5);
    let bound = |n: usize| 8.0 * (n as f64 + 2.0) * (-std::f64::consts::PI * (n as f64 - 1.0).powi(2)).exp();
    assert!(bound(n1) < 1e-14);
    assert!(n1 == 0 || bound(n1 - 1) >= 1e-14);
    assert!(truncation_radius(10.0, 1.0, 1e-14).unwrap() <= n1);
    assert!(matches!(truncation_radius(1e-6, 1.0, 1e-14), Err(Error::Accuracy { .. })));
}

#[test]
fn accuracy_target_bounds() {
    assert!(AccuracyTarget::new(1e-3, 4).is_ok());
    assert!(AccuracyTarget::new(1e-12, 256).is_ok());
    assert!(AccuracyTarget::new(2e-3, 64).is_err());
    assert!(AccuracyTarget::new(0.0, 64).is_err());
    assert!(AccuracyTarget::new(1e-12, 3).is_err());
    assert!(AccuracyTarget::new(1e-12, 257).is_err());
}

#[test]
fn radius_cap_reports_needed_radius() {
    let omega =
        SiegelPoint2::new(Complex64::new(0.0, 0.01), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.01)).unwrap();
    let tight = AccuracyTarget::new(1e-12, 4).unwrap();
    match theta_char_genus2(even_characteristics()[0], ZERO2, &omega, tight) {
        Err(Error::Accuracy { needed, cap, .. }) => {
            assert_eq!(cap, 4);
            assert!(needed > 4);
        }
        other => panic!("expected an accuracy error, got {other:?}"),
    }
}

#[test]
fn summation_is_reproducible() {
    let omega =
        SiegelPoint2::new(Complex64::new(0.1, 1.1), Complex64::new(0.2, 0.1), Complex64::new(-0.3, 1.3)).unwrap();
    let alpha = even_characteristics()[3];
    let a = theta_char_genus2(alpha, ZERO2, &omega, acc()).unwrap();
    let b = theta_char_genus2(alpha, ZERO2, &omega, acc()).unwrap();
    assert_eq!(a.re.to_bits(), b.re.to_bits());
    assert_eq!(a.im.to_bits(), b.im.to_bits());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn odd_theta_is_antisymmetric(z in common::complex(-1.0..1.0, -1.0..1.0), omega in common::uhp(-0.5..0.5, 0.5..2.0)) {
        let s = theta_odd_genus1(z, omega, acc()).unwrap() + theta_odd_genus1(-z, omega, acc()).unwrap();
        prop_assert!(s.norm() < 1e-12);
    }

    #[test]
    fn odd_theta_modulus_is_one_periodic(z in common::complex(-1.0..1.0, -1.0..1.0), omega in common::uhp(-0.5..0.5, 0.5..2.0)) {
        let a = theta_odd_genus1(z, omega, acc()).unwrap();
        let b = theta_odd_genus1(z + 1.0, omega, acc()).unwrap();
        prop_assert!((a.norm() - b.norm()).abs() < 1e-12);
        prop_assert!((a + b).norm() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn odd_characteristics_vanish_at_origin(omega in common::siegel()) {
        for alpha in common::all_characteristics().into_iter().filter(|a| common::parity(a) == -1) {
            prop_assert!(theta_char_genus2(alpha, ZERO2, &omega, acc()).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn eta_matches_oracle(omega in common::uhp(-0.5..0.5, 0.2..3.0)) {
        let d = log_abs_eta(omega, acc()).unwrap() - common::log_abs_eta(omega);
        prop_assert!(d.abs() <= 2.0 * acc().eps_abs(), "{d:e}");
    }

    #[test]
    fn genus_one_theta_matches_oracle(z in common::complex(-1.0..1.0, -0.5..0.5), omega in common::uhp(-0.5..0.5, 0.5..2.0)) {
        let d = theta_odd_genus1(z, omega, acc()).unwrap() - common::theta_odd_genus1(z, omega);
        prop_assert!(d.norm() <= 2.0 * acc().eps_abs(), "{d:e}");
    }

    #[test]
    fn genus_two_theta_matches_oracle(
        alpha in common::characteristic(),
        z1 in common::complex(-0.5..0.5, -0.2..0.2),
        z2 in common::complex(-0.5..0.5, -0.2..0.2),
        omega in common::siegel(),
    ) {
        let d = theta_char_genus2(alpha, [z1, z2], &omega, acc()).unwrap()
            - common::theta_genus2(alpha, [z1, z2], &omega);
        prop_assert!(d.norm() <= 2.0 * acc().eps_abs(), "{d:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn diagonal_matrices_split(w1 in common::uhp(-0.5..0.5, 0.7..2.0), w2 in common::uhp(-0.5..0.5, 0.7..2.0)) {
        let omega = SiegelPoint2::diagonal(w1, w2);
        let zero = Complex64::new(0.0, 0.0);
        for alpha in common::all_characteristics() {
            let whole = theta_char_genus2(alpha, ZERO2, &omega, acc()).unwrap();
            let f1 = common::theta_genus1(common::entry_value(alpha.a[0]), common::entry_value(alpha.b[0]), zero, w1);
            let f2 = common::theta_genus1(common::entry_value(alpha.a[1]), common::entry_value(alpha.b[1]), zero, w2);
            prop_assert!((whole - f1 * f2).norm() < 1e-11);
        }
    }
}
