use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::geometry::{convexity_margin, membership_scan, ClassSpec};
use crate::series::EvaluationGrid;

#[test]
fn threshold_examples() {
    assert_eq!(m_threshold(0), 1.0);
    assert!((m_threshold(1) - 0.4142136).abs() < 1e-7);
    assert!((m_threshold(2) - 0.2360680).abs() < 1e-7);
    for c in 0..50u32 {
        let m = m_threshold(c);
        assert!((m * m + 2.0 * c as f64 * m - 1.0).abs() < 1e-12);
        assert!(m_threshold(c + 1) < m);
    }
}

#[test]
fn octic_root() {
    assert_eq!(oros_polynomial(0.0), -8.0);
    assert_eq!(oros_polynomial(1.0), 178.0);
    let m = find_m_star().unwrap();
    assert!(oros_polynomial(m).abs() < 1e-10);
    // independent check: Newton iteration from the sign-change bracket
    let deriv = |x: f64| {
        8.0 * 7.0 * x.powi(7) + 7.0 * 14.0 * x.powi(6) + 6.0 * 48.0 * x.powi(5) + 5.0 * 30.0 * x.powi(4)
            + 4.0 * 67.0 * x.powi(3)
            + 3.0 * 18.0 * x * x
            + 2.0
    };
    let direct = |x: f64| {
        7.0 * x.powi(8) + 14.0 * x.powi(7) + 48.0 * x.powi(6) + 30.0 * x.powi(5) + 67.0 * x.powi(4)
            + 18.0 * x.powi(3)
            + 2.0 * x
            - 8.0
    };
    let mut x = 0.5;
    for _ in 0..50 {
        x -= direct(x) / deriv(x);
    }
    assert!((x - m).abs() < 1e-12);
    assert!((m - 0.480644030507).abs() < 1e-11);
    // the only root in (0, 1): the octic is increasing there
    for k in 0..1000 {
        assert!(deriv(k as f64 / 1000.0) > 0.0);
    }
}

#[test]
fn r_bound_examples() {
    assert!((r_bound(0.5).unwrap() - 0.3507811).abs() < 1e-6);
    assert!((r_bound(0.5).unwrap() - (-2.5 + 10.25f64.sqrt()) / 2.0).abs() < 1e-15);
    let tiny = r_bound(1e-9).unwrap();
    assert!(tiny < 1e-9 && tiny > 0.0);
    assert!((r_bound(1.0).unwrap() - (-2.0 + 12f64.sqrt()) / 2.0).abs() < 1e-15);
    assert!(r_bound(0.0).is_err());
}

#[test]
fn mu_examples() {
    assert!((mu(2).unwrap() - 0.6).abs() < 1e-15);
    assert!((mu(3).unwrap() - 4.0 / 7.0).abs() < 1e-15);
    assert!((mu(1000).unwrap() - 1001.0 / 2001.0).abs() < 1e-15);
    assert!((mu(1000).unwrap() - 0.5002501).abs() < 3e-7);
    assert!(mu(1).is_err());
    for m in 2..500 {
        let v = mu(m).unwrap();
        assert!(v > 0.5 && mu(m + 1).unwrap() < v);
        assert!((v - (m as f64 + 1.0) / (2.0 * m as f64 + 1.0)).abs() < 1e-15);
    }
}

#[test]
fn witness_for_three_fifths() {
    let w = build_extremal(0.6).unwrap();
    assert_eq!(w.m, 3);
    assert!((w.lambda - 3.0 / 13.0).abs() < 1e-15);
    assert!((w.alpha - 3.0 / 26.0).abs() < 1e-15);
    assert!((w.z1_modulus - (26f64 / 27.0).sqrt()).abs() < 1e-14);
    assert!((w.z1 - Complex64::new(0.0, w.z1_modulus)).norm() < 1e-14);
    assert!(w.lambda_at_z1 <= 1e-12);
    assert!((w.big_f0.coeff(3).re - w.alpha).abs() < 1e-15);
    // closed form of the convexity functional of z + alpha z^m
    let z = Complex64::new(0.3, 0.2);
    let closed = (1.0 + 27.0 / 26.0 * z * z) / (1.0 + 9.0 / 26.0 * z * z);
    assert!((convexity_functional(&w.big_f0, z).unwrap() - closed).norm() < 1e-14);
}

#[test]
fn witness_examples() {
    let w = build_extremal(0.55).unwrap();
    assert_eq!(w.m, 5);
    assert!(w.z1_modulus < 1.0 && w.z1_modulus > 0.998);
    assert!(w.f0_level <= 0.55 + 1e-9);
    let w = build_extremal(0.75).unwrap();
    assert_eq!(w.m, 2);
    assert!((w.z1 + 0.875).norm() < 1e-14);
    assert!(matches!(build_extremal(0.5), Err(crate::Error::BadM(_))));
    assert!(build_extremal(1.0).is_err());
}

#[test]
fn witness_images_are_not_convex() {
    for m_level in [0.52, 0.55, 0.6, 0.75, 0.9] {
        let w = build_extremal(m_level).unwrap();
        let (margin, _, _) = convexity_margin(&w.big_f0, &witness_grid(w.z1_modulus, 4096).unwrap()).unwrap();
        assert!(margin < 0.0, "M = {m_level}");
        // and the witness really is in the closure of S_M
        assert!(w.f0_level <= m_level + 1e-9);
        assert!(1.0 / (w.alpha * (w.m * w.m) as f64) < 1.0);
    }
}

#[test]
fn constants_table() {
    let t = ConstantsTable::build(5).unwrap();
    assert_eq!(t.thresholds.len(), 6);
    assert_eq!(t.thresholds[0].m_c, 1.0);
    assert!(t.m_star_residual.abs() < 1e-10);
    let check = |name: &str| t.checks.iter().find(|(n, _)| n == name).unwrap().1;
    assert!(check("M_0 = 1") && check("M_c strictly decreasing") && check("M_1 < 1/2") && check("R(M) < M"));
    // the printed octic's root sits above sqrt(2) - 1
    assert!(!check("M_star < M_1"));
}

#[test]
fn corpus_examples() {
    let f = expstar(0.4, 1, 30).unwrap();
    let mut fact = 1.0;
    for n in 0..30 {
        if n > 0 {
            fact *= n as f64;
        }
        assert!((f.coeff(n + 1).re - 0.4f64.powi(n as i32) / fact).abs() < 1e-16);
    }
    let p = poly(0.6, 3, 16).unwrap();
    assert!((p.coeff(3).re - 3.0 / 13.0).abs() < 1e-16 && p.coeff(2).norm() == 0.0);
    let grid = EvaluationGrid::default_grid();
    let b = blaschke(0.3, Complex64::new(0.5, 0.0), 128).unwrap();
    let report = membership_scan(&b, &ClassSpec::sm(0.3).unwrap(), &grid).unwrap();
    assert!(report.passed() && report.min_margin > 0.0);
    let q = b.quotient_starlike().unwrap();
    let z = Complex64::new(0.4, -0.3);
    let expect = 1.0 + 0.3 * z * (z - 0.5) / (1.0 - 0.5 * z);
    assert!((q.evaluate(z).unwrap() - expect).norm() < 1e-12);
    let p2 = pvalent(2, 64).unwrap();
    assert_eq!(p2.lowest_power(), 2);
    assert_eq!(p2.order(), 64);
    assert!(blaschke(0.3, Complex64::new(1.0, 0.0), 16).is_err());
    assert!(poly(1.2, 2, 16).is_err());
    for fam in [Family::Poly, Family::Expstar, Family::Blaschke] {
        for m in [0.2, 0.6] {
            for member in corpus(fam, m, 128).unwrap() {
                let r = membership_scan(&member.series, &ClassSpec::sm(m).unwrap(), &grid).unwrap();
                assert!(r.passed(), "{fam} {} at {m}", member.label);
            }
        }
    }
}

#[test]
fn probe_rows() {
    let grid = EvaluationGrid::with_angles(1024);
    let rows = conjecture_probe(0.40, 0.60, 0.05, &[Family::Poly, Family::Expstar, Family::Blaschke], &grid, 128)
        .unwrap();
    let at = |m: f64| rows.iter().filter(move |r| (r.m_level - m).abs() < 1e-12);
    assert!(at(0.40).all(|r| r.min_margin > 0.0 && r.consistent == Some(true)));
    assert!(at(0.45).all(|r| r.expectation == Expectation::None));
    let witness = at(0.60).find(|r| r.family == Family::Poly && r.label == "m=3").unwrap();
    assert_eq!(witness.expectation, Expectation::Negative);
    assert!(witness.min_margin < 0.0);
    assert!((witness.argmin.arg() - PI / 2.0).abs() < 0.05);
    let mut sorted = rows.clone();
    sorted.sort_by(|a, b| a.m_level.total_cmp(&b.m_level));
    assert_eq!(sorted.iter().map(|r| r.m_level).collect::<Vec<_>>(), rows.iter().map(|r| r.m_level).collect::<Vec<_>>());
    assert!(conjecture_probe(0.6, 0.4, 0.1, &[Family::Poly], &grid, 64).is_err());
    assert!(conjecture_probe(0.4, 0.6, 0.1, &[Family::Koebe], &grid, 64).is_err());
}

proptest! {
    #[test]
    fn r_bound_below_m(m in 1e-6..1.0f64) {
        prop_assert!(r_bound(m).unwrap() < m);
        let direct = (m - 3.0 + (m * m + 2.0 * m + 9.0).sqrt()) / 2.0;
        prop_assert!((r_bound(m).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn witness_invariants(m_level in 0.51..0.99f64) {
        let w = build_extremal(m_level).unwrap();
        prop_assert!(w.z1_modulus < 1.0);
        prop_assert!(w.lambda_at_z1 <= 1e-10);
        prop_assert!(mu(w.m).unwrap() < m_level);
        if w.m > 2 {
            prop_assert!(mu(w.m - 1).unwrap() >= m_level);
        }
    }
}
